from fractions import Fraction

import pytest

from tinybunch.errors import InputError, UnsupportedError
from tinybunch.liecore import (BracketMap, Element, LinearOperator, ad,
                               basis_window, bracket_eval,
                               check_antisymmetry, check_jacobi,
                               is_derivation, op_commutator, op_polynomial)
from tinybunch.ratlin import Matrix, SparseTensor3

e = Element.basis


def test_element_arithmetic():
    x = Element({0: 1, 1: 0, 2: '1/2'})

    assert x == Element({0: 1, 2: Fraction(1, 2)})
    assert x.support == (0, 2)
    assert x + Element({0: -1}) == Element({2: '1/2'})
    assert x - x == Element.zero()
    assert (x - x).is_zero()
    assert 2 * x == Element({0: 2, 2: 1})
    assert -x == x * -1
    assert x.coefficient(5) == 0
    assert Element([(3, 1), (3, 2)]) == Element({3: 3})


def test_element_vectors():
    x = Element.from_vector([0, 1, '2/3'])

    assert x == Element({1: 1, 2: '2/3'})
    assert x.to_vector(4) == (0, 1, Fraction(2, 3), 0)

    with pytest.raises(ValueError):
        x.to_vector(2)

    with pytest.raises(ValueError):
        Element({True: 1})

    with pytest.raises(ValueError):
        Element({'a': 1})


def test_element_is_hashable_and_frozen():
    x = Element({-1: 2})

    assert {x: 1}[Element({-1: 2})] == 1
    with pytest.raises(TypeError):
        x[0] = 1


def test_element_repr():
    assert repr(Element({1: 2, -1: 3})) == \
        'Element({-1: Fraction(3, 1), 1: Fraction(2, 1)})'


def test_so3_brackets(so3):
    assert so3.dim == 3
    assert so3.kind == 'dense'
    assert bracket_eval(so3, e(0), e(1)) == Element({2: -1})
    assert so3(e(1), e(0)) == Element({2: 1})
    assert so3(e(0) + e(1), e(0) + e(1)).is_zero()


def test_from_upper_rejects_lower_entries():
    with pytest.raises(ValueError):
        BracketMap.from_upper(2, {(1, 0, 0): 1})

    with pytest.raises(ValueError):
        BracketMap.from_upper(2, {(0, 0, 1): 1})


def test_from_tensor_antisymmetry():
    tensor = SparseTensor3(2, {(0, 1, 1): 1})

    with pytest.raises(ValueError):
        BracketMap.from_tensor(tensor)

    raw = BracketMap.from_tensor(tensor, raw=True)
    report = check_antisymmetry(raw)
    assert not report.holds
    assert report.counterexample.indices == (0, 1)


def test_index_outside_basis(so3):
    with pytest.raises(ValueError):
        so3(e(3), e(0))


def test_upper_entries(so3):
    assert [key for key, _ in so3.upper_entries()] == \
        [(0, 1, 2), (0, 2, 1), (1, 2, 0)]


def test_jacobi_holds(so3, sl2, witt):
    assert check_jacobi(so3).holds
    assert check_jacobi(so3).tuples_checked == 27
    assert check_jacobi(sl2.algebra).holds
    assert check_jacobi(witt).holds
    assert check_jacobi(witt).tuples_checked == 7 ** 3


def test_jacobi_fails():
    br = BracketMap.from_upper(3, {(0, 1, 2): 1, (1, 2, 1): 1})
    report = check_jacobi(br)

    assert not report.holds
    assert report.counterexample.indices == (0, 1, 2)
    assert report.counterexample.lhs == Element({2: -1})
    assert report.counterexample.rhs == Element()


def test_witt_rule(witt):
    assert witt(e(1), e(2)) == Element({3: -1})
    assert witt(e(-3), e(3)) == Element({0: -6})
    # Outputs may leave the window
    assert witt(e(3), e(2)) == Element({5: 1})


def test_graded_window():
    assert list(basis_window(None, 2)) == [-2, -1, 0, 1, 2]
    assert list(basis_window(None, None, 1)) == [-1, 0, 1]
    assert basis_window(4, 100) == range(4)

    with pytest.raises(ValueError):
        basis_window(None)

    with pytest.raises(ValueError):
        basis_window(None, -1)


def test_rule_without_window():
    br = BracketMap.from_rule(lambda i, j: Element())

    with pytest.raises(ValueError):
        check_jacobi(br)

    assert check_jacobi(br, window=1).holds


def test_bracket_arithmetic(so3):
    double = so3 + so3
    assert double(e(0), e(1)) == Element({2: -2})
    assert (so3 - so3)(e(0), e(1)).is_zero()
    assert so3.scaled('1/2')(e(0), e(1)) == Element({2: '-1/2'})
    assert (so3 + so3).tensor == so3.tensor * 2


def test_dense_tensor_of_rule(witt):
    with pytest.raises(UnsupportedError):
        witt.tensor


def test_is_derivation(so3, sl2, witt, shift1):
    assert is_derivation(ad(so3, e(0)), so3).holds
    assert is_derivation(sl2.operator, sl2.algebra).holds

    report = is_derivation(shift1, witt)
    assert not report.holds
    assert report.counterexample.indices == (-3, -2)


def test_ad(so3):
    op = ad(so3, e(0))

    assert op.kind == 'matrix'
    assert op(e(1)) == Element({2: -1})
    assert op(e(0)).is_zero()


def test_ad_needs_finite_algebra(witt):
    with pytest.raises(UnsupportedError):
        ad(witt, e(0))


def test_operators():
    shift = LinearOperator.shift(2, scale=3)
    assert shift(Element({1: 1, -1: 1})) == Element({3: 3, 1: 3})
    assert shift.label == 'R_2'
    assert shift.params == {'offset': 2, 'scale': Fraction(3)}

    d = LinearOperator.diagonal([1, 2])
    assert d(Element({0: 1, 1: 1})) == Element({0: 1, 1: 2})
    assert d.to_matrix() == Matrix.diagonal([1, 2])

    graded = LinearOperator.diagonal(lambda i: i)
    assert graded(e(5)) == Element({5: 5})

    with pytest.raises(ValueError):
        d(e(2))

    with pytest.raises(ValueError):
        LinearOperator.from_matrix(Matrix([[1, 2]]))


def test_operator_combinations():
    a = LinearOperator.from_matrix(Matrix([[0, 1], [0, 0]]))
    d = LinearOperator.diagonal([1, 2])

    assert (a + d).kind == 'matrix'
    assert (a + d).to_matrix() == Matrix([[1, 1], [0, 2]])
    assert (a - d).to_matrix() == Matrix([[-1, 1], [0, -2]])
    assert (a @ d).to_matrix() == Matrix([[0, 2], [0, 0]])
    assert (d * 2).to_matrix() == Matrix.diagonal([2, 4])
    assert (-d).to_matrix() == Matrix.diagonal([-1, -2])
    assert a.power(2).to_matrix() == Matrix.zeros(2, 2)
    assert a.power(0).to_matrix() == Matrix.identity(2)

    with pytest.raises(ValueError):
        a.power(-1)

    with pytest.raises(ValueError):
        a + LinearOperator.identity(3)


def test_graded_operators(shift1):
    two = shift1 @ shift1
    assert two(e(0)) == e(2)
    assert (shift1 + shift1)(e(0)) == Element({1: 2})
    assert LinearOperator.identity()(e(7)) == e(7)
    assert LinearOperator.zero()(e(7)).is_zero()

    with pytest.raises(UnsupportedError):
        shift1.to_matrix()


def test_op_polynomial():
    d = LinearOperator.diagonal([1, 2])
    assert op_polynomial([1, 0, 1], d).to_matrix() == Matrix.diagonal([2, 5])
    assert op_polynomial([], d).to_matrix() == Matrix.zeros(2, 2)

    shift = LinearOperator.shift(1)
    f = op_polynomial([1, 0, 2], shift)
    assert f(e(0)) == Element({0: 1, 2: 2})


def test_op_commutator(shift1):
    a = LinearOperator.from_matrix(Matrix([[0, 1], [0, 0]]))
    d = LinearOperator.diagonal([1, 2])

    assert op_commutator(a, d).to_matrix() == Matrix([[0, 1], [0, 0]])
    assert op_commutator(d, d).to_matrix() == Matrix.zeros(2, 2)

    scale = LinearOperator.diagonal(lambda i: i)
    # [R_1, D] e_i = (i - (i + 1)) e_{i+1}
    assert op_commutator(shift1, scale)(e(4)) == Element({5: -1})


def test_mixed_index_kinds(so3, witt, shift1):
    with pytest.raises(InputError, match='index kind'):
        so3 + witt

    with pytest.raises(InputError):
        op_commutator(shift1, LinearOperator.identity(3))

    with pytest.raises(InputError):
        shift1 @ LinearOperator.diagonal([1, 2])

    with pytest.raises(InputError):
        is_derivation(shift1, so3)
