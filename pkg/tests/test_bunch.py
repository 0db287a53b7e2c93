import pytest

from tinybunch.bunch import (MYBAlgebra, Pencil, b_defect, check_bracket_equal,
                             check_compatible, check_gamma_homomorphism,
                             check_mcybe_variant, check_myb,
                             check_operator_identity, check_operators_commute,
                             check_primed_lie_condition,
                             check_remark2_criterion, check_tangent_jacobi,
                             check_tangent_of_pencil, make_gamma_bunch,
                             myb_from_pencil, primed_bracket, tangent_bracket)
from tinybunch.catalog import make_example2, make_so, make_witt
from tinybunch.errors import IdentityViolation, InputError
from tinybunch.liecore import BracketMap, Element, LinearOperator, check_jacobi
from tinybunch.ratlin import Matrix

e = Element.basis


def test_tangent_bracket_witt(witt, shift1):
    tangent = tangent_bracket(witt, shift1)

    assert tangent(e(1), e(2)) == Element({4: -1})
    assert not tangent.is_finite
    assert tangent.default_window == witt.default_window


def test_primed_bracket_witt(witt, shift1):
    assert primed_bracket(witt, shift1)(e(1), e(2)) == Element({4: -2})


def test_tangent_bracket_of_derivation_vanishes(sl2):
    tangent = tangent_bracket(sl2.algebra, sl2.operator)

    assert tangent.is_finite
    assert tangent.tensor.is_zero()


def test_tangent_bracket_dimension_mismatch(so3):
    with pytest.raises(ValueError):
        tangent_bracket(so3, LinearOperator.identity(2))


def test_myb_witt(witt, shift1):
    report = check_myb(witt, shift1)

    assert report.holds
    assert report.identity_name == 'mYB'
    assert report.tuples_checked == 7 ** 2


@pytest.mark.parametrize('n', [-2, 2, 3])
def test_myb_witt_shifts(witt, n):
    shift = LinearOperator.shift(n)

    assert check_myb(witt, shift).holds
    assert check_primed_lie_condition(witt, shift).holds


def test_myb_sl2_fails(sl2):
    report = check_myb(sl2.algebra, sl2.operator)

    assert not report.holds
    assert report.counterexample.indices == (0, 2)
    assert report.counterexample.lhs == Element()
    assert report.counterexample.rhs == Element({1: 2})


def test_b_defect(sl2, witt, shift1):
    assert b_defect(sl2.algebra, sl2.operator, 0, 2) == Element({1: -2})
    assert b_defect(witt, shift1, 1, 2).is_zero()


def test_mcybe_variant(sl2, witt, shift1):
    assert check_mcybe_variant(sl2.algebra, sl2.operator, 1).holds
    assert not check_mcybe_variant(witt, shift1, 0).holds
    assert check_mcybe_variant(witt, shift1, 0).identity_name == 'mCYBE(c=0)'


def test_mcybe_agrees_with_myb_for_involutions(so3):
    # R^2 = 1 makes both normalizations the same identity
    swap = LinearOperator.from_matrix(Matrix.diagonal([1, -1, -1]))

    assert check_mcybe_variant(so3, swap, 1).holds == \
        check_myb(so3, swap).holds


def test_primed_lie_condition(witt, shift1):
    assert check_primed_lie_condition(witt, shift1).holds


def test_compatible(witt, shift1):
    example = make_example2(3, Matrix.diagonal([1, 2, 3]))

    assert check_compatible(example.so_pencil.base,
                            example.so_pencil.direction).holds
    assert check_compatible(witt, tangent_bracket(witt, shift1)).holds


def test_compatible_fails():
    first = BracketMap.from_upper(3, {(0, 1, 1): 1})
    second = BracketMap.from_upper(3, {(1, 2, 0): 1})

    assert check_jacobi(first).holds
    assert check_jacobi(second).holds
    assert not check_compatible(first, second).holds


def test_remark2_criterion(witt, shift1, gl2, mult2):
    left, _ = mult2

    assert check_remark2_criterion(witt, shift1).holds
    assert check_tangent_jacobi(witt, shift1).holds
    assert check_remark2_criterion(gl2, left).holds


def test_make_gamma_bunch(gl2, mult2):
    left, _ = mult2
    pencil = make_gamma_bunch(MYBAlgebra(gl2, left))

    assert pencil.operator is left
    assert check_tangent_of_pencil(pencil).holds

    report = check_gamma_homomorphism(pencil, [0, 1, 2])
    assert report.holds
    assert [c.identity_name for c in report.clauses] == \
        ['lambda=0', 'lambda=1', 'lambda=2']
    assert report.tuples_checked == 3 * 16


def test_make_gamma_bunch_witt(witt, shift1):
    pencil = make_gamma_bunch(MYBAlgebra(witt, shift1, 3))

    assert check_gamma_homomorphism(pencil, ['-1', '1/2', 3]).holds


def test_make_gamma_bunch_refuses(sl2):
    with pytest.raises(IdentityViolation) as excinfo:
        make_gamma_bunch(MYBAlgebra(sl2.algebra, sl2.operator))

    assert excinfo.value.report.identity_name == 'mYB'
    assert excinfo.value.report.counterexample.indices == (0, 2)


def test_gamma_homomorphism_fails(sl2):
    # sl(2) with R = -ad(L_0) is not a Gamma-bunch
    pencil = Pencil(sl2.algebra,
                    tangent_bracket(sl2.algebra, sl2.operator), sl2.operator)
    report = check_gamma_homomorphism(pencil, [0, 1, 2])

    assert not report.holds
    assert report.clauses[0].holds
    assert report.counterexample.clause == 'lambda=1'


def test_gamma_homomorphism_samples(gl2, mult2):
    left, _ = mult2
    pencil = make_gamma_bunch(MYBAlgebra(gl2, left))

    with pytest.raises(ValueError):
        check_gamma_homomorphism(pencil, [0, 1])

    with pytest.raises(ValueError):
        check_gamma_homomorphism(pencil, [1, 1, '2/2'])

    spot = check_gamma_homomorphism(pencil, [0], certify=False)
    assert spot.holds
    assert spot.notes == ('spot check, not a certificate',)

    with pytest.raises(ValueError):
        check_gamma_homomorphism(pencil, [], certify=False)

    with pytest.raises(ValueError):
        check_gamma_homomorphism(Pencil(gl2, gl2), [0, 1, 2])


def test_myb_from_pencil(gl2, mult2):
    _, right = mult2
    pencil = make_gamma_bunch(MYBAlgebra(gl2, right))
    m = myb_from_pencil(pencil, [0, 1, 2])

    assert m.algebra is gl2
    assert m.R is right
    assert m.verify().holds


def test_myb_from_pencil_refuses(sl2):
    pencil = Pencil(sl2.algebra,
                    tangent_bracket(sl2.algebra, sl2.operator), sl2.operator)

    with pytest.raises(IdentityViolation):
        myb_from_pencil(pencil, [0, 1, 2])


def test_pencil(so3):
    other = so3.scaled(3)
    pencil = Pencil.from_endpoints(so3, other, label='p')

    assert check_bracket_equal(pencil.bracket_at(1), other).holds
    assert check_bracket_equal(pencil.bracket_at(0), so3).holds
    assert pencil.bracket_at('1/2')(e(0), e(1)) == Element({2: -2})
    assert pencil.dim == 3
    assert repr(pencil) == \
        "<Pencil label='p', base='so(3)', direction='(3*so(3) - so(3))'>"

    with pytest.raises(ValueError):
        pencil.operator_at(1)


def test_pencil_rejects_mixed_backends(so3, witt, shift1):
    with pytest.raises(InputError):
        Pencil(so3, witt)

    with pytest.raises(InputError, match='index kind'):
        Pencil(so3, so3, shift1)

    with pytest.raises(InputError):
        Pencil(witt, witt, LinearOperator.identity(3))

    with pytest.raises(ValueError):
        Pencil(so3, so3, LinearOperator.identity(2))


def test_operator_at(gl2, mult2):
    left, _ = mult2
    pencil = Pencil(gl2, tangent_bracket(gl2, left), left)

    assert pencil.operator_at(0).to_matrix() == Matrix.identity(4)
    assert pencil.operator_at(2).to_matrix() == \
        Matrix.identity(4) + left.to_matrix() * 2


def test_operator_identity(witt, shift1):
    report = check_operator_identity(shift1 @ shift1, 3)

    assert not report.holds
    assert report.counterexample.indices == (-3,)
    assert check_operator_identity(LinearOperator.identity(), 3).holds


def test_operators_commute(mult2):
    left, right = mult2
    swap = LinearOperator.from_matrix(Matrix([[0, 0, 1, 0], [0, 1, 0, 0],
                                              [1, 0, 0, 0], [0, 0, 0, 1]]))

    assert check_operators_commute(left, right).holds
    assert not check_operators_commute(left, swap).holds


def test_checks_reject_mixed_index_kinds():
    witt2 = make_witt(2)

    with pytest.raises(InputError, match='cannot mix finite'):
        check_myb(witt2, LinearOperator.diagonal([1, 2, 3]), 0)

    with pytest.raises(InputError):
        check_compatible(make_witt(1), make_so(3))

    with pytest.raises(InputError):
        check_bracket_equal(make_so(3), witt2)

    with pytest.raises(InputError):
        tangent_bracket(make_so(3), LinearOperator.shift(1))

    with pytest.raises(InputError):
        check_operators_commute(LinearOperator.shift(1),
                                LinearOperator.identity(3))


def test_pair_checks_share_default_window():
    w2, w3 = make_witt(2), make_witt(3)
    bare = BracketMap.from_rule(lambda i, j: Element({i + j: i - j}),
                                label='bare')

    with pytest.raises(InputError, match='disagree'):
        check_compatible(w2, w3)

    with pytest.raises(InputError, match='disagree'):
        check_bracket_equal(w3, w2)

    assert check_compatible(w2, w3, window=1).tuples_checked == 3 ** 3
    assert check_bracket_equal(bare, w2).tuples_checked == 5 ** 2
    assert check_bracket_equal(w2, bare).tuples_checked == 5 ** 2
