from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tinybunch.ratlin import (Matrix, SparseTensor3, format_rational,
                              parse_rational, rank, solve_linear,
                              span_membership)


def test_parse_rational():
    assert parse_rational('3/4') == Fraction(3, 4)
    assert parse_rational('-2') == Fraction(-2)
    assert parse_rational(' 6/4 ') == Fraction(3, 2)
    assert parse_rational('−1/2') == Fraction(-1, 2)
    assert parse_rational(7) == Fraction(7)
    assert parse_rational(Fraction(1, 3)) == Fraction(1, 3)


@pytest.mark.parametrize('value', ['1/0', '1.5', 'abc', '', 0.5, True, None])
def test_parse_rational_rejects(value):
    with pytest.raises(ValueError):
        parse_rational(value)


def test_format_rational():
    assert format_rational(Fraction(4, 2)) == '2'
    assert format_rational(Fraction(-1, 4)) == '-1/4'
    assert format_rational(0) == '0'


def test_matrix_arithmetic():
    a = Matrix([[1, 2], [3, 4]])
    b = Matrix.identity(2)

    assert a @ b == a
    assert a + b == Matrix([[2, 2], [3, 5]])
    assert a - a == Matrix.zeros(2, 2)
    assert (a * '1/2')[1, 1] == Fraction(2)
    assert -a == Matrix([[-1, -2], [-3, -4]])
    assert a @ (1, 1) == (Fraction(3), Fraction(7))
    assert a.transpose() == Matrix([[1, 3], [2, 4]])
    assert a.flatten() == (1, 2, 3, 4)


def test_matrix_shape_errors():
    with pytest.raises(ValueError):
        Matrix([[1, 2], [3]])

    with pytest.raises(ValueError):
        Matrix([[1, 2]]) @ Matrix([[1, 2]])

    with pytest.raises(ValueError):
        Matrix.identity(2) + Matrix.identity(3)

    with pytest.raises(ValueError):
        Matrix.identity(2) @ (1, 2, 3)

    with pytest.raises(ValueError):
        Matrix([[1, 2]]).determinant()


def test_matrix_determinant():
    assert Matrix([[0, 1], [1, 0]]).determinant() == -1
    assert Matrix([[1, 2], [2, 4]]).determinant() == 0
    assert Matrix.diagonal(['1/2', -2, 3]).determinant() == -3


def test_matrix_repr():
    assert repr(Matrix([[1, '1/2']])) == '<Matrix 1x2 [1 1/2]>'


def test_tensor():
    t = SparseTensor3(2, {(0, 1, 1): 1, (1, 0, 1): -1, (0, 0, 0): 0})

    assert len(t) == 2
    assert t[(0, 1, 1)] == 1
    assert t[(1, 1, 1)] == 0
    assert list(t) == [(0, 1, 1), (1, 0, 1)]
    assert (t - t).is_zero()
    assert t * 2 == t + t
    assert t.flatten()[(0 * 2 + 1) * 2 + 1] == 1

    with pytest.raises(ValueError):
        SparseTensor3(2, {(0, 2, 0): 1})

    with pytest.raises(ValueError):
        t + SparseTensor3(3)


def test_solve_linear():
    a = Matrix([[2, 1], [1, 3]])
    x = solve_linear(a, (1, 0))

    assert x == (Fraction(3, 5), Fraction(-1, 5))
    assert a @ x == (1, 0)


def test_solve_linear_inconsistent():
    assert solve_linear(Matrix([[1, 1], [2, 2]]), (1, 3)) is None

    with pytest.raises(ValueError):
        solve_linear(Matrix([[1, 1]]), (1, 2))


def test_solve_linear_underdetermined():
    a = Matrix([[1, 1, 0], [0, 0, 1]])
    x = solve_linear(a, (2, 5))

    assert x is not None
    assert a @ x == (2, 5)


def test_rank():
    assert rank(Matrix.identity(3)) == 3
    assert rank(Matrix([[1, 2], [2, 4]])) == 1
    assert rank(Matrix.zeros(2, 3)) == 0


def test_span_membership():
    vectors = [(1, 0, 1), (0, 1, 1)]

    assert span_membership(vectors, (2, 3, 5)) == (2, 3)
    assert span_membership(vectors, (0, 0, 1)) is None
    assert span_membership([], (0, 0)) == ()
    assert span_membership([], (0, 1)) is None

    with pytest.raises(ValueError):
        span_membership([(1, 2)], (1, 2, 3))


entries = st.integers(-2, 2) | st.fractions(-2, 2, max_denominator=3)


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    return Matrix(draw(st.lists(st.lists(entries, min_size=cols,
                                         max_size=cols),
                                min_size=rows, max_size=rows)))


@given(matrices())
def test_rank_of_transpose(a):
    assert rank(a) == rank(a.transpose())
    assert rank(a) <= min(a.shape)


@given(matrices(), st.data())
def test_rank_never_drops_when_adding_a_row(a, data):
    extra = data.draw(st.lists(entries, min_size=a.cols, max_size=a.cols))
    grown = Matrix(a.to_lists() + [extra])

    assert rank(a) <= rank(grown) <= rank(a) + 1


@settings(deadline=None)
@given(matrices(), st.data())
def test_solve_linear_resubstitutes(a, data):
    x0 = data.draw(st.lists(entries, min_size=a.cols, max_size=a.cols))
    b = a @ x0
    x = solve_linear(a, b)

    assert x is not None
    assert a @ x == b


@settings(deadline=None)
@given(matrices(), st.data())
def test_solve_linear_inconsistency_matches_rank(a, data):
    b = data.draw(st.lists(entries, min_size=a.rows, max_size=a.rows))
    x = solve_linear(a, b)
    augmented = Matrix([row + [v] for row, v in zip(a.to_lists(), b)])

    if x is None:
        assert rank(augmented) == rank(a) + 1
    else:
        assert a @ x == tuple(b)
        assert rank(augmented) == rank(a)


@settings(deadline=None)
@given(matrices(), st.data())
def test_span_membership_reconstructs(a, data):
    vectors = a.to_lists()
    coeffs = data.draw(st.lists(entries, min_size=len(vectors),
                                max_size=len(vectors)))
    target = [sum((c * v[k] for c, v in zip(coeffs, vectors)), Fraction(0))
              for k in range(a.cols)]

    found = span_membership(vectors, target)

    assert found is not None
    assert [sum((c * v[k] for c, v in zip(found, vectors)), Fraction(0))
            for k in range(a.cols)] == target
