import pytest
from hypothesis import given, settings, strategies as st

from tinybunch.bimyb import commutator_algebra, mult_operators, \
    sandwich_bracket
from tinybunch.bunch import Pencil, check_myb, check_tangent_jacobi, \
    tangent_bracket
from tinybunch.catalog import make_assoc_mat, make_sl2, make_so, mat_element
from tinybunch.liecore import Element, LinearOperator, ad, bracket_eval, \
    check_jacobi, is_derivation, op_commutator
from tinybunch.ratlin import Matrix, format_rational, parse_rational
from tinybunch.rep import BunchRepresentation, check_faithful, \
    check_representation, check_representation_at, diamond_product

MAT2 = make_assoc_mat(2)
GL2 = commutator_algebra(MAT2)
SO3 = make_so(3)
SL2 = make_sl2()

# T(E_ab) = E_ab: Mat(2) represents its own pencils
UNITS = [Matrix([[1 if (r, c) == divmod(k, 2) else 0 for c in range(2)]
                 for r in range(2)]) for k in range(4)]

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)
matrices = st.lists(rationals, min_size=4, max_size=4).map(
    lambda v: Matrix([v[:2], v[2:]]))
elements = st.dictionaries(st.integers(-5, 5), rationals, max_size=4).map(
    Element)
samples = st.lists(rationals.filter(bool), min_size=1, max_size=2)


def coordinates(dim: int):
    return st.dictionaries(st.integers(0, dim - 1), rationals,
                           max_size=dim).map(Element)


def sandwich(a: Matrix):
    return sandwich_bracket(MAT2, mat_element(a))


@given(rationals)
def test_rational_format(value):
    assert parse_rational(format_rational(value)) == value


@given(elements, elements)
def test_element_arithmetic(x, y):
    assert (x + y) - y == x
    assert x * 0 == Element()
    assert x - x == Element()


@settings(max_examples=50, deadline=None)
@given(matrices)
def test_sandwich_bracket_is_lie(a):
    assert check_jacobi(sandwich(a)).holds


@settings(max_examples=50, deadline=None)
@given(matrices)
def test_multiplications_are_myb(q):
    left, right = mult_operators(MAT2, mat_element(q))

    assert check_myb(GL2, left).holds
    assert check_myb(GL2, right).holds


@settings(max_examples=100, deadline=None)
@given(matrices, matrices, matrices)
def test_diamond_of_sandwich_brackets(a, b, z):
    product = diamond_product(sandwich(a), sandwich(b), mat_element(z))

    assert product.tensor == sandwich(a @ z @ b - b @ z @ a).tensor


@settings(max_examples=100, deadline=None)
@given(matrices, matrices, matrices)
def test_diamond_antisymmetry(a, b, z):
    f_a, f_b, z = sandwich(a), sandwich(b), mat_element(z)

    assert diamond_product(f_a, f_b, z).tensor == \
        diamond_product(f_b, f_a, z).tensor * -1
    assert diamond_product(f_a, f_a, z).tensor.is_zero()


@settings(max_examples=100, deadline=None)
@given(matrices, matrices, matrices, st.fractions(-2, 2, max_denominator=3))
def test_diamond_linear_in_z(z1, z2, a, c):
    f_a = sandwich(a)
    x, y = mat_element(z1), mat_element(z2)

    combined = diamond_product(GL2, f_a, x + y * c).tensor
    separate = diamond_product(GL2, f_a, x).tensor + \
        diamond_product(GL2, f_a, y).tensor * c

    assert combined == separate


@pytest.mark.parametrize('br', [SO3, GL2, SL2.algebra],
                         ids=['so3', 'gl2', 'sl2'])
@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_bracket_eval_is_bilinear(br, data):
    x, y, z = (data.draw(coordinates(br.dim)) for _ in range(3))
    c = data.draw(rationals)

    assert bracket_eval(br, x + y * c, z) == \
        bracket_eval(br, x, z) + bracket_eval(br, y, z) * c
    assert bracket_eval(br, z, x + y * c) == \
        bracket_eval(br, z, x) + bracket_eval(br, z, y) * c


@settings(max_examples=50, deadline=None)
@given(matrices, matrices)
def test_faithful_rank_never_drops(q, extra):
    rep = BunchRepresentation(Pencil(GL2, sandwich(q)), UNITS[:3] + [extra],
                              q)
    report = check_faithful(rep)

    assert report.holds == (extra[1, 1] != 0)
    if not report.holds:
        assert report.counterexample.lhs == 3


def assert_coefficients_match_samples(rep, lambdas):
    split = check_representation(rep)
    sampled = check_representation_at(rep, [0] + lambdas)

    assert split.holds == sampled.holds
    assert split.clause('lambda^0').holds == \
        sampled.clause('lambda=0').holds


@settings(max_examples=30, deadline=None)
@given(samples)
def test_sl2_representation_coefficients(lambdas):
    rep = SL2.representation
    assert_coefficients_match_samples(rep, lambdas)

    assert check_representation_at(rep, [0]).holds
    assert not check_representation_at(rep, lambdas).holds


@settings(max_examples=50, deadline=None)
@given(matrices, matrices, samples)
def test_mat_representation_coefficients(q, q_op, lambdas):
    rep = BunchRepresentation(Pencil(GL2, sandwich(q)), UNITS, q_op)
    assert_coefficients_match_samples(rep, lambdas)

    split = check_representation(rep)
    assert split.clause('lambda^0').holds
    assert split.clause('lambda^1').holds == (q == q_op)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_myb_diagonal_operators_have_lie_tangent(values):
    r = LinearOperator.diagonal(values)

    if check_myb(SL2.algebra, r).holds:
        assert check_tangent_jacobi(SL2.algebra, r).holds


@settings(max_examples=30, deadline=None)
@given(matrices, matrices, rationals)
def test_perturbed_multiplication_has_lie_tangent(q, z, lam):
    # [ad Z, L_Q] = L_{[Z, Q]}, so the perturbation stays a multiplication
    left, _ = mult_operators(MAT2, mat_element(q))
    r = left + op_commutator(ad(GL2, mat_element(z)), left) * lam

    assert check_myb(GL2, r).holds
    assert check_tangent_jacobi(GL2, r).holds


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-1, 1), min_size=9, max_size=9))
def test_derivation_iff_trivial_tangent_bracket(values):
    r = LinearOperator.from_matrix(Matrix([values[:3], values[3:6],
                                           values[6:]]))

    assert is_derivation(r, SO3).holds == \
        tangent_bracket(SO3, r).tensor.is_zero()


@settings(max_examples=30, deadline=None)
@given(coordinates(3), coordinates(4))
def test_inner_derivations_have_trivial_tangent_bracket(z_so3, z_gl2):
    for br, z in ((SO3, z_so3), (GL2, z_gl2)):
        r = ad(br, z)

        assert is_derivation(r, br).holds
        assert tangent_bracket(br, r).tensor.is_zero()
