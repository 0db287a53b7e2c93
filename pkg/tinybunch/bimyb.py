"""
Associative algebras and bi-mYB structures.

The commutator ``XY - YX`` of an associative algebra is a Lie bracket, and the
left and right multiplications by a fixed element ``Q`` are both mYB
operators for it, with the same tangent bracket ``XQY - YQX``. Two commuting
mYB operators with identical tangent brackets form a *bi-mYB* structure;
their difference ``xi`` is a derivation.

>>> from tinybunch.catalog import make_assoc_mat, mat_element
>>> from tinybunch.ratlin import Matrix
>>> mat2 = make_assoc_mat(2)
>>> check_prop4(mat2, mat_element(Matrix.diagonal([1, 0]))).holds
True
"""
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .bunch import (check_bracket_equal, check_compatible, check_myb,
                    check_operators_commute, tangent_bracket)
from .errors import IdentityViolation
from .liecore import (BracketMap, Element, LinearOperator, Window,
                      _check_dims, check_jacobi, combination, indices_of,
                      is_derivation, op_polynomial)
from .ratlin import Matrix, RationalLike, SparseTensor3
from .reports import CheckReport, sweep_basis

__all__ = ('AssocAlgebra', 'BiMYB', 'check_associativity',
           'commutator_algebra', 'mult_operators', 'sandwich_bracket',
           'check_prop4', 'check_bimyb', 'check_remark4', 'check_remark5',
           'q_bracket', 'check_remark6', 'check_even_tempered',
           'bimyb_polynomial', 'check_prop5')


def check_associativity(product: SparseTensor3) -> CheckReport:
    """
    Check ``(b_i b_j) b_k = b_i (b_j b_k)`` on all basis triples.
    """
    multiply = _multiplication(product)
    e = Element.basis

    def sides(i, j, k):
        return (multiply(multiply(e(i), e(j)), e(k)),
                multiply(e(i), multiply(e(j), e(k))))

    return sweep_basis('associativity', range(product.dim), 3, sides)


def _multiplication(product: SparseTensor3):
    table: Dict[Tuple[int, int], List[Tuple[int, Fraction]]] = \
        defaultdict(list)
    for (i, j, k), value in product.items():
        table[(i, j)].append((k, value))

    basis_products = {key: Element(terms) for key, terms in table.items()}
    zero = Element()

    def multiply(x: Element, y: Element) -> Element:
        return combination((cx * cy, basis_products.get((i, j), zero))
                           for i, cx in x.items() for j, cy in y.items())

    return multiply


class AssocAlgebra:
    """
    A finite-dimensional associative algebra.

    The product is given by constants ``a_ij^k`` with
    ``b_i b_j = sum_k a_ij^k b_k``. Associativity (and the unit, if given)
    is checked on construction.

    :param product: the structure constants of the product
    :param unit: the unit element, if any
    :param label: a display name
    :param names: display names of the basis vectors
    :raises IdentityViolation: if the product is not associative or the unit
                               is not a unit
    """

    def __init__(self, product: SparseTensor3,
                 unit: Optional[Element] = None, label: str = 'A',
                 names: Optional[Sequence[str]] = None):
        report = check_associativity(product)
        if not report.holds:
            raise IdentityViolation(report)

        self._product = product
        self._multiply = _multiplication(product)
        self.label = label
        self.names = tuple(names) if names is not None else None

        if unit is not None:
            unit.to_vector(product.dim)
            e = Element.basis

            def sides(i):
                x = e(i)
                both = (self._multiply(unit, x), self._multiply(x, unit))
                return both, (x, x)

            report = sweep_basis('unit', range(product.dim), 1, sides)
            if not report.holds:
                raise IdentityViolation(report)

        self.unit = unit

    @property
    def dim(self) -> int:
        return self._product.dim

    @property
    def product(self) -> SparseTensor3:
        return self._product

    def __call__(self, x: Element, y: Element) -> Element:
        return self._multiply(x, y)

    multiply = __call__

    def __repr__(self):
        return '<{} label={!r}, dim={}>'.format(type(self).__name__,
                                                self.label, self.dim)


@dataclass(frozen=True)
class BiMYB:
    """
    A Lie algebra with two operators, meant to be commuting mYB operators
    with identical tangent brackets (see :func:`check_bimyb`).
    """

    algebra: BracketMap
    R1: LinearOperator
    R2: LinearOperator


def commutator_algebra(a: AssocAlgebra) -> BracketMap:
    """
    The Lie algebra of ``a`` with bracket ``XY - YX``.
    """
    return BracketMap.from_function(a.dim, lambda x, y: a(x, y) - a(y, x),
                                    label='[{}]'.format(a.label))


def mult_operators(a: AssocAlgebra,
                   q: Element) -> Tuple[LinearOperator, LinearOperator]:
    """
    The left and right multiplications ``X -> QX`` and ``X -> XQ``.
    """
    q.to_vector(a.dim)
    e = Element.basis
    left = Matrix.from_columns([a(q, e(j)).to_vector(a.dim)
                                for j in range(a.dim)], rows=a.dim)
    right = Matrix.from_columns([a(e(j), q).to_vector(a.dim)
                                 for j in range(a.dim)], rows=a.dim)

    return (LinearOperator.from_matrix(left, label='L_Q'),
            LinearOperator.from_matrix(right, label='R_Q'))


def sandwich_bracket(a: AssocAlgebra, q: Element) -> BracketMap:
    """
    The bracket ``XQY - YQX``.
    """
    def func(x: Element, y: Element) -> Element:
        return a(a(x, q), y) - a(a(y, q), x)

    return BracketMap.from_function(a.dim, func, label='XQY-YQX')


def check_prop4(a: AssocAlgebra, q: Element,
                window: Window = None) -> CheckReport:
    """
    Check that left and right multiplication by ``q`` are mYB operators of
    the commutator algebra, both with tangent bracket ``XQY - YQX``.
    """
    br = commutator_algebra(a)
    left, right = mult_operators(a, q)
    target = sandwich_bracket(a, q)

    clauses = [
        _named(check_myb(br, left, window), 'mYB(left)'),
        _named(check_myb(br, right, window), 'mYB(right)'),
        check_bracket_equal(tangent_bracket(br, left), target, window,
                            name='tangent(left) = XQY-YQX'),
        check_bracket_equal(tangent_bracket(br, right), target, window,
                            name='tangent(right) = XQY-YQX'),
    ]

    return CheckReport.combine('multiplications are mYB', clauses)


def _named(report: CheckReport, name: str) -> CheckReport:
    return CheckReport.combine(name, [report])


def check_bimyb(b: BiMYB, window: Window = None) -> CheckReport:
    """
    Check the bi-mYB conditions: the operators commute, both satisfy the mYB
    identity, and their tangent brackets are identical.

    The counterexample names the first failing condition.
    """
    br = b.algebra
    _check_dims(br.dim, b.R1.dim, b.R2.dim)

    clauses = [
        check_operators_commute(b.R1, b.R2, window),
        _named(check_myb(br, b.R1, window), 'mYB(R1)'),
        _named(check_myb(br, b.R2, window), 'mYB(R2)'),
        check_bracket_equal(tangent_bracket(br, b.R1),
                            tangent_bracket(br, b.R2), window,
                            name='identical tangent brackets'),
    ]

    return CheckReport.combine('bi-mYB', clauses)


def check_remark4(b: BiMYB, window: Window = None) -> CheckReport:
    """
    Check that ``R1 - R2`` is a derivation of the bracket.
    """
    return _named(is_derivation(b.R1 - b.R2, b.algebra, window),
                  'R1 - R2 is a derivation')


def check_remark5(algebra: BracketMap, r: LinearOperator,
                  xi: LinearOperator, window: Window = None) -> CheckReport:
    """
    Check the conditions under which ``(R, R + xi)`` is bi-mYB:

    (a) ``xi`` is a derivation,
    (b) ``xi`` commutes with ``R``,
    (c) ``[xi X, xi Y] = [SX, Y] + [X, SY] - S[X, Y]`` with ``S = R xi``,
    (d) ``xi`` is also a derivation of the tangent bracket of ``R``.
    """
    s = r @ xi
    e = Element.basis

    def sides(i, j):
        x, y = e(i), e(j)
        return (algebra(xi(x), xi(y)),
                algebra(s(x), y) + algebra(x, s(y)) - s(algebra(x, y)))

    clauses = [
        _named(is_derivation(xi, algebra, window), 'xi is a derivation'),
        check_operators_commute(xi, r, window),
        sweep_basis('[xi X, xi Y] = [X, Y]_S', indices_of(algebra, window),
                    2, sides),
        _named(is_derivation(xi, tangent_bracket(algebra, r), window),
               'xi is a derivation of the tangent bracket'),
    ]

    return CheckReport.combine('derivation shift is bi-mYB', clauses)


def q_bracket(a: AssocAlgebra, q: Element) -> BracketMap:
    """
    The bracket ``[R^r X, R^l Y] + [R^l X, R^r Y] - R^r R^l [X, Y]`` of the
    commutator algebra, with ``R^l``/``R^r`` the multiplications by ``q``.
    """
    br = commutator_algebra(a)
    left, right = mult_operators(a, q)

    def func(x: Element, y: Element) -> Element:
        return br(right(x), left(y)) + br(left(x), right(y)) - \
            right(left(br(x, y)))

    return BracketMap.from_function(a.dim, func, label='[,]^q')


def check_remark6(a: AssocAlgebra, q: Element,
                  window: Window = None) -> CheckReport:
    """
    Check that the q-bracket is Lie, equals the tangent brackets of ``R1^2``
    and ``R2^2``, and is compatible with the bracket and with the shared
    tangent bracket.
    """
    br = commutator_algebra(a)
    left, right = mult_operators(a, q)
    qbr = q_bracket(a, q)
    tangent = tangent_bracket(br, right)

    clauses = [
        _named(check_jacobi(qbr, window), 'q-bracket is Lie'),
        check_bracket_equal(qbr, tangent_bracket(br, right @ right), window,
                            name='q-bracket = tangent(R1^2)'),
        check_bracket_equal(qbr, tangent_bracket(br, left @ left), window,
                            name='q-bracket = tangent(R2^2)'),
        _named(check_compatible(qbr, br, window),
               'q-bracket compatible with bracket'),
        _named(check_compatible(qbr, tangent, window),
               'q-bracket compatible with tangent bracket'),
    ]

    return CheckReport.combine('q-bracket', clauses)


def check_even_tempered(b: BiMYB, window: Window = None) -> CheckReport:
    """
    Check the even-tempered identity

        [R1 X, R2 Y] + [R2 X, R1 Y] - R1 R2 [X, Y]
            = [R1^2 X, Y] + [X, R1^2 Y] - R1^2 [X, Y]

    together with its form in ``R = R1`` and ``xi = R2 - R1``:

        [RX, xi Y] + [xi X, RY] - R xi [X, Y]
            = [R^2 X, Y] - 2 [RX, RY] + [X, R^2 Y]

    The two agree identically. The variant with ``R2^2`` on the right is
    recorded as a note.
    """
    br, r1, r2 = b.algebra, b.R1, b.R2
    _check_dims(br.dim, r1.dim, r2.dim)
    indices = indices_of(br, window)
    e = Element.basis

    def mixed(x, y):
        return br(r1(x), r2(y)) + br(r2(x), r1(y)) - r1(r2(br(x, y)))

    def square_tangent(op):
        def value(x, y):
            return br(op(op(x)), y) + br(x, op(op(y))) - op(op(br(x, y)))
        return value

    first, second = square_tangent(r1), square_tangent(r2)
    xi = r2 - r1

    def clause1(i, j):
        return mixed(e(i), e(j)), first(e(i), e(j))

    def clause2(i, j):
        return mixed(e(i), e(j)), second(e(i), e(j))

    def reformulated_sides(i, j):
        x, y = e(i), e(j)
        rx, ry = r1(x), r1(y)
        return (br(rx, xi(y)) + br(xi(x), ry) - r1(xi(br(x, y))),
                br(r1(rx), y) - br(rx, ry) * 2 + br(x, r1(ry)))

    definition = sweep_basis('even-tempered (R1^2)', indices, 2, clause1)
    reformulated = sweep_basis('even-tempered (R, xi)', indices, 2,
                               reformulated_sides)
    if definition.holds != reformulated.holds:
        raise ArithmeticError('the two even-tempered forms disagree')

    other = sweep_basis('even-tempered (R2^2)', indices, 2, clause2)
    note = 'second identity (R2^2): {}'.format(
        'holds' if other.holds else 'fails')

    return CheckReport.combine('even-tempered', [definition, reformulated],
                               notes=[note])


def bimyb_polynomial(b: BiMYB, coeffs: Sequence[RationalLike]) -> BiMYB:
    """
    The triple ``(g, f(R1), f(R2))``.
    """
    return BiMYB(b.algebra, op_polynomial(coeffs, b.R1),
                 op_polynomial(coeffs, b.R2))


def check_prop5(b: BiMYB, coeffs: Sequence[RationalLike],
                window: Window = None) -> CheckReport:
    """
    Check that ``(g, f(R1), f(R2))`` is bi-mYB.
    """
    return _named(check_bimyb(bimyb_polynomial(b, coeffs), window),
                  'polynomial bi-mYB')
