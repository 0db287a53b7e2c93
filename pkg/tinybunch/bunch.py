"""
Pencils of Lie brackets and the modified Yang-Baxter identity.

A *pencil* (or bunch) is one linear space with a family of brackets
``[., .]_lam = base + lam * direction``, optionally with operators
``R_lam = 1 + lam * R``. It is a Gamma-bunch when every ``R_lam`` is a
homomorphism into the base algebra:

    R_lam [X, Y]_lam = [R_lam X, R_lam Y]

For ``R_lam = 1 + lam * R`` both sides are polynomials of degree two in
``lam``, so three sample values certify the identity. A pair ``(g, R)``
whose tangent bracket ``[X, Y]_R = [RX, Y] + [X, RY] - R[X, Y]`` satisfies

    R[RX, Y] + R[X, RY] = [RX, RY] + R^2 [X, Y]

is an mYB algebra; every such pair gives a linear Gamma-bunch
(:func:`make_gamma_bunch`) and every linear Gamma-bunch gives one
(:func:`myb_from_pencil`).
"""
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import IdentityViolation, InputError
from .liecore import (BracketMap, Element, LinearOperator, Window,
                      _check_dims, basis_window, check_jacobi, indices_of)
from .ratlin import RationalLike, parse_rational
from .reports import CheckReport, Counterexample, sweep_basis

__all__ = ('Pencil', 'MYBAlgebra', 'tangent_bracket', 'primed_bracket',
           'b_defect', 'check_myb', 'check_mcybe_variant',
           'check_primed_lie_condition', 'check_compatible',
           'check_remark2_criterion', 'make_gamma_bunch',
           'check_gamma_homomorphism', 'check_tangent_of_pencil',
           'myb_from_pencil', 'check_bracket_equal', 'check_operator_identity',
           'check_operator_moves_basis', 'check_operators_commute',
           'check_tangent_jacobi', 'MIN_LAMBDA_SAMPLES')

# Both sides of the homomorphism identity have degree <= 2 in lambda
MIN_LAMBDA_SAMPLES = 3


class Pencil:
    """
    A linear family of brackets ``base + lam * direction``.

    With ``[., .]_1 = base + direction`` this is the family
    ``(1 - lam) [., .] + lam [., .]_1``; :meth:`from_endpoints` converts from
    that form.

    :param base: the bracket at ``lam = 0``
    :param direction: the derivative of the family in ``lam``
    :param operator: ``R`` of the operator family ``R_lam = 1 + lam * R``
    :param label: a display name
    """

    def __init__(self, base: BracketMap, direction: BracketMap,
                 operator: Optional[LinearOperator] = None,
                 label: str = 'pencil'):
        dims = [base.dim, direction.dim]
        if operator is not None:
            dims.append(operator.dim)

        _check_dims(*dims)

        self.base = base
        self.direction = direction
        self.operator = operator
        self.label = label

    @classmethod
    def from_endpoints(cls, bracket0: BracketMap, bracket1: BracketMap,
                       operator: Optional[LinearOperator] = None,
                       label: str = 'pencil') -> 'Pencil':
        """
        The pencil through ``[., .]_0`` and ``[., .]_1``.
        """
        return cls(bracket0, bracket1 - bracket0, operator, label)

    @property
    def dim(self) -> Optional[int]:
        return self.base.dim

    def bracket_at(self, lam: RationalLike) -> BracketMap:
        """
        The bracket ``[., .]_lam``.
        """
        c = parse_rational(lam)
        base, direction = self.base, self.direction

        def func(x: Element, y: Element) -> Element:
            return base(x, y) + direction(x, y) * c

        return BracketMap.derived(base, func,
                                  '{}[{}]'.format(self.label, c))

    def operator_at(self, lam: RationalLike) -> LinearOperator:
        """
        The operator ``R_lam = 1 + lam * R``.
        """
        if self.operator is None:
            raise ValueError('{} has no operator family'.format(self.label))

        c = parse_rational(lam)
        return LinearOperator.identity(self.operator.dim) + self.operator * c

    def __repr__(self):
        args = ['label={!r}'.format(self.label),
                'base={!r}'.format(self.base.label),
                'direction={!r}'.format(self.direction.label)]
        if self.operator is not None:
            args.append('operator={!r}'.format(self.operator.label))

        return '<{} {}>'.format(type(self).__name__, ', '.join(args))


@dataclass(frozen=True)
class MYBAlgebra:
    """
    A Lie algebra with an operator, meant to satisfy the mYB identity on
    ``window`` (see :meth:`verify`).
    """

    algebra: BracketMap
    R: LinearOperator
    window: Window = None

    def verify(self) -> CheckReport:
        return check_myb(self.algebra, self.R, self.window)


def tangent_bracket(br: BracketMap, op: LinearOperator) -> BracketMap:
    """
    The tangent bracket ``[X, Y]_R = [RX, Y] + [X, RY] - R[X, Y]``.
    """
    _check_dims(br.dim, op.dim)

    def func(x: Element, y: Element) -> Element:
        return br(op(x), y) + br(x, op(y)) - op(br(x, y))

    return BracketMap.derived(br, func,
                              '{}_{}'.format(br.label, op.label))


def primed_bracket(br: BracketMap, op: LinearOperator) -> BracketMap:
    """
    The bracket ``[X, Y]'_R = [RX, Y] + [X, RY]``.

    Each basis value is cross-checked against ``[X, Y]_R + R[X, Y]``.
    """
    _check_dims(br.dim, op.dim)
    tangent = tangent_bracket(br, op)

    def func(x: Element, y: Element) -> Element:
        value = br(op(x), y) + br(x, op(y))
        if value != tangent(x, y) + op(br(x, y)):
            raise ArithmeticError('primed bracket disagrees with the tangent '
                                  'bracket form')
        return value

    return BracketMap.derived(br, func,
                              "{}'_{}".format(br.label, op.label))


def _defect(br: BracketMap, op: LinearOperator, x: Element,
            y: Element) -> Element:
    rx, ry = op(x), op(y)
    compact = op(br(rx, y) + br(x, ry) - op(br(x, y))) - br(rx, ry)
    expanded = op(br(rx, y)) + op(br(x, ry)) - br(rx, ry) - \
        op(op(br(x, y)))
    if compact != expanded:
        raise ArithmeticError('compact and expanded defect disagree')

    return compact


def b_defect(br: BracketMap, op: LinearOperator, i: int, j: int) -> Element:
    """
    The defect ``B(b_i, b_j) = R[b_i, b_j]_R - [R b_i, R b_j]``.

    The compact form is cross-checked against the expanded one,
    ``R[RX, Y] + R[X, RY] - [RX, RY] - R^2[X, Y]``.
    """
    _check_dims(br.dim, op.dim)
    return _defect(br, op, Element.basis(i), Element.basis(j))


def _pair_indices(br: BracketMap, window: Window, *ops: LinearOperator):
    _check_dims(br.dim, *(op.dim for op in ops))
    return indices_of(br, window)


def _shared_indices(br1: BracketMap, br2: BracketMap,
                    window: Window) -> Sequence[int]:
    dim = _check_dims(br1.dim, br2.dim)
    if window is None and dim is None:
        defaults = {br1.default_window, br2.default_window} - {None}
        if len(defaults) > 1:
            raise InputError('window', 'brackets disagree on the default '
                             'window: {}'.format(sorted(defaults)))
        window = defaults.pop() if defaults else None

    return basis_window(dim, window)


def check_myb(br: BracketMap, op: LinearOperator,
              window: Window = None) -> CheckReport:
    """
    Check ``R[RX, Y] + R[X, RY] = [RX, RY] + R^2[X, Y]`` on basis pairs.
    """
    e = Element.basis

    def sides(i, j):
        x, y = e(i), e(j)
        rx, ry = op(x), op(y)
        return (op(br(rx, y) + br(x, ry)),
                br(rx, ry) + op(op(br(x, y))))

    return sweep_basis('mYB', _pair_indices(br, window, op), 2, sides)


def check_mcybe_variant(br: BracketMap, op: LinearOperator, c: RationalLike,
                        window: Window = None) -> CheckReport:
    """
    Check the classical normalization
    ``[RX, RY] - R[RX, Y] - R[X, RY] + c[X, Y] = 0`` on basis pairs.

    It agrees with :func:`check_myb` when ``R^2 = c``.
    """
    constant = parse_rational(c)
    zero = Element()
    e = Element.basis

    def sides(i, j):
        x, y = e(i), e(j)
        rx, ry = op(x), op(y)
        value = br(rx, ry) - op(br(rx, y)) - op(br(x, ry)) + \
            br(x, y) * constant
        return value, zero

    return sweep_basis('mCYBE(c={})'.format(constant),
                       _pair_indices(br, window, op), 2, sides)


def check_primed_lie_condition(br: BracketMap, op: LinearOperator,
                               window: Window = None) -> CheckReport:
    """
    Check ``[R^2[X, Y], Z] + c.p. = 0`` on basis triples.
    """
    zero = Element()
    e = Element.basis

    def sides(i, j, k):
        x, y, z = e(i), e(j), e(k)
        value = br(op(op(br(x, y))), z) + br(op(op(br(y, z))), x) + \
            br(op(op(br(z, x))), y)
        return value, zero

    return sweep_basis('primed Lie condition', _pair_indices(br, window, op),
                       3, sides)


def check_compatible(br1: BracketMap, br2: BracketMap,
                     window: Window = None) -> CheckReport:
    """
    Check the mixed Jacobi identity
    ``([[X, Y]_1, Z]_2 + [[X, Y]_2, Z]_1) + c.p. = 0`` on basis triples.

    For two Lie brackets this is equivalent to their sum being Lie.

    Graded brackets without an explicit ``window`` use their default
    window; two different defaults are an :class:`InputError`.
    """
    indices = _shared_indices(br1, br2, window)
    zero = Element()
    e = Element.basis

    def mixed(x, y, z):
        return br2(br1(x, y), z) + br1(br2(x, y), z)

    def sides(i, j, k):
        x, y, z = e(i), e(j), e(k)
        return mixed(x, y, z) + mixed(y, z, x) + mixed(z, x, y), zero

    return sweep_basis('compatibility', indices, 3, sides)


def check_remark2_criterion(br: BracketMap, op: LinearOperator,
                            window: Window = None) -> CheckReport:
    """
    Check ``([B(X, Y), Z] + B([X, Y], Z)) + c.p. = 0`` on basis triples.

    The tangent bracket is Lie exactly when this holds. When the mYB identity
    holds, ``B`` vanishes and so does every term.
    """
    indices = _pair_indices(br, window, op)
    zero = Element()
    e = Element.basis

    def term(x, y, z):
        return br(_defect(br, op, x, y), z) + _defect(br, op, br(x, y), z)

    def sides(i, j, k):
        x, y, z = e(i), e(j), e(k)
        return term(x, y, z) + term(y, z, x) + term(z, x, y), zero

    report = sweep_basis('tangent Jacobi criterion', indices, 3, sides)

    if not report.holds and check_myb(br, op, window).holds:
        raise ArithmeticError('criterion fails although the defect vanishes')

    return report


def check_bracket_equal(br1: BracketMap, br2: BracketMap,
                        window: Window = None,
                        name: str = 'bracket equality') -> CheckReport:
    """
    Check that two brackets agree on all basis pairs.
    The window is chosen as in :func:`check_compatible`.
    """
    indices = _shared_indices(br1, br2, window)

    def sides(i, j):
        return br1.basis_bracket(i, j), br2.basis_bracket(i, j)

    return sweep_basis(name, indices, 2, sides)


def check_operator_identity(op: LinearOperator, window: Window = None,
                            name: str = 'operator is identity'
                            ) -> CheckReport:
    """
    Check ``R b_i = b_i`` for the basis vectors of the window.

    A failing report carries an explicit witness index.
    """
    def sides(i):
        return op.apply_basis(i), Element.basis(i)

    return sweep_basis(name, basis_window(op.dim, window), 1, sides)


def check_operator_moves_basis(op: LinearOperator, window: Window = None,
                               name: str = 'operator is not identity'
                               ) -> CheckReport:
    """
    Check that R b_i != b_i for some basis vector of the window.

    The first moved basis vector is named in the notes. When R fixes the
    whole window the counterexample has no indices.
    """
    fixed = check_operator_identity(op, window)
    if fixed.holds:
        return CheckReport(name, False, fixed.tuples_checked,
                           counterexample=Counterexample(
                               (), 'R b_i = b_i on the window',
                               'some R b_i != b_i', name))

    witness = fixed.counterexample
    assert witness is not None
    (i,) = witness.indices
    return CheckReport(name, True, fixed.tuples_checked,
                       notes=('R b_{} = {!r}'.format(i, witness.lhs),))


def check_operators_commute(a: LinearOperator, b: LinearOperator,
                            window: Window = None) -> CheckReport:
    """
    Check ``AB b_i = BA b_i`` for the basis vectors of the window.
    """
    dim = _check_dims(a.dim, b.dim)

    def sides(i):
        x = Element.basis(i)
        return a(b(x)), b(a(x))

    return sweep_basis('commuting operators', basis_window(dim, window), 1,
                       sides)


def make_gamma_bunch(m: MYBAlgebra) -> Pencil:
    """
    The linear Gamma-bunch of an mYB algebra: brackets
    ``[., .] + lam [., .]_R`` and homomorphisms ``1 + lam R``.

    :raises IdentityViolation: if the mYB identity fails on ``m.window``
    """
    report = m.verify()
    if not report.holds:
        raise IdentityViolation(report)

    return Pencil(m.algebra, tangent_bracket(m.algebra, m.R), m.R,
                  label='Gamma({}, {})'.format(m.algebra.label, m.R.label))


def _distinct(lambdas: Sequence[RationalLike]):
    values = []
    for lam in lambdas:
        value = parse_rational(lam)
        if value not in values:
            values.append(value)

    return values


def check_gamma_homomorphism(p: Pencil, lambdas: Sequence[RationalLike],
                             window: Window = None,
                             certify: bool = True) -> CheckReport:
    """
    Check ``R_lam [X, Y]_lam = [R_lam X, R_lam Y]`` at each sample ``lam``.

    Both sides are polynomials of degree at most two in ``lam``, so three
    distinct samples prove the identity for all ``lam``. With
    ``certify=False`` fewer samples are accepted as a spot check.

    :raises ValueError: without an operator family, or with fewer than three
                        distinct samples when certifying
    """
    if p.operator is None:
        raise ValueError('{} has no operator family'.format(p.label))

    samples = _distinct(lambdas)
    if certify and len(samples) < MIN_LAMBDA_SAMPLES:
        raise ValueError('need at least {} distinct lambda samples to '
                         'certify, got {}'.format(MIN_LAMBDA_SAMPLES,
                                                  len(samples)))
    if not samples:
        raise ValueError('no lambda samples given')

    indices = indices_of(p.base, window)
    base = p.base
    e = Element.basis
    clauses = []

    for lam in samples:
        bracket = p.bracket_at(lam)
        r_lam = p.operator_at(lam)

        def sides(i, j, bracket=bracket, r_lam=r_lam):
            x, y = e(i), e(j)
            return r_lam(bracket(x, y)), base(r_lam(x), r_lam(y))

        clauses.append(sweep_basis('lambda={}'.format(lam), indices, 2,
                                   sides, clause='lambda={}'.format(lam)))

    notes = () if certify else ('spot check, not a certificate',)
    return CheckReport.combine('Gamma homomorphism', clauses, notes)


def check_tangent_of_pencil(p: Pencil, window: Window = None) -> CheckReport:
    """
    Check that a pencil's direction is the tangent bracket of its base and
    operator, as it is for every linear Gamma-bunch.
    """
    if p.operator is None:
        raise ValueError('{} has no operator family'.format(p.label))

    return check_bracket_equal(p.direction,
                               tangent_bracket(p.base, p.operator), window,
                               name='direction is tangent bracket')


def myb_from_pencil(p: Pencil, lambdas: Sequence[RationalLike],
                    window: Window = None) -> MYBAlgebra:
    """
    The mYB algebra ``(base, R)`` of a linear Gamma-bunch.

    :raises IdentityViolation: if the pencil is not a Gamma-bunch or the
                               resulting pair fails the mYB identity
    """
    report = check_gamma_homomorphism(p, lambdas, window)
    if not report.holds:
        raise IdentityViolation(report)

    assert p.operator is not None
    m = MYBAlgebra(p.base, p.operator, window)
    report = m.verify()
    if not report.holds:
        raise IdentityViolation(report)

    return m


def check_tangent_jacobi(br: BracketMap, op: LinearOperator,
                         window: Window = None) -> CheckReport:
    """
    Check the Jacobi identity of the tangent bracket.
    """
    return check_jacobi(tangent_bracket(br, op), window)

