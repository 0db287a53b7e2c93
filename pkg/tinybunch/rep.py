"""
Representations of linear bunches and the diamond product.

A representation of the pencil ``[., .] + lam [., .]'`` is a linear map ``T``
into ``d x d`` matrices with an operator ``Q_R`` such that

    T([X, Y]_lam) = T(X) (1 + lam Q_R) T(Y) - T(Y) (1 + lam Q_R) T(X)

Comparing coefficients of ``lam`` splits this into an ordinary
representation condition for the base bracket and a "sandwich" condition for
the direction. A family of compatible brackets that contains a representable
pencil must be closed under the Z-dependent diamond product.
"""
import itertools
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence

from .bunch import MIN_LAMBDA_SAMPLES, MYBAlgebra, Pencil, _distinct, \
    check_compatible, check_myb
from .errors import UnsupportedError
from .liecore import (BracketMap, Element, LinearOperator, Window,
                      _check_dims, ad, check_jacobi, op_commutator)
from .ratlin import Matrix, RationalLike, SparseTensor3, Vector, rank, \
    span_membership
from .reports import CheckReport, sweep, sweep_basis

__all__ = ('BunchRepresentation', 'BracketFamily', 'check_representation',
           'check_representation_at', 'check_faithful', 'diamond_product',
           'check_family_closure', 'check_corollary', 'corollary_z_set',
           'check_homomorphism_obstruction')

_HALF = Fraction(1, 2)


class BunchRepresentation:
    """
    A linear map from a finite pencil into square matrices.

    :param source: the represented pencil
    :param images: the matrices ``T(b_0), ..., T(b_{n-1})``
    :param q_op: the operator ``Q_R``
    :raises ValueError: on a graded pencil or mismatched shapes
    """

    def __init__(self, source: Pencil, images: Sequence[Matrix],
                 q_op: Matrix):
        if source.dim is None:
            raise ValueError('only finite pencils have matrix '
                             'representations')

        if len(images) != source.dim:
            raise ValueError('{} images for a {}-dimensional algebra'
                             .format(len(images), source.dim))

        d = q_op.rows
        for index, image in enumerate(list(images) + [q_op]):
            if image.shape != (d, d):
                what = 'Q_R' if index == len(images) else \
                    'T(b_{})'.format(index)
                raise ValueError('{} has shape {}, expected {}'
                                 .format(what, image.shape, (d, d)))

        self.source = source
        self.images = tuple(images)
        self.q_op = q_op

    @property
    def target_dim(self) -> int:
        return self.q_op.rows

    def image(self, x: Element) -> Matrix:
        """
        ``T(X)``, extended linearly from the basis images.
        """
        d = self.target_dim
        result = Matrix.zeros(d, d)
        for i, c in x.items():
            result = result + self.images[i] * c

        return result

    def __repr__(self):
        return '<{} source={!r}, target_dim={}>'.format(
            type(self).__name__, self.source.label, self.target_dim)


def _sandwich(a: Matrix, middle: Matrix, b: Matrix) -> Matrix:
    return a @ middle @ b - b @ middle @ a


def check_representation(rep: BunchRepresentation,
                         window: Window = None) -> CheckReport:
    """
    Check the representation identity coefficient by coefficient:

    - ``lambda^0``: ``T([X, Y]) = T(X)T(Y) - T(Y)T(X)``,
    - ``lambda^1``: ``T([X, Y]') = T(X)Q T(Y) - T(Y)Q T(X)``.

    Each clause is reported separately; matrices are the sides of the
    counterexamples.
    """
    pencil, t = rep.source, rep.image
    identity = Matrix.identity(rep.target_dim)
    e = Element.basis
    indices = range(rep.source.dim or 0)

    def constant(i, j):
        x, y = e(i), e(j)
        return t(pencil.base(x, y)), _sandwich(t(x), identity, t(y))

    def linear(i, j):
        x, y = e(i), e(j)
        return t(pencil.direction(x, y)), _sandwich(t(x), rep.q_op, t(y))

    clauses = [sweep_basis('lambda^0', indices, 2, constant),
               sweep_basis('lambda^1', indices, 2, linear)]

    return CheckReport.combine('representation', clauses)


def check_representation_at(rep: BunchRepresentation,
                            lambdas: Sequence[RationalLike]) -> CheckReport:
    """
    Check the full representation identity at each sample ``lam``.
    """
    t = rep.image
    identity = Matrix.identity(rep.target_dim)
    e = Element.basis
    indices = range(rep.source.dim or 0)
    clauses = []

    for lam in _distinct(lambdas):
        bracket = rep.source.bracket_at(lam)
        middle = identity + rep.q_op * lam

        def sides(i, j, bracket=bracket, middle=middle):
            x, y = e(i), e(j)
            return t(bracket(x, y)), _sandwich(t(x), middle, t(y))

        name = 'lambda={}'.format(lam)
        clauses.append(sweep_basis(name, indices, 2, sides, clause=name))

    return CheckReport.combine('representation at samples', clauses)


def check_faithful(rep: BunchRepresentation) -> CheckReport:
    """
    Check that the images ``T(b_i)`` are linearly independent.

    A failing report compares the rank found with the dimension.
    """
    n = len(rep.images)
    found = rank(Matrix([image.flatten() for image in rep.images],
                        cols=rep.target_dim ** 2))

    return sweep('faithful', [()], lambda: (found, n))


class BracketFamily:
    """
    A spanning set of brackets on a common finite basis.

    Membership in the span is decided on the flattened structure constants.
    """

    def __init__(self, members: Sequence[BracketMap], label: str = 'family'):
        if not members:
            raise ValueError('a bracket family needs at least one member')

        self._dim = _check_dims(*(br.dim for br in members))
        if self._dim is None:
            raise ValueError('bracket families need finite brackets')

        self.members = tuple(members)
        self.label = label
        self._span = [br.tensor.flatten() for br in members]

    @property
    def dim(self) -> int:
        assert self._dim is not None
        return self._dim

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[BracketMap]:
        return iter(self.members)

    def __getitem__(self, index: int) -> BracketMap:
        return self.members[index]

    def coordinates(self, tensor: SparseTensor3) -> Optional[Vector]:
        """
        Coefficients expressing ``tensor`` in the members, or ``None``.
        """
        return span_membership(self._span, tensor.flatten())

    def combination(self, coefficients: Sequence[RationalLike]
                    ) -> SparseTensor3:
        result = SparseTensor3(self.dim)
        for c, br in zip(coefficients, self.members):
            result = result + br.tensor * c

        return result

    def __repr__(self):
        return '<{} label={!r}, members={}, dim={}>'.format(
            type(self).__name__, self.label, len(self), self.dim)


def diamond_product(br_a: BracketMap, br_b: BracketMap,
                    z: Element) -> BracketMap:
    """
    The bracket ``[X, Y]_{a <> b}`` depending on ``Z``::

        1/2 ([[X, Z]_a, Y]_b + [[X, Y]_a, Z]_b + [[Z, Y]_a, X]_b
             - [[X, Z]_b, Y]_a - [[X, Y]_b, Z]_a - [[Z, Y]_b, X]_a)

    It is antisymmetric in the pair ``(a, b)`` and linear in ``Z``.
    """
    dim = _check_dims(br_a.dim, br_b.dim)
    if dim is None:
        raise ValueError('the diamond product needs finite brackets')

    def half(first: BracketMap, second: BracketMap, x: Element,
             y: Element) -> Element:
        return (second(first(x, z), y) + second(first(x, y), z) +
                second(first(z, y), x))

    def func(x: Element, y: Element) -> Element:
        return (half(br_a, br_b, x, y) - half(br_b, br_a, x, y)) * _HALF

    return BracketMap.from_function(
        dim, func, label='{}<>{}'.format(br_a.label, br_b.label))


def check_family_closure(fam: BracketFamily,
                         window: Window = None) -> CheckReport:
    """
    Check that a family of compatible Lie brackets is closed under the
    diamond product.

    The members are first checked to be Lie and pairwise compatible. Then,
    since the product is bilinear in the bracket pair and linear in ``Z``,
    every ordered member pair ``(a, b)`` and basis vector ``Z`` is tried; the
    counterexample indices are ``(a, b, Z)``.
    """
    members = list(fam)
    gates: List[CheckReport] = []
    for index, member in enumerate(members):
        gates.append(CheckReport.combine('jacobi({})'.format(index),
                                         [check_jacobi(member)]))
    for a, b in itertools.combinations(range(len(members)), 2):
        gates.append(CheckReport.combine(
            'compatibility({}, {})'.format(a, b),
            [check_compatible(members[a], members[b])]))

    if not all(gates):
        return CheckReport.combine('family closure', gates)

    def sides(a, b, k):
        product = diamond_product(members[a], members[b],
                                  Element.basis(k)).tensor
        coefficients = fam.coordinates(product)
        if coefficients is None:
            return product, None

        return product, fam.combination(coefficients)

    closure = sweep('closed under diamond product',
                    itertools.product(range(len(members)),
                                      range(len(members)), range(fam.dim)),
                    sides)

    return CheckReport.combine('family closure', gates + [closure])


def corollary_z_set(dim: int) -> List[Element]:
    """
    The basis vectors followed by all pairwise sums ``b_a + b_b``, ``a < b``.

    A quadratic function of ``Z`` vanishing on this set vanishes everywhere.
    """
    e = Element.basis
    return [e(a) for a in range(dim)] + \
        [e(a) + e(b) for a, b in itertools.combinations(range(dim), 2)]


def check_corollary(m: MYBAlgebra, lambdas: Sequence[RationalLike],
                    window: Window = None) -> CheckReport:
    """
    Check that ``(g, R + lam [ad Z, R])`` is an mYB algebra for every ``Z``.

    The defect is a polynomial of degree two in ``lam`` and quadratic in
    ``Z``, so three samples of ``lam`` and :func:`corollary_z_set` certify
    it. There is one clause per ``(Z, lam)`` cell.

    :raises ValueError: with fewer than three distinct samples
    :raises UnsupportedError: on a graded algebra
    """
    samples = _distinct(lambdas)
    if len(samples) < MIN_LAMBDA_SAMPLES:
        raise ValueError('need at least {} distinct lambda samples, got {}'
                         .format(MIN_LAMBDA_SAMPLES, len(samples)))

    br, r = m.algebra, m.R
    if br.dim is None:
        raise UnsupportedError('the perturbation [ad Z, R] needs a finite '
                               'algebra')

    clauses = []
    for z in corollary_z_set(br.dim):
        perturbation = op_commutator(ad(br, z), r)
        for lam in samples:
            name = 'Z={}, lambda={}'.format(dict(z), lam)
            clauses.append(CheckReport.combine(
                name, [check_myb(br, r + perturbation * lam, window)]))

    return CheckReport.combine('perturbed operators are mYB', clauses)


def check_homomorphism_obstruction(rep: BunchRepresentation,
                                   op: LinearOperator,
                                   anchor: int) -> CheckReport:
    """
    Check the facts that rule out a bunch homomorphism into a matrix bi-mYB
    structure: ``T(anchor)`` is invertible, ``R`` kills the anchor, and
    ``T`` does not vanish on the image of ``R``.
    """
    t = rep.image
    n = len(rep.images)
    _check_dims(n, op.dim)
    anchor_vector = Element.basis(anchor)

    def invertible():
        return t(anchor_vector).determinant() != 0, True

    def kills(i):
        return op(Element.basis(i)), Element()

    def nonvanishing():
        return any(not t(op(Element.basis(i))).is_zero()
                   for i in range(n)), True

    clauses = [sweep('T(anchor) invertible', [()], invertible),
               sweep_basis('R(anchor) = 0', [anchor], 1, kills),
               sweep('T(R b_i) != 0 for some i', [()], nonvanishing)]

    return CheckReport.combine('homomorphism obstruction', clauses)
