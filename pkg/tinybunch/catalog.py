"""
Built-in algebras, operators, pencils and representations.

The builders return ready-to-check objects:

>>> from tinybunch.catalog import make_witt, make_witt_shift
>>> from tinybunch.bunch import check_myb
>>> check_myb(make_witt(8), make_witt_shift(1)).holds
True

The registry (:data:`CATALOG`) names parameterized entries that can be
exported to input documents, e.g. ``witt?W=8&n=2``.
"""
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import (Callable, Dict, List, Mapping, NamedTuple, Optional,
                    Sequence, Tuple)
from urllib.parse import parse_qsl

from .bimyb import (AssocAlgebra, commutator_algebra, mult_operators,
                    sandwich_bracket)
from .bunch import Pencil, tangent_bracket
from .liecore import BracketMap, Element, LinearOperator
from .ratlin import Matrix, SparseTensor3, parse_rational, \
    span_membership
from .reports import CheckReport, sweep_basis
from .rep import BracketFamily, BunchRepresentation

__all__ = ('DEFAULT_WINDOW', 'DEFAULT_LAMBDAS', 'make_so', 'make_assoc_mat',
           'make_sl2', 'make_witt', 'make_witt_shift', 'make_example2',
           'check_restriction_coherence', 'matrix_unit', 'mat_element',
           'element_matrix', 'skew_basis', 'bracket_from_matrices',
           'sandwich_family', 'CatalogEntry', 'CATALOG', 'lookup',
           'SL2Example', 'SkewEmbedding')

DEFAULT_WINDOW = 8
DEFAULT_LAMBDAS = (0, 1, 2)


def matrix_unit(n: int, a: int, b: int) -> Matrix:
    """
    The ``n x n`` matrix unit ``E_ab`` (0-based).
    """
    return Matrix([[1 if (r, c) == (a, b) else 0 for c in range(n)]
                   for r in range(n)], cols=n)


def mat_element(m: Matrix) -> Element:
    """
    A square matrix as an element of ``Mat(n)``, where ``E_ab`` is basis
    vector ``a * n + b``.
    """
    if not m.is_square():
        raise ValueError('expected a square matrix, got {}'.format(m.shape))

    return Element.from_vector(m.flatten())


def element_matrix(x: Element, n: int) -> Matrix:
    """
    The inverse of :func:`mat_element`.
    """
    values = x.to_vector(n * n)
    return Matrix([values[r * n:(r + 1) * n] for r in range(n)], cols=n)


def skew_basis(n: int) -> List[Matrix]:
    """
    The matrices ``E_ab - E_ba`` for ``a < b`` in lexicographic order.
    """
    return [matrix_unit(n, a, b) - matrix_unit(n, b, a)
            for a in range(n) for b in range(a + 1, n)]


def bracket_from_matrices(basis: Sequence[Matrix],
                          func: Callable[[Matrix, Matrix], Matrix],
                          label: str = 'bracket') -> BracketMap:
    """
    The bracket induced by ``func`` on the span of ``basis``.

    :raises ValueError: if some ``func(B_i, B_j)`` leaves the span
    """
    vectors = [m.flatten() for m in basis]
    entries: Dict[Tuple[int, int, int], Fraction] = {}

    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            coefficients = span_membership(vectors, func(x, y).flatten())
            if coefficients is None:
                raise ValueError('{} of basis matrices {} and {} leaves the '
                                 'span'.format(label, i, j))
            for k, c in enumerate(coefficients):
                if c:
                    entries[(i, j, k)] = c

    return BracketMap.from_tensor(SparseTensor3(len(basis), entries),
                                  label=label)


def _commutator(x: Matrix, y: Matrix) -> Matrix:
    return x @ y - y @ x


def make_so(n: int) -> BracketMap:
    """
    The skew-symmetric ``n x n`` matrices with the commutator, on the basis
    :func:`skew_basis`.

    :raises ValueError: for ``n < 2``
    """
    if n < 2:
        raise ValueError('so(n) needs n >= 2, got {}'.format(n))

    return bracket_from_matrices(skew_basis(n), _commutator,
                                 label='so({})'.format(n))


def make_assoc_mat(n: int) -> AssocAlgebra:
    """
    The algebra of ``n x n`` matrices on the matrix units, with
    ``E_ab E_cd = delta_bc E_ad`` and unit ``sum E_aa``.
    """
    if n < 1:
        raise ValueError('Mat(n) needs n >= 1, got {}'.format(n))

    entries = {(a * n + b, b * n + d, a * n + d): 1
               for a in range(n) for b in range(n) for d in range(n)}
    unit = Element({a * n + a: 1 for a in range(n)})
    names = ['E{}{}'.format(a + 1, b + 1)
             for a in range(n) for b in range(n)]

    return AssocAlgebra(SparseTensor3(n * n, entries), unit=unit,
                        label='Mat({})'.format(n), names=names)


class SL2Example(NamedTuple):
    algebra: BracketMap
    operator: LinearOperator
    representation: BunchRepresentation


def make_sl2() -> SL2Example:
    """
    ``sl(2)`` on ``L_-1, L_0, L_1`` (indices 0, 1, 2) with
    ``[L_i, L_j] = (i - j) L_{i+j}``, the operator ``R L_i = i L_i`` and the
    fundamental representation with ``Q_R = T(L_0)``.

    The represented pencil has the tangent bracket of ``R`` as its direction.
    """
    grades = (-1, 0, 1)
    entries = {}
    for i, gi in enumerate(grades):
        for j, gj in enumerate(grades):
            if i < j and -1 <= gi + gj <= 1:
                entries[(i, j, gi + gj + 1)] = gi - gj

    algebra = BracketMap.from_upper(3, entries, label='sl(2)')
    operator = LinearOperator.diagonal(grades, label='R')

    half = Fraction(1, 2)
    images = [Matrix([[0, -1], [0, 0]]),
              Matrix([[half, 0], [0, -half]]),
              Matrix([[0, 0], [1, 0]])]
    pencil = Pencil(algebra, tangent_bracket(algebra, operator), operator,
                    label='sl(2) pencil')

    return SL2Example(algebra, operator,
                      BunchRepresentation(pencil, images, images[1]))


def make_witt(window: int = DEFAULT_WINDOW) -> BracketMap:
    """
    The Witt algebra ``[e_i, e_j] = (i - j) e_{i+j}``, checked on
    ``[-window, window]`` by default.
    """
    if window < 1:
        raise ValueError('the Witt window must be positive, got {}'
                         .format(window))

    def rule(i: int, j: int) -> Element:
        return Element({i + j: i - j})

    return BracketMap.from_rule(rule, label='witt', kind='witt',
                                window=window)


def make_witt_shift(n: int) -> LinearOperator:
    """
    The shift ``R_n e_i = e_{i+n}``.
    """
    return LinearOperator.shift(n, label='R_{}'.format(n))


@dataclass(frozen=True)
class SkewEmbedding:
    """
    The pencil ``[X, Y] + lam (XQY - YQX)`` on ``so(n)`` and on ``Mat(n)``.

    ``operator`` is the left multiplication by ``Q`` that makes the ambient
    pencil a Gamma-bunch; ``inclusion`` has the flattened skew basis
    matrices as its columns.
    """

    so_pencil: Pencil
    ambient_pencil: Pencil
    operator: LinearOperator
    inclusion: Matrix
    assoc: AssocAlgebra
    q: Matrix

    def include(self, x: Element) -> Element:
        return Element.from_vector(
            self.inclusion @ x.to_vector(self.inclusion.cols))


def make_example2(n: int, q: Matrix) -> SkewEmbedding:
    """
    Build the ``so(n)`` pencil of a symmetric ``Q`` and its embedding into
    the ``Mat(n)`` pencil.

    :raises ValueError: if ``Q`` is not a symmetric ``n x n`` matrix
    """
    if q.shape != (n, n):
        raise ValueError('Q has shape {}, expected {}'.format(q.shape,
                                                              (n, n)))
    if q.transpose() != q:
        raise ValueError('Q must be symmetric')
    if q == Matrix.identity(n) * q[0, 0]:
        warnings.warn('Q is scalar, the pencil only rescales the bracket',
                      UserWarning)

    basis = skew_basis(n)
    so_base = make_so(n)
    so_direction = bracket_from_matrices(
        basis, lambda x, y: x @ q @ y - y @ q @ x,
        label='so({}) XQY-YQX'.format(n))

    assoc = make_assoc_mat(n)
    q_element = mat_element(q)
    left, _ = mult_operators(assoc, q_element)
    ambient = Pencil(commutator_algebra(assoc), sandwich_bracket(assoc,
                                                                 q_element),
                     left, label='Mat({}) pencil'.format(n))
    inclusion = Matrix.from_columns([m.flatten() for m in basis],
                                    rows=n * n)

    return SkewEmbedding(Pencil(so_base, so_direction,
                           label='so({}) pencil'.format(n)),
                    ambient, left, inclusion, assoc, q)


def check_restriction_coherence(example: SkewEmbedding) -> CheckReport:
    """
    Check that the ambient pencil, evaluated on skew inputs, reproduces the
    ``so(n)`` pencil: base and direction separately, since both pencils are
    linear in ``lam``.
    """
    so, ambient, include = example.so_pencil, example.ambient_pencil, \
        example.include
    e = Element.basis
    indices = range(so.dim or 0)

    def restricted(small: BracketMap, big: BracketMap):
        def sides(i, j):
            return (include(small(e(i), e(j))),
                    big(include(e(i)), include(e(j))))
        return sides

    clauses = [
        sweep_basis('base restriction', indices, 2,
                    restricted(so.base, ambient.base)),
        sweep_basis('direction restriction', indices, 2,
                    restricted(so.direction, ambient.direction)),
    ]

    return CheckReport.combine('restriction coherence', clauses)


def sandwich_family(assoc: AssocAlgebra, elements: Sequence[Element],
                    label: str = 'family') -> BracketFamily:
    """
    The brackets ``XAY - YAX`` for the given ``A``.
    """
    return BracketFamily([sandwich_bracket(assoc, a) for a in elements],
                         label=label)


# Registry


Objects = Dict[str, Dict[str, object]]


@dataclass(frozen=True)
class CatalogEntry:
    """
    A named, parameterized catalog construction.

    ``build`` maps the parameters to document sections (``algebras``,
    ``operators``, ...), each a map from names to objects.
    """

    name: str
    description: str
    defaults: Mapping[str, str]
    build: Callable[[Mapping[str, str]], Objects]

    def parameters(self, overrides: Mapping[str, str]) -> Dict[str, str]:
        unknown = sorted(set(overrides) - set(self.defaults))
        if unknown:
            raise KeyError('{} has no parameter {}'.format(self.name,
                                                          unknown[0]))

        params = dict(self.defaults)
        params.update(overrides)
        return params

    def objects(self, overrides: Optional[Mapping[str, str]] = None
                ) -> Objects:
        return self.build(self.parameters(overrides or {}))


def _int(params: Mapping[str, str], key: str) -> int:
    try:
        return int(params[key])
    except ValueError:
        raise ValueError('parameter {}={!r} is not an integer'
                         .format(key, params[key])) from None


def _values(params: Mapping[str, str], key: str) -> List[Fraction]:
    return [parse_rational(v) for v in params[key].split(',') if v]


def _build_so(params):
    n = _int(params, 'n')
    return {'algebras': {'so{}'.format(n): make_so(n)}}


def _build_mat(params):
    n = _int(params, 'n')
    q = Matrix.diagonal(_values(params, 'q'))
    assoc = make_assoc_mat(n)
    element = mat_element(q)
    left, right = mult_operators(assoc, element)
    return {
        'assoc_algebras': {'mat{}'.format(n): assoc},
        'elements': {'Q': element},
        'algebras': {'gl{}'.format(n): commutator_algebra(assoc)},
        'operators': {'left': left, 'right': right, 'xi': left - right},
    }


def _build_sl2(params):
    algebra, operator, rep = make_sl2()
    return {
        'algebras': {'sl2': algebra, 'sl2_tangent': rep.source.direction},
        'operators': {'R': operator},
        'pencils': {'sl2_pencil': rep.source},
        'representations': {'fundamental': rep},
    }


def _build_witt(params):
    n = _int(params, 'n')
    return {
        'algebras': {'witt': make_witt(_int(params, 'W'))},
        'operators': {'R': make_witt_shift(n)},
    }


def _build_example2(params):
    n = _int(params, 'n')
    values = _values(params, 'q') or [k + 1 for k in range(n)]
    example = make_example2(n, Matrix.diagonal(values))
    return {
        'algebras': {'so': example.so_pencil.base,
                     'so_direction': example.so_pencil.direction,
                     'gl': example.ambient_pencil.base,
                     'gl_direction': example.ambient_pencil.direction},
        'operators': {'left': example.operator},
        'pencils': {'so_pencil': example.so_pencil,
                    'gl_pencil': example.ambient_pencil},
        'families': {'so_family': BracketFamily(
            [example.so_pencil.base, example.so_pencil.direction])},
    }


def _build_mat_family(params):
    n = _int(params, 'n')
    assoc = make_assoc_mat(n)
    units = [Element.basis(k) for k in range(n * n)]
    family = sandwich_family(assoc, units, label='units')
    algebras = {'f{}'.format(assoc.names[k] if assoc.names else k): br
                for k, br in enumerate(family)}
    return {'algebras': algebras,
            'families': {'units': family}}


CATALOG = {entry.name: entry for entry in [
    CatalogEntry('so', 'skew-symmetric matrices so(n)', {'n': '3'},
                 _build_so),
    CatalogEntry('mat', 'Mat(n), its commutator and multiplications by a '
                        'diagonal Q', {'n': '2', 'q': '1,0'}, _build_mat),
    CatalogEntry('sl2', 'sl(2), R L_i = i L_i and the fundamental '
                        'representation', {}, _build_sl2),
    CatalogEntry('witt', 'the Witt algebra and the shift R_n',
                 {'W': str(DEFAULT_WINDOW), 'n': '1'}, _build_witt),
    CatalogEntry('example2', 'the so(n) pencil of a diagonal Q and its '
                             'Mat(n) embedding', {'n': '3', 'q': ''},
                 _build_example2),
    CatalogEntry('mat-family', 'the brackets XAY - YAX for the matrix '
                               'units A', {'n': '2'}, _build_mat_family),
]}


def lookup(spec: str) -> Tuple[CatalogEntry, Dict[str, str]]:
    """
    Resolve ``name?key=value&...`` to an entry and its parameters.

    :raises KeyError: on an unknown entry or parameter
    """
    name, _, query = spec.partition('?')
    try:
        entry = CATALOG[name]
    except KeyError:
        raise KeyError('no catalog entry {!r}'.format(name)) from None

    return entry, entry.parameters(dict(parse_qsl(query,
                                                  keep_blank_values=True)))
