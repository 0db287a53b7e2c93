"""
Elements, brackets and operators on an indexed basis.

An algebra in TinyBunch is just a bilinear bracket on the span of a basis
``b_i``. Finite algebras index their basis by ``0 .. dim - 1`` and store
structure constants densely; graded algebras such as the Witt algebra index
their basis by all of ``Z`` and compute brackets of basis vectors from a rule:

>>> from tinybunch.liecore import BracketMap, Element
>>> witt = BracketMap.from_rule(
...     lambda i, j: Element({i + j: i - j}), label='witt', window=6)
>>> witt(Element.basis(1), Element.basis(2))
Element({3: Fraction(-1, 1)})

Checks over graded algebras enumerate input indices from a window
``[-W, W]`` only; outputs may leave the window since elements are sparse.
"""
import logging
from collections import defaultdict
from fractions import Fraction
from typing import (Callable, Dict, Iterable, List, Mapping, Optional,
                    Sequence, Tuple, Union)

from .errors import InputError, UnsupportedError
from .ratlin import Matrix, RationalLike, SparseTensor3, parse_rational
from .reports import CheckReport, sweep_basis
from .utils import FrozenDict, LRUCache

__all__ = ('Element', 'BracketMap', 'LinearOperator', 'basis_window',
           'bracket_eval', 'check_antisymmetry', 'check_jacobi',
           'is_derivation', 'ad', 'op_polynomial', 'op_commutator')

logger = logging.getLogger(__name__)

Window = Optional[int]


class Element(FrozenDict):
    """
    An element of an algebra: a finite map from basis indices to rationals.

    Zero coefficients are dropped on construction, so the zero element is the
    empty map and two elements are equal exactly when their maps are.
    Elements support ``+``, ``-`` and multiplication by scalars.

    :param terms: a mapping or an iterable of ``(index, coefficient)`` pairs;
                  repeated indices are summed
    """

    def __init__(self, terms: Union[Mapping[int, RationalLike],
                                    Iterable[Tuple[int, RationalLike]]] = ()):
        pairs = terms.items() if isinstance(terms, Mapping) else terms

        totals: Dict[int, Fraction] = defaultdict(Fraction)
        for index, coefficient in pairs:
            if isinstance(index, bool) or not isinstance(index, int):
                raise ValueError('basis index {!r} is not an integer'
                                 .format(index))
            totals[index] += parse_rational(coefficient)

        super().__init__((i, c) for i, c in totals.items() if c)

    @classmethod
    def basis(cls, index: int) -> 'Element':
        return cls({index: 1})

    @classmethod
    def zero(cls) -> 'Element':
        return cls()

    @classmethod
    def from_vector(cls, values: Sequence[RationalLike]) -> 'Element':
        return cls(enumerate(values))

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(sorted(self.keys()))

    def coefficient(self, index: int) -> Fraction:
        return self.get(index, Fraction(0))

    def is_zero(self) -> bool:
        return not self

    def to_vector(self, dim: int) -> Tuple[Fraction, ...]:
        """
        The coordinates in a finite basis.
        """
        for index in self:
            if not 0 <= index < dim:
                raise ValueError('index {} outside a basis of dimension {}'
                                 .format(index, dim))

        return tuple(self.coefficient(i) for i in range(dim))

    def __add__(self, other: 'Element') -> 'Element':
        return Element(list(self.items()) + list(other.items()))

    def __sub__(self, other: 'Element') -> 'Element':
        return self + (-other)

    def __neg__(self) -> 'Element':
        return Element({i: -c for i, c in self.items()})

    def __mul__(self, scalar: RationalLike) -> 'Element':
        c = parse_rational(scalar)
        return Element({i: c * v for i, v in self.items()})

    __rmul__ = __mul__

    def __repr__(self):
        return '{}({!r})'.format(type(self).__name__,
                                 dict(sorted(self.items())))


def combination(terms: Iterable[Tuple[RationalLike, Element]]) -> Element:
    """
    The linear combination ``sum(c * x for c, x in terms)``.
    """
    pairs: List[Tuple[int, Fraction]] = []
    for scalar, element in terms:
        c = parse_rational(scalar)
        if c:
            pairs.extend((i, c * v) for i, v in element.items())

    return Element(pairs)


def _check_dims(*dims: Optional[int]) -> Optional[int]:
    known = {d for d in dims if d is not None}
    if known and None in dims:
        raise InputError('index kind', 'cannot mix finite (dimension {}) and '
                         'graded objects'.format(min(known)))

    if len(known) > 1:
        raise ValueError('dimension mismatch: {}'.format(sorted(known)))

    return known.pop() if known else None


class BracketMap:
    """
    A bilinear map on an indexed basis.

    There are two backends behind the same evaluation interface:

    - *dense*: a finite basis ``0 .. dim - 1`` and structure constants in a
      :class:`~tinybunch.ratlin.SparseTensor3`,
    - *rule*: a function computing the bracket of two basis vectors, for
      graded algebras indexed by ``Z``.

    Brackets are called like functions: ``br(X, Y)`` is the bilinear
    extension of the basis rule.

    .. admonition:: Customization

        - ``basis_cache_class`` is the class used to memoize the brackets of
          basis pairs of rule backends,
        - ``default_basis_cache_capacity`` is its default capacity.

    :param basis_bracket: the bracket of ``b_i`` and ``b_j``
    :param dim: the basis size, ``None`` for graded algebras
    :param label: a display name
    :param kind: ``'dense'``, ``'witt'`` or ``'rule'``
    :param window: default enumeration window of graded algebras
    :param tensor: the structure constants of dense brackets
    """

    basis_cache_class = LRUCache
    default_basis_cache_capacity = 20000

    def __init__(self, basis_bracket: Callable[[int, int], Element],
                 dim: Optional[int] = None, label: str = 'bracket',
                 kind: str = 'rule', window: Window = None,
                 tensor: Optional[SparseTensor3] = None):
        self._basis_bracket = basis_bracket
        self._dim = dim
        self._tensor = tensor
        self._cache: LRUCache[Tuple[int, int], Element] = \
            self.basis_cache_class(capacity=self.default_basis_cache_capacity)
        self.label = label
        self.kind = kind
        self.default_window = window

    @classmethod
    def from_tensor(cls, tensor: SparseTensor3, label: str = 'bracket',
                    raw: bool = False) -> 'BracketMap':
        """
        A dense bracket from its full structure constants.

        Unless ``raw`` is set, the tensor must be antisymmetric
        (``c_ij^k = -c_ji^k``); raw tensors are used exactly as given, which
        is what negative tests need.

        :raises ValueError: if a non-raw tensor is not antisymmetric
        """
        if not raw:
            for (i, j, k), value in tensor.items():
                if tensor[(j, i, k)] != -value:
                    raise ValueError(
                        'structure constants are not antisymmetric at '
                        '({}, {}, {})'.format(i, j, k))

        table: Dict[Tuple[int, int], List[Tuple[int, Fraction]]] = \
            defaultdict(list)
        for (i, j, k), value in tensor.items():
            table[(i, j)].append((k, value))

        brackets = {key: Element(terms) for key, terms in table.items()}
        zero = Element()

        def basis_bracket(i: int, j: int) -> Element:
            return brackets.get((i, j), zero)

        return cls(basis_bracket, dim=tensor.dim, label=label, kind='dense',
                   tensor=tensor)

    @classmethod
    def from_upper(cls, dim: int,
                   entries: Mapping[Tuple[int, int, int], RationalLike],
                   label: str = 'bracket') -> 'BracketMap':
        """
        A dense bracket from the constants ``c_ij^k`` with ``i < j``.

        The remaining constants follow from antisymmetry.

        :raises ValueError: on an entry with ``i >= j``
        """
        full: Dict[Tuple[int, int, int], Fraction] = {}
        for (i, j, k), value in entries.items():
            if i >= j:
                raise ValueError('structure constant ({}, {}, {}) needs '
                                 'i < j'.format(i, j, k))
            c = parse_rational(value)
            full[(i, j, k)] = c
            full[(j, i, k)] = -c

        return cls.from_tensor(SparseTensor3(dim, full), label=label)

    @classmethod
    def from_function(cls, dim: int,
                      func: Callable[[Element, Element], Element],
                      label: str = 'bracket') -> 'BracketMap':
        """
        A dense bracket by evaluating a bilinear function on all basis pairs.
        """
        entries: Dict[Tuple[int, int, int], Fraction] = {}
        for i in range(dim):
            for j in range(dim):
                value = func(Element.basis(i), Element.basis(j))
                for k, c in value.items():
                    if not 0 <= k < dim:
                        raise ValueError('bracket of ({}, {}) leaves the '
                                         'basis'.format(i, j))
                    entries[(i, j, k)] = c

        return cls.from_tensor(SparseTensor3(dim, entries), label=label,
                               raw=True)

    @classmethod
    def from_rule(cls, rule: Callable[[int, int], Element],
                  label: str = 'bracket', kind: str = 'rule',
                  window: Window = None) -> 'BracketMap':
        """
        A graded bracket computed from a rule on basis index pairs.
        """
        return cls(rule, dim=None, label=label, kind=kind, window=window)

    @classmethod
    def derived(cls, like: 'BracketMap',
                func: Callable[[Element, Element], Element],
                label: str) -> 'BracketMap':
        """
        A bracket built from another one (tangent, primed, ...).

        Finite inputs give a dense result; graded inputs give a rule that
        evaluates ``func`` on basis vectors lazily.
        """
        if like.is_finite:
            assert like.dim is not None
            return cls.from_function(like.dim, func, label=label)

        def rule(i: int, j: int) -> Element:
            return func(Element.basis(i), Element.basis(j))

        return cls.from_rule(rule, label=label, window=like.default_window)

    @property
    def dim(self) -> Optional[int]:
        return self._dim

    @property
    def is_finite(self) -> bool:
        return self._dim is not None

    @property
    def tensor(self) -> SparseTensor3:
        """
        The full structure constants of a dense bracket.
        """
        if self._tensor is None:
            raise UnsupportedError('{} has no finite structure constants'
                                   .format(self.label))

        return self._tensor

    def upper_entries(self) -> List[Tuple[Tuple[int, int, int], Fraction]]:
        """
        The structure constants with ``i < j``, in index order.
        """
        return [(key, value) for key, value in self.tensor.items()
                if key[0] < key[1]]

    def _check_index(self, index: int) -> None:
        if self._dim is not None and not 0 <= index < self._dim:
            raise ValueError('index {} outside the basis of {} (dimension {})'
                             .format(index, self.label, self._dim))

    def basis_bracket(self, i: int, j: int) -> Element:
        """
        The bracket of the basis vectors ``b_i`` and ``b_j``.
        """
        self._check_index(i)
        self._check_index(j)

        if self._tensor is not None:
            return self._basis_bracket(i, j)

        value = self._cache.get((i, j))
        if value is None:
            value = self._basis_bracket(i, j)
            self._cache[(i, j)] = value

        return value

    def __call__(self, x: Element, y: Element) -> Element:
        return combination((cx * cy, self.basis_bracket(i, j))
                           for i, cx in x.items() for j, cy in y.items())

    def _linear(self, other: 'BracketMap', a: Fraction, b: Fraction,
                label: str) -> 'BracketMap':
        _check_dims(self._dim, other._dim)

        def func(x: Element, y: Element) -> Element:
            return combination([(a, self(x, y)), (b, other(x, y))])

        return BracketMap.derived(self, func, label)

    def __add__(self, other: 'BracketMap') -> 'BracketMap':
        return self._linear(other, Fraction(1), Fraction(1),
                            '({} + {})'.format(self.label, other.label))

    def __sub__(self, other: 'BracketMap') -> 'BracketMap':
        return self._linear(other, Fraction(1), Fraction(-1),
                            '({} - {})'.format(self.label, other.label))

    def scaled(self, scalar: RationalLike) -> 'BracketMap':
        c = parse_rational(scalar)
        return BracketMap.derived(self, lambda x, y: self(x, y) * c,
                                  '{}*{}'.format(c, self.label))

    def __repr__(self):
        args = ['label={!r}'.format(self.label), 'kind={}'.format(self.kind)]
        if self._dim is not None:
            args.append('dim={}'.format(self._dim))
        else:
            args.append('window={}'.format(self.default_window))

        return '<{} {}>'.format(type(self).__name__, ', '.join(args))


def bracket_eval(br: BracketMap, x: Element, y: Element) -> Element:
    """
    Evaluate a bracket on two elements.

    :raises ValueError: if an element uses indices outside a finite basis
    """
    return br(x, y)


def basis_window(dim: Optional[int], window: Window = None,
                 default: Window = None) -> Sequence[int]:
    """
    The basis indices a check enumerates.

    Finite algebras use their full basis. Graded algebras use ``[-W, W]``
    with ``W`` the explicit window or else the algebra's default one.

    :raises ValueError: for a graded algebra without any window
    """
    if dim is not None:
        return range(dim)

    w = window if window is not None else default
    if w is None:
        raise ValueError('a graded algebra needs a finite window')
    if w < 0:
        raise ValueError('window must be non-negative, got {}'.format(w))

    return range(-w, w + 1)


def indices_of(br: BracketMap, window: Window = None) -> Sequence[int]:
    return basis_window(br.dim, window, br.default_window)


class LinearOperator:
    """
    A linear endomorphism of an algebra's span.

    Operators are given by their action on basis vectors. The backends are:

    - ``'matrix'``: a dense matrix whose column ``j`` is the image of ``b_j``,
    - ``'shift'``: ``b_i -> scale * b_{i + offset}``, on graded algebras,
    - ``'diagonal'``: ``b_i -> value(i) * b_i``,
    - ``'composite'``: sums, products and scalings of other operators.

    Operators are called like functions, compose with ``@`` and combine with
    ``+``, ``-`` and scalar ``*``. Combinations of finite operators are
    evaluated into a dense matrix right away.

    :param apply_basis: the image of ``b_i``
    :param dim: the basis size, ``None`` for operators on graded algebras
    :param label: a display name
    :param kind: the backend name
    :param params: backend parameters, used for serialization
    """

    def __init__(self, apply_basis: Callable[[int], Element],
                 dim: Optional[int] = None, label: str = 'R',
                 kind: str = 'composite', params: Optional[dict] = None):
        self._apply_basis = apply_basis
        self._dim = dim
        self._images: Dict[int, Element] = {}
        self.label = label
        self.kind = kind
        self.params = dict(params or {})

    @classmethod
    def from_matrix(cls, matrix: Matrix, label: str = 'R') -> 'LinearOperator':
        if not matrix.is_square():
            raise ValueError('operator matrix must be square, got {}'
                             .format(matrix.shape))

        columns = [Element.from_vector(matrix.column(j))
                   for j in range(matrix.cols)]

        op = cls(lambda i: columns[i], dim=matrix.rows, label=label,
                 kind='matrix', params={'matrix': matrix})
        return op

    @classmethod
    def shift(cls, offset: int, scale: RationalLike = 1,
              label: Optional[str] = None) -> 'LinearOperator':
        c = parse_rational(scale)

        def apply_basis(i: int) -> Element:
            return Element({i + offset: c})

        return cls(apply_basis, dim=None,
                   label=label or 'R_{}'.format(offset), kind='shift',
                   params={'offset': offset, 'scale': c})

    @classmethod
    def diagonal(cls, values: Union[Sequence[RationalLike],
                                    Callable[[int], RationalLike]],
                 label: str = 'D') -> 'LinearOperator':
        """
        A diagonal operator from a list of eigenvalues (finite basis) or an
        eigenvalue function on indices (graded basis).
        """
        if callable(values):
            func = values

            def apply_graded(i: int) -> Element:
                return Element({i: func(i)})

            return cls(apply_graded, dim=None, label=label, kind='diagonal')

        eigenvalues = tuple(parse_rational(v) for v in values)

        def apply_finite(i: int) -> Element:
            return Element({i: eigenvalues[i]})

        return cls(apply_finite, dim=len(eigenvalues), label=label,
                   kind='diagonal', params={'values': eigenvalues})

    @classmethod
    def identity(cls, dim: Optional[int] = None) -> 'LinearOperator':
        if dim is not None:
            return cls.diagonal([1] * dim, label='Id')

        return cls(Element.basis, dim=None, label='Id', kind='diagonal')

    @classmethod
    def zero(cls, dim: Optional[int] = None) -> 'LinearOperator':
        if dim is not None:
            return cls.diagonal([0] * dim, label='0')

        return cls(lambda i: Element(), dim=None, label='0', kind='diagonal')

    @property
    def dim(self) -> Optional[int]:
        return self._dim

    @property
    def is_finite(self) -> bool:
        return self._dim is not None

    def apply_basis(self, index: int) -> Element:
        if self._dim is not None and not 0 <= index < self._dim:
            raise ValueError('index {} outside the domain of {} (dimension '
                             '{})'.format(index, self.label, self._dim))

        image = self._images.get(index)
        if image is None:
            image = self._apply_basis(index)
            self._images[index] = image

        return image

    def __call__(self, x: Element) -> Element:
        return combination((c, self.apply_basis(i)) for i, c in x.items())

    def to_matrix(self, dim: Optional[int] = None) -> Matrix:
        """
        The matrix of a finite operator (column ``j`` is the image of
        ``b_j``).
        """
        n = self._dim if self._dim is not None else dim
        if n is None:
            raise UnsupportedError('{} acts on a graded algebra and has no '
                                   'matrix'.format(self.label))

        return Matrix.from_columns([self.apply_basis(j).to_vector(n)
                                    for j in range(n)], rows=n)

    def _composite(self, other: 'LinearOperator',
                   func: Callable[[int], Element],
                   label: str) -> 'LinearOperator':
        dim = _check_dims(self._dim, other._dim)
        return LinearOperator(func, dim=dim, label=label, kind='composite')

    def _densify(self) -> 'LinearOperator':
        if self._dim is None:
            return self

        return LinearOperator.from_matrix(self.to_matrix(), label=self.label)

    def __add__(self, other: 'LinearOperator') -> 'LinearOperator':
        return self._composite(
            other, lambda i: self.apply_basis(i) + other.apply_basis(i),
            '({} + {})'.format(self.label, other.label))._densify()

    def __sub__(self, other: 'LinearOperator') -> 'LinearOperator':
        return self._composite(
            other, lambda i: self.apply_basis(i) - other.apply_basis(i),
            '({} - {})'.format(self.label, other.label))._densify()

    def __neg__(self) -> 'LinearOperator':
        return self * -1

    def __mul__(self, scalar: RationalLike) -> 'LinearOperator':
        c = parse_rational(scalar)
        op = LinearOperator(lambda i: self.apply_basis(i) * c, dim=self._dim,
                            label='{}*{}'.format(c, self.label))
        return op._densify()

    __rmul__ = __mul__

    def __matmul__(self, other: 'LinearOperator') -> 'LinearOperator':
        return self._composite(
            other, lambda i: self(other.apply_basis(i)),
            '{}{}'.format(self.label, other.label))._densify()

    def power(self, k: int) -> 'LinearOperator':
        if k < 0:
            raise ValueError('negative power {}'.format(k))

        result = LinearOperator.identity(self._dim)
        for _ in range(k):
            result = self @ result

        return result

    def __repr__(self):
        args = ['label={!r}'.format(self.label), 'kind={}'.format(self.kind)]
        if self._dim is not None:
            args.append('dim={}'.format(self._dim))

        return '<{} {}>'.format(type(self).__name__, ', '.join(args))


def _basis_pair_window(br: BracketMap, window: Window,
                       *ops: LinearOperator) -> Sequence[int]:
    _check_dims(br.dim, *(op.dim for op in ops))
    return indices_of(br, window)


def check_antisymmetry(br: BracketMap, window: Window = None) -> CheckReport:
    """
    Check ``[b_i, b_j] = -[b_j, b_i]`` on all basis pairs of the window.
    """
    def sides(i, j):
        return br.basis_bracket(i, j), -br.basis_bracket(j, i)

    return sweep_basis('antisymmetry', indices_of(br, window), 2, sides)


def jacobiator(br: BracketMap, x: Element, y: Element,
               z: Element) -> Element:
    """
    ``[[x, y], z] + [[y, z], x] + [[z, x], y]``.
    """
    return br(br(x, y), z) + br(br(y, z), x) + br(br(z, x), y)


def check_jacobi(br: BracketMap, window: Window = None) -> CheckReport:
    """
    Check the Jacobi identity on all basis triples of the window.
    """
    zero = Element()
    e = Element.basis

    def sides(i, j, k):
        return jacobiator(br, e(i), e(j), e(k)), zero

    return sweep_basis('jacobi', indices_of(br, window), 3, sides)


def is_derivation(op: LinearOperator, br: BracketMap,
                  window: Window = None) -> CheckReport:
    """
    Check ``R[b_i, b_j] = [R b_i, b_j] + [b_i, R b_j]`` on basis pairs.
    """
    e = Element.basis

    def sides(i, j):
        x, y = e(i), e(j)
        return op(br(x, y)), br(op(x), y) + br(x, op(y))

    return sweep_basis('derivation', _basis_pair_window(br, window, op), 2,
                       sides)


def ad(br: BracketMap, z: Element) -> LinearOperator:
    """
    The operator ``X -> [Z, X]`` of a finite algebra.

    :raises UnsupportedError: for graded algebras
    """
    if br.dim is None:
        raise UnsupportedError('ad is only available for finite algebras')

    dim = br.dim
    columns = [br(z, Element.basis(i)).to_vector(dim) for i in range(dim)]

    return LinearOperator.from_matrix(Matrix.from_columns(columns, rows=dim),
                                      label='ad({!r})'.format(dict(z)))


def op_polynomial(coeffs: Sequence[RationalLike],
                  op: LinearOperator) -> LinearOperator:
    """
    The operator ``a_0 + a_1 R + ... + a_n R^n``.

    Finite operators are evaluated with Horner's scheme on their matrix;
    graded ones give a composite operator.
    """
    a = [parse_rational(c) for c in coeffs]
    label = 'f({})'.format(op.label)

    if op.dim is not None:
        n = op.dim
        m = op.to_matrix()
        result = Matrix.zeros(n, n)
        for c in reversed(a):
            result = result @ m + Matrix.identity(n) * c

        return LinearOperator.from_matrix(result, label=label)

    powers = [op.power(k) for k in range(len(a))]

    def apply_basis(i: int) -> Element:
        return combination((c, p.apply_basis(i)) for c, p in zip(a, powers))

    return LinearOperator(apply_basis, dim=None, label=label,
                          kind='composite')


def op_commutator(a: LinearOperator, b: LinearOperator) -> LinearOperator:
    """
    The commutator ``AB - BA``; dense for finite operators.
    """
    if a.dim is not None or b.dim is not None:
        n = _check_dims(a.dim, b.dim)
        ma, mb = a.to_matrix(n), b.to_matrix(n)
        return LinearOperator.from_matrix(ma @ mb - mb @ ma,
                                          label='[{}, {}]'.format(a.label,
                                                                  b.label))

    return (a @ b) - (b @ a)
