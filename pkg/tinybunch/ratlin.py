"""
Exact rational linear algebra.

Every coefficient in TinyBunch is a :class:`fractions.Fraction`. This module
provides the few containers built on top of it (immutable matrices and sparse
order-3 tensors) together with exact Gaussian elimination: solving, rank and
span membership.

>>> from tinybunch.ratlin import Matrix, solve_linear
>>> solve_linear(Matrix([[2, 1], [1, 3]]), (1, 0))
(Fraction(3, 5), Fraction(-1, 5))
"""
import re
from fractions import Fraction
from typing import (Dict, Iterable, Iterator, List, Mapping, Optional,
                    Sequence, Tuple, Union)

__all__ = ('Rational', 'RationalLike', 'Vector', 'parse_rational',
           'format_rational', 'Matrix', 'SparseTensor3', 'row_reduce',
           'solve_linear', 'rank', 'span_membership')

Rational = Fraction
RationalLike = Union[Fraction, int, str]
Vector = Tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r'^([+-]?\d+)(?:/(\d+))?$')


def parse_rational(value: RationalLike) -> Fraction:
    """
    Parse an exact rational.

    Accepts ``Fraction`` and ``int`` values as well as strings of the form
    ``"p"`` or ``"p/q"``. Floats are rejected, they are not exact.

    :param value: the value to parse
    :raises ValueError: on floats, malformed strings or a zero denominator
    """
    if isinstance(value, bool):
        raise ValueError('{!r} is not a rational'.format(value))

    if isinstance(value, Fraction):
        return value

    if isinstance(value, int):
        return Fraction(value)

    if isinstance(value, str):
        # Accept the typographic minus sign as well
        match = _RATIONAL_RE.match(value.strip().replace('−', '-'))
        if match is None:
            raise ValueError('{!r} is not a rational'.format(value))

        numerator, denominator = match.groups()
        if denominator is not None and int(denominator) == 0:
            raise ValueError('denominator of {!r} is zero'.format(value))

        return Fraction(int(numerator), int(denominator or 1))

    raise ValueError('{!r} is not a rational'.format(value))


def format_rational(value: Fraction) -> str:
    """
    Format a rational canonically as ``"p"`` or ``"p/q"``.
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)

    return '{}/{}'.format(value.numerator, value.denominator)


class Matrix:
    """
    An immutable matrix of rationals.

    The dimensions are fixed at construction. Matrices support ``+``, ``-``,
    scalar ``*`` and ``@`` (with another matrix or with a vector given as a
    sequence of rationals).

    :param rows: the entries, row by row
    """

    __slots__ = ('_rows', '_cols', '_entries')

    def __init__(self, rows: Iterable[Iterable[RationalLike]],
                 cols: Optional[int] = None):
        entries = tuple(tuple(parse_rational(x) for x in row) for row in rows)

        if cols is None:
            cols = len(entries[0]) if entries else 0

        for row in entries:
            if len(row) != cols:
                raise ValueError('ragged matrix: expected {} columns, '
                                 'got {}'.format(cols, len(row)))

        self._rows = len(entries)
        self._cols = cols
        self._entries = entries

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'Matrix':
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> 'Matrix':
        return cls.diagonal([1] * n)

    @classmethod
    def diagonal(cls, values: Sequence[RationalLike]) -> 'Matrix':
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)]
                    for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[RationalLike]],
                     rows: Optional[int] = None) -> 'Matrix':
        """
        Build a matrix from its columns.

        :param rows: the row count, needed when there are no columns
        """
        if rows is None:
            rows = len(columns[0]) if columns else 0

        return cls([[columns[j][i] for j in range(len(columns))]
                    for i in range(rows)], cols=len(columns))

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> Tuple[int, int]:
        return self._rows, self._cols

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self._entries[i][j]

    def row(self, i: int) -> Vector:
        return self._entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self._entries)

    def to_lists(self) -> List[List[Fraction]]:
        return [list(row) for row in self._entries]

    def flatten(self) -> Vector:
        """
        The entries in row-major order.
        """
        return tuple(x for row in self._entries for x in row)

    def transpose(self) -> 'Matrix':
        return Matrix([self.column(j) for j in range(self._cols)],
                      cols=self._rows)

    def is_square(self) -> bool:
        return self._rows == self._cols

    def is_zero(self) -> bool:
        return not any(self.flatten())

    def _check_same_shape(self, other: 'Matrix') -> None:
        if self.shape != other.shape:
            raise ValueError('shape mismatch: {} vs {}'.format(self.shape,
                                                                other.shape))

    def __add__(self, other: 'Matrix') -> 'Matrix':
        self._check_same_shape(other)
        return Matrix([[a + b for a, b in zip(r, s)]
                       for r, s in zip(self._entries, other._entries)],
                      cols=self._cols)

    def __sub__(self, other: 'Matrix') -> 'Matrix':
        self._check_same_shape(other)
        return Matrix([[a - b for a, b in zip(r, s)]
                       for r, s in zip(self._entries, other._entries)],
                      cols=self._cols)

    def __neg__(self) -> 'Matrix':
        return self * -1

    def __mul__(self, scalar: RationalLike) -> 'Matrix':
        c = parse_rational(scalar)
        return Matrix([[c * a for a in row] for row in self._entries],
                      cols=self._cols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self._cols != other._rows:
                raise ValueError('cannot multiply {} by {}'.format(
                    self.shape, other.shape))

            columns = [other.column(j) for j in range(other._cols)]
            return Matrix([[sum((a * b for a, b in zip(row, col)), Fraction(0))
                            for col in columns] for row in self._entries],
                          cols=other._cols)

        vector = tuple(parse_rational(x) for x in other)
        if len(vector) != self._cols:
            raise ValueError('cannot multiply {} by a vector of length '
                             '{}'.format(self.shape, len(vector)))

        return tuple(sum((a * b for a, b in zip(row, vector)), Fraction(0))
                     for row in self._entries)

    def determinant(self) -> Fraction:
        """
        The determinant, by exact elimination.
        """
        if not self.is_square():
            raise ValueError('determinant of a non-square matrix')

        rows = self.to_lists()
        n = self._rows
        det = Fraction(1)

        for col in range(n):
            pivot = next((r for r in range(col, n) if rows[r][col] != 0),
                         None)
            if pivot is None:
                return Fraction(0)

            if pivot != col:
                rows[col], rows[pivot] = rows[pivot], rows[col]
                det = -det

            det *= rows[col][col]
            for r in range(col + 1, n):
                factor = rows[r][col] / rows[col][col]
                if factor:
                    rows[r] = [a - factor * b
                               for a, b in zip(rows[r], rows[col])]

        return det

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Matrix):
            return self.shape == other.shape and \
                self._entries == other._entries

        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.shape, self._entries))

    def __repr__(self):
        body = '; '.join(' '.join(format_rational(x) for x in row)
                         for row in self._entries)
        return '<{} {}x{} [{}]>'.format(type(self).__name__, self._rows,
                                        self._cols, body)


class SparseTensor3:
    """
    A sparse order-3 tensor over ``range(dim)``.

    Structure constants ``c_ij^k`` live here: the entry ``(i, j, k)`` is the
    coefficient of ``b_k`` in the product of ``b_i`` and ``b_j``. Zero
    coefficients are never stored, so two tensors are equal exactly when their
    entry maps are.

    :param dim: the basis size
    :param entries: map from index triples to coefficients
    """

    __slots__ = ('_dim', '_entries')

    def __init__(self, dim: int,
                 entries: Mapping[Tuple[int, int, int], RationalLike] = None):
        if dim < 0:
            raise ValueError('negative dimension {}'.format(dim))

        stored: Dict[Tuple[int, int, int], Fraction] = {}
        for key, value in (entries or {}).items():
            i, j, k = key
            for index in key:
                if not 0 <= index < dim:
                    raise ValueError('index {} of {} outside range({})'
                                     .format(index, key, dim))

            coefficient = parse_rational(value)
            if coefficient:
                stored[(i, j, k)] = coefficient

        self._dim = dim
        self._entries = stored

    @property
    def dim(self) -> int:
        return self._dim

    def __getitem__(self, key: Tuple[int, int, int]) -> Fraction:
        return self._entries.get(key, Fraction(0))

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[Tuple[int, int, int]]:
        return iter(sorted(self._entries))

    def items(self) -> List[Tuple[Tuple[int, int, int], Fraction]]:
        """
        The nonzero entries in lexicographic index order.
        """
        return sorted(self._entries.items())

    def is_zero(self) -> bool:
        return not self._entries

    def flatten(self) -> Vector:
        """
        All ``dim**3`` coordinates, index ``(i, j, k)`` at
        ``(i * dim + j) * dim + k``.
        """
        n = self._dim
        values = [Fraction(0)] * (n ** 3)
        for (i, j, k), value in self._entries.items():
            values[(i * n + j) * n + k] = value

        return tuple(values)

    def _combine(self, other: 'SparseTensor3', sign: int) -> 'SparseTensor3':
        if self._dim != other._dim:
            raise ValueError('dimension mismatch: {} vs {}'.format(
                self._dim, other._dim))

        entries = dict(self._entries)
        for key, value in other._entries.items():
            entries[key] = entries.get(key, Fraction(0)) + sign * value

        return SparseTensor3(self._dim, entries)

    def __add__(self, other: 'SparseTensor3') -> 'SparseTensor3':
        return self._combine(other, 1)

    def __sub__(self, other: 'SparseTensor3') -> 'SparseTensor3':
        return self._combine(other, -1)

    def __mul__(self, scalar: RationalLike) -> 'SparseTensor3':
        c = parse_rational(scalar)
        return SparseTensor3(self._dim, {key: c * value for key, value
                                         in self._entries.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SparseTensor3):
            return self._dim == other._dim and \
                self._entries == other._entries

        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._dim, tuple(self.items())))

    def __repr__(self):
        return '<{} dim={}, nonzero={}>'.format(type(self).__name__,
                                                self._dim, len(self))


def row_reduce(rows: List[List[Fraction]]) -> Tuple[List[List[Fraction]],
                                                    List[int]]:
    """
    Bring a matrix (given as a list of rows) into reduced row echelon form.

    Columns are processed left to right; the pivot of a column is the first
    row at or below the current one with a nonzero entry, so the result is
    deterministic.

    :returns: the reduced rows and the list of pivot columns
    """
    rows = [list(row) for row in rows]
    pivots: List[int] = []
    ncols = len(rows[0]) if rows else 0
    current = 0

    for col in range(ncols):
        if current == len(rows):
            break

        pivot = next((r for r in range(current, len(rows))
                      if rows[r][col] != 0), None)
        if pivot is None:
            continue

        rows[current], rows[pivot] = rows[pivot], rows[current]

        lead = rows[current][col]
        rows[current] = [x / lead for x in rows[current]]

        for r in range(len(rows)):
            if r != current and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b
                           for a, b in zip(rows[r], rows[current])]

        pivots.append(col)
        current += 1

    return rows, pivots


def solve_linear(a: Matrix,
                 b: Sequence[RationalLike]) -> Optional[Vector]:
    """
    Solve ``a · x = b`` exactly.

    Free variables are set to zero.

    :param a: the coefficient matrix
    :param b: the right hand side, one entry per row of ``a``
    :returns: a solution, or ``None`` if the system is inconsistent
    :raises ValueError: if ``b`` does not match the row count of ``a``
    """
    rhs = [parse_rational(x) for x in b]
    if len(rhs) != a.rows:
        raise ValueError('right hand side has length {}, matrix has {} rows'
                         .format(len(rhs), a.rows))

    augmented = [list(a.row(i)) + [rhs[i]] for i in range(a.rows)]
    if not augmented:
        return tuple(Fraction(0) for _ in range(a.cols))

    reduced, pivots = row_reduce(augmented)

    if pivots and pivots[-1] == a.cols:
        # A pivot in the augmented column: 0 = 1
        return None

    x = [Fraction(0)] * a.cols
    for row, col in zip(reduced, pivots):
        x[col] = row[-1]

    return tuple(x)


def rank(a: Matrix) -> int:
    """
    The exact rank of a matrix over the rationals.
    """
    if a.rows == 0 or a.cols == 0:
        return 0

    return len(row_reduce(a.to_lists())[1])


def span_membership(vectors: Sequence[Sequence[RationalLike]],
                    target: Sequence[RationalLike]) -> Optional[Vector]:
    """
    Express ``target`` as a combination of ``vectors``.

    :returns: coefficients ``c`` with ``sum(c[i] * vectors[i]) == target``,
              or ``None`` if the target is outside the span
    :raises ValueError: if the vectors don't all have the target's length
    """
    length = len(target)
    for index, vector in enumerate(vectors):
        if len(vector) != length:
            raise ValueError('vector {} has length {}, expected {}'.format(
                index, len(vector), length))

    if not vectors:
        if any(parse_rational(x) for x in target):
            return None
        return ()

    return solve_linear(Matrix.from_columns(vectors, rows=length), target)
