"""Exact rational linear and bilinear algebra.

Scalars are elements of sympy's ``QQ`` domain, so every value is a reduced
fraction with a positive denominator. Elimination goes through
``DomainMatrix.rref``; everything else is plain tuple arithmetic, which is
fast enough at the dimensions this toolkit targets.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .errors import ShapeError

logger = logging.getLogger(__name__)

Rational = Any  # element of sympy's QQ domain
Vector = Tuple[Rational, ...]

ZERO = QQ.zero
ONE = QQ.one


def to_rational(value: Any) -> Rational:
    """Convert an int, fraction, sympy number or ``"p/q"`` string to ``QQ``.

    Args:
        value: Value to convert

    Returns:
        Canonical rational

    Raises:
        ValueError: If a string is not of the form ``p`` or ``p/q``
        ZeroDivisionError: If the denominator is zero
    """
    if isinstance(value, QQ.dtype):
        return value
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        numerator, slash, denominator = value.strip().partition("/")
        try:
            p = int(numerator)
            q = int(denominator) if slash else 1
        except ValueError:
            raise ValueError(f"malformed rational: {value!r}") from None
        if q == 0:
            raise ZeroDivisionError(f"zero denominator in {value!r}")
        return QQ(p, q)
    try:
        return QQ.from_sympy(value)
    except Exception:
        raise ValueError(f"not a rational: {value!r}") from None


def format_rational(value: Rational) -> str:
    """Canonical text form: ``"p"`` for integers, ``"p/q"`` otherwise."""
    value = to_rational(value)
    numerator, denominator = int(value.numerator), int(value.denominator)
    if denominator == 1:
        return str(numerator)
    return f"{numerator}/{denominator}"


def to_vector(values: Iterable[Any]) -> Vector:
    return tuple(to_rational(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def add_vectors(u: Sequence[Rational], v: Sequence[Rational]) -> Vector:
    if len(u) != len(v):
        raise ShapeError(f"vector lengths differ: {len(u)} != {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub_vectors(u: Sequence[Rational], v: Sequence[Rational]) -> Vector:
    if len(u) != len(v):
        raise ShapeError(f"vector lengths differ: {len(u)} != {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale_vector(c: Rational, v: Sequence[Rational]) -> Vector:
    return tuple(c * a for a in v)


def is_zero_vector(v: Sequence[Rational]) -> bool:
    return all(a == 0 for a in v)


def concat_vectors(*parts: Sequence[Rational]) -> Vector:
    out: List[Rational] = []
    for part in parts:
        out.extend(part)
    return tuple(out)


def _rref(
    rows: Sequence[Sequence[Rational]], ncols: int
) -> Tuple[List[List[Rational]], Tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    if not rows or ncols == 0:
        return [list(r) for r in rows], ()
    dm = DomainMatrix([list(r) for r in rows], (len(rows), ncols), QQ)
    reduced, pivots = dm.rref()
    return [list(r) for r in reduced.to_list()], tuple(pivots)


@dataclass(frozen=True)
class Matrix:
    """Dense rational matrix stored row-major."""

    rows: int
    cols: int
    entries: Tuple[Rational, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ShapeError(f"negative matrix shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"{len(self.entries)} entries do not fill a "
                f"{self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[Any]], cols: Optional[int] = None
    ) -> "Matrix":
        """Build a matrix from a list of rows.

        Args:
            rows: Row lists of rationals (or values accepted by ``to_rational``)
            cols: Column count, required only when there are no rows
        """
        width = len(rows[0]) if rows else (cols or 0)
        if cols is not None and rows and width != cols:
            raise ShapeError(f"rows have {width} columns, expected {cols}")
        entries: List[Rational] = []
        for index, row in enumerate(rows):
            if len(row) != width:
                raise ShapeError(
                    f"row {index} has {len(row)} entries, expected {width}"
                )
            entries.extend(to_rational(v) for v in row)
        return cls(len(rows), width, tuple(entries))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Any]], rows: int) -> "Matrix":
        """Build a ``rows x len(columns)`` matrix from its columns."""
        for index, column in enumerate(columns):
            if len(column) != rows:
                raise ShapeError(
                    f"column {index} has {len(column)} entries, expected {rows}"
                )
        converted = [to_vector(c) for c in columns]
        entries = tuple(
            converted[j][i] for i in range(rows) for j in range(len(columns))
        )
        return cls(rows, len(columns), entries)

    @classmethod
    def from_function(
        cls, rows: int, cols: int, column: Callable[[int], Sequence[Rational]]
    ) -> "Matrix":
        """Build a matrix whose ``j``-th column is ``column(j)``."""
        return cls.from_columns([column(j) for j in range(cols)], rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(
            n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n))
        )

    @classmethod
    def diagonal(cls, values: Sequence[Any]) -> "Matrix":
        n = len(values)
        diag = to_vector(values)
        return cls(
            n,
            n,
            tuple(diag[i] if i == j else ZERO for i in range(n) for j in range(n)),
        )

    @classmethod
    def block_diagonal(cls, *blocks: "Matrix") -> "Matrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        grid = [[ZERO] * cols for _ in range(rows)]
        r0 = c0 = 0
        for block in blocks:
            for i in range(block.rows):
                for j in range(block.cols):
                    grid[r0 + i][c0 + j] = block.entry(i, j)
            r0 += block.rows
            c0 += block.cols
        return cls.from_rows(grid, cols)

    @classmethod
    def hstack(cls, *blocks: "Matrix") -> "Matrix":
        if len({b.rows for b in blocks}) > 1:
            raise ShapeError("hstack blocks have different row counts")
        rows = blocks[0].rows
        columns: List[Vector] = []
        for block in blocks:
            columns.extend(block.columns())
        return cls.from_columns(columns, rows)

    @classmethod
    def vstack(cls, *blocks: "Matrix") -> "Matrix":
        if len({b.cols for b in blocks}) > 1:
            raise ShapeError("vstack blocks have different column counts")
        cols = blocks[0].cols
        rows: List[Vector] = []
        for block in blocks:
            rows.extend(block.row(i) for i in range(block.rows))
        return cls.from_rows(rows, cols)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def entry(self, i: int, j: int) -> Rational:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> List[List[Rational]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def apply(self, v: Sequence[Rational]) -> Vector:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ShapeError(
                f"cannot apply {self.rows}x{self.cols} matrix to length {len(v)}"
            )
        out = [ZERO] * self.rows
        for j, vj in enumerate(v):
            if vj == 0:
                continue
            for i in range(self.rows):
                a = self.entries[i * self.cols + j]
                if a:
                    out[i] += a * vj
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot compose {self.shape} with {other.shape}")
        return Matrix.from_columns([self.apply(c) for c in other.columns()], self.rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.rows, self.cols, add_vectors(self.entries, other.entries))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {other.shape} from {self.shape}")
        return Matrix(self.rows, self.cols, sub_vectors(self.entries, other.entries))

    def __neg__(self) -> "Matrix":
        return self.scaled(-ONE)

    def scaled(self, c: Any) -> "Matrix":
        return Matrix(self.rows, self.cols, scale_vector(to_rational(c), self.entries))

    def transpose(self) -> "Matrix":
        return Matrix.from_columns([self.row(i) for i in range(self.rows)], self.cols)

    def with_entry(self, i: int, j: int, value: Any) -> "Matrix":
        entries = list(self.entries)
        entries[i * self.cols + j] = to_rational(value)
        return Matrix(self.rows, self.cols, tuple(entries))

    def is_zero(self) -> bool:
        return is_zero_vector(self.entries)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Matrix.identity(self.rows)

    def rank(self) -> int:
        _, pivots = _rref(self.to_lists(), self.cols)
        return len(pivots)

    def inverse(self) -> Optional["Matrix"]:
        """Exact inverse, or None when singular or not square."""
        if self.rows != self.cols:
            return None
        n = self.rows
        if n == 0:
            return self
        augmented = [list(self.row(i)) + list(unit_vector(n, i)) for i in range(n)]
        reduced, pivots = _rref(augmented, 2 * n)
        if pivots[:n] != tuple(range(n)):
            return None
        return Matrix.from_rows([row[n:] for row in reduced], n)


def linear_combination(
    coefficients: Sequence[Rational], matrices: Sequence[Matrix], rows: int, cols: int
) -> Matrix:
    """Sum of ``c_i * M_i``; the zero matrix of the given shape when empty."""
    if len(coefficients) != len(matrices):
        raise ShapeError("coefficient count does not match matrix family")
    entries = [ZERO] * (rows * cols)
    for c, m in zip(coefficients, matrices):
        if c == 0:
            continue
        if m.shape != (rows, cols):
            raise ShapeError(
                f"family member has shape {m.shape}, expected {(rows, cols)}"
            )
        for k, a in enumerate(m.entries):
            if a:
                entries[k] += c * a
    return Matrix(rows, cols, tuple(entries))


@dataclass(frozen=True)
class Bilinear:
    """Bilinear map ``(e_i, e_j) -> sum_k c[k][i][j] e_k``."""

    dim_left: int
    dim_right: int
    dim_out: int
    coeffs: Tuple[Tuple[Tuple[Rational, ...], ...], ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.dim_out or any(
            len(plane) != self.dim_left or any(len(r) != self.dim_right for r in plane)
            for plane in self.coeffs
        ):
            raise ShapeError(
                "bilinear coefficients do not match shape "
                f"({self.dim_out}, {self.dim_left}, {self.dim_right})"
            )

    @classmethod
    def from_nested(
        cls, coeffs: Sequence[Sequence[Sequence[Any]]], dim_left: int, dim_right: int
    ) -> "Bilinear":
        """Build from nested ``c[k][i][j]`` lists.

        The left and right dimensions fix the empty cases.
        """
        converted = tuple(
            tuple(tuple(to_rational(v) for v in row) for row in plane)
            for plane in coeffs
        )
        return cls(dim_left, dim_right, len(coeffs), converted)

    @classmethod
    def from_function(
        cls,
        dim_left: int,
        dim_right: int,
        dim_out: int,
        value: Callable[[int, int], Sequence[Rational]],
    ) -> "Bilinear":
        """Build from the images ``value(i, j)`` of basis pairs."""
        table = [
            [to_vector(value(i, j)) for j in range(dim_right)]
            for i in range(dim_left)
        ]
        for i in range(dim_left):
            for j in range(dim_right):
                if len(table[i][j]) != dim_out:
                    raise ShapeError(
                        f"image of basis pair ({i}, {j}) has length "
                        f"{len(table[i][j])}, expected {dim_out}"
                    )
        coeffs = tuple(
            tuple(
                tuple(table[i][j][k] for j in range(dim_right))
                for i in range(dim_left)
            )
            for k in range(dim_out)
        )
        return cls(dim_left, dim_right, dim_out, coeffs)

    @classmethod
    def zeros(cls, dim_left: int, dim_right: int, dim_out: int) -> "Bilinear":
        return cls.from_function(
            dim_left, dim_right, dim_out, lambda i, j: zero_vector(dim_out)
        )

    @cached_property
    def _table(self) -> Tuple[Tuple[Vector, ...], ...]:
        return tuple(
            tuple(
                tuple(self.coeffs[k][i][j] for k in range(self.dim_out))
                for j in range(self.dim_right)
            )
            for i in range(self.dim_left)
        )

    def on_basis(self, i: int, j: int) -> Vector:
        return self._table[i][j]

    def apply(self, x: Sequence[Rational], y: Sequence[Rational]) -> Vector:
        if len(x) != self.dim_left or len(y) != self.dim_right:
            raise ShapeError(
                f"bilinear map on ({self.dim_left}, {self.dim_right}) "
                f"applied to lengths ({len(x)}, {len(y)})"
            )
        out = [ZERO] * self.dim_out
        table = self._table
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                s = xi * yj
                for k, c in enumerate(table[i][j]):
                    if c:
                        out[k] += s * c
        return tuple(out)

    def left_operator(self, x: Sequence[Rational]) -> Matrix:
        """The linear map ``y -> B(x, y)``."""
        return Matrix.from_function(
            self.dim_out,
            self.dim_right,
            lambda j: self.apply(x, unit_vector(self.dim_right, j)),
        )

    def right_operator(self, y: Sequence[Rational]) -> Matrix:
        """The linear map ``x -> B(x, y)``."""
        return Matrix.from_function(
            self.dim_out,
            self.dim_left,
            lambda i: self.apply(unit_vector(self.dim_left, i), y),
        )

    def compose_arguments(
        self, left: Optional[Matrix] = None, right: Optional[Matrix] = None
    ) -> "Bilinear":
        """The bilinear map ``(u, v) -> B(left u, right v)``; None means identity."""
        if left is not None and left.rows != self.dim_left:
            raise ShapeError(f"left map lands in {left.rows}, expected {self.dim_left}")
        if right is not None and right.rows != self.dim_right:
            raise ShapeError(
                f"right map lands in {right.rows}, expected {self.dim_right}"
            )
        lefts = left.columns() if left is not None else None
        rights = right.columns() if right is not None else None
        return Bilinear.from_function(
            left.cols if left is not None else self.dim_left,
            right.cols if right is not None else self.dim_right,
            self.dim_out,
            lambda i, j: self.apply(
                lefts[i] if lefts is not None else unit_vector(self.dim_left, i),
                rights[j] if rights is not None else unit_vector(self.dim_right, j),
            ),
        )

    def with_coefficient(self, k: int, i: int, j: int, value: Any) -> "Bilinear":
        nested = [[list(row) for row in plane] for plane in self.coeffs]
        nested[k][i][j] = to_rational(value)
        return Bilinear.from_nested(nested, self.dim_left, self.dim_right)

    def is_zero(self) -> bool:
        return all(is_zero_vector(row) for plane in self.coeffs for row in plane)

    def to_lists(self) -> List[List[List[Rational]]]:
        return [[list(row) for row in plane] for plane in self.coeffs]


@dataclass(frozen=True)
class Subspace:
    """Subspace of ``Q^ambient_dim`` in canonical reduced column echelon form.

    The basis columns are the nonzero rows of the reduced row echelon form of
    any spanning set, so equal spans give equal objects.
    """

    ambient_dim: int
    basis: Matrix

    def __post_init__(self) -> None:
        if self.basis.rows != self.ambient_dim:
            raise ShapeError(
                f"basis has {self.basis.rows} rows "
                f"in ambient dimension {self.ambient_dim}"
            )

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Any]], ambient_dim: int) -> "Subspace":
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise ShapeError(
                    f"vector of length {len(v)} in ambient dimension {ambient_dim}"
                )
            rows.append(list(to_vector(v)))
        reduced, pivots = _rref(rows, ambient_dim)
        return cls(
            ambient_dim, Matrix.from_columns(reduced[: len(pivots)], ambient_dim)
        )

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.zeros(ambient_dim, 0))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.cols

    def vectors(self) -> List[Vector]:
        return self.basis.columns()

    @cached_property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(
            next(i for i, a in enumerate(column) if a != 0) for column in self.vectors()
        )

    def _reduce(self, v: Sequence[Rational]) -> Vector:
        w = to_vector(v)
        for column, pivot in zip(self.vectors(), self.pivots):
            c = w[pivot]
            if c:
                w = sub_vectors(w, scale_vector(c, column))
        return w

    def contains(self, v: Sequence[Rational]) -> bool:
        if len(v) != self.ambient_dim:
            raise ShapeError(
                f"vector of length {len(v)} in ambient dimension {self.ambient_dim}"
            )
        return is_zero_vector(self._reduce(v))

    def coordinates(self, v: Sequence[Rational]) -> Optional[Vector]:
        """Coordinates of ``v`` in the canonical basis, or None if ``v`` is outside."""
        if not self.contains(v):
            return None
        return tuple(to_rational(v[p]) for p in self.pivots)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.vectors())

    def join(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.vectors() + other.vectors(), self.ambient_dim)

    def image(self, f: Matrix) -> "Subspace":
        if f.cols != self.ambient_dim:
            raise ShapeError(
                f"map with {f.cols} columns on ambient dimension {self.ambient_dim}"
            )
        return Subspace.span([f.apply(v) for v in self.vectors()], f.rows)


def solve(a: Matrix, b: Sequence[Any]) -> Optional[Vector]:
    """One exact solution of ``a x = b``, or None when inconsistent.

    Raises:
        ShapeError: If ``len(b) != a.rows``
    """
    if len(b) != a.rows:
        raise ShapeError(f"right-hand side of length {len(b)} for {a.rows} equations")
    rhs = to_vector(b)
    augmented = [list(a.row(i)) + [rhs[i]] for i in range(a.rows)]
    reduced, pivots = _rref(augmented, a.cols + 1)
    if a.rows == 0:
        return zero_vector(a.cols)
    if a.cols in pivots:
        return None
    x = [ZERO] * a.cols
    for row, pivot in zip(reduced, pivots):
        x[pivot] = row[a.cols]
    return tuple(x)


def nullspace(a: Matrix) -> Subspace:
    """Canonical kernel of ``a``; its dimension is ``cols - rank``."""
    if a.rows == 0:
        return Subspace.full(a.cols)
    reduced, pivots = _rref(a.to_lists(), a.cols)
    free = [j for j in range(a.cols) if j not in pivots]
    vectors = []
    for j in free:
        v = [ZERO] * a.cols
        v[j] = ONE
        for row, pivot in zip(reduced, pivots):
            v[pivot] = -row[j]
        vectors.append(v)
    return Subspace.span(vectors, a.cols)


class Slot(Enum):
    """Which argument of a bilinear map the closed subspace occupies."""

    LEFT = "left"
    RIGHT = "right"
    BOTH = "both"


def closure_rounds(
    seed: Subspace,
    unary: Sequence[Matrix] = (),
    binary: Sequence[Tuple[Bilinear, Slot]] = (),
) -> Tuple[Subspace, int]:
    """Smallest subspace containing ``seed`` stable under every operator.

    Binary entries absorb: for ``(b, Slot.LEFT)`` every ``b(s, e_j)`` over all
    basis vectors ``e_j`` of the right argument space must stay inside.

    Returns:
        The closed subspace and the number of rounds that enlarged it

    Raises:
        ShapeError: If an operator does not act on the seed's ambient space
    """
    n = seed.ambient_dim
    for f in unary:
        if f.shape != (n, n):
            raise ShapeError(
                f"unary operator of shape {f.shape} on ambient dimension {n}"
            )
    for b, slot in binary:
        if b.dim_out != n:
            raise ShapeError(f"binary operator lands in dimension {b.dim_out}, not {n}")
        if slot in (Slot.LEFT, Slot.BOTH) and b.dim_left != n:
            raise ShapeError(f"left argument of dimension {b.dim_left}, not {n}")
        if slot in (Slot.RIGHT, Slot.BOTH) and b.dim_right != n:
            raise ShapeError(f"right argument of dimension {b.dim_right}, not {n}")

    current = seed
    rounds = 0
    while True:
        generators: List[Vector] = current.vectors()
        for v in current.vectors():
            generators.extend(f.apply(v) for f in unary)
            for b, slot in binary:
                if slot in (Slot.LEFT, Slot.BOTH):
                    generators.extend(
                        b.apply(v, unit_vector(b.dim_right, j))
                        for j in range(b.dim_right)
                    )
                if slot in (Slot.RIGHT, Slot.BOTH):
                    generators.extend(
                        b.apply(unit_vector(b.dim_left, i), v)
                        for i in range(b.dim_left)
                    )
        grown = Subspace.span(generators, n)
        if grown.dim == current.dim:
            logger.debug(
                f"Closure stable at dimension {current.dim} after {rounds} rounds"
            )
            return current, rounds
        rounds += 1
        current = grown


def closure(
    seed: Subspace,
    unary: Sequence[Matrix] = (),
    binary: Sequence[Tuple[Bilinear, Slot]] = (),
) -> Subspace:
    """Closure of ``seed``; see ``closure_rounds``."""
    return closure_rounds(seed, unary, binary)[0]


@dataclass(frozen=True)
class QuotientStructure:
    """Quotient ``Q^n / S`` with canonical coordinates.

    Representatives are the standard basis vectors at the non-pivot positions
    of ``S``; the projection subtracts the pivot rows.
    """

    ambient_dim: int
    subspace: Subspace
    projection: Matrix
    section: Matrix

    @classmethod
    def of(cls, subspace: Subspace) -> "QuotientStructure":
        n = subspace.ambient_dim
        pivots = subspace.pivots
        free = [j for j in range(n) if j not in pivots]
        q = len(free)
        section = Matrix.from_columns([unit_vector(n, j) for j in free], n)
        basis = subspace.vectors()
        columns: List[Vector] = []
        for j in range(n):
            if j in pivots:
                row = basis[pivots.index(j)]
                columns.append(tuple(-row[f] for f in free))
            else:
                columns.append(unit_vector(q, free.index(j)))
        return cls(n, subspace, Matrix.from_columns(columns, q), section)

    @property
    def dim(self) -> int:
        return self.section.cols

    def project(self, v: Sequence[Rational]) -> Vector:
        return self.projection.apply(v)

    def lift(self, c: Sequence[Rational]) -> Vector:
        return self.section.apply(c)


def induced_map_on_quotient(
    f: Matrix, q: QuotientStructure, codomain: Optional[QuotientStructure] = None
) -> Optional[Matrix]:
    """Map induced by ``f`` between quotients.

    Args:
        f: Linear map from ``q``'s ambient space to ``codomain``'s ambient space
        q: Quotient of the domain
        codomain: Quotient of the target; defaults to ``q`` (endomorphisms)

    Returns:
        The induced matrix, or None when ``f`` does not carry the subspace into
        the target subspace
    """
    target = codomain or q
    if f.cols != q.ambient_dim or f.rows != target.ambient_dim:
        raise ShapeError(
            f"map of shape {f.shape} between quotients of wrong ambient dims"
        )
    for v in q.subspace.vectors():
        if not target.subspace.contains(f.apply(v)):
            return None
    return target.projection @ f @ q.section


def induced_map_from_quotient(f: Matrix, q: QuotientStructure) -> Optional[Matrix]:
    """Map out of ``q`` induced by ``f``, or None if ``f`` is nonzero on the kernel."""
    if f.cols != q.ambient_dim:
        raise ShapeError(
            f"map with {f.cols} columns on ambient dimension {q.ambient_dim}"
        )
    for v in q.subspace.vectors():
        if not is_zero_vector(f.apply(v)):
            return None
    return f @ q.section


def induced_bilinear(
    b: Bilinear,
    left: Optional[QuotientStructure],
    right: Optional[QuotientStructure],
    out: QuotientStructure,
) -> Optional[Bilinear]:
    """Bilinear map induced on quotients; ``None`` arguments are not quotiented.

    Returns:
        The induced map, or None when ``b`` does not send the quotiented
        subspaces into ``out``'s subspace
    """
    if b.dim_out != out.ambient_dim:
        raise ShapeError(
            f"bilinear map lands in {b.dim_out}, quotient of {out.ambient_dim}"
        )
    if left is not None and left.ambient_dim != b.dim_left:
        raise ShapeError("left quotient does not match the bilinear map")
    if right is not None and right.ambient_dim != b.dim_right:
        raise ShapeError("right quotient does not match the bilinear map")
    if left is not None:
        for s in left.subspace.vectors():
            for j in range(b.dim_right):
                if not out.subspace.contains(b.apply(s, unit_vector(b.dim_right, j))):
                    return None
    if right is not None:
        for s in right.subspace.vectors():
            for i in range(b.dim_left):
                if not out.subspace.contains(b.apply(unit_vector(b.dim_left, i), s)):
                    return None
    left_reps = left.section.columns() if left else [
        unit_vector(b.dim_left, i) for i in range(b.dim_left)
    ]
    right_reps = right.section.columns() if right else [
        unit_vector(b.dim_right, j) for j in range(b.dim_right)
    ]
    return Bilinear.from_function(
        len(left_reps),
        len(right_reps),
        out.dim,
        lambda i, j: out.project(b.apply(left_reps[i], right_reps[j])),
    )


def restrict_map(f: Matrix, domain: Subspace, codomain: Subspace) -> Optional[Matrix]:
    """Matrix of ``f`` in subspace coordinates, or None if ``f(domain)`` escapes."""
    if f.cols != domain.ambient_dim or f.rows != codomain.ambient_dim:
        raise ShapeError(
            f"map of shape {f.shape} between subspaces of wrong ambient dims"
        )
    columns = []
    for v in domain.vectors():
        coords = codomain.coordinates(f.apply(v))
        if coords is None:
            return None
        columns.append(coords)
    return Matrix.from_columns(columns, codomain.dim)


def restrict_bilinear(
    b: Bilinear,
    left: Optional[Subspace],
    right: Optional[Subspace],
    out: Subspace,
) -> Optional[Bilinear]:
    """Bilinear map restricted to subspaces; ``None`` arguments stay the full space.

    Returns:
        The restricted map in subspace coordinates, or None when an image
        leaves ``out``
    """
    left_vectors = left.vectors() if left else [
        unit_vector(b.dim_left, i) for i in range(b.dim_left)
    ]
    right_vectors = right.vectors() if right else [
        unit_vector(b.dim_right, j) for j in range(b.dim_right)
    ]
    table: List[List[Vector]] = []
    for x in left_vectors:
        row = []
        for y in right_vectors:
            coords = out.coordinates(b.apply(x, y))
            if coords is None:
                return None
            row.append(coords)
        table.append(row)
    return Bilinear.from_function(
        len(left_vectors), len(right_vectors), out.dim, lambda i, j: table[i][j]
    )
