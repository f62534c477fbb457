"""Exact linear algebra over Scalar entries.

Vectors are plain tuples of :class:`~formed.scalars.Scalar`; matrices are
immutable row-major tuples of such tuples wrapped in :class:`Matrix`.
Everything here (echelon form, kernel, solving, inversion) is exact and
deterministic.

Matrix multiplication skips zero entries of the left factor, which makes
products with the permutation, diagonal, and block matrices used by the
group-theoretic modules cost far less than the dense cubic bound.
"""
from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from fractions import Fraction
from typing import Optional

from .errors import DimensionMismatch, SingularMatrix
from .scalars import ONE, ZERO, Scalar

Vector = tuple[Scalar, ...]

__all__ = [
    "Vector",
    "Matrix",
    "vec",
    "vec_add",
    "vec_sub",
    "vec_scale",
    "vec_is_zero",
    "zero_vector",
    "standard_basis_vector",
    "rref",
    "kernel_basis",
    "solve",
    "row_space_contains",
]


def _to_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    raise TypeError(f"cannot use {type(x).__name__} as a matrix entry")


def vec(entries: Iterable) -> Vector:
    """Build a vector, coercing ints and Fractions to scalars."""
    return tuple(_to_scalar(x) for x in entries)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def standard_basis_vector(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vec_add(v: Vector, w: Vector) -> Vector:
    return tuple(a + b for a, b in zip(v, w, strict=True))


def vec_sub(v: Vector, w: Vector) -> Vector:
    return tuple(a - b for a, b in zip(v, w, strict=True))


def vec_scale(c: Scalar, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def vec_is_zero(v: Vector) -> bool:
    return all(not a for a in v)


class Matrix:
    """Immutable exact matrix."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        self.rows: tuple[Vector, ...] = tuple(vec(row) for row in rows)
        if self.rows:
            width = len(self.rows[0])
            if any(len(r) != width for r in self.rows):
                raise DimensionMismatch("ragged rows")

    # -- construction ------------------------------------------------------

    @classmethod
    def _raw(cls, rows: tuple[Vector, ...]) -> "Matrix":
        m = object.__new__(cls)
        m.rows = rows
        return m

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(standard_basis_vector(n, i) for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls._raw(tuple(zero_vector(ncols) for _ in range(nrows)))

    @classmethod
    def diagonal(cls, entries: Sequence) -> "Matrix":
        d = vec(entries)
        n = len(d)
        return cls._raw(
            tuple(
                tuple(d[i] if i == j else ZERO for j in range(n))
                for i in range(n)
            )
        )

    @classmethod
    def from_block_diagonal(cls, *blocks: "Matrix") -> "Matrix":
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        out = [[ZERO] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                out[r0 + i][c0 : c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return cls._raw(tuple(tuple(r) for r in out))

    # -- shape / access ----------------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> Vector:
        return self.rows[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "Matrix":
        return Matrix._raw(
            tuple(
                tuple(self.rows[i][j] for j in col_indices) for i in row_indices
            )
        )

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise DimensionMismatch("matrix addition shape mismatch")
        return Matrix._raw(
            tuple(vec_add(a, b) for a, b in zip(self.rows, other.rows))
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise DimensionMismatch("matrix subtraction shape mismatch")
        return Matrix._raw(
            tuple(vec_sub(a, b) for a, b in zip(self.rows, other.rows))
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-x for x in row) for row in self.rows))

    def scale(self, c) -> "Matrix":
        c = _to_scalar(c)
        return Matrix._raw(tuple(vec_scale(c, row) for row in self.rows))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(
                f"cannot multiply {self.nrows}x{self.ncols} by "
                f"{other.nrows}x{other.ncols}"
            )
        p = other.ncols
        brows = other.rows
        out_rows = []
        for arow in self.rows:
            acc = [ZERO] * p
            for k, a in enumerate(arow):
                if not a:
                    continue
                brow = brows[k]
                if a.is_one():
                    for j, b in enumerate(brow):
                        if b:
                            acc[j] = acc[j] + b
                else:
                    for j, b in enumerate(brow):
                        if b:
                            acc[j] = acc[j] + a * b
            out_rows.append(tuple(acc))
        return Matrix._raw(tuple(out_rows))

    def matvec(self, v: Vector) -> Vector:
        if self.ncols != len(v):
            raise DimensionMismatch("matrix/vector size mismatch")
        out = []
        for row in self.rows:
            acc = ZERO
            for a, x in zip(row, v):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def vecmat(self, v: Vector) -> Vector:
        """Row vector times matrix."""
        if self.nrows != len(v):
            raise DimensionMismatch("vector/matrix size mismatch")
        acc = [ZERO] * self.ncols
        for x, row in zip(v, self.rows):
            if not x:
                continue
            for j, a in enumerate(row):
                if a:
                    acc[j] = acc[j] + x * a
        return tuple(acc)

    def transpose(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self.rows))) if self.rows else self

    def map(self, fn: Callable[[Scalar], Scalar]) -> "Matrix":
        return Matrix._raw(tuple(tuple(fn(x) for x in row) for row in self.rows))

    def is_zero(self) -> bool:
        return all(vec_is_zero(row) for row in self.rows)

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        return all(
            (x.is_one() if i == j else not x)
            for i, row in enumerate(self.rows)
            for j, x in enumerate(row)
        )

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise DimensionMismatch("only square matrices can be inverted")
        n = self.nrows
        aug = [list(row) + list(standard_basis_vector(n, i))
               for i, row in enumerate(self.rows)]
        reduced, pivots = _row_reduce(aug, n)
        if len(pivots) < n:
            raise SingularMatrix("matrix is singular")
        return Matrix._raw(tuple(tuple(row[n:]) for row in reduced))

    def rank(self) -> int:
        _, pivots = rref(self)
        return len(pivots)

    # -- equality ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(str(x.re) if not x.im else f"({x.re},{x.im})" for x in row)
            for row in self.rows
        )
        return f"Matrix[{self.nrows}x{self.ncols}: {body}]"


def _row_reduce(rows: list[list[Scalar]], limit: int) -> tuple[list[list[Scalar]], list[int]]:
    """In-place Gauss-Jordan over the first `limit` columns; returns pivots."""
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        pivot_row = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [inv * x for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and the pivot column indices."""
    rows = [list(row) for row in m.rows]
    reduced, pivots = _row_reduce(rows, m.ncols)
    return Matrix._raw(tuple(tuple(r) for r in reduced)), tuple(pivots)


def kernel_basis(m: Matrix) -> tuple[Vector, ...]:
    """A canonical basis of the right null space {v : m v = 0}."""
    reduced, pivots = rref(m)
    n = m.ncols
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -reduced.rows[r][f]
        basis.append(tuple(v))
    return tuple(basis)


def solve(m: Matrix, b: Vector) -> Optional[Vector]:
    """One exact solution of m x = b, or None when inconsistent."""
    if m.nrows != len(b):
        raise DimensionMismatch("right-hand side has wrong length")
    n = m.ncols
    rows = [list(row) + [bi] for row, bi in zip(m.rows, b)]
    reduced, pivots = _row_reduce(rows, n)
    for row in reduced[len(pivots):]:
        if row[n]:
            return None
    x = [ZERO] * n
    for r, p in enumerate(pivots):
        x[p] = reduced[r][n]
    return tuple(x)


def row_space_contains(m: Matrix, v: Vector) -> bool:
    """Whether v is a linear combination of the rows of m."""
    if m.nrows == 0:
        return vec_is_zero(v)
    stacked = Matrix(list(m.rows) + [list(v)])
    return stacked.rank() == m.rank()
