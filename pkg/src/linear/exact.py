"""
Exact linear algebra over the rationals.

Entries are sympy ``QQ`` elements (gmpy-backed when available) stored in
read-only numpy object arrays, so row operations are plain numpy slicing and
no float ever enters a computation. Integer lattice helpers at the bottom work
on lists of Python ints.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from sympy import QQ

from src.utils.errors import (
    DimensionMismatchError,
    NoSolutionError,
    NotSquareError,
    NotSymmetricError,
)

logger = logging.getLogger(__name__)

Rational = QQ.dtype


def to_rational(value):
    if isinstance(value, str):
        num, _, den = value.strip().partition("/")
        return QQ(int(num), int(den or 1))
    if isinstance(value, np.integer):
        value = int(value)
    return QQ.convert(value)


def vector(values: Iterable) -> np.ndarray:
    vals = [to_rational(x) for x in values]
    out = np.empty(len(vals), dtype=object)
    for i, x in enumerate(vals):
        out[i] = x
    return out


def zero_vector(n: int) -> np.ndarray:
    return vector([0] * n)


def unit_vector(n: int, i: int) -> np.ndarray:
    v = zero_vector(n)
    v[i] = QQ(1)
    return v


def dot(x: Sequence, y: Sequence):
    if len(x) != len(y):
        raise DimensionMismatchError(f"cannot pair vectors of lengths {len(x)} and {len(y)}")
    total = QQ(0)
    for a, b in zip(x, y):
        if a and b:
            total += a * b
    return total


def is_integral_vector(v: Sequence) -> bool:
    return all(to_rational(x).denominator == 1 for x in v)


def to_int_list(v: Sequence) -> list[int]:
    out = []
    for x in v:
        x = to_rational(x)
        if x.denominator != 1:
            raise ValueError(f"entry {x} is not an integer")
        out.append(int(x.numerator))
    return out


def _object_array(rows, shape=None) -> np.ndarray:
    data = [list(r) for r in rows]
    if shape is None:
        shape = (len(data), len(data[0]) if data else 0)
    nrows, ncols = shape
    if len(data) != nrows:
        raise DimensionMismatchError(f"expected {nrows} rows, got {len(data)}")
    arr = np.empty((nrows, ncols), dtype=object)
    for i, row in enumerate(data):
        if len(row) != ncols:
            raise DimensionMismatchError(f"row {i} has {len(row)} entries, expected {ncols}")
        for j, x in enumerate(row):
            arr[i, j] = to_rational(x)
    return arr


class RationalMatrix:
    """An immutable matrix over QQ."""

    __slots__ = ("_a",)

    def __init__(self, rows, shape=None):
        if isinstance(rows, RationalMatrix):
            arr = rows._a
        elif isinstance(rows, np.ndarray) and rows.ndim == 2:
            arr = _object_array(rows.tolist(), rows.shape)
        else:
            arr = _object_array(rows, shape)
        arr.flags.writeable = False
        self._a = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> RationalMatrix:
        obj = object.__new__(cls)
        arr = np.array(arr, dtype=object, copy=True)
        arr.flags.writeable = False
        obj._a = arr
        return obj

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RationalMatrix:
        return cls([[0] * cols for _ in range(rows)], (rows, cols))

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], (n, n))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> RationalMatrix:
        cols = [list(c) for c in columns]
        return cls([[c[i] for c in cols] for i in range(rows)], (rows, len(cols)))

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def T(self) -> RationalMatrix:
        return RationalMatrix._wrap(self._a.T)

    def __getitem__(self, key):
        return self._a[key]

    def row(self, i: int) -> np.ndarray:
        return self._a[i, :]

    def column(self, j: int) -> np.ndarray:
        return self._a[:, j]

    def columns(self) -> list[np.ndarray]:
        return [self._a[:, j] for j in range(self.cols)]

    def apply(self, v: Sequence) -> np.ndarray:
        if len(v) != self.cols:
            raise DimensionMismatchError(f"cannot apply a {self.shape} matrix to a vector of length {len(v)}")
        return vector(dot(self._a[i, :], v) for i in range(self.rows))

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        if self.cols == 0:
            return RationalMatrix.zeros(self.rows, other.cols)
        return RationalMatrix._wrap(self._a @ other._a)

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        self._check_same_shape(other)
        return RationalMatrix._wrap(self._a + other._a)

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        self._check_same_shape(other)
        return RationalMatrix._wrap(self._a - other._a)

    def __neg__(self) -> RationalMatrix:
        return RationalMatrix._wrap(-self._a)

    def scale(self, c) -> RationalMatrix:
        c = to_rational(c)
        if self._a.size == 0:
            return self
        return RationalMatrix._wrap(self._a * c)

    def _check_same_shape(self, other: RationalMatrix):
        if self.shape != other.shape:
            raise DimensionMismatchError(f"shape {self.shape} does not match {other.shape}")

    def hstack(self, other: RationalMatrix) -> RationalMatrix:
        if self.rows != other.rows:
            raise DimensionMismatchError(f"cannot place {self.shape} beside {other.shape}")
        return RationalMatrix._wrap(np.hstack([self._a, other._a]))

    def vstack(self, other: RationalMatrix) -> RationalMatrix:
        if self.cols != other.cols:
            raise DimensionMismatchError(f"cannot stack {self.shape} on {other.shape}")
        return RationalMatrix._wrap(np.vstack([self._a, other._a]))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> RationalMatrix:
        return RationalMatrix._wrap(self._a[np.ix_(list(rows), list(cols))]) if rows and cols \
            else RationalMatrix.zeros(len(rows), len(cols))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square and bool(np.all(self._a == self._a.T))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self._a.flat)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self._a.flat)

    def to_int_rows(self) -> list[list[int]]:
        return [to_int_list(self._a[i, :]) for i in range(self.rows)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self._a == other._a))

    def __hash__(self) -> int:
        return hash((self.shape, tuple(self._a.flat)))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in self._a[i, :]) for i in range(self.rows))
        return f"RationalMatrix({self.rows}x{self.cols}: [{body}])"


class Inertia(NamedTuple):
    b_plus: int
    b_minus: int
    b_zero: int

    @property
    def sigma(self) -> int:
        return self.b_plus - self.b_minus

    @property
    def rank(self) -> int:
        return self.b_plus + self.b_minus


def rref(matrix: RationalMatrix) -> tuple[RationalMatrix, tuple[int, ...]]:
    a = np.array(matrix.array, dtype=object, copy=True)
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = next((i for i in range(r, nrows) if a[i, c] != 0), None)
        if nz is None:
            continue
        if nz != r:
            a[[r, nz]] = a[[nz, r]]
        a[r, :] = a[r, :] / a[r, c]
        for i in range(nrows):
            if i != r and a[i, c] != 0:
                a[i, :] = a[i, :] - a[i, c] * a[r, :]
        pivots.append(c)
        r += 1
    return RationalMatrix._wrap(a), tuple(pivots)


def rank(matrix: RationalMatrix) -> int:
    return len(rref(matrix)[1])


@dataclass(frozen=True)
class Subspace:
    """A subspace of QQ^n; `basis` columns are in reduced column echelon form."""

    ambient_dim: int
    basis: RationalMatrix

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> Subspace:
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise DimensionMismatchError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        if not vecs:
            return cls.zero(ambient_dim)
        reduced, pivots = rref(RationalMatrix(vecs, (len(vecs), ambient_dim)))
        rows = [reduced.row(i) for i in range(len(pivots))]
        return cls(ambient_dim, RationalMatrix.from_columns(rows, ambient_dim))

    @classmethod
    def from_columns(cls, matrix: RationalMatrix) -> Subspace:
        return cls.span(matrix.rows, matrix.columns())

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, RationalMatrix.zeros(ambient_dim, 0))

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, RationalMatrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.cols

    def vectors(self) -> list[np.ndarray]:
        return self.basis.columns()

    def _check(self, other: Subspace):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatchError(
                f"subspaces live in dimensions {self.ambient_dim} and {other.ambient_dim}"
            )

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace.span(self.ambient_dim, self.vectors() + other.vectors())

    def intersect(self, other: Subspace) -> Subspace:
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        stacked = self.basis.hstack(-other.basis)
        relations = kernel(stacked)
        return Subspace.span(
            self.ambient_dim,
            (self.basis.apply(r[: self.dim]) for r in relations.vectors()),
        )

    def __and__(self, other: Subspace) -> Subspace:
        return self.intersect(other)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        if self.dim == 0:
            return all(to_rational(x) == 0 for x in v)
        return rank(self.basis.hstack(RationalMatrix.from_columns([v], self.ambient_dim))) == self.dim

    def contains_subspace(self, other: Subspace) -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.vectors())

    def image(self, matrix: RationalMatrix) -> Subspace:
        return Subspace.span(matrix.rows, (matrix.apply(v) for v in self.vectors()))


def kernel(matrix: RationalMatrix) -> Subspace:
    reduced, pivots = rref(matrix)
    free = [c for c in range(matrix.cols) if c not in pivots]
    vecs = []
    for f in free:
        v = zero_vector(matrix.cols)
        v[f] = QQ(1)
        for i, p in enumerate(pivots):
            v[p] = -reduced[i, f]
        vecs.append(v)
    return Subspace.span(matrix.cols, vecs)


def image(matrix: RationalMatrix) -> Subspace:
    return Subspace.from_columns(matrix)


def solve(matrix: RationalMatrix, b: Sequence) -> np.ndarray:
    """A particular solution of M x = b (free variables set to zero)."""
    if len(b) != matrix.rows:
        raise DimensionMismatchError(f"right-hand side of length {len(b)} for a {matrix.shape} system")
    augmented = matrix.hstack(RationalMatrix.from_columns([b], matrix.rows))
    reduced, pivots = rref(augmented)
    if pivots and pivots[-1] == matrix.cols:
        raise NoSolutionError("linear system is inconsistent")
    x = zero_vector(matrix.cols)
    for i, p in enumerate(pivots):
        x[p] = reduced[i, matrix.cols]
    return x


def inverse(matrix: RationalMatrix) -> RationalMatrix:
    if not matrix.is_square:
        raise NotSquareError(f"cannot invert a {matrix.shape} matrix")
    n = matrix.rows
    reduced, pivots = rref(matrix.hstack(RationalMatrix.identity(n)))
    if pivots[:n] != tuple(range(n)):
        raise NoSolutionError("matrix is singular")
    return reduced.submatrix(range(n), range(n, 2 * n))


def signature(sym: RationalMatrix) -> Inertia:
    """
    Inertia of a symmetric matrix by congruence diagonalization.

    A zero diagonal pivot is repaired by adding row/column j to row/column i for
    some S[i][j] != 0, which puts 2*S[i][j] on the diagonal.
    """
    if not sym.is_symmetric():
        raise NotSymmetricError(f"signature needs a symmetric matrix, got {sym!r}")
    a = np.array(sym.array, dtype=object, copy=True)
    n = a.shape[0]
    b_plus = b_minus = 0
    k = 0
    while k < n:
        i = next((t for t in range(k, n) if a[t, t] != 0), None)
        if i is None:
            pair = next(
                ((s, t) for s in range(k, n) for t in range(s + 1, n) if a[s, t] != 0),
                None,
            )
            if pair is None:
                break
            i, j = pair
            a[i, :] = a[i, :] + a[j, :]
            a[:, i] = a[:, i] + a[:, j]
        if i != k:
            a[[k, i]] = a[[i, k]]
            a[:, [k, i]] = a[:, [i, k]]
        d = a[k, k]
        if d > 0:
            b_plus += 1
        else:
            b_minus += 1
        for r in range(k + 1, n):
            if a[r, k] != 0:
                f = a[r, k] / d
                a[r, :] = a[r, :] - f * a[k, :]
                a[:, r] = a[:, r] - f * a[:, k]
        k += 1
    return Inertia(b_plus, b_minus, n - b_plus - b_minus)


def det_sign(matrix: RationalMatrix) -> int:
    """Sign of the determinant; the empty matrix has determinant one."""
    if not matrix.is_square:
        raise NotSquareError(f"determinant of a {matrix.shape} matrix")
    a = np.array(matrix.array, dtype=object, copy=True)
    n = a.shape[0]
    sign = 1
    for c in range(n):
        p = next((i for i in range(c, n) if a[i, c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[[c, p]] = a[[p, c]]
            sign = -sign
        if a[c, c] < 0:
            sign = -sign
        for r in range(c + 1, n):
            if a[r, c] != 0:
                a[r, :] = a[r, :] - (a[r, c] / a[c, c]) * a[c, :]
    return sign


def _column_reduce(rows: Sequence[Sequence[int]], ncols: int):
    """
    Unimodular column reduction: returns (H, U, pivots) with C U = H, where row
    i of H has its leading entry in column pivots[i] (or None) and every column
    of H from len(pivot columns) on is zero.
    """
    h = [[int(x) for x in r] for r in rows]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap(j, k):
        for m in (h, u):
            for r in m:
                r[j], r[k] = r[k], r[j]

    def subtract(dst, src, factor):
        for m in (h, u):
            for r in m:
                r[dst] -= factor * r[src]

    def negate(j):
        for m in (h, u):
            for r in m:
                r[j] = -r[j]

    pivots = []
    p = 0
    for i in range(len(h)):
        row = h[i]
        while p < ncols:
            nz = [j for j in range(p, ncols) if row[j] != 0]
            if not nz:
                break
            swap(p, min(nz, key=lambda j: abs(row[j])))
            for j in range(p + 1, ncols):
                if row[j]:
                    subtract(j, p, row[j] // row[p])
            if not any(row[j] for j in range(p + 1, ncols)):
                break
        if p < ncols and row[p] != 0:
            if row[p] < 0:
                negate(p)
            pivots.append(p)
            p += 1
        else:
            pivots.append(None)
    return h, u, pivots


def integer_kernel_basis(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """A Z-basis of {x in Z^ncols : C x = 0}."""
    _, u, pivots = _column_reduce(rows, ncols)
    r = sum(1 for p in pivots if p is not None)
    return [[u[i][j] for i in range(ncols)] for j in range(r, ncols)]


def solve_integer(rows: Sequence[Sequence[int]], ncols: int, b: Sequence[int]) -> list[int]:
    """An integer solution of C x = b."""
    if len(b) != len(rows):
        raise DimensionMismatchError(f"right-hand side of length {len(b)} for {len(rows)} equations")
    h, u, pivots = _column_reduce(rows, ncols)
    y = [0] * ncols
    for i, p in enumerate(pivots):
        known = sum(h[i][j] * y[j] for j in range(ncols) if j != p)
        if p is None:
            if known != b[i]:
                raise NoSolutionError("integer system is inconsistent")
            continue
        quotient, remainder = divmod(int(b[i]) - known, h[i][p])
        if remainder:
            raise NoSolutionError("integer system has no integral solution")
        y[p] = quotient
    return [sum(u[i][j] * y[j] for j in range(ncols)) for i in range(ncols)]
