"""
The symplectic space H_1(Sigma_g; Q), its lagrangians and the Maslov index.

Vectors are written in the ordered basis (m_1, ..., m_g, l_1, ..., l_g) with
m_i . l_i = +1, so the intersection form has matrix J = [[0, I], [-I, 0]].
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from sympy import ilcm

from src.linear.exact import (
    RationalMatrix,
    Subspace,
    integer_kernel_basis,
    inverse,
    signature,
    solve,
    solve_integer,
    to_int_list,
    to_rational,
    unit_vector,
    vector,
)
from src.utils.errors import DimensionMismatchError, NotLagrangianError, NotSymplecticError

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def intersection_form(genus: int) -> RationalMatrix:
    n = 2 * genus
    rows = [[0] * n for _ in range(n)]
    for i in range(genus):
        rows[i][genus + i] = 1
        rows[genus + i][i] = -1
    return RationalMatrix(rows, (n, n))


@dataclass(frozen=True)
class SymplecticSpace:
    genus: int

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError(f"genus must be positive, got {self.genus}")

    @property
    def dimension(self) -> int:
        return 2 * self.genus

    @property
    def form(self) -> RationalMatrix:
        return intersection_form(self.genus)

    def pair(self, x: Sequence, y: Sequence):
        """The intersection number x . y."""
        g = self.genus
        if len(x) != 2 * g or len(y) != 2 * g:
            raise DimensionMismatchError(f"vectors must have length {2 * g}")
        total = to_rational(0)
        for i in range(g):
            total += x[i] * y[g + i] - x[g + i] * y[i]
        return total

    def meridian(self, i: int) -> np.ndarray:
        return unit_vector(self.dimension, i)

    def longitude(self, i: int) -> np.ndarray:
        return unit_vector(self.dimension, self.genus + i)

    def is_symplectic(self, matrix: RationalMatrix) -> bool:
        if matrix.shape != (self.dimension, self.dimension):
            return False
        return matrix.T @ self.form @ matrix == self.form

    def standard_lagrangian(self) -> Lagrangian:
        return Lagrangian(self, Subspace.span(self.dimension, [self.meridian(i) for i in range(self.genus)]))


def is_lagrangian(space: SymplecticSpace, subspace: Subspace) -> bool:
    if subspace.ambient_dim != space.dimension:
        raise DimensionMismatchError(
            f"subspace of dimension {subspace.ambient_dim} in a space of dimension {space.dimension}"
        )
    if subspace.dim != space.genus:
        return False
    vecs = subspace.vectors()
    return all(space.pair(x, y) == 0 for i, x in enumerate(vecs) for y in vecs[i + 1:])


@dataclass(frozen=True)
class Lagrangian:
    space: SymplecticSpace
    subspace: Subspace

    def __post_init__(self):
        if not is_lagrangian(self.space, self.subspace):
            raise NotLagrangianError(f"subspace of dimension {self.subspace.dim} is not lagrangian in genus {self.space.genus}")

    @classmethod
    def span(cls, space: SymplecticSpace, vectors) -> Lagrangian:
        return cls(space, Subspace.span(space.dimension, vectors))

    @property
    def genus(self) -> int:
        return self.space.genus

    def vectors(self) -> list[np.ndarray]:
        return self.subspace.vectors()

    def contains(self, v) -> bool:
        return self.subspace.contains(v)

    def image(self, matrix: RationalMatrix) -> Lagrangian:
        return Lagrangian(self.space, self.subspace.image(matrix))

    def is_standard(self) -> bool:
        return self.subspace == self.space.standard_lagrangian().subspace


def _check_same_space(*lagrangians: Lagrangian):
    genera = {lag.space.genus for lag in lagrangians}
    if len(genera) != 1:
        raise DimensionMismatchError(f"lagrangians live in different genera {sorted(genera)}")


def maslov_gram(l1: Lagrangian, l2: Lagrangian, l3: Lagrangian, rng: np.random.Generator | None = None) -> RationalMatrix:
    """
    Gram matrix of (a1 + a2) ⊙ (b1 + b2) = a2 . b1 on (l1 + l2) ∩ l3.

    With `rng`, each decomposition w = a1 + a2 is shifted by a random element of
    l1 ∩ l2, which must not change the form.
    """
    _check_same_space(l1, l2, l3)
    space = l1.space
    domain = (l1.subspace + l2.subspace).intersect(l3.subspace)
    b1, b2 = l1.subspace.basis, l2.subspace.basis
    stacked = b1.hstack(b2)
    shifts = (l1.subspace & l2.subspace).vectors() if rng is not None else []
    parts = []
    for w in domain.vectors():
        c = solve(stacked, w)
        a1 = b1.apply(c[: b1.cols])
        a2 = b2.apply(c[b1.cols:])
        for t in shifts:
            k = to_rational(int(rng.integers(-3, 4)))
            a1 = a1 + k * t
            a2 = a2 - k * t
        parts.append((a1, a2))
    n = len(parts)
    gram = [[space.pair(parts[i][1], parts[j][0]) for j in range(n)] for i in range(n)]
    g = RationalMatrix(gram, (n, n))
    return (g + g.T).scale(to_rational("1/2"))


def maslov(l1: Lagrangian, l2: Lagrangian, l3: Lagrangian, rng: np.random.Generator | None = None) -> int:
    return signature(maslov_gram(l1, l2, l3, rng)).sigma


def symplectic_inverse(matrix: RationalMatrix) -> RationalMatrix:
    j = intersection_form(matrix.rows // 2)
    return -(j @ matrix.T @ j)


def adapt_lagrangian(lag: Lagrangian) -> RationalMatrix:
    """
    An integral symplectic matrix whose first g columns span the lagrangian.

    The lattice lag ∩ Z^2g is found as the integer kernel of x ↦ (e_i . x), and
    dual vectors are solved for over Z then corrected to be mutually isotropic.
    """
    space = lag.space
    g, n = space.genus, space.dimension
    if lag.is_standard():
        return RationalMatrix.identity(n)
    form = space.form
    pairing_rows = [to_int_list((form.T.apply(_clear_denominators(v)))) for v in lag.vectors()]
    # rows r with r . x = e . x; the kernel of these functionals is lag itself
    lattice = integer_kernel_basis(pairing_rows, n)
    e = [vector(v) for v in lattice]
    dual_rows = [to_int_list(form.T.apply(v)) for v in e]
    f = [vector(solve_integer(dual_rows, n, [int(i == j) for i in range(g)])) for j in range(g)]
    corrected = []
    for i in range(g):
        v = f[i]
        for k in range(i + 1, g):
            v = v - space.pair(f[i], f[k]) * e[k]
        corrected.append(v)
    adapted = RationalMatrix.from_columns(e + corrected, n)
    if not space.is_symplectic(adapted):
        raise NotSymplecticError("symplectic completion failed")
    logger.debug("adapted lagrangian of genus %d with basis %r", g, adapted)
    return adapted


def _clear_denominators(v) -> np.ndarray:
    denominators = [int(to_rational(x).denominator) for x in v]
    scale = ilcm(*denominators) if len(denominators) > 1 else denominators[0]
    return vector(to_rational(x) * scale for x in v)


def transvection_matrix(space: SymplecticSpace, v: Sequence, power: int = 1) -> RationalMatrix:
    """Matrix of x ↦ x - power * (x . v) v."""
    v = vector(v)
    n = space.dimension
    cols = []
    for i in range(n):
        e = unit_vector(n, i)
        cols.append(e - (power * space.pair(e, v)) * v)
    return RationalMatrix.from_columns(cols, n)


def random_integer_vector(space: SymplecticSpace, rng: np.random.Generator, bound: int) -> list[int]:
    while True:
        v = [int(x) for x in rng.integers(-bound, bound + 1, size=space.dimension)]
        if any(v):
            return v


def random_symplectic(space: SymplecticSpace, seed, length: int, bound: int = 1) -> RationalMatrix:
    """Product of `length` random transvections; deterministic in `seed`."""
    if length < 0:
        raise ValueError(f"length must be non-negative, got {length}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    result = RationalMatrix.identity(space.dimension)
    for _ in range(length):
        v = random_integer_vector(space, rng, bound)
        power = 1 if rng.integers(0, 2) else -1
        result = transvection_matrix(space, v, power) @ result
    return result


def random_lagrangian(space: SymplecticSpace, seed, length: int = 4) -> Lagrangian:
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    if rng.integers(0, 4) == 0:
        return space.standard_lagrangian()
    return space.standard_lagrangian().image(random_symplectic(space, rng, length))


def _random_unimodular(g: int, rng: np.random.Generator, steps: int = 4) -> RationalMatrix:
    rows = [[int(i == j) for j in range(g)] for i in range(g)]
    for _ in range(steps if g > 1 else 0):
        i, j = (int(x) for x in rng.choice(g, size=2, replace=False))
        k = int(rng.integers(-2, 3))
        rows[i] = [a + k * b for a, b in zip(rows[i], rows[j])]
    if g and rng.integers(0, 2):
        rows[0] = [-a for a in rows[0]]
    return RationalMatrix(rows, (g, g))


def random_adaptation(lag: Lagrangian, rng: np.random.Generator) -> RationalMatrix:
    """Another valid adaptation: adapt_lagrangian(lag) times a stabiliser element."""
    g = lag.genus
    a = _random_unimodular(g, rng)
    s_rows = [[0] * g for _ in range(g)]
    for i in range(g):
        for j in range(i, g):
            s_rows[i][j] = s_rows[j][i] = int(rng.integers(-2, 3))
    s = RationalMatrix(s_rows, (g, g))
    upper = a.hstack(a @ s)
    lower = RationalMatrix.zeros(g, g).hstack(inverse(a).T)
    stabiliser = upper.vstack(lower)
    return adapt_lagrangian(lag) @ stabiliser
