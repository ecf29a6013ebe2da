"""
Curves as homology classes, Dehn twists as transvections, and words in twists.

Only the action on H_1 is modelled: a mapping class is its integral symplectic
matrix, and a curve is its class vector in the (m, l) basis.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterator, NamedTuple, Sequence

import numpy as np
from sympy import igcd

from src.linear.exact import RationalMatrix, Subspace, vector
from src.topology.symplectic import (
    SymplecticSpace,
    symplectic_inverse,
    transvection_matrix,
)
from src.utils.errors import DimensionMismatchError, NonPrimitiveClassError, NotSymplecticError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CurveClass:
    vector: tuple[int, ...]
    permissive: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vector", tuple(int(x) for x in self.vector))
        if not self.vector or len(self.vector) % 2:
            raise DimensionMismatchError(f"class vector must have even positive length, got {len(self.vector)}")
        if not self.permissive and self.content > 1:
            raise NonPrimitiveClassError(
                f"class {list(self.vector)} has content {self.content} and is not carried by a simple closed curve"
            )

    @classmethod
    def meridian(cls, genus: int, i: int) -> CurveClass:
        return cls(tuple(int(k == i) for k in range(2 * genus)))

    @classmethod
    def longitude(cls, genus: int, i: int) -> CurveClass:
        return cls(tuple(int(k == genus + i) for k in range(2 * genus)))

    @classmethod
    def zero(cls, genus: int) -> CurveClass:
        return cls((0,) * (2 * genus))

    @classmethod
    def from_coefficients(cls, a: Sequence[int], b: Sequence[int], permissive: bool = False) -> CurveClass:
        if len(a) != len(b):
            raise DimensionMismatchError(f"{len(a)} meridian and {len(b)} longitude coefficients")
        return cls(tuple(a) + tuple(b), permissive)

    @property
    def genus(self) -> int:
        return len(self.vector) // 2

    @property
    def a(self) -> tuple[int, ...]:
        return self.vector[: self.genus]

    @property
    def b(self) -> tuple[int, ...]:
        return self.vector[self.genus:]

    @property
    def content(self) -> int:
        return int(reduce(igcd, self.vector, 0))

    @property
    def is_zero(self) -> bool:
        return not any(self.vector)

    def negated(self) -> CurveClass:
        return CurveClass(tuple(-x for x in self.vector), self.permissive)

    def array(self) -> np.ndarray:
        return vector(self.vector)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        nonzero = [k for k, x in enumerate(self.vector) if x]
        if len(nonzero) == 1 and self.vector[nonzero[0]] == 1:
            k = nonzero[0]
            return f"m{k + 1}" if k < self.genus else f"l{k - self.genus + 1}"
        return "[" + ",".join(map(str, self.a)) + ";" + ",".join(map(str, self.b)) + "]"


class TwistLetter(NamedTuple):
    curve: CurveClass
    exponent: int

    def __str__(self) -> str:
        return str(self.curve) if self.exponent == 1 else f"{self.curve}^-1"


@dataclass(frozen=True)
class TwistWord:
    """The word ∏ D(α_i)^{ε_i}; letter 1 is applied last."""

    genus: int
    letters: tuple[TwistLetter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(TwistLetter(c, int(e)) for c, e in self.letters))
        for letter in self.letters:
            if letter.exponent not in (1, -1):
                raise ValueError(f"exponent must be ±1, got {letter.exponent}")
            if letter.curve.genus != self.genus:
                raise DimensionMismatchError(f"letter {letter.curve} does not live in genus {self.genus}")

    @classmethod
    def of(cls, genus: int, *curves: CurveClass) -> TwistWord:
        return cls(genus, tuple(TwistLetter(c, 1) for c in curves))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[TwistLetter]:
        return iter(self.letters)

    def __mul__(self, other: TwistWord) -> TwistWord:
        if self.genus != other.genus:
            raise DimensionMismatchError(f"cannot concatenate words of genus {self.genus} and {other.genus}")
        return TwistWord(self.genus, self.letters + other.letters)

    def __pow__(self, k: int) -> TwistWord:
        base = self if k >= 0 else self.inverse()
        return TwistWord(self.genus, base.letters * abs(k))

    def inverse(self) -> TwistWord:
        return TwistWord(self.genus, tuple(TwistLetter(c, -e) for c, e in reversed(self.letters)))

    def without(self, index: int) -> TwistWord:
        return TwistWord(self.genus, self.letters[:index] + self.letters[index + 1:])

    def with_curve(self, index: int, curve: CurveClass) -> TwistWord:
        letters = list(self.letters)
        letters[index] = TwistLetter(curve, letters[index].exponent)
        return TwistWord(self.genus, tuple(letters))

    def __str__(self) -> str:
        return " ".join(str(letter) for letter in self.letters)


@dataclass(frozen=True)
class MappingClass:
    """A mapping class through its action on H_1; the matrix preserves the form."""

    matrix: RationalMatrix

    def __post_init__(self):
        n = self.matrix.rows
        if n == 0 or n % 2 or not self.matrix.is_square:
            raise DimensionMismatchError(f"expected a square matrix of even size, got {self.matrix.shape}")
        if not self.matrix.is_integral():
            raise NotSymplecticError("mapping class matrices must be integral")
        if not self.space.is_symplectic(self.matrix):
            raise NotSymplecticError(f"matrix does not preserve the intersection form: {self.matrix!r}")

    @classmethod
    def identity(cls, genus: int) -> MappingClass:
        return cls(RationalMatrix.identity(2 * genus))

    @classmethod
    def from_rows(cls, rows) -> MappingClass:
        return cls(RationalMatrix(rows))

    @property
    def genus(self) -> int:
        return self.matrix.rows // 2

    @property
    def space(self) -> SymplecticSpace:
        return SymplecticSpace(self.matrix.rows // 2)

    def __matmul__(self, other: MappingClass) -> MappingClass:
        """self ∘ other: apply other first."""
        if not isinstance(other, MappingClass):
            return NotImplemented
        return MappingClass(self.matrix @ other.matrix)

    def inverse(self) -> MappingClass:
        return MappingClass(symplectic_inverse(self.matrix))

    def __call__(self, v) -> np.ndarray:
        return self.matrix.apply(v)

    def image(self, subspace: Subspace) -> Subspace:
        return subspace.image(self.matrix)

    def minus_identity(self) -> RationalMatrix:
        return self.matrix - RationalMatrix.identity(self.matrix.rows)

    @property
    def is_identity(self) -> bool:
        return self.matrix == RationalMatrix.identity(self.matrix.rows)

    def to_int_rows(self) -> list[list[int]]:
        return self.matrix.to_int_rows()


def transvection(curve: CurveClass, permissive: bool = False) -> MappingClass:
    """Homology action of the Dehn twist about `curve`: x ↦ x - (x . α) α."""
    if not permissive and not curve.permissive and curve.content > 1:
        raise NonPrimitiveClassError(f"class {list(curve.vector)} is not primitive")
    space = SymplecticSpace(curve.genus)
    return MappingClass(transvection_matrix(space, curve.array()))


def word_action(word: TwistWord) -> MappingClass:
    result = RationalMatrix.identity(2 * word.genus)
    space = SymplecticSpace(word.genus)
    for curve, exponent in reversed(word.letters):
        result = transvection_matrix(space, curve.array(), exponent) @ result
    return MappingClass(result)


def exponent_sum(word: TwistWord) -> int:
    return sum(letter.exponent for letter in word)


def is_homologically_trivial(word: TwistWord) -> bool:
    return word_action(word).is_identity


def random_curve(genus: int, rng: np.random.Generator, bound: int = 2, allow_zero: bool = True) -> CurveClass:
    """A random primitive (or, occasionally, zero) class with entries in [-bound, bound]."""
    if allow_zero and rng.integers(0, 20) == 0:
        return CurveClass.zero(genus)
    while True:
        v = [int(x) for x in rng.integers(-bound, bound + 1, size=2 * genus)]
        if rng.integers(0, 3) == 0:
            # sparse classes exercise the standard curves m_i, l_i often
            keep = int(rng.integers(0, 2 * genus))
            v = [x if k == keep else 0 for k, x in enumerate(v)]
        if reduce(igcd, v, 0) == 1:
            return CurveClass(tuple(v))


def random_word(genus: int, rng: np.random.Generator, max_length: int, bound: int = 2) -> TwistWord:
    length = int(rng.integers(0, max_length + 1))
    letters = tuple(
        TwistLetter(random_curve(genus, rng, bound), 1 if rng.integers(0, 2) else -1)
        for _ in range(length)
    )
    return TwistWord(genus, letters)


def standard_word(genus: int, names: str) -> TwistWord:
    """Word in the first handle's m and l, e.g. standard_word(1, "mlm")."""
    curves = {"m": CurveClass.meridian(genus, 0), "l": CurveClass.longitude(genus, 0)}
    return TwistWord.of(genus, *(curves[c] for c in names))


def braid_relator(genus: int) -> TwistWord:
    """(m l m)(l m l)^-1 on the first handle."""
    return standard_word(genus, "mlm") * standard_word(genus, "lml").inverse()


def chain_relator(genus: int) -> TwistWord:
    """(m l)^6 δ^-1 with δ the (nullhomologous) boundary of the first handle."""
    delta = TwistWord(genus, (TwistLetter(CurveClass.zero(genus), -1),))
    return standard_word(genus, "ml") ** 6 * delta
