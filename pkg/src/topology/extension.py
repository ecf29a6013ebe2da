"""
The extended mapping class group and its cocycles.

Elements are pairs (f, n) multiplied with the Maslov cocycle of a fixed
lagrangian. The forms ⋆_f, ⋆_{f,λ} and ⋆_{f,g} are built by solving
(f - 1) x = a for a particular preimage; their signatures give Turaev's k and
phi, Walker's j_λ, Meyer's tau (as -phi) and n_λ.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field

import numpy as np

from src.linear.exact import (
    Inertia,
    RationalMatrix,
    Subspace,
    det_sign,
    image,
    kernel,
    signature,
    solve,
    to_rational,
)
from src.topology.mcg import CurveClass, MappingClass, TwistWord, transvection
from src.topology.symplectic import Lagrangian, SymplecticSpace, maslov
from src.utils.errors import ContextMismatchError, DimensionMismatchError, InvariantViolation

logger = logging.getLogger(__name__)


def _check_genus(lag: Lagrangian, *classes: MappingClass):
    for f in classes:
        if f.genus != lag.genus:
            raise DimensionMismatchError(f"mapping class of genus {f.genus} with a lagrangian of genus {lag.genus}")


def maslov_cocycle(lag: Lagrangian, g: MappingClass, f: MappingClass) -> int:
    """m_λ(g, f) = μ(λ, gλ, (g∘f)λ)."""
    _check_genus(lag, g, f)
    return maslov(lag, lag.image(g.matrix), lag.image((g @ f).matrix))


@dataclass(frozen=True)
class StarForm:
    domain: Subspace
    gram: RationalMatrix

    @property
    def dim(self) -> int:
        return self.domain.dim

    @property
    def inertia(self) -> Inertia:
        return signature(self.gram)

    @property
    def signature(self) -> int:
        return self.inertia.sigma

    @property
    def det_sign(self) -> int:
        return det_sign(self.gram)

    def radical(self) -> Subspace:
        """Left radical {a : a ⋆ b = 0 for all b}, as a subspace of H_1."""
        coefficients = kernel(self.gram.T)
        return Subspace.span(
            self.domain.ambient_dim,
            (self.domain.basis.apply(c) for c in coefficients.vectors()),
        )


def _preimages(f: MappingClass, targets, rng: np.random.Generator | None):
    """Solutions x of (f - 1) x = a, optionally shifted by random kernel elements."""
    shifted = f.minus_identity()
    fixed = kernel(shifted).vectors() if rng is not None else []
    out = []
    for a in targets:
        x = solve(shifted, a)
        for t in fixed:
            x = x + to_rational(int(rng.integers(-3, 4))) * t
        out.append(x)
    return out


def _star_gram(space: SymplecticSpace, domain: Subspace, preimages) -> RationalMatrix:
    basis = domain.vectors()
    n = len(basis)
    rows = [[space.pair(preimages[i], basis[j]) for j in range(n)] for i in range(n)]
    return RationalMatrix(rows, (n, n))


def star_f(f: MappingClass, rng: np.random.Generator | None = None) -> StarForm:
    """a ⋆_f b = (f - 1)^{-1}(a) . b on (f - 1)H_1."""
    domain = image(f.minus_identity())
    return StarForm(domain, _star_gram(f.space, domain, _preimages(f, domain.vectors(), rng)))


def star_f_lambda(f: MappingClass, lag: Lagrangian, rng: np.random.Generator | None = None) -> StarForm:
    """Restriction of ⋆_f to λ ∩ (f - 1)H_1."""
    _check_genus(lag, f)
    domain = lag.subspace & image(f.minus_identity())
    return StarForm(domain, _star_gram(f.space, domain, _preimages(f, domain.vectors(), rng)))


def star_f_lambda_signature(f: MappingClass, lag: Lagrangian) -> int:
    return star_f_lambda(f, lag).signature


def star_fg(f: MappingClass, g: MappingClass, rng: np.random.Generator | None = None) -> StarForm:
    """a ⋆_{f,g} b = ((f-1)^{-1}a + (g-1)^{-1}a + a) . b on (f-1)H_1 ∩ (g-1)H_1."""
    if f.genus != g.genus:
        raise DimensionMismatchError(f"genera {f.genus} and {g.genus} differ")
    domain = image(f.minus_identity()) & image(g.minus_identity())
    basis = domain.vectors()
    xs = _preimages(f, basis, rng)
    ys = _preimages(g, basis, rng)
    combined = [x + y + a for x, y, a in zip(xs, ys, basis)]
    return StarForm(domain, _star_gram(f.space, domain, combined))


def turaev_phi(f: MappingClass, g: MappingClass) -> int:
    return star_fg(f, g).signature


def meyer_tau(f: MappingClass, g: MappingClass) -> int:
    return -turaev_phi(f, g)


def turaev_k(f: MappingClass) -> int:
    form = star_f(f)
    return form.dim + form.det_sign - 1


def walker_j(lag: Lagrangian, f: MappingClass) -> int:
    return -star_f_lambda_signature(f, lag)


def n_lambda(lag: Lagrangian, f: MappingClass) -> int:
    form = star_f(f)
    value = star_f_lambda_signature(f, lag) - form.dim - form.det_sign + 1
    if value != -walker_j(lag, f) - turaev_k(f):
        raise InvariantViolation("n_λ differs from -j_λ - k")
    return value


def m_lambda_closure(lag: Lagrangian, g: MappingClass, f: MappingClass) -> int:
    """m_λ(g, f) + n_λ(g) + n_λ(f) - n_λ(gf); always divisible by 4."""
    return maslov_cocycle(lag, g, f) + n_lambda(lag, g) + n_lambda(lag, f) - n_lambda(lag, g @ f)


def lagrangian_overlap(lag: Lagrangian, f: MappingClass) -> int:
    """dim(λ ∩ fλ)."""
    return (lag.subspace & f.image(lag.subspace)).dim


def radical_formula_holds(f: MappingClass, lag: Lagrangian) -> bool:
    """rad(⋆_{f,λ}) = λ ∩ (f - 1)λ."""
    expected = lag.subspace & lag.subspace.image(f.minus_identity())
    return star_f_lambda(f, lag).radical() == expected


class Membership(str, enum.Enum):
    FULL = "full"
    PLUS = "plus"
    PLUSPLUS = "plusplus"


@dataclass(frozen=True)
class ExtendedElement:
    f: MappingClass
    n: int
    group: ExtensionGroup = field(compare=False, repr=False)

    def __matmul__(self, other: ExtendedElement) -> ExtendedElement:
        return self.group.compose(self, other)

    def __str__(self) -> str:
        return f"C({self.f.to_int_rows()}, {self.n})"


@dataclass(frozen=True)
class ExtensionGroup:
    """Γ̃(Σ) for the extended surface (Σ_g, λ)."""

    lagrangian: Lagrangian

    @property
    def genus(self) -> int:
        return self.lagrangian.genus

    def element(self, f: MappingClass, n: int) -> ExtendedElement:
        _check_genus(self.lagrangian, f)
        return ExtendedElement(f, int(n), self)

    def identity(self) -> ExtendedElement:
        return self.element(MappingClass.identity(self.genus), 0)

    def central(self, k: int = 1) -> ExtendedElement:
        """W^k = C(Id, k)."""
        return self.element(MappingClass.identity(self.genus), k)

    def _check(self, *elements: ExtendedElement):
        for e in elements:
            if e.group.lagrangian != self.lagrangian:
                raise ContextMismatchError("elements belong to extensions built on different lagrangians")

    def compose(self, a: ExtendedElement, b: ExtendedElement) -> ExtendedElement:
        """(g, n) ∘ (f, m) = (g∘f, n + m + m_λ(g, f))."""
        self._check(a, b)
        return self.element(a.f @ b.f, a.n + b.n + maslov_cocycle(self.lagrangian, a.f, b.f))

    def inverse(self, e: ExtendedElement) -> ExtendedElement:
        self._check(e)
        f_inv = e.f.inverse()
        return self.element(f_inv, -e.n - maslov_cocycle(self.lagrangian, e.f, f_inv))

    def power(self, e: ExtendedElement, k: int) -> ExtendedElement:
        base = e if k >= 0 else self.inverse(e)
        result = self.identity()
        for _ in range(abs(k)):
            result = self.compose(result, base)
        return result

    def twist_weight(self, curve: CurveClass) -> int:
        """Weight of the surgery lift C(α): -1 if [α] ∈ λ, else 0."""
        return -1 if self.lagrangian.contains(curve.array()) else 0

    def twist_lift(self, curve: CurveClass, exponent: int = 1) -> ExtendedElement:
        lift = self.element(transvection(curve, permissive=True), self.twist_weight(curve))
        return lift if exponent == 1 else self.inverse(lift)

    def shifted_twist_lift(self, curve: CurveClass, exponent: int = 1) -> ExtendedElement:
        """W(α) = W ∘ C(α), weight 0 if [α] ∈ λ and 1 otherwise."""
        lift = self.compose(self.central(1), self.twist_lift(curve))
        return lift if exponent == 1 else self.inverse(lift)

    def _product(self, factors) -> ExtendedElement:
        result = self.identity()
        for factor in factors:
            result = self.compose(result, factor)
        return result

    def lift_word(self, word: TwistWord) -> ExtendedElement:
        """C(𝔴) = ∏ C(α_i)^{ε_i}."""
        return self._product(self.twist_lift(c, e) for c, e in word)

    def shifted_lift_word(self, word: TwistWord) -> ExtendedElement:
        """W(𝔴) = ∏ W(α_i)^{ε_i}."""
        return self._product(self.shifted_twist_lift(c, e) for c, e in word)

    def membership(self, e: ExtendedElement) -> Membership:
        self._check(e)
        return membership(self.lagrangian, e)


def plus_criterion(lag: Lagrangian, e: ExtendedElement) -> bool:
    """n ≡ genus + dim(λ ∩ fλ) (mod 2)."""
    return (e.n - lag.genus - lagrangian_overlap(lag, e.f)) % 2 == 0


def membership(lag: Lagrangian, e: ExtendedElement) -> Membership:
    _check_genus(lag, e.f)
    residue = e.n - n_lambda(lag, e.f)
    plus = residue % 2 == 0
    if plus != plus_criterion(lag, e):
        raise InvariantViolation(f"the two index-two criteria disagree on {e}")
    if residue % 4 == 0:
        return Membership.PLUSPLUS
    return Membership.PLUS if plus else Membership.FULL
