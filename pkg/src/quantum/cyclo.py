"""
Exact arithmetic in Z[1/p][q]/Φ_p(q) adjoined κ, for odd primes p ≥ 5.

A is not adjoined separately: A = -q^((p+1)/2) squares to q and has order 2p.
κ satisfies κ² = A^e with e = -6 - p(p+1)/2, so an element is a pair
(base, kappa) of polynomials of degree < p - 1 meaning base + κ·kappa.
Coefficients are rationals whose denominators are powers of p.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from sympy import QQ, Poly, Rational, Symbol, cyclotomic_poly, isprime
from sympy.polys.polyerrors import NotInvertible

from src.linear.exact import to_rational
from src.utils.errors import (
    CoefficientError,
    ColorOutOfRangeError,
    InvariantViolation,
    ReductionError,
    RingMismatchError,
)

logger = logging.getLogger(__name__)

q = Symbol("q")


@dataclass(frozen=True)
class CycloRing:
    p: int

    def __post_init__(self):
        if self.p < 5 or not isprime(self.p):
            raise ValueError(f"p must be an odd prime ≥ 5, got {self.p}")

    @property
    def modulus(self) -> Poly:
        return _modulus(self.p)

    @property
    def kappa_square_exponent(self) -> int:
        """e with κ² = A^e."""
        return -6 - self.p * (self.p + 1) // 2

    def poly(self, coefficients) -> Poly:
        """Reduced polynomial from coefficients listed from the constant term up."""
        terms = [to_rational(c) for c in coefficients] or [QQ(0)]
        return Poly(list(reversed(terms)), q, domain=QQ).rem(self.modulus)

    def reduce(self, poly: Poly) -> Poly:
        return poly.rem(self.modulus)

    def element(self, base, kappa=None) -> CycloElement:
        base = base if isinstance(base, Poly) else self.poly(base)
        kappa = kappa if isinstance(kappa, Poly) else self.poly(kappa or [0])
        base, kappa = self.reduce(base), self.reduce(kappa)
        for component in (base, kappa):
            if not _is_p_integral(component, self.p):
                raise CoefficientError(f"coefficients must lie in Z[1/{self.p}], got {component.as_expr()}")
        return CycloElement(self, base, kappa)

    def scalar(self, value) -> CycloElement:
        return self.element([value])

    def zero(self) -> CycloElement:
        return self.scalar(0)

    def one(self) -> CycloElement:
        return self.scalar(1)

    def _q_poly(self, k: int) -> Poly:
        # q^p = 1 in this ring
        k %= self.p
        return self.poly([0] * k + [1])

    def q_power(self, k: int) -> CycloElement:
        return self.element(self._q_poly(k))

    def _a_poly(self, k: int) -> Poly:
        sign = -1 if k % 2 else 1
        return self._q_poly(k * (self.p + 1) // 2) * sign

    def A_power(self, k: int) -> CycloElement:
        return self.element(self._a_poly(k))

    def kappa_power(self, k: int) -> CycloElement:
        """κ^k = κ^(k mod 2) · A^(e·⌊k/2⌋), valid for negative k as well."""
        base = self._a_poly(self.kappa_square_exponent * (k // 2))
        zero = self.poly([0])
        return self.element(zero, base) if k % 2 else self.element(base, zero)


def _is_p_integral(poly: Poly, p: int) -> bool:
    """Every denominator is a power of p."""
    for coeff in poly.all_coeffs():
        denominator = int(Rational(coeff).q)
        while denominator % p == 0:
            denominator //= p
        if denominator != 1:
            return False
    return True


@lru_cache(maxsize=None)
def _modulus(p: int) -> Poly:
    return Poly(cyclotomic_poly(p, q), q, domain=QQ)


@lru_cache(maxsize=None)
def cyclo_ring(p: int) -> CycloRing:
    return CycloRing(p)


@dataclass(frozen=True)
class CycloElement:
    ring: CycloRing
    base: Poly
    kappa: Poly

    @property
    def p(self) -> int:
        return self.ring.p

    def _coerce(self, other) -> CycloElement:
        if isinstance(other, CycloElement):
            if other.p != self.p:
                raise RingMismatchError(f"elements of the rings for p={self.p} and p={other.p}")
            return other
        if isinstance(other, (int, Rational)) or isinstance(other, QQ.dtype):
            return self.ring.scalar(other)
        raise TypeError(f"cannot combine a cyclotomic element with {type(other).__name__}")

    def __add__(self, other) -> CycloElement:
        other = self._coerce(other)
        return CycloElement(self.ring, self.base + other.base, self.kappa + other.kappa)

    __radd__ = __add__

    def __neg__(self) -> CycloElement:
        return CycloElement(self.ring, -self.base, -self.kappa)

    def __sub__(self, other) -> CycloElement:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> CycloElement:
        return self._coerce(other) - self

    def __mul__(self, other) -> CycloElement:
        other = self._coerce(other)
        kappa_sq = self.ring._a_poly(self.ring.kappa_square_exponent)
        base = self.base * other.base + kappa_sq * self.kappa * other.kappa
        kappa = self.base * other.kappa + self.kappa * other.base
        return self.ring.element(base, kappa)

    __rmul__ = __mul__

    def conjugate(self) -> CycloElement:
        """base - κ·kappa."""
        return CycloElement(self.ring, self.base, -self.kappa)

    def norm(self) -> Poly:
        """x · conjugate(x), which lies in the base ring."""
        return (self * self.conjugate()).base

    def inverse(self) -> CycloElement:
        n = self.norm()
        if n.is_zero:
            raise ZeroDivisionError(f"{format_element(self)} is a zero divisor")
        try:
            n_inv = n.invert(self.ring.modulus)
        except NotInvertible as exc:
            raise ZeroDivisionError(f"{format_element(self)} is not a unit") from exc
        # units over Q need not be units over Z[1/p]
        if not _is_p_integral(n_inv, self.p):
            raise ZeroDivisionError(f"{format_element(self)} is not a unit over Z[1/{self.p}]")
        return self.conjugate() * self.ring.element(n_inv)

    def __pow__(self, k: int) -> CycloElement:
        if k < 0:
            return self.inverse() ** (-k)
        result, square = self.ring.one(), self
        while k:
            if k & 1:
                result = result * square
            square = square * square
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloElement):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        return self.p == other.p and self.base == other.base and self.kappa == other.kappa

    def __hash__(self) -> int:
        return hash((self.p, tuple(self.base.all_coeffs()), tuple(self.kappa.all_coeffs())))

    @property
    def is_zero(self) -> bool:
        return self.base.is_zero and self.kappa.is_zero

    def coefficients(self) -> tuple[list[Rational], list[Rational]]:
        """Coefficients of both components, constant term first."""
        return (list(reversed(self.base.all_coeffs())), list(reversed(self.kappa.all_coeffs())))

    def __str__(self) -> str:
        return format_element(self)


def _format_poly(poly: Poly) -> str:
    if poly.is_zero:
        return "0"
    terms = []
    for (degree,), coeff in poly.terms():
        coeff = Rational(coeff)
        sign = "-" if coeff < 0 else "+"
        magnitude = abs(coeff)
        if degree == 0:
            body = str(magnitude)
        else:
            power = "q" if degree == 1 else f"q^{degree}"
            body = power if magnitude == 1 else f"{magnitude}*{power}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text


def format_element(x: CycloElement) -> str:
    """Normalized form, e.g. "q^4", "-q^3 - 1", "kappa*(q^2)" or "1 + kappa*(-q)"."""
    base, kappa = _format_poly(x.base), _format_poly(x.kappa)
    if x.kappa.is_zero:
        return base
    if x.base.is_zero:
        return f"kappa*({kappa})"
    return f"{base} + kappa*({kappa})"


def twist_palette(p: int) -> range:
    return range(0, p - 1)


def relation_colors(p: int) -> range:
    """Colors c with 2c in the palette."""
    return range(0, (p - 3) // 2 + 1)


def mu_twist(p: int, c: int) -> CycloElement:
    """Twist eigenvalue μ_c = (-A)^(c(c+2))."""
    if c not in twist_palette(p):
        raise ColorOutOfRangeError(f"color {c} is outside the palette 0..{p - 2}")
    k = c * (c + 2)
    ring = cyclo_ring(p)
    return ring.A_power(k) * (-1 if k % 2 else 1)


class ScalarRelations(NamedTuple):
    tt6: CycloElement
    tt3: CycloElement
    half: CycloElement


def scalar_relations(p: int, c: int) -> ScalarRelations:
    """
    The sixth and third powers of the twist along a genus-one chain, together
    with the half-twist eigenvalue, for the colour c on the separating curve.
    """
    if c not in relation_colors(p):
        raise ColorOutOfRangeError(f"color {c} is outside 0..{(p - 3) // 2}")
    ring = cyclo_ring(p)
    e = ring.kappa_square_exponent
    tt6 = ring.q_power(-6 + 2 * c * (c + 1) - p * (p + 1) // 2)
    half = ring.q_power(c * (c + 1)) * (-1) ** c
    tt3 = ring.A_power(e) * half
    kappa = ring.kappa_power(1)
    if tt6 != kappa ** 4 * mu_twist(p, 2 * c):
        raise InvariantViolation(f"(tt)^6 differs from κ^4 μ_2c for p={p}, c={c}")
    if tt3 != kappa * kappa * half:
        raise InvariantViolation(f"(tt)^3 differs from κ^2 times the half twist for p={p}, c={c}")
    if tt3 * tt3 != tt6:
        raise InvariantViolation(f"((tt)^3)^2 differs from (tt)^6 for p={p}, c={c}")
    logger.debug("scalar relations hold for p=%d, c=%d", p, c)
    return ScalarRelations(tt6, tt3, half)


def _reduce_component(poly: Poly, p: int) -> int:
    total = sum((Rational(c) for c in poly.all_coeffs()), Rational(0))
    if total.q != 1:
        raise ReductionError(f"denominator {total.q} is divisible by {p}")
    return int(total) % p


def reduce_mod_h(x: CycloElement) -> tuple[int, int]:
    """Image in F_p ⊕ κ F_p under q ↦ 1, coefficients mod p."""
    return (_reduce_component(x.base, x.p), _reduce_component(x.kappa, x.p))


def kappa_square_mod_h(p: int) -> int:
    return reduce_mod_h(cyclo_ring(p).kappa_power(2))[0]
