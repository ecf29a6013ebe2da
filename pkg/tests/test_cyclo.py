from __future__ import annotations

import numpy as np
import pytest
from sympy import Rational

from src.quantum.cyclo import (
    cyclo_ring,
    format_element,
    kappa_square_mod_h,
    mu_twist,
    reduce_mod_h,
    relation_colors,
    scalar_relations,
    twist_palette,
)
from src.utils.errors import CoefficientError, ColorOutOfRangeError, ReductionError, RingMismatchError

PRIMES = (5, 7, 11, 13)


def test_kappa_squared():
    ring = cyclo_ring(5)
    kappa = ring.kappa_power(1)
    assert kappa * kappa == ring.A_power(-21)
    assert kappa ** 4 == ring.q_power(4)
    assert ring.kappa_power(-1) * kappa == 1


@pytest.mark.parametrize("p", PRIMES)
def test_roots_of_unity(p):
    ring = cyclo_ring(p)
    assert ring.q_power(p) == 1
    assert ring.A_power(2) == ring.q_power(1)
    assert ring.A_power(p) == -1
    assert ring.A_power(2 * p) == 1


def test_twist_eigenvalues():
    assert mu_twist(5, 0) == 1
    assert mu_twist(5, 1) == -cyclo_ring(5).A_power(3)
    for p in PRIMES:
        assert mu_twist(p, 2) == cyclo_ring(p).q_power(4)
    with pytest.raises(ColorOutOfRangeError):
        mu_twist(5, 4)
    with pytest.raises(ColorOutOfRangeError):
        mu_twist(5, -1)


def test_palettes():
    assert list(twist_palette(7)) == [0, 1, 2, 3, 4, 5]
    assert list(relation_colors(7)) == [0, 1, 2]
    with pytest.raises(ColorOutOfRangeError):
        scalar_relations(7, 3)


@pytest.mark.parametrize("p", PRIMES)
def test_scalar_relations(p):
    ring = cyclo_ring(p)
    for c in relation_colors(p):
        rel = scalar_relations(p, c)
        assert rel.tt6 == ring.q_power(-6 + 2 * c * (c + 1) - p * (p + 1) // 2)
        assert rel.tt3 * rel.tt3 == rel.tt6
        assert rel.half == ring.q_power(c * (c + 1)) * (-1) ** c


def test_first_color_for_p5():
    assert scalar_relations(5, 0).tt6 == cyclo_ring(5).q_power(4)


@pytest.mark.parametrize("p, expected", [(5, 4), (7, 1), (11, 1), (13, 12)])
def test_kappa_squared_mod_h(p, expected):
    assert kappa_square_mod_h(p) == expected
    assert expected == (-1) ** (p * (p + 1) // 2) % p


def test_reduction():
    ring = cyclo_ring(5)
    assert reduce_mod_h(ring.q_power(1)) == (1, 0)
    assert reduce_mod_h(ring.kappa_power(1)) == (0, 1)
    assert reduce_mod_h(ring.element([3, 0, 1], [-3])) == (4, 2)
    assert reduce_mod_h(ring.element(["1/5", "-1/5"])) == (0, 0)
    with pytest.raises(ReductionError):
        reduce_mod_h(ring.element(["1/5"]))
    with pytest.raises(ReductionError):
        reduce_mod_h(ring.scalar(5) ** -1)


def test_coefficients_stay_in_z_one_over_p():
    ring = cyclo_ring(5)
    assert ring.element(["3/25", 1]) == ring.scalar(Rational(3, 25)) + ring.q_power(1)
    with pytest.raises(CoefficientError):
        ring.element(["1/3", 0, 0, 0])
    with pytest.raises(CoefficientError):
        ring.element([0], ["7/10"])
    with pytest.raises(CoefficientError):
        ring.one() * Rational(1, 2)


@pytest.mark.parametrize("p", PRIMES)
def test_units_over_z_one_over_p(p):
    ring = cyclo_ring(p)
    for n in (2, 3, p + 1):
        with pytest.raises(ZeroDivisionError):
            ring.scalar(n) ** -1
    assert ring.scalar(p) ** -1 == ring.scalar(Rational(1, p))
    # 1 - q has norm p down to Z
    h = 1 - ring.q_power(1)
    assert h * h ** -1 == 1
    kappa = ring.kappa_power(1)
    assert (kappa * h) ** -1 * kappa * h == 1


def test_ring_axioms_and_inverses():
    rng = np.random.default_rng(0)
    for p in (5, 7):
        ring = cyclo_ring(p)

        def element():
            return ring.element(
                [int(x) for x in rng.integers(-3, 4, size=p - 1)],
                [int(x) for x in rng.integers(-3, 4, size=p - 1)],
            )

        for _ in range(5):
            x, y, z = element(), element(), element()
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z
            assert x * y == y * x
            assert x - x == 0
        assert ring.q_power(1) ** -3 * ring.q_power(3) == 1


def test_zero_divisor_when_kappa_squared_is_a_square():
    # for p = 7, κ² = q^k for some k, so (q^j - κ) has zero norm
    ring = cyclo_ring(7)
    kappa = ring.kappa_power(1)
    root = next(ring.q_power(j) for j in range(7) if ring.q_power(2 * j) == kappa * kappa)
    with pytest.raises(ZeroDivisionError):
        (root - kappa) ** -1


def test_mismatched_rings():
    with pytest.raises(RingMismatchError):
        cyclo_ring(5).one() + cyclo_ring(7).one()
    with pytest.raises(ValueError):
        cyclo_ring(9)
    with pytest.raises(ValueError):
        cyclo_ring(3)


def test_formatting():
    ring = cyclo_ring(5)
    assert format_element(ring.q_power(2)) == "q^2"
    assert format_element(-ring.q_power(1) - 1) == "-q - 1"
    assert format_element(ring.kappa_power(1)) == "kappa*(1)"
    assert format_element(ring.zero()) == "0"
    assert format_element(ring.q_power(4)) == "-q^3 - q^2 - q - 1"
