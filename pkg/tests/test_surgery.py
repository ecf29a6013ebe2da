from __future__ import annotations

import numpy as np
import pytest

from src.topology.extension import ExtensionGroup
from src.topology.mcg import (
    CurveClass,
    TwistLetter,
    TwistWord,
    braid_relator,
    chain_relator,
    random_curve,
    random_word,
    standard_word,
)
from src.topology.surgery import (
    kappa_exponent,
    linking_matrix,
    n0_lambda,
    n_lambda_word,
    relator_report,
    seifert_pairing,
    sigma_word,
    verify_surgery_congruence,
    verify_surgery_formula,
)
from src.topology.symplectic import SymplecticSpace, adapt_lagrangian, random_adaptation, random_lagrangian
from src.utils.errors import DimensionMismatchError


def test_single_class_in_genus_two():
    space = SymplecticSpace(2)
    word = TwistWord.of(2, CurveClass.from_coefficients([1, 1], [1, 2]))
    link = linking_matrix(word, space.standard_lagrangian())
    assert link.to_int_rows() == [[2, 1, 2], [1, 0, 0], [2, 0, 0]]
    assert link.labels == ("a1", "U1", "U2")
    assert link.sigma == 0


def test_bounding_curve_without_unlink(std1):
    word = TwistWord.of(1, CurveClass.zero(1))
    assert linking_matrix(word, std1, with_unlink=False).to_int_rows() == [[-1]]


def test_braid_word_linking_matrix(std1):
    link = linking_matrix(standard_word(1, "mlm"), std1)
    assert link.to_int_rows() == [[-1, 1, 0, 0], [1, -1, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0]]
    assert link.sigma == -2
    assert n0_lambda(standard_word(1, "lml"), std1) == -2


def test_chain_relator_signatures(std1):
    u = chain_relator(1)
    assert sigma_word(u, std1, with_unlink=False) == -7
    assert n0_lambda(u, std1) == -7
    assert n_lambda_word(u, std1) == 4
    assert verify_surgery_congruence(u, std1)


def test_half_twist_signature(std1):
    w = standard_word(1, "ml") ** 3
    assert n0_lambda(w, std1) == -4
    assert n_lambda_word(w, std1) == 2


@pytest.mark.parametrize("names, n, expected", [("m", 0, 1), ("l", 1, 1), ("mlm", -2, 0)])
def test_kappa_exponent(std1, names, n, expected):
    assert kappa_exponent(standard_word(1, names), std1, n) == expected


def test_single_twist_weights():
    rng = np.random.default_rng(9)
    for _ in range(200):
        space = SymplecticSpace(int(rng.integers(1, 5)))
        lag = random_lagrangian(space, rng)
        curve = random_curve(space.genus, rng)
        if rng.integers(0, 3) == 0:
            # force a class inside the lagrangian
            v = [int(x) for x in adapt_lagrangian(lag).column(0)]
            curve = CurveClass(tuple(v))
        expected = -1 if lag.contains(curve.array()) else 0
        assert n0_lambda(TwistWord.of(space.genus, curve), lag) == expected


def test_seifert_pairing_defect_is_intersection():
    rng = np.random.default_rng(10)
    space = SymplecticSpace(3)
    for _ in range(10):
        x = [int(v) for v in rng.integers(-3, 4, size=6)]
        y = [int(v) for v in rng.integers(-3, 4, size=6)]
        assert seifert_pairing(x, y) - seifert_pairing(y, x) == space.pair(x, y)
    with pytest.raises(DimensionMismatchError):
        seifert_pairing([1, 0], [1, 0, 0, 0])


def test_random_words_against_the_algebra():
    for seed in range(15):
        rng = np.random.default_rng(200 + seed)
        genus = int(rng.integers(1, 4))
        lag = random_lagrangian(SymplecticSpace(genus), rng)
        word = random_word(genus, rng, 10)
        assert verify_surgery_congruence(word, lag)
        assert verify_surgery_formula(word, lag)
        group = ExtensionGroup(lag)
        assert group.shifted_lift_word(word).n == n_lambda_word(word, lag)


def test_orientation_and_completion_independence():
    for seed in range(10):
        rng = np.random.default_rng(300 + seed)
        genus = int(rng.integers(1, 4))
        lag = random_lagrangian(SymplecticSpace(genus), rng)
        word = random_word(genus, rng, 8)
        flipped = TwistWord(genus, tuple(TwistLetter(c.negated(), e) for c, e in word))
        for unlink in (True, False):
            assert sigma_word(flipped, lag, unlink) == sigma_word(word, lag, unlink)
        assert n0_lambda(word, lag, random_adaptation(lag, rng)) == n0_lambda(word, lag)


def test_relator_reports(std1, longitude_lagrangian):
    for lag in (std1, longitude_lagrangian):
        report = relator_report(chain_relator(1), lag)
        assert report.sigma == report.sigma0 == -7
        assert report.homologically_trivial
        assert not report.conditional
    braid = relator_report(braid_relator(1), std1)
    assert braid.sigma == braid.sigma0 == 0
    word = standard_word(1, "ml") ** 6
    assert relator_report(word * word.inverse(), std1).conditional


def test_genus_mismatch(std1):
    with pytest.raises(DimensionMismatchError):
        linking_matrix(standard_word(2, "m"), std1)
