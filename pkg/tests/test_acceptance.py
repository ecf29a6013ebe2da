"""
End-to-end checks of the headline numbers. The quick tests use moderate trial
counts; the tests marked `slow` run the sweeps at full size.
"""

from __future__ import annotations

import pytest

from src.cli.parser import parse_word
from src.cli.verify import run_suite
from src.topology.extension import ExtensionGroup
from src.topology.mcg import exponent_sum, word_action
from src.topology.surgery import linking_matrix, n0_lambda, sigma_word
from src.topology.symplectic import SymplecticSpace


def test_single_class_figure():
    lag = SymplecticSpace(2).standard_lagrangian()
    link = linking_matrix(parse_word("[1,1;1,2]", 2), lag)
    rows = link.to_int_rows()
    assert rows[0][0] == 2
    assert (rows[0][1], rows[0][2]) == (1, 2)
    assert link.sigma == 0


def test_chain_relator_numbers(std1):
    u = parse_word("(m1 l1)^6 0^-1", 1)
    assert exponent_sum(u) == 11
    assert sigma_word(u, std1, with_unlink=False) == -7
    assert n0_lambda(u, std1) == -7
    assert ExtensionGroup(std1).shifted_lift_word(u) == ExtensionGroup(std1).central(4)


@pytest.mark.parametrize("text", ["m1 l1 m1", "l1 m1 l1"])
def test_braid_words(std1, text):
    word = parse_word(text, 1)
    assert n0_lambda(word, std1) == -2
    group = ExtensionGroup(std1)
    assert group.shifted_lift_word(word) == group.element(word_action(parse_word("m1 l1 m1", 1)), 1)


def test_half_twist_word(std1):
    word = parse_word("(m1 l1)^3", 1)
    assert exponent_sum(word) == 6
    assert n0_lambda(word, std1) == -4
    theta = ExtensionGroup(std1).shifted_lift_word(word)
    assert (theta.f.to_int_rows(), theta.n) == ([[-1, 0], [0, -1]], 2)


@pytest.mark.parametrize(
    "suite, trials",
    [
        ("surgery-congruence", 40),
        ("surgery-exact", 25),
        ("maslov", 40),
        ("cocycle", 20),
        ("turaev-mod4", 25),
        ("closure-mod4", 20),
        ("mod2", 20),
        ("orientation", 20),
        ("completion", 20),
        ("cyclo", 4),
    ],
)
def test_randomized_suites(suite, trials):
    report = run_suite(suite, trials=trials, seed=2024)
    assert report["ok"], report.get("counterexample")


@pytest.mark.parametrize("genus", [1, 2, 3, 4])
def test_walker_identity_per_genus(genus):
    report = run_suite("walker", trials=8, seed=genus, genus=genus)
    assert report["ok"], report.get("counterexample")


@pytest.mark.slow
@pytest.mark.parametrize(
    "suite, trials",
    [
        ("surgery-congruence", 1000),
        ("maslov", 500),
        ("turaev-mod4", 500),
        ("closure-mod4", 500),
        ("mod2", 500),
        ("orientation", 200),
        ("completion", 200),
        ("surgery-exact", 300),
    ],
)
def test_full_size_suites(suite, trials):
    report = run_suite(suite, trials=trials, seed=11)
    assert report["ok"], report.get("counterexample")
    assert report["passed"] == trials


@pytest.mark.slow
@pytest.mark.parametrize("genus", [1, 2, 3, 4])
def test_full_size_walker_identity(genus):
    report = run_suite("walker", trials=500, seed=11, genus=genus)
    assert report["ok"], report.get("counterexample")
