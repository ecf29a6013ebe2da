"""
Linking matrices of the layered framed links attached to a twist word.

Curve classes are first written in a basis adapted to the lagrangian (its
first g vectors span λ), which stands in for placing the surface in S^3 so
that λ is the kernel into the inner handlebody. In that basis a class is
Σ a_i m_i + b_i l_i and the linking number of an outer copy of x with an inner
copy of y is Σ a_i(x) b_i(y).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from src.linear.exact import Inertia, RationalMatrix, signature, to_int_list
from src.topology.extension import ExtensionGroup, n_lambda
from src.topology.mcg import (
    TwistWord,
    braid_relator,
    chain_relator,
    exponent_sum,
    is_homologically_trivial,
    word_action,
)
from src.topology.symplectic import Lagrangian, adapt_lagrangian, symplectic_inverse
from src.utils.errors import DimensionMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FramedLinkMatrix:
    matrix: RationalMatrix
    labels: tuple[str, ...]
    word: TwistWord
    lagrangian: Lagrangian
    adaptation: RationalMatrix

    @property
    def inertia(self) -> Inertia:
        return signature(self.matrix)

    @property
    def sigma(self) -> int:
        return self.inertia.sigma

    @property
    def with_unlink(self) -> bool:
        return any(label.startswith("U") for label in self.labels)

    def to_int_rows(self) -> list[list[int]]:
        return self.matrix.to_int_rows()


def seifert_pairing(x_outer: Sequence[int], y_inner: Sequence[int]) -> int:
    """Σ_i a_i(x) b_i(y) for classes given in an adapted basis."""
    if len(x_outer) != len(y_inner) or len(x_outer) % 2:
        raise DimensionMismatchError(f"classes of lengths {len(x_outer)} and {len(y_inner)}")
    g = len(x_outer) // 2
    return sum(int(x_outer[i]) * int(y_inner[g + i]) for i in range(g))


def linking_matrix(
    word: TwistWord,
    lag: Lagrangian,
    with_unlink: bool = True,
    adaptation: RationalMatrix | None = None,
) -> FramedLinkMatrix:
    """
    Linking matrix of L_λ(𝔴) (without the unlink) or L⁰_λ(𝔴) (with it).

    Letter i carries framing Σ a b - ε_i; letters nearer the outer handlebody
    come first, and the zero-framed unlink (pushed-off meridians) comes last.
    """
    if word.genus != lag.genus:
        raise DimensionMismatchError(f"word of genus {word.genus} with a lagrangian of genus {lag.genus}")
    g = lag.genus
    if adaptation is None:
        adaptation = adapt_lagrangian(lag)
    to_adapted = symplectic_inverse(adaptation)
    classes = [to_int_list(to_adapted.apply(curve.array())) for curve, _ in word]
    n = len(classes)
    size = n + (g if with_unlink else 0)
    rows = [[0] * size for _ in range(size)]
    for i, (letter, c) in enumerate(zip(word, classes)):
        rows[i][i] = seifert_pairing(c, c) - letter.exponent
        for j in range(i + 1, n):
            rows[i][j] = rows[j][i] = seifert_pairing(c, classes[j])
    if with_unlink:
        for k in range(g):
            for j, c in enumerate(classes):
                rows[n + k][j] = rows[j][n + k] = c[g + k]
    labels = tuple(f"a{i + 1}" for i in range(n)) + (tuple(f"U{k + 1}" for k in range(g)) if with_unlink else ())
    return FramedLinkMatrix(RationalMatrix(rows, (size, size)), labels, word, lag, adaptation)


def sigma_word(word: TwistWord, lag: Lagrangian, with_unlink: bool = True, adaptation: RationalMatrix | None = None) -> int:
    return linking_matrix(word, lag, with_unlink, adaptation).sigma


def n0_lambda(word: TwistWord, lag: Lagrangian, adaptation: RationalMatrix | None = None) -> int:
    return sigma_word(word, lag, True, adaptation)


def n_lambda_word(word: TwistWord, lag: Lagrangian) -> int:
    return exponent_sum(word) + n0_lambda(word, lag)


def kappa_exponent(word: TwistWord, lag: Lagrangian, n: int) -> int:
    """Power of κ relating the weight-n lift to the surgery lift of 𝔴."""
    return n - n0_lambda(word, lag)


def verify_surgery_congruence(word: TwistWord, lag: Lagrangian) -> bool:
    """e(𝔴) + σ(L⁰_λ(𝔴)) ≡ n_λ(D(𝔴)) (mod 4)."""
    return (n_lambda_word(word, lag) - n_lambda(lag, word_action(word))) % 4 == 0


def verify_surgery_formula(word: TwistWord, lag: Lagrangian) -> bool:
    """The product of twist lifts is exactly (D(𝔴), σ(L⁰_λ(𝔴)))."""
    group = ExtensionGroup(lag)
    expected = group.element(word_action(word), n0_lambda(word, lag))
    return group.lift_word(word) == expected


@dataclass(frozen=True)
class RelatorReport:
    exponent_sum: int
    sigma: int
    sigma0: int
    n_lambda: int
    homologically_trivial: bool
    conditional: bool


def relator_report(word: TwistWord, lag: Lagrangian) -> RelatorReport:
    """
    σ(L_λ) and σ(L⁰_λ) of a candidate relator. Only homological triviality can
    be certified here, so the result is conditional unless the word is one of
    the named relators.
    """
    trivial = is_homologically_trivial(word)
    known = word in (braid_relator(word.genus), chain_relator(word.genus))
    if trivial and not known:
        logger.warning("word %s acts trivially on homology but is not a known relator", word)
    return RelatorReport(
        exponent_sum=exponent_sum(word),
        sigma=sigma_word(word, lag, with_unlink=False),
        sigma0=n0_lambda(word, lag),
        n_lambda=n_lambda_word(word, lag),
        homologically_trivial=trivial,
        conditional=not known,
    )
