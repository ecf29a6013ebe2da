"""
Seeded randomized property suites.

Trial i of a run with seed s draws from default_rng(SeedSequence([s, i])), so a
run is reproducible whatever the number of workers; results are gathered in
trial order. Word-based failures are shrunk by greedy letter deletion, and a
run reports its smallest failure: lowest genus first, then shortest case.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

import config
from src.quantum.cyclo import (
    cyclo_ring,
    kappa_square_mod_h,
    reduce_mod_h,
    relation_colors,
    scalar_relations,
)
from src.topology.extension import (
    ExtensionGroup,
    lagrangian_overlap,
    m_lambda_closure,
    maslov_cocycle,
    membership,
    meyer_tau,
    n_lambda,
    radical_formula_holds,
    star_f,
    star_f_lambda,
    star_fg,
    turaev_k,
    turaev_phi,
    walker_j,
)
from src.topology.mcg import (
    MappingClass,
    TwistWord,
    exponent_sum,
    random_word,
    word_action,
)
from src.topology.surgery import linking_matrix, n0_lambda, verify_surgery_congruence
from src.topology.symplectic import (
    Lagrangian,
    SymplecticSpace,
    maslov,
    random_adaptation,
    random_lagrangian,
    random_symplectic,
)
from src.utils.errors import ToolkitError
from src.utils.formatters import format_matrix, to_json

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrialContext:
    index: int
    rng: np.random.Generator
    genus: int

    @property
    def space(self) -> SymplecticSpace:
        return SymplecticSpace(self.genus)

    def lagrangian(self) -> Lagrangian:
        return random_lagrangian(self.space, self.rng)

    def mapping_class(self) -> MappingClass:
        if self.rng.integers(0, 10) == 0:
            return MappingClass.identity(self.genus)
        return MappingClass(random_symplectic(self.space, self.rng, config.RANDOM_SYMPLECTIC_LENGTH))

    def word(self) -> TwistWord:
        return random_word(self.genus, self.rng, config.MAX_WORD_LENGTH, config.RANDOM_CLASS_BOUND)


@dataclass
class TrialResult:
    index: int
    ok: bool
    case: dict = field(default_factory=dict)


def _describe_lagrangian(lag: Lagrangian) -> list:
    return format_matrix(lag.vectors())


def _describe_classes(**classes: MappingClass) -> dict:
    return {name: f.to_int_rows() for name, f in classes.items()}


def _maslov_trial(ctx: TrialContext) -> dict | None:
    lags = [ctx.lagrangian() for _ in range(3)]
    if ctx.rng.integers(0, 5) == 0:
        i, j = (int(x) for x in ctx.rng.choice(3, size=2, replace=False))
        lags[j] = lags[i]
    base = maslov(*lags)
    case = {"lagrangians": [_describe_lagrangian(lag) for lag in lags], "maslov": base}
    for perm in itertools.permutations(range(3)):
        inversions = sum(perm[a] > perm[b] for a in range(3) for b in range(a + 1, 3))
        sign = -1 if inversions % 2 else 1
        value = maslov(*(lags[k] for k in perm))
        if value != sign * base:
            return {**case, "permutation": list(perm), "value": value, "check": "antisymmetry"}
    if len({lag.subspace for lag in lags}) < 3 and base != 0:
        return {**case, "check": "vanishing on repeats"}
    shifted = maslov(*lags, rng=ctx.rng)
    if shifted != base:
        return {**case, "value": shifted, "check": "decomposition independence"}
    f = ctx.mapping_class()
    moved = maslov(*(lag.image(f.matrix) for lag in lags))
    if moved != base:
        return {**case, **_describe_classes(f=f), "value": moved, "check": "symplectic invariance"}
    return None


def _cocycle_trial(ctx: TrialContext) -> dict | None:
    lag = ctx.lagrangian()
    f, g, h = (ctx.mapping_class() for _ in range(3))
    left = maslov_cocycle(lag, h, g) + maslov_cocycle(lag, h @ g, f)
    right = maslov_cocycle(lag, g, f) + maslov_cocycle(lag, h, g @ f)
    case = {"lagrangian": _describe_lagrangian(lag), **_describe_classes(f=f, g=g, h=h)}
    if left != right:
        return {**case, "left": left, "right": right, "check": "cocycle identity"}
    group = ExtensionGroup(lag)
    a, b, c = (group.element(x, int(ctx.rng.integers(-4, 5))) for x in (h, g, f))
    if (a @ b) @ c != a @ (b @ c):
        return {**case, "check": "associativity"}
    w = group.central(1)
    if w @ c != c @ w or (w @ c).n != c.n + 1:
        return {**case, "check": "centrality of W"}
    if group.compose(c, group.inverse(c)) != group.identity():
        return {**case, "check": "inverse"}
    return None


def _walker_trial(ctx: TrialContext) -> dict | None:
    lag = ctx.lagrangian()
    f, g = ctx.mapping_class(), ctx.mapping_class()
    tau = meyer_tau(g, f)
    defect = walker_j(lag, g @ f) - walker_j(lag, g) - walker_j(lag, f) + tau + maslov_cocycle(lag, g, f)
    if defect != 0:
        return {"lagrangian": _describe_lagrangian(lag), **_describe_classes(f=f, g=g), "defect": defect}
    if tau != meyer_tau(f, g):
        return {**_describe_classes(f=f, g=g), "check": "symmetry of tau"}
    return None


def _turaev_trial(ctx: TrialContext) -> dict | None:
    f, g = ctx.mapping_class(), ctx.mapping_class()
    delta_k = turaev_k(g) + turaev_k(f) - turaev_k(g @ f)
    phi = turaev_phi(g, f)
    if (delta_k - phi) % 4:
        return {**_describe_classes(f=f, g=g), "delta_k": delta_k, "phi": phi}
    return None


def _closure_trial(ctx: TrialContext) -> dict | None:
    lag = ctx.lagrangian()
    f, g = ctx.mapping_class(), ctx.mapping_class()
    total = m_lambda_closure(lag, g, f)
    case = {"lagrangian": _describe_lagrangian(lag), **_describe_classes(f=f, g=g)}
    if total % 4:
        return {**case, "value": total}
    group = ExtensionGroup(lag)
    product = group.element(g, n_lambda(lag, g)) @ group.element(f, n_lambda(lag, f))
    if membership(lag, product) != "plusplus":
        return {**case, "check": "closure of the index-four subgroup"}
    return None


def _mod2_trial(ctx: TrialContext) -> dict | None:
    lag = ctx.lagrangian()
    f = ctx.mapping_class()
    restricted = star_f_lambda(f, lag)
    full = star_f(f)
    case = {"lagrangian": _describe_lagrangian(lag), **_describe_classes(f=f)}
    if (restricted.signature + full.dim - lag.genus - lagrangian_overlap(lag, f)) % 2:
        return {**case, "check": "mod 2 identity"}
    # raises InvariantViolation if the two index-two criteria disagree
    membership(lag, ExtensionGroup(lag).element(f, int(ctx.rng.integers(-4, 5))))
    if not radical_formula_holds(f, lag):
        return {**case, "check": "radical formula"}
    if star_f(f, ctx.rng).gram != full.gram:
        return {**case, "check": "choice of preimage"}
    if full.det_sign not in (-1, 1):
        return {**case, "check": "nonsingular star form"}
    g = ctx.mapping_class()
    if not restricted.gram.is_symmetric() or not star_fg(f, g).gram.is_symmetric():
        return {**case, **_describe_classes(g=g), "check": "symmetric star forms"}
    return None


def shrink_word(word: TwistWord, fails: Callable[[TwistWord], bool]) -> TwistWord:
    """Delete letters one at a time while the word keeps failing."""
    changed = True
    while changed:
        changed = False
        for i in range(len(word)):
            candidate = word.without(i)
            if fails(candidate):
                word, changed = candidate, True
                break
    return word


def _word_suite(check: Callable[[TwistWord, Lagrangian, np.random.Generator], bool]):
    def trial(ctx: TrialContext) -> dict | None:
        lag = ctx.lagrangian()
        word = ctx.word()
        state = ctx.rng.bit_generator.state

        def fails(w: TwistWord) -> bool:
            ctx.rng.bit_generator.state = state
            try:
                return not check(w, lag, ctx.rng)
            except ToolkitError:
                return True

        if not fails(word):
            return None
        minimal = shrink_word(word, fails)
        logger.info("shrunk a failing word from %d to %d letters", len(word), len(minimal))
        return {"lagrangian": _describe_lagrangian(lag), "word": str(minimal), "original_word": str(word)}

    return trial


def _congruence_check(word: TwistWord, lag: Lagrangian, rng) -> bool:
    return verify_surgery_congruence(word, lag)


def _orientation_check(word: TwistWord, lag: Lagrangian, rng) -> bool:
    flipped = word
    for i, (curve, _) in enumerate(word):
        if rng.integers(0, 2):
            flipped = flipped.with_curve(i, curve.negated())
    return all(
        linking_matrix(word, lag, unlink).sigma == linking_matrix(flipped, lag, unlink).sigma
        for unlink in (True, False)
    )


def _completion_check(word: TwistWord, lag: Lagrangian, rng) -> bool:
    return n0_lambda(word, lag) == n0_lambda(word, lag, random_adaptation(lag, rng))


def _surgery_exact_check(word: TwistWord, lag: Lagrangian, rng) -> bool:
    group = ExtensionGroup(lag)
    f = word_action(word)
    sigma0 = n0_lambda(word, lag)
    if group.lift_word(word) != group.element(f, sigma0):
        return False
    if group.shifted_lift_word(word) != group.element(f, exponent_sum(word) + sigma0):
        return False
    # single twists: -1 on classes in the lagrangian, 0 otherwise
    return all(
        n0_lambda(TwistWord(word.genus, (letter,)), lag) == group.twist_weight(letter.curve)
        for letter in word
        if letter.exponent == 1
    )


def _cyclo_trial(ctx: TrialContext) -> dict | None:
    p = config.SUPPORTED_PRIMES[ctx.index % len(config.SUPPORTED_PRIMES)]
    ring = cyclo_ring(p)
    for c in relation_colors(p):
        scalar_relations(p, c)
    expected = (-1) ** (p * (p + 1) // 2) % p
    if kappa_square_mod_h(p) != expected:
        return {"p": p, "check": "kappa squared mod h", "value": kappa_square_mod_h(p)}
    if ring.A_power(p) != -1 or ring.A_power(2) == 1 or ring.A_power(2 * p) != 1:
        return {"p": p, "check": "order of A"}
    if reduce_mod_h(ring.q_power(1)) != (1, 0):
        return {"p": p, "check": "q reduces to 1"}

    def element():
        base = [int(x) for x in ctx.rng.integers(-3, 4, size=p - 1)]
        kappa = [int(x) for x in ctx.rng.integers(-3, 4, size=p - 1)]
        return ring.element(base, kappa)

    x, y, z = element(), element(), element()
    if (x * y) * z != x * (y * z) or x * (y + z) != x * y + x * z or x * y != y * x:
        return {"p": p, "check": "ring axioms", "x": str(x), "y": str(y), "z": str(z)}
    try:
        if x * x ** -1 != 1:
            return {"p": p, "check": "inverse", "x": str(x)}
    except ZeroDivisionError:
        logger.debug("random element %s is not a unit", x)
    h = 1 - ring.q_power(1)
    if h * h ** -1 != 1:
        return {"p": p, "check": "1 - q is a unit"}
    try:
        ring.scalar(2) ** -1
    except ZeroDivisionError:
        return None
    return {"p": p, "check": "2 is not a unit"}


@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    trial: Callable[[TrialContext], dict | None]


SUITES = {
    suite.name: suite
    for suite in (
        Suite("maslov", "antisymmetry, repeats and decomposition independence of the Maslov index", _maslov_trial),
        Suite("cocycle", "2-cocycle identity and group laws of the extension", _cocycle_trial),
        Suite("walker", "j(gf) - j(g) - j(f) + tau(g,f) + m(g,f) = 0", _walker_trial),
        Suite("turaev-mod4", "k(g) + k(f) - k(gf) = phi(g,f) mod 4", _turaev_trial),
        Suite("closure-mod4", "m(g,f) + n(g) + n(f) - n(gf) = 0 mod 4", _closure_trial),
        Suite("mod2", "mod 2 identity, index-two criteria, radical and star form sanity", _mod2_trial),
        Suite("surgery-congruence", "e(w) + sigma(L0(w)) = n(D(w)) mod 4", _word_suite(_congruence_check)),
        Suite("orientation", "signatures ignore the orientation of twist curves", _word_suite(_orientation_check)),
        Suite("completion", "signatures ignore the choice of adapted basis", _word_suite(_completion_check)),
        Suite("cyclo", "phase scalar identities and ring axioms", _cyclo_trial),
        Suite("surgery-exact", "twist lifts compose to (D(w), sigma(L0(w))) exactly", _word_suite(_surgery_exact_check)),
    )
}


def trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def run_trial(name: str, seed: int, index: int, genus: int | None = None) -> TrialResult:
    rng = trial_rng(seed, index)
    if genus is None:
        genus = int(rng.integers(1, config.MAX_RANDOM_GENUS + 1))
    ctx = TrialContext(index, rng, genus)
    try:
        case = SUITES[name].trial(ctx)
    except ToolkitError as e:
        logger.error("trial %d of %s raised %s: %s", index, name, type(e).__name__, e)
        case = {"error": {"type": type(e).__name__, "message": str(e)}}
    if case is None:
        return TrialResult(index, True)
    return TrialResult(index, False, {"trial": index, "genus": genus, **case})


def _run_trial_args(args) -> TrialResult:
    return run_trial(*args)


def smallest_failure(failures: list[TrialResult]) -> TrialResult:
    """The failure with the lowest genus, then the shortest description; ties go to the earliest trial."""
    return min(failures, key=lambda r: (r.case.get("genus", 0), len(to_json(r.case)), r.index))


def run_suite(name: str, trials: int, seed: int, genus: int | None = None, workers: int = 1) -> dict:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if trials < 0:
        raise ValueError(f"trials must be non-negative, got {trials}")
    args = [(name, seed, i, genus) for i in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_run_trial_args, args, chunksize=max(1, trials // (4 * workers))))
    else:
        results = [run_trial(*a) for a in args]
    failures = [r for r in results if not r.ok]
    logger.info("suite %s: %d/%d trials passed", name, trials - len(failures), trials)
    report = {
        "suite": name,
        "description": SUITES[name].description,
        "seed": seed,
        "trials": trials,
        "genus": genus,
        "passed": trials - len(failures),
        "failed": len(failures),
        "ok": not failures,
    }
    if failures:
        report["counterexample"] = smallest_failure(failures).case
        report["failed_trials"] = [r.index for r in failures]
    return report
