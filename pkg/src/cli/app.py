"""
Command-line front end.

Every sub-command turns a JobSpec into a report dictionary; main() prints it as
sorted JSON (or as text tables) and maps failures to structured error reports.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass

import config
from src.cli.parser import parse_lagrangian, parse_matrix, parse_word
from src.cli.verify import run_suite
from src.linear.exact import signature
from src.quantum.cyclo import (
    cyclo_ring,
    format_element,
    kappa_square_mod_h,
    mu_twist,
    reduce_mod_h,
    relation_colors,
    scalar_relations,
)
from src.topology.extension import (
    ExtensionGroup,
    lagrangian_overlap,
    maslov_cocycle,
    membership,
    meyer_tau,
    n_lambda,
    plus_criterion,
    star_f,
    turaev_k,
    turaev_phi,
    walker_j,
)
from src.topology.mcg import MappingClass, exponent_sum, word_action
from src.topology.surgery import linking_matrix, n0_lambda, relator_report
from src.topology.symplectic import maslov_gram
from src.utils.errors import ToolkitError, WordSyntaxError
from src.utils.formatters import format_matrix, render_text, to_json

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JobSpec:
    command: str
    genus: int | None = 1
    lagrangian: str = "std"
    lagrangians: tuple[str, ...] = ()
    words: tuple[str, ...] = ()
    matrices: tuple[str, ...] = ()
    operands: tuple[str, ...] = ()
    lift: str = "shifted"
    n: int = 0
    p: int = 5
    c: int | None = None
    omit_unlink: bool = False
    suite: str | None = None
    seed: int = config.DEFAULT_SEED
    trials: int = config.DEFAULT_TRIALS
    workers: int = config.DEFAULT_WORKERS
    permissive: bool = False
    output_format: str = "json"

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> JobSpec:
        fields = {name: getattr(args, name) for name in cls.__dataclass_fields__ if hasattr(args, name)}
        for name in ("lagrangians", "words", "matrices", "operands"):
            if fields.get(name) is not None:
                fields[name] = tuple(fields[name])
            else:
                fields.pop(name, None)
        if fields.get("seed") is None:
            fields["seed"] = default_seed()
        return cls(**fields)


def default_seed() -> int:
    value = os.environ.get(config.SEED_ENV_VAR)
    if value is None:
        return config.DEFAULT_SEED
    try:
        return int(value)
    except ValueError:
        logger.warning("ignoring non-integer %s=%r", config.SEED_ENV_VAR, value)
        return config.DEFAULT_SEED


def _mapping_classes(job: JobSpec) -> list[tuple[str, MappingClass]]:
    classes = [(text, word_action(parse_word(text, job.genus, job.permissive))) for text in job.words]
    classes += [(text, parse_matrix(text, job.genus)) for text in job.matrices]
    if not classes:
        raise ValueError("give at least one --word or --matrix")
    return classes


def run_maslov(job: JobSpec) -> dict:
    lags = [parse_lagrangian(text, job.genus) for text in job.lagrangians]
    gram = maslov_gram(*lags)
    inertia = signature(gram)
    return {
        "maslov": inertia.sigma,
        "gram": format_matrix(gram),
        "domain_dim": gram.rows,
        "b_plus": inertia.b_plus,
        "b_minus": inertia.b_minus,
    }


def _parse_operand(group: ExtensionGroup, text: str, job: JobSpec):
    if "@" in text:
        rows, _, n = text.rpartition("@")
        return group.element(parse_matrix(rows, job.genus), int(n))
    word = parse_word(text, job.genus, job.permissive)
    return group.shifted_lift_word(word) if job.lift == "shifted" else group.lift_word(word)


def run_compose(job: JobSpec) -> dict:
    lag = parse_lagrangian(job.lagrangian, job.genus)
    group = ExtensionGroup(lag)
    factors = [_parse_operand(group, text, job) for text in job.operands]
    result = group.identity()
    for factor in factors:
        result = result @ factor
    return {
        "f": result.f.to_int_rows(),
        "n": result.n,
        "lift": job.lift,
        "factors": [{"operand": text, "n": e.n} for text, e in zip(job.operands, factors)],
        "n_lambda": n_lambda(lag, result.f),
        "membership": membership(lag, result).value,
    }


def run_nlambda(job: JobSpec) -> dict:
    lag = parse_lagrangian(job.lagrangian, job.genus)
    classes = _mapping_classes(job)
    records = []
    for text, f in classes:
        form = star_f(f)
        records.append({
            "operand": text,
            "n_lambda": n_lambda(lag, f),
            "k": turaev_k(f),
            "j_lambda": walker_j(lag, f),
            "star_dim": form.dim,
            "det_sign": form.det_sign,
            "overlap": lagrangian_overlap(lag, f),
        })
    pairs = []
    for text_g, g in classes:
        for text_f, f in classes:
            pairs.append({
                "g": text_g,
                "f": text_f,
                "phi": turaev_phi(g, f),
                "tau": meyer_tau(g, f),
                "m_lambda": maslov_cocycle(lag, g, f),
            })
    return {"classes": records, "pairs": pairs}


def run_linking(job: JobSpec) -> dict:
    lag = parse_lagrangian(job.lagrangian, job.genus)
    if len(job.words) != 1:
        raise ValueError("linking takes exactly one --word")
    word = parse_word(job.words[0], job.genus, job.permissive)
    link = linking_matrix(word, lag, with_unlink=not job.omit_unlink)
    inertia = link.inertia
    sigma0 = inertia.sigma if link.with_unlink else n0_lambda(word, lag, link.adaptation)
    f = word_action(word)
    algebraic = n_lambda(lag, f)
    report = {
        "word": str(word),
        "matrix": link.to_int_rows(),
        "labels": list(link.labels),
        "sigma": inertia.sigma,
        "b_plus": inertia.b_plus,
        "b_minus": inertia.b_minus,
        "b_zero": inertia.b_zero,
        "sigma0": sigma0,
        "exponent_sum": exponent_sum(word),
        "n_lambda_word": exponent_sum(word) + sigma0,
        "n_lambda_algebraic": algebraic,
        "congruent_mod4": (exponent_sum(word) + sigma0 - algebraic) % 4 == 0,
        "homologically_trivial": f.is_identity,
    }
    if f.is_identity:
        relator = relator_report(word, lag)
        report["relator"] = {"sigma": relator.sigma, "sigma0": relator.sigma0, "conditional": relator.conditional}
    return report


def run_member(job: JobSpec) -> dict:
    lag = parse_lagrangian(job.lagrangian, job.genus)
    classes = _mapping_classes(job)
    if len(classes) != 1:
        raise ValueError("member takes exactly one --f or --matrix")
    f = classes[0][1]
    e = ExtensionGroup(lag).element(f, job.n)
    algebraic = n_lambda(lag, f)
    return {
        "f": f.to_int_rows(),
        "n": job.n,
        "n_lambda": algebraic,
        "residue_mod4": (job.n - algebraic) % 4,
        "plus_criterion": plus_criterion(lag, e),
        "membership": membership(lag, e).value,
    }


def run_cyclo(job: JobSpec) -> dict:
    ring = cyclo_ring(job.p)
    colors = [job.c] if job.c is not None else list(relation_colors(job.p))
    records = []
    for c in colors:
        rel = scalar_relations(job.p, c)
        records.append({
            "c": c,
            "tt6": format_element(rel.tt6),
            "tt3": format_element(rel.tt3),
            "half": format_element(rel.half),
            "mu_2c": format_element(mu_twist(job.p, 2 * c)),
            "tt6_mod_h": list(reduce_mod_h(rel.tt6)),
            "tt3_mod_h": list(reduce_mod_h(rel.tt3)),
        })
    kappa_sq = ring.kappa_power(2)
    return {
        "p": job.p,
        "relations": records,
        "kappa_squared": format_element(kappa_sq),
        "kappa_squared_mod_h": kappa_square_mod_h(job.p),
        "expected_mod_h": (-1) ** (job.p * (job.p + 1) // 2) % job.p,
    }


def run_verify(job: JobSpec) -> dict:
    return run_suite(job.suite, job.trials, job.seed, job.genus, job.workers)


COMMANDS = {
    "maslov": run_maslov,
    "compose": run_compose,
    "nlambda": run_nlambda,
    "linking": run_linking,
    "member": run_member,
    "cyclo": run_cyclo,
    "verify": run_verify,
}


def run(job: JobSpec) -> dict:
    payload = COMMANDS[job.command](job)
    ok = payload.pop("ok", True)
    return {"schema": config.SCHEMA_VERSION, "ok": ok, "command": job.command, **payload}


def error_report(exc: Exception) -> dict:
    error = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, WordSyntaxError):
        error["position"] = exc.position
    return {"schema": config.SCHEMA_VERSION, "ok": False, "error": error}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maslovkit", description=config.APP_DESCRIPTION)
    parser.add_argument("--format", dest="output_format", choices=config.OUTPUT_FORMATS, default="json")
    parser.add_argument("--log-level", default=config.DEFAULT_LOG_LEVEL,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--permissive", action="store_true",
                        help="accept non-primitive curve classes")
    sub = parser.add_subparsers(dest="command", required=True)

    def surface(p, genus_default=1):
        p.add_argument("--genus", type=int, default=genus_default)
        p.add_argument("--lambda", dest="lagrangian", default="std",
                       help='"std", "1,0,0,1;0,1,-1,0" or a JSON list of vectors')

    p = sub.add_parser("maslov", help="Maslov index of three lagrangians")
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--lagrangians", nargs=3, required=True, metavar="LAMBDA")

    p = sub.add_parser("compose", help="compose lifted words and extended elements")
    surface(p)
    p.add_argument("operands", nargs="+", help='twist words, or "ROWS@N" for an explicit element')
    p.add_argument("--lift", choices=["shifted", "surgery"], default="shifted")

    p = sub.add_parser("nlambda", help="n_lambda, k, j_lambda and the phi/tau table")
    surface(p)
    p.add_argument("--word", dest="words", action="append", default=[])
    p.add_argument("--matrix", dest="matrices", action="append", default=[])

    p = sub.add_parser("linking", help="linking matrix of the framed link of a word")
    surface(p)
    p.add_argument("--word", dest="words", action="append", required=True)
    p.add_argument("--omit-unlink", action="store_true")

    p = sub.add_parser("member", help="membership of (f, n) in the index 2 and 4 subgroups")
    surface(p)
    p.add_argument("--f", dest="words", action="append", default=[])
    p.add_argument("--matrix", dest="matrices", action="append", default=[])
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("cyclo", help="phase scalars in the cyclotomic ring")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--c", type=int)

    p = sub.add_parser("verify", help="run a randomized property suite")
    p.add_argument("suite", choices=config.VERIFY_SUITES)
    p.add_argument("--trials", type=int, default=config.DEFAULT_TRIALS)
    p.add_argument("--seed", type=int)
    p.add_argument("--genus", type=int, default=None,
                   help=f"fixed genus; random in 1..{config.MAX_RANDOM_GENUS} when omitted")
    p.add_argument("--workers", type=int, default=config.DEFAULT_WORKERS)
    return parser


def configure_logging(level: str):
    logging.basicConfig(level=level, format=config.LOG_FORMAT, stream=sys.stderr, force=True)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    job = JobSpec.from_args(args)
    try:
        report = run(job)
    except (ToolkitError, ValueError, ZeroDivisionError) as e:
        logger.error("%s failed: %s", job.command, e)
        report = error_report(e)
    text = render_text(report) if job.output_format == "text" else to_json(report)
    print(text)
    return 0 if report["ok"] else 1
