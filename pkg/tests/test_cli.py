from __future__ import annotations

import json

import pytest

import config
from src.cli.app import JobSpec, build_parser, main, run
from src.cli.verify import SUITES, TrialResult, run_suite, shrink_word, smallest_failure
from src.topology.mcg import standard_word


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def _json(capsys, *argv):
    code, out = _run(capsys, *argv)
    return code, json.loads(out)


def test_linking_of_the_chain_relator(capsys):
    code, report = _json(capsys, "linking", "--genus", "1", "--lambda", "std",
                         "--word", "(m1 l1)^6 0^-1", "--omit-unlink")
    assert code == 0
    assert report["schema"] == 1
    assert report["ok"] is True
    assert report["sigma"] == -7
    assert report["sigma0"] == -7
    assert report["exponent_sum"] == 11
    assert report["n_lambda_word"] == 4
    assert report["congruent_mod4"] is True
    assert report["relator"]["conditional"] is False


def test_linking_with_unlink(capsys):
    code, report = _json(capsys, "linking", "--genus", "2", "--word", "[1,1;1,2]")
    assert code == 0
    assert report["matrix"] == [[2, 1, 2], [1, 0, 0], [2, 0, 0]]
    assert report["labels"] == ["a1", "U1", "U2"]
    assert report["sigma0"] == 0


def test_member(capsys):
    code, report = _json(capsys, "member", "--genus", "1", "--lambda", "std", "--f", "m1", "--n", "0")
    assert code == 0
    assert report["membership"] == "plusplus"
    code, report = _json(capsys, "member", "--genus", "1", "--matrix", "1,0;0,1", "--n", "2")
    assert report["membership"] == "plus"


def test_maslov(capsys):
    code, report = _json(capsys, "maslov", "--genus", "1", "--lagrangians", "std", "1,1", "0,1")
    assert code == 0
    assert report["maslov"] == 1


def test_compose_braid_and_half_twist(capsys):
    _, mlm = _json(capsys, "compose", "--genus", "1", "m1 l1 m1")
    _, lml = _json(capsys, "compose", "--genus", "1", "l1 m1 l1")
    assert mlm["n"] == lml["n"] == 1
    assert mlm["f"] == lml["f"]
    _, theta = _json(capsys, "compose", "--genus", "1", "(m1 l1)^3")
    assert theta["n"] == 2
    assert theta["f"] == [[-1, 0], [0, -1]]
    _, surgery = _json(capsys, "compose", "--genus", "1", "--lift", "surgery", "(m1 l1)^3")
    assert surgery["n"] == -4


def test_compose_explicit_elements(capsys):
    _, report = _json(capsys, "compose", "--genus", "1", "1,0;0,1@1", "1,0;0,1@3")
    assert report["n"] == 4
    assert report["membership"] == "plusplus"


def test_nlambda_table(capsys):
    code, report = _json(capsys, "nlambda", "--genus", "1", "--word", "m1", "--word", "l1")
    assert code == 0
    assert [r["n_lambda"] for r in report["classes"]] == [0, 1]
    assert len(report["pairs"]) == 4
    for pair in report["pairs"]:
        assert pair["tau"] == -pair["phi"]


def test_cyclo(capsys):
    code, report = _json(capsys, "cyclo", "--p", "5")
    assert code == 0
    assert [r["c"] for r in report["relations"]] == [0, 1]
    assert report["relations"][0]["tt6"] == "-q^3 - q^2 - q - 1"
    assert report["kappa_squared_mod_h"] == report["expected_mod_h"] == 4


def test_syntax_error_report(capsys):
    code, report = _json(capsys, "linking", "--genus", "1", "--word", "m1 x1")
    assert code == 1
    assert report["ok"] is False
    assert report["error"]["type"] == "WordSyntaxError"
    assert report["error"]["position"] == 3


def test_domain_error_report(capsys):
    code, report = _json(capsys, "member", "--genus", "1", "--f", "[2;0]", "--n", "0")
    assert code == 1
    assert report["error"]["type"] == "NonPrimitiveClassError"
    assert "position" not in report["error"]
    code, report = _json(capsys, "--permissive", "member", "--genus", "1", "--f", "[2;0]", "--n", "0")
    assert code == 0


def test_usage_error_exits_with_two():
    with pytest.raises(SystemExit) as info:
        main(["verify", "no-such-suite"])
    assert info.value.code == 2


def test_output_is_deterministic(capsys):
    argv = ["verify", "surgery-congruence", "--trials", "3", "--seed", "5", "--genus", "2"]
    first = _run(capsys, *argv)
    second = _run(capsys, *argv)
    assert first == second
    assert first[0] == 0


def test_text_format(capsys):
    code, out = _run(capsys, "--format", "text", "linking", "--genus", "1", "--word", "m1 l1 m1")
    assert code == 0
    assert "sigma: -2" in out.splitlines()
    assert "U1" in out


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv(config.SEED_ENV_VAR, "42")
    args = build_parser().parse_args(["verify", "cyclo", "--trials", "1"])
    assert JobSpec.from_args(args).seed == 42
    args = build_parser().parse_args(["verify", "cyclo", "--trials", "1", "--seed", "3"])
    assert JobSpec.from_args(args).seed == 3


def test_suite_names_match_config():
    assert tuple(SUITES) == config.VERIFY_SUITES
    with pytest.raises(ValueError):
        run_suite("no-such-suite", trials=1, seed=0)


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_every_suite_passes_a_few_trials(suite):
    report = run_suite(suite, trials=4, seed=1)
    assert report["ok"], report.get("counterexample")
    assert report["passed"] == 4


def test_walker_suite_from_the_command_line(capsys):
    code, report = _json(capsys, "verify", "walker", "--genus", "3", "--trials", "5", "--seed", "7")
    assert code == 0
    assert report["suite"] == "walker"
    assert report["failed"] == 0


def test_parallel_trials_match_serial():
    serial = run_suite("completion", trials=4, seed=2, genus=2)
    parallel = run_suite("completion", trials=4, seed=2, genus=2, workers=2)
    assert serial == parallel


def test_shrink_word_keeps_a_minimal_failure():
    word = standard_word(1, "mlmllm")
    # fails whenever the word still contains a longitude
    minimal = shrink_word(word, lambda w: any(c.b[0] for c, _ in w))
    assert len(minimal) == 1
    assert minimal.letters[0].curve.b == (1,)


def test_smallest_failure_prefers_low_genus_then_short_cases():
    failures = [
        TrialResult(0, False, {"trial": 0, "genus": 3, "f": [[1]]}),
        TrialResult(1, False, {"trial": 1, "genus": 1, "f": [[1, 0], [0, 1]]}),
        TrialResult(2, False, {"trial": 2, "genus": 1, "f": [[1]]}),
        TrialResult(3, False, {"trial": 3, "genus": 1, "f": [[2]]}),
    ]
    assert smallest_failure(failures).index == 2


def test_run_reports_command():
    report = run(JobSpec(command="cyclo", p=7, c=1))
    assert report["command"] == "cyclo"
    assert report["relations"][0]["c"] == 1
