import json
import subprocess
import sys

import pytest
from hypothesis import given

from adjourn.cli import EXIT_BUDGET, EXIT_FOUND, EXIT_OK, EXIT_USAGE, main, positioned_steps, root_for
from adjourn.harness import run_suite
from adjourn.lam import beta_steps, sigma_steps
from adjourn.ljq import ljq_steps
from adjourn.marked import bet3_reducts, sigmm_activ_steps
from conftest import named_lambda, named_ljq_term, named_marked, to_node

OMEGA = "(\\x. x x) (\\x. x x)"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_encode_fgt(capsys):
    code, out, _ = run(capsys, "encode", "--via", "fgt", "let x = y in* x")
    assert code == EXIT_OK and out.strip() == "(\\x. x) y"


def test_encode_ql_and_foc(capsys):
    code, out, _ = run(capsys, "encode", "--via", "ql", "x(z; y. <y>)")
    assert code == EXIT_OK and out.strip() == "(\\y. y) (x z)"
    code, out, _ = run(capsys, "encode", "--via", "foc", "let x = <w> in <x>")
    assert code == EXIT_OK and out.strip() == "s3[(\\x. x) w](1(*),1(*))"


def test_sn_omega_reports_cycle(capsys):
    code, out, _ = run(capsys, "sn", OMEGA)
    assert code == EXIT_FOUND
    assert "cycle of length 1" in out


def test_sn_json(capsys):
    code, out, _ = run(capsys, "sn", "--format", "json", "(\\x. x) y")
    data = json.loads(out)
    assert code == EXIT_OK and data["max_path_len"] == 1


def test_sn_budget_exhaustion(capsys):
    code, out, _ = run(capsys, "sn", "--budget", "1", "(\\x. x) ((\\y. y) z)")
    assert code == EXIT_BUDGET and out.startswith("Unknown")


def test_parse_error_position(capsys):
    code, _, err = run(capsys, "reduce", "(x")
    assert code == EXIT_USAGE
    assert "line 1, column 3" in err


@pytest.mark.parametrize("argv", [
    ("check", "no-such-suite"),
    ("check", "sigma-measure", "--size", "12"),
    ("check", "prop1", "--triples", "3"),
    ("sn", "--budget", "0", "x"),
    ("reduce",),
    ("frobnicate",),
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_reduce_lists_rules(capsys):
    code, out, _ = run(capsys, "reduce", "--calculus", "ljq", "let y = <z> in <y>")
    assert code == EXIT_OK
    # both cut-var and cut-id fire at the root and give the same reduct
    assert out.split() == ["cut-var", "<z>", "cut-id", "<z>"]
    code, out, _ = run(capsys, "reduce", "x")
    assert out.strip() == "(normal form)"


def test_reduce_json_positions(capsys):
    code, out, _ = run(capsys, "reduce", "--format", "json", "(\\x. x) ((\\y. y) z)")
    rows = json.loads(out)
    assert {tuple(r["position"]) for r in rows} == {(), (1,)}
    assert {r["rule"] for r in rows} == {"beta"}


def test_reads_terms_from_file(capsys, tmp_path):
    f = tmp_path / "t.lam"
    f.write_text("(\\x. x)\n  y\n")
    code, out, _ = run(capsys, "normalize", "--file", str(f))
    assert code == EXIT_OK and out.strip() == "y"


def test_lpo_compare(capsys, tmp_path):
    assert run(capsys, "lpo-compare", "1(*)", "*")[1].strip() == "Greater"
    assert run(capsys, "lpo-compare", "*", "1(*)")[1].strip() == "Less"
    assert run(capsys, "lpo-compare", "*", "*")[1].strip() == "Equal"
    f = tmp_path / "pair.txt"
    f.write_text("# two terms\n2(*,*)\n1(1(*))\n")
    assert run(capsys, "lpo-compare", "--file", str(f))[1].strip() == "Greater"


def test_trace_is_deterministic(capsys):
    t = "(\\x. x) ((\\y. y) ((\\z. z) w))"
    first = run(capsys, "trace", t)
    second = run(capsys, "trace", t)
    assert first == second and first[0] == EXIT_OK
    lines = first[1].strip().splitlines()
    assert lines[-1].endswith("w") and len(lines) == 4


def test_trace_step_limit(capsys):
    code, out, err = run(capsys, "trace", "--depth", "3", OMEGA)
    assert code == EXIT_BUDGET and "step limit" in err
    assert len(out.strip().splitlines()) == 4


def test_check_sigma_measure_small(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "check", "sigma-measure", "--size", "5", "--report", str(report))
    assert code == EXIT_OK
    assert json.loads(report.read_text())["counts"]["failed"] == 0


def test_check_json_failure(capsys):
    code, out, _ = run(capsys, "check", "sigma-measure", "--size", "6", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_FOUND and data["counterexamples"]


def test_examples_exit_code_matches_report(capsys):
    code, out, _ = run(capsys, "examples")
    assert "Example 1" in out
    assert (code == EXIT_OK) == run_suite("examples").ok


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "adjourn.cli", "sn", OMEGA], capture_output=True, text=True)
    assert proc.returncode == EXIT_FOUND


# --------------------------------------------------------------------------
# positioned steps agree with the library step functions


@given(named_lambda())
def test_positioned_beta_and_sigma(t):
    node = to_node(t)
    assert {r for _, _, r in positioned_steps(node, root_for("lambda", "beta"), "lambda")} == beta_steps(node)
    assert {r for _, _, r in positioned_steps(node, root_for("lambda", "sigma"), "lambda")} == sigma_steps(node)


@given(named_marked())
def test_positioned_marked(t):
    # the marked calculus offers bet3 together with sigmm and activation
    node = to_node(t)
    expected = bet3_reducts(node) | {r for _, r in sigmm_activ_steps(node)}
    assert {r for _, _, r in positioned_steps(node, root_for("marked"), "marked")} == expected


@given(named_ljq_term())
def test_positioned_ljq(t):
    node = to_node(t)
    for relaxed in (False, True):
        got = {r for _, _, r in positioned_steps(node, root_for("ljq", relaxed=relaxed), "ljq")}
        assert got == ljq_steps(node, relaxed)
