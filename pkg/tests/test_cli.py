from __future__ import annotations

import json
import subprocess
import sys

from dgsmooth.cli import VERDICT_EXIT, main, render_text
from dgsmooth.smoothness import Perfectness, Verdict


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def strip_timing(rep: dict) -> dict:
    return {k: v for k, v in rep.items() if k != "timing"}


def test_resolve_examples(capsys, data_dir):
    code, rep, _ = report(capsys, "resolve", "--module", data_dir / "k_over_Qx.json")
    assert code == 0 and rep["verdict"] == "COMPLETE"
    assert rep["details"]["pd"] == 1
    assert rep["details"]["generator_degrees"] == [[0], [2]]
    assert rep["details"]["derived_fiber"] == {"0": 1, "1": 1}
    code, rep, _ = report(capsys, "resolve", "--module", data_dir / "free_over_Qx.json")
    assert code == 0 and rep["details"]["pd"] == 0


def test_malformed_json_exits_64(capsys, data_dir):
    code, rep, err = report(capsys, "resolve", "--module", data_dir / "malformed.json")
    assert code == 64 and rep["verdict"] == "INPUT_ERROR"
    assert "PARSE_ERROR" in err


def test_missing_file_and_bad_window_exit_64(capsys, data_dir):
    assert run(capsys, "resolve", "--module", data_dir / "nope.json")[0] == 64
    assert run(capsys, "resolve", "--module", data_dir / "k_over_Qx.json", "--window", "5:1")[0] == 64


def test_usage_error_exits_64(capsys):
    assert run(capsys, "resolve")[0] == 64
    assert run(capsys, "frobnicate")[0] == 64


def test_check_algebra_exit_codes(capsys, data_dir):
    code, rep, _ = report(capsys, "check-algebra", "--algebra", data_dir / "dual_numbers.json", "--over-field")
    assert code == 1 and rep["verdict"] == "NOT_SMOOTH" and rep["witness"]["degree"] == 2
    code, rep, _ = report(capsys, "check-algebra", "--algebra", data_dir / "Qx_algebra.json", "--base", data_dir / "base_Qx.json")
    assert code == 0 and rep["criterion"] == "base-ring-criterion"
    code, rep, _ = report(capsys, "check-algebra", "--algebra", data_dir / "dual_numbers.json", "--over-field", "--diagonal")
    assert code == 2 and rep["verdict"] == "UNDECIDED_WITHIN_BOUND"
    code, rep, _ = report(capsys, "check-algebra", "--algebra", data_dir / "Qx_over_Q.json", "--over-field", "--diagonal")
    assert code == 0 and rep["witness"] == {"pd": 1}
    code, rep, _ = report(capsys, "check-algebra", "--algebra", data_dir / "base_quotient.json")
    assert code == 1 and rep["witness"]["degree"] == 2 and rep["witness"]["reason"] == "not injective"
    code, rep, _ = report(capsys, "check-algebra", "--algebra", data_dir / "acyclic_pair.json")
    assert code == 0


def test_obstruction_flag_gives_definite_answer(capsys, data_dir):
    code, rep, _ = report(capsys, "check-algebra", "--algebra", data_dir / "dual_numbers.json", "--over-field", "--diagonal", "--obstruction")
    assert code == 1 and rep["criterion"] == "diagonal-tor"


def test_hypothesis_violation_exits_3(capsys, data_dir):
    code, rep, _ = report(capsys, "check-algebra", "--algebra", data_dir / "two_idempotent_degree_zero.json", "--over-field")
    assert code == 3 and rep["verdict"] == "HYPOTHESIS_VIOLATED"
    assert rep["witness"]["degree"] == 0


def test_triangular_commands(capsys, data_dir):
    q = data_dir / "rationals.json"
    code, rep, _ = report(capsys, "triangular", "--upper", q, "--lower", q, "--connecting", data_dir / "kvk_dim5.json")
    assert code == 0 and rep["verdict"] == "SMOOTH"
    code, rep, _ = report(capsys, "triangular", "--upper", q, "--lower", q, "--connecting", data_dir / "kvk_unbounded.json")
    assert code == 1 and rep["witness"]["component"] == "connecting"
    code, rep, _ = report(
        capsys, "triangular", "--upper", data_dir / "base_quotient.json", "--lower", data_dir / "Qx_algebra.json",
        "--connecting", data_dir / "residue_connecting.json",
    )
    assert code == 1 and rep["witness"]["component"] == "upper_left"
    k = data_dir / "Qx_algebra.json"
    code, rep, _ = report(capsys, "triangular", "--upper", k, "--lower", k, "--connecting", data_dir / "zero_connecting.json")
    assert code == 0
    assert set(rep["details"]["components"]) == {"upper_left", "lower_right", "connecting"}


def test_equivariant_commands(capsys, data_dir):
    code, rep, _ = report(capsys, "equivariant", "--group", data_dir / "sl2.json", "--subgroup", data_dir / "borel.json")
    assert code == 1 and rep["witness"]["reason"] == "weyl order 1 != 2"
    code, rep, _ = report(capsys, "equivariant", "--group", data_dir / "sl2.json", "--subgroup", data_dir / "sl2.json")
    assert code == 0
    code, _, _ = report(capsys, "equivariant", "--group", data_dir / "sl2.json", "--subgroup", data_dir / "borel.json", "--affine-space", "true")
    assert code == 64
    code, _, _ = report(capsys, "equivariant", "--group", data_dir / "e6.json", "--subgroup", data_dir / "sl2.json")
    assert code == 64


def test_variety_commands(capsys, data_dir):
    code, rep, _ = report(capsys, "variety", "--input", data_dir / "p1_under_borel.json")
    assert code == 0 and rep["verdict"] == "G_SMOOTH"
    code, rep, _ = report(capsys, "variety", "--input", data_dir / "p1_under_sl2.json", "--jobs", "2")
    assert code == 1 and rep["witness"] == {"orbit": "P1"}


def test_window_from_environment(capsys, data_dir, monkeypatch):
    monkeypatch.setenv("DGSMOOTH_DEFAULT_WINDOW", "0:6")
    _, rep, _ = report(capsys, "resolve", "--module", data_dir / "k_over_Qx.json")
    assert rep["window"] == [0, 6]
    _, rep, _ = report(capsys, "resolve", "--module", data_dir / "k_over_Qx.json", "--window", "-1:3")
    assert rep["window"] == [-1, 3]


def test_reports_are_deterministic_and_round_trip(capsys, data_dir):
    argv = ("triangular", "--upper", data_dir / "base_quotient.json", "--lower", data_dir / "Qx_algebra.json",
            "--connecting", data_dir / "residue_connecting.json")
    _, first, _ = report(capsys, *argv)
    _, second, _ = report(capsys, *argv)
    assert json.dumps(strip_timing(first), sort_keys=True) == json.dumps(strip_timing(second), sort_keys=True)
    assert json.loads(json.dumps(first)) == first
    assert first["command"]["name"] == "triangular"


def test_text_format_renders_same_data(capsys, data_dir):
    code, out, _ = run(capsys, "resolve", "--module", data_dir / "k_over_Qx.json", "--format", "text")
    assert code == 0
    lines = dict(line.split(": ", 1) for line in out.strip().splitlines())
    assert lines["verdict"] == '"COMPLETE"' and lines["details.pd"] == "1"
    assert render_text({"a": {"b": [1, 2]}}) == "a.b: [1, 2]"


def test_exit_codes_cover_every_verdict():
    for v in list(Verdict) + list(Perfectness):
        assert v.value in VERDICT_EXIT
    assert {VERDICT_EXIT[k] for k in VERDICT_EXIT} == {0, 1, 2, 3, 64}


def test_console_script_entry_point(data_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "dgsmooth.cli", "resolve", "--module", str(data_dir / "k_over_Qx.json")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["verdict"] == "COMPLETE"
