from __future__ import annotations

import json
from fractions import Fraction

import pytest

from hopfoid.algebra import JacobiViolation
from hopfoid.cli import EXIT_CONFIG, EXIT_FAIL, EXIT_PASS, main
from hopfoid.config import ConfigError, ParseError, parse_config
from hopfoid.registry import BROKEN_JACOBI, builtin_config, builtin_names
from hopfoid.report import SCHEMA_VERSION, Report
from hopfoid.suites import run_suites


def test_builtin_configs_parse():
    assert set(builtin_names()) >= {"s3-adjoint", "c2-adjoint", "abelian-2d", "heisenberg-3d", "kappa-2d", "kappa-4d"}
    s3 = builtin_config("s3-adjoint")
    assert len(s3.elements) == 6 and s3.track == "finite-group"
    k = builtin_config("kappa-2d")
    assert k.brackets == {(0, 1): {1: Fraction(1)}}
    assert (k.a_cap, k.t_cap) == (3, 3)


def test_parse_error_location():
    text = "track = lie-algebra\ngenerators = x y\nbogus = 3\n"
    with pytest.raises(ParseError) as exc:
        parse_config(text)
    assert (exc.value.line, exc.value.column) == (3, 1)
    assert "bogus" in str(exc.value)


def test_bad_table_rejected():
    text = "track = finite-group\nelements = e a\ntable\n e : e a\n a : a\nend\n"
    with pytest.raises(ParseError) as exc:
        parse_config(text)
    assert exc.value.line == 5


def test_unterminated_block():
    with pytest.raises(ParseError):
        parse_config("track = lie-algebra\ngenerators = x\nbrackets\n")


def test_bracket_coefficients_rational():
    cfg = parse_config("track = lie-algebra\ngenerators = x y\nbrackets\n x y = 3/2 y\nend\nwindow = A=1,T=1\n")
    assert cfg.brackets[(0, 1)] == {1: Fraction(3, 2)}


def test_jacobi_violation_on_load():
    with pytest.raises(JacobiViolation):
        parse_config(BROKEN_JACOBI)


def test_semantic_errors():
    with pytest.raises(ConfigError):
        parse_config("track = lie-algebra\ngenerators = x\n")
    with pytest.raises(ConfigError):
        parse_config("track = finite-group\nelements = e\ntable\n e : e\nend\nsuites = hopf nosuch\n")


def test_cli_list_and_describe(capsys):
    assert main(["list-examples"]) == EXIT_PASS
    assert "kappa-2d" in capsys.readouterr().out
    assert main(["describe", "s3-adjoint"]) == EXIT_PASS
    assert "track = finite-group" in capsys.readouterr().out
    assert main(["describe", "nope"]) == EXIT_CONFIG


def test_cli_config_errors(tmp_path, capsys):
    assert main(["run", "no-such-example", "-q"]) == EXIT_CONFIG
    bad = tmp_path / "bad.cfg"
    bad.write_text("track = finite-group\nelements = e a\n")
    assert main(["run", str(bad), "-q"]) == EXIT_CONFIG
    assert main(["run", "s3-adjoint", "--window", "A=2,T=2", "-q"]) == EXIT_CONFIG
    capsys.readouterr()


def test_cli_run_c2_with_controls(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["run", "c2-adjoint", "--controls", "-q", "--out", str(out)]) == EXIT_PASS
    rep = json.loads(out.read_text())
    assert rep["schema"] == SCHEMA_VERSION
    assert rep["summary"]["fail"] > 0  # controls fail as expected
    assert "summary:" in capsys.readouterr().out


def test_cli_tampered_control_fails_with_rational_witness(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["run", "s3-adjoint", "--suites", "controls", "-q", "--out", str(out)]) == EXIT_PASS
    rep = json.loads(out.read_text())
    recs = {r["check_id"]: r for r in rep["suites"]["controls"]}
    rec = recs["controls.tampered_antipode"]
    assert rec["verdict"] == "fail"
    coeffs = [c for _, c in rec["witness"]["value"]["instance"]["terms"]]
    assert all("/" in c for c in coeffs)
    capsys.readouterr()


def test_empty_suite_list():
    cfg = builtin_config("c2-adjoint")
    cfg.suites = []
    rep = run_suites(cfg)
    d = rep.to_json()
    assert d["schema"] == SCHEMA_VERSION and d["suites"] == {}


def test_report_round_trip_and_determinism():
    cfg = builtin_config("c2-adjoint")
    a = run_suites(cfg).dumps()
    b = run_suites(builtin_config("c2-adjoint")).dumps()
    assert a == b
    assert Report.loads(a).dumps() == a


def test_unexpected_pass_of_control_counts_as_failure():
    from hopfoid.report import PASS, CheckRecord
    from hopfoid.suites import unexpected

    rep = Report(config={})
    rep.add("controls", CheckRecord("controls.x", "", PASS, "exact", details={"expected": "fail"}))
    assert unexpected(rep)["fail"] == 1
    from hopfoid.cli import exit_code

    assert exit_code(rep, False) == EXIT_FAIL
