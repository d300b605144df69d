import json

import pytest

from polycover.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_report_polytope(capsys):
    code, out = run(capsys, "report", "polytope", "cell5")
    d = json.loads(out)
    assert code == 0
    assert d["counts"] == {"V": 5, "E": 10, "C": 5} and d["edge_length_sq"] == "5/2"
    assert len(d["vertices"]) == 5 and len(d["edges"]) == 10


def test_global_flags_in_either_position(capsys):
    _, a = run(capsys, "--kind", "cell8", "polytope")
    _, b = run(capsys, "polytope", "--kind", "cell8")
    assert a == b and json.loads(a)["counts"]["V"] == 16


def test_report_symmetry(capsys):
    code, out = run(capsys, "report", "symmetry", "cell24")
    d = json.loads(out)
    assert d["order"] == 576 and d["censuses"]["order3_edge_fixing"] == 32
    assert d["plane_partition"]["plane_count"] == 16 and d["transitivity"] == {"vertex": True, "edge": True}


def test_cover_obstruction_exit_status(capsys):
    code, out = run(capsys, "cover", "build", "cell16")
    assert code == 1 and json.loads(out)["obstruction"]["r"] == 4


def test_cover_lift_and_split(capsys):
    code, out = run(capsys, "cover", "lift", "cell5")
    assert code == 0 and all(sorted(l["orders"]) in ([1, 2], [2, 2], [3, 6], [5, 10]) for l in json.loads(out)["lifts"])
    code, out = run(capsys, "cover", "split", "cell120", "--mode", "certificate")
    assert code == 0 and json.loads(out)["splitting"]["verdict"] == "split"


def test_local_commands(capsys):
    _, out = run(capsys, "local", "exponents", "--m", "3", "--kind", "one-form")
    assert json.loads(out)["branches"][0]["min_N0"] == "1/2"
    _, out = run(capsys, "local", "indicial", "--lam", "3/4", "--form", "edge")
    d = json.loads(out)
    assert (d["mu"], d["mu_prime"]) == ("1/2", "3/2")


def test_even_m_is_an_error(capsys):
    code = main(["local", "exponents", "--m", "4"])
    assert code == 2 and "even" in capsys.readouterr().err


def test_spectral_outputs_csv(capsys, tmp_path):
    code, _ = run(capsys, "spectral", "frequency", "--degrees", "1.5", "--out", str(tmp_path))
    lines = (tmp_path / "frequency.csv").read_text().splitlines()
    assert code == 0 and lines[0] == "r,K,N" and lines[1].endswith(",1.5")
    code, out = run(capsys, "spectral", "link", "--problem", "antipodal", "--mesh-ladder", "1", "--out", str(tmp_path))
    assert code == 0 and (tmp_path / "link.csv").exists()
    code, out = run(capsys, "spectral", "ode", "--lam", "2", "--branch", "mixed", "--beta", "0.1")
    assert code == 0 and abs(json.loads(out)["beta"] - 0.1) < 0.005


def test_verify_writes_report(capsys, tmp_path):
    code, out = run(capsys, "verify", "--kind", "cell16", "--mesh-ladder", "1", "--only", "3,9", "--out", str(tmp_path))
    assert code == 0
    assert "EXPECTED-FAIL" in out and "SKIPPED" in out
    assert json.loads((tmp_path / "report.json").read_text())["passed"] is True


def test_verify_format_alias(capsys, tmp_path):
    code, _ = run(capsys, "verify", "--only", "5", "--format", "json,md", "--out", str(tmp_path))
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["report.json", "report.md", "timings.json"]


def test_verify_unknown_format_fails_before_running(capsys, tmp_path):
    assert main(["verify", "--format", "pdf", "--out", str(tmp_path)]) == 2
    assert "unknown report format" in capsys.readouterr().err
    assert not any(tmp_path.iterdir())
