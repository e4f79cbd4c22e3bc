"""Command-line behaviour: output, JSON schema, exit codes, environment."""

import json

import pytest

from diffeolin.cli import main


@pytest.fixture
def run(capsys):
    def invoke(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke


def test_dual_subcommand(run):
    code, out, _ = run("dual", "coarse3")
    assert code == 0
    assert "dim V* = 0" in out


def test_dual_json_schema(run):
    code, out, _ = run("--json", "dual", "kink3_1")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "dual"
    assert doc["inputs"] == {"space": "kink3_1"}
    assert doc["result"]["dual_dim"] == 2


def test_hom_subcommand(run):
    code, out, _ = run("hom", "kink3_1", "fine2")
    assert code == 0
    assert "dim L^inf(V, W) = 4" in out


def test_bilinear_subcommand(run):
    code, out, _ = run("bilinear", "coarse2", "fine1")
    assert code == 0
    assert "dim B^inf(V, W) = 0" in out


def test_tensor_subcommand_with_dual_iso(run):
    code, out, _ = run("tensor", "kink2_1", "kink2_1", "--dual-iso")
    assert code == 0
    assert "dual dim = 1" in out
    assert "isomorphism=True" in out


def test_check_map_verdicts(run):
    code, out, _ = run("check-map", "second_coordinate")
    assert code == 0 and "Smooth" in out
    code, out, _ = run("check-map", "first_coordinate")
    assert code == 0 and "NotSmooth" in out and "witness plot" in out


def test_check_plot_subcommand(run):
    code, out, _ = run("check-plot", "kink2_1", "x*abs(x)", "0")
    assert code == 0
    assert "Plot" in out
    code, out, _ = run("check-plot", "fine2", "abs(x)", "x")
    assert code == 0
    assert "NotPlot" in out


def test_check_plot_unknown_marker(run, monkeypatch):
    monkeypatch.setenv("DIFFEOLIN_SLACK_DEGREE", "2")
    code, out, _ = run("check-plot", "kink2_1", "x^6*abs(x)", "0")
    assert code == 0
    assert "UNKNOWN" in out
    monkeypatch.delenv("DIFFEOLIN_SLACK_DEGREE")
    code, out, _ = run("check-plot", "kink2_1", "x^6*abs(x)", "0")
    assert "Plot" in out


def test_hat_dual_subcommand(run):
    code, out, _ = run("hat-dual", "kink2_1", "--iso", '[["0","1"],["1","0"]]')
    assert code == 0
    assert "singular span dim = 1" in out


def test_oracle_subcommand_record(run):
    code, out, _ = run("--json", "oracle", "abs(x)*x")
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["verdict"] == "NonSmoothAt0(order 3)"
    assert doc["result"]["order"] == 3
    assert set(doc["result"]) == {"expression", "order", "scale", "value", "verdict"}


def test_cross_validate_subcommand(run):
    code, out, _ = run("--json", "cross-validate", "kink3_1", "0,1,1", "--trials", "5")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdicts"]["map"] == "Smooth"
    assert doc["result"]["agreement_rate"] == 1.0
    records = doc["result"]["records"]
    assert records and set(records[0]) >= {"expression", "order", "scale", "value", "verdict"}


def test_input_errors_exit_2(run):
    assert run("dual", "nope")[0] == 2
    assert run("check-plot", "kink2_1", "abs(x)")[0] == 2
    assert run("check-plot", "kink2_1", "abs(", "0")[0] == 2
    assert run("hom", "fine2", "kink2_1")[0] == 2
    assert run("-f", "/nonexistent.json", "dual", "x")[0] == 2


def test_degree_cap_is_input_error(run):
    code, _, err = run("oracle", "x^200")
    assert code == 2
    assert "exceeds" in err


def test_verify_passes_on_bundled_file(run):
    code, out, _ = run("verify")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert len(lines) == 10
    assert all(l.startswith("PASS") for l in lines)


def test_verify_json_is_stable(run):
    code, out, _ = run("--json", "verify")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdicts"]["all_passed"] is True
    names = [c["name"] for c in doc["result"]["checks"]]
    assert "tensor-dual-multiplicativity" in names
