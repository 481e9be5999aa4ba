"""Command-line interface: values, formats, determinism, exit codes."""

import json
import math

import pytest

from modcorr.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_corr_hand_value(capsys):
    code, out, _ = run(capsys, "corr", "--poly", "x1*x2+x1*x3+x2*x3",
                       "--phi", "2pi/3", "--n", "3", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    cval = next(r for r in rep["results"] if r["name"] == "C")
    assert cval["value"] == pytest.approx(3 * math.sqrt(3) / 8, abs=1e-9)
    assert cval["method"] == "brute"
    assert rep["schema"] == "1"
    assert "seed" in rep


def test_corr_zero_poly(capsys):
    code, out, _ = run(capsys, "corr", "--poly", "0", "--phi", "2pi/3", "--n", "4",
                       "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert next(r for r in rep["results"] if r["name"] == "C")["value"] == \
        pytest.approx(0.0625, abs=1e-12)


def test_corr_symmetric_fast_path(capsys):
    code, out, _ = run(capsys, "corr", "--symmetric", "0,0,1", "--n", "20",
                       "--phi", "pi/2", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    row = rep["results"][0]
    assert row["method"] == "weight-class"


def test_bcorr_zero(capsys):
    code, out, _ = run(capsys, "bcorr", "--poly", "0", "--m", "3", "--n", "5",
                       "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert next(r for r in rep["results"] if r["name"] == "B")["value"] == 0.0


def test_contrib_direction(capsys):
    code, out, _ = run(capsys, "contrib", "--poly", "x1*x2", "--n", "2",
                       "--phi", "1.1", "--y", "11", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    row = rep["results"][0]
    assert complex(row["re"], row["im"]) == pytest.approx(math.sin(1.1) ** 2, abs=1e-12)


def test_restricted_command(capsys):
    code, out, _ = run(capsys, "restricted", "--poly", "x1*x2 + x2*x3", "--n", "3",
                       "--phi", "pi/2", "--r", "01*", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    names = [r["name"] for r in rep["results"]]
    assert "c(p,r)" in names and "v(r)" in names
    hyp = next(r for r in rep["results"] if r["name"] == "hypotheses")
    assert hyp["odd_even"] is True


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "corr", "--poly", "x1*x1", "--phi", "pi/2")
    assert code == 2
    assert "repeated index" in err


def test_angle_error_exit_code(capsys):
    code, _, err = run(capsys, "corr", "--poly", "x1", "--phi", "nonsense")
    assert code == 2


def test_budget_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("MODCORR_MAX_N", "8")
    code, _, err = run(capsys, "corr", "--poly", "x1", "--n", "12", "--phi", "pi/2")
    assert code == 3
    assert "budget" in err


def test_verify_pass_and_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "odd-even-sum", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["passed"] is True
    code, _, err = run(capsys, "verify", "no-such-claim")
    assert code == 2


def test_verify_table_format(capsys):
    code, out, _ = run(capsys, "verify", "v-phi")
    assert code == 0
    assert "pass" in out


def test_byte_identical_reports(capsys):
    argv = ("corr", "--poly", "x1*x2 + x3", "--n", "4", "--phi", "2pi/5",
            "--format", "json", "--seed", "7")
    _, out1, _ = run(capsys, *argv)
    _, out2, _ = run(capsys, *argv)
    assert out1 == out2


def test_search_command(capsys):
    code, out, _ = run(capsys, "search", "max-c", "--n", "4", "--phi", "pi/2",
                       "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["result"]["extras"]["complete_graph_is_max"] is True


def test_localcorr_command(capsys):
    argv = ("localcorr", "--n-target", "12", "--s-size", "2", "--s-size", "4",
            "--q-seeds", "4", "--format", "json", "--seed", "3")
    code, out1, _ = run(capsys, *argv)
    assert code == 0
    rep = json.loads(out1)
    assert rep["experiment"]["q_found"] is True
    _, out2, _ = run(capsys, *argv)
    assert out1 == out2


def test_closed_form_command(capsys):
    code, out, _ = run(capsys, "closed-form", "--which", "psi", "--n", "10", "--m", "3",
                       "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert next(r for r in rep["results"] if r["name"] == "l1")["value"] == 1


def test_report_csv(capsys):
    code, out, _ = run(capsys, "report", "--n-max", "3", "--m", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 1 + 3 * 2 * 2  # header + n(1..3) x k(1,2) x two polys
    assert "diff" in lines[0]
