import io
import json

import pytest

import quotseries.localization as localization
from quotseries import verify
from quotseries.cli import main
from quotseries.core import RationalFunction, series_from_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_quot_rank1(capsys):
    code, out, _ = run(capsys, "quot", "--N", "1", "--order", "10")
    doc = json.loads(out)
    assert code == 0
    assert doc["oracle"]["coefficients"] == [str(1 - n) for n in range(11)]
    assert doc["weights"] == ["2"] and doc["order"] == 10


def test_quot_both_with_pade(capsys):
    code, out, _ = run(capsys, "quot", "--N", "2", "--order", "24", "--method", "both", "--pade", "--latex")
    doc = json.loads(out)
    assert code == 0 and doc["agree"] is True
    assert doc["pade_bounds"] == [10, 10]
    assert doc["pade"]["numerator"] == ["1", "-8", "16"]
    assert doc["pade"]["denominator"] == ["1", "-8", "14", "-8", "1"]
    assert doc["pade"]["latex"].startswith(r"\frac")


def test_quot_degenerate_weights(capsys):
    code, _, err = run(capsys, "quot", "--N", "2", "--weights", "2,3")
    assert code == 2 and "degenerate" in err


def test_quot_disagreement_exit_code(capsys, monkeypatch):
    import quotseries.cli as cli
    real = cli.w_closed_form
    monkeypatch.setattr(cli, "w_closed_form", lambda p: real(p) * 2)
    code, out, _ = run(capsys, "quot", "--N", "1", "--order", "4", "--method", "both")
    assert code == 3 and json.loads(out)["agree"] is False


def test_quot_equivariant_flag(capsys):
    code, out, _ = run(capsys, "quot", "--N", "2", "--order", "3", "--method", "both", "--equivariant")
    doc = json.loads(out)
    assert code == 0 and doc["agree"] is True and doc["equivariant"] is True
    # the weight-dependent sums are not the limit
    assert doc["oracle"]["coefficients"][2] != "2"


def test_quot_descendent_jets(capsys):
    code, out, _ = run(capsys, "quot", "--N", "2", "--d=-2", "--jet", "1", "--order", "6")
    doc = json.loads(out)
    assert code == 0 and set(doc["oracle"]["monomials"]) == {"0", "1"}


def test_order_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("QUOTSERIES_ORDER", "5")
    code, out, _ = run(capsys, "quot", "--N", "1")
    assert code == 0 and json.loads(out)["order"] == 5
    monkeypatch.setenv("QUOTSERIES_ORDER", "five")
    code, _, err = run(capsys, "quot", "--N", "1")
    assert code == 2


def test_output_is_deterministic(capsys):
    _, first, _ = run(capsys, "quot", "--N", "2", "--d", "1", "--order", "6", "--pade")
    _, second, _ = run(capsys, "quot", "--N", "2", "--d", "1", "--order", "6", "--pade")
    assert first == second
    assert list(json.loads(first)) == sorted(json.loads(first))


def test_hilbert_commands(capsys):
    code, out, _ = run(capsys, "hilbert", "--M2", "1", "--MK", "0", "--K2", "0", "--order", "8", "--pade")
    assert code == 0 and json.loads(out)["pade"] == {"numerator": ["1", "-1"], "denominator": ["1"]}
    code, out, _ = run(capsys, "hilbert", "--M2", "1", "--MK", "1", "--K2", "1", "--alphaM", "0", "--jet", "1",
                       "--monomial", "1", "--order", "16", "--pade")
    assert json.loads(out)["pade"] == {"numerator": ["0", "0", "-1", "4"], "denominator": ["1", "-4", "4"]}
    code, out, _ = run(capsys, "hilbert", "--M2", "0", "--MK", "0", "--K2", "0", "--order", "8")
    assert json.loads(out)["series"]["coefficients"] == ["1"] + ["0"] * 8


def test_hilbert_monomial_out_of_range(capsys):
    code, _, err = run(capsys, "hilbert", "--M2", "0", "--MK", "0", "--K2", "0", "--alphaM", "0", "--jet", "1",
                       "--monomial", "2")
    assert code == 2 and "exceeds" in err


def test_p1xp1_command(capsys):
    code, out, _ = run(capsys, "p1xp1", "--nmax", "12", "--pade")
    doc = json.loads(out)
    assert code == 0 and doc["coefficients"]["1"] == "6"
    assert doc["pade"] == {"numerator": ["0", "6", "-10"], "denominator": ["1", "-2", "1"]}


def test_sigma_command(capsys):
    code, out, _ = run(capsys, "sigma", "--a", "0", "--b", "1", "--c", "0")
    doc = json.loads(out)
    assert code == 0 and doc["fit"] == {"p1": ["1", "-1"], "p2": []} and doc["verified"]
    code, _, _ = run(capsys, "sigma", "--a", "0", "--b", "1", "--c", "0", "--nmax", "2")
    assert code == 2


def test_pade_reads_stdin(capsys, monkeypatch):
    series = RationalFunction([0, 6, -10], [1, -2, 1]).expand(12)
    from quotseries.core import series_to_json
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(series_to_json(series))))
    code, out, _ = run(capsys, "pade", "--pade-num", "3", "--pade-den", "3")
    assert code == 0 and json.loads(out)["pade"]["numerator"] == ["0", "6", "-10"]


def test_pade_accepts_command_output(capsys, monkeypatch):
    _, out, _ = run(capsys, "quot", "--N", "1", "--order", "9")
    assert series_from_json(json.loads(out)["oracle"]).order == 9
    monkeypatch.setattr("sys.stdin", io.StringIO(out))
    code, out, _ = run(capsys, "pade")
    assert code == 0 and json.loads(out)["pade"]["denominator"] == ["1", "-2", "1"]


def test_pade_bad_input(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("{\"nothing\": 1}"))
    code, _, _ = run(capsys, "pade")
    assert code == 2
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps({"coefficients": ["1", "2"], "order": 1})))
    code, _, _ = run(capsys, "pade", "--pade-num", "2", "--pade-den", "2")
    assert code == 2


def test_verify_filter_runs_only_sigma(capsys):
    code, out, _ = run(capsys, "verify", "--filter", "sigma")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0].startswith("PASS sigma") and lines[-1] == "1/1 passed"


def test_verify_unknown_filter(capsys):
    code, out, _ = run(capsys, "verify", "--filter", "no-such-case")
    assert code == 0 and "no verification case" in out


def test_corrupted_psi_sign_fails_verification(capsys, monkeypatch):
    real = localization._psi_pair
    monkeypatch.setattr(localization, "_psi_pair", lambda wi, wj, cap: -real(wi, wj, cap))
    verify.oracle_limit.cache_clear()
    try:
        code, out, _ = run(capsys, "verify", "--filter", "oracle")
    finally:
        verify.oracle_limit.cache_clear()
    first_fail = next(line for line in out.splitlines() if line.startswith("FAIL"))
    assert code == 1
    assert first_fail.startswith("FAIL euler-rank2")
