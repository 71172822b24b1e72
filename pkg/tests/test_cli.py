"""Command-line interface: frozen outputs, JSON envelope, exit codes,
the dimension cap, and determinism."""

import json

import pytest

from eck.cli import run


def _json_out(capsys):
    out = capsys.readouterr().out
    return json.loads(out), out


def test_csm_frozen_text(capsys):
    assert run(["csm", "--n", "4", "--format", "text"]) == 0
    assert capsys.readouterr().out == "1 + 2t + 2t^2\n"


def test_csm_range_prefixes(capsys):
    assert run(["csm", "--n", "2..4", "--space", "CCX"]) == 0
    out = capsys.readouterr().out
    assert out == "n=2: 1\nn=3: 1 + t\nn=4: 1 + 2t + t^2\n"


def test_verify_json_envelope(capsys):
    assert run(["verify", "--formula", "con", "--n", "2", "--format", "json"]) == 0
    doc, raw = _json_out(capsys)
    assert set(doc) == {"command", "params", "results", "version"}
    assert doc["command"] == "verify"
    assert doc["params"]["formula"] == "con" and doc["params"]["n_lo"] == 2
    first = doc["results"][0]
    assert first["formula"] == "con" and first["n"] == 2 and first["verified"] is True
    assert raw.endswith("\n")


def test_json_runs_are_byte_identical(capsys):
    run(["verify", "--formula", "dope", "--n", "2..4", "--format", "json", "--seed", "5"])
    first = capsys.readouterr().out
    run(["verify", "--formula", "dope", "--n", "2..4", "--format", "json", "--seed", "5"])
    second = capsys.readouterr().out
    assert first == second


def test_timings_only_on_request(capsys):
    run(["verify", "--formula", "con", "--n", "2", "--format", "json"])
    doc, _ = _json_out(capsys)
    assert "timing_ms" not in doc["results"][0]
    run(["verify", "--formula", "con", "--n", "2", "--format", "json", "--timings"])
    doc, _ = _json_out(capsys)
    assert doc["results"][0]["timing_ms"] >= 0


def test_usage_errors_are_one_line(capsys):
    assert run(["verify", "--formula", "proj", "--n", "1"]) == 2
    err = capsys.readouterr().err
    assert err.count("\n") == 1 and "error:" in err

    assert run(["frobnicate"]) == 2
    assert "error:" in capsys.readouterr().err

    assert run(["verify", "--formula", "con", "--n", "4", "--k", "1"]) == 2
    assert "error:" in capsys.readouterr().err

    assert run(["csm", "--n", "3..2"]) == 2
    assert "error:" in capsys.readouterr().err


def test_dimension_cap(capsys, monkeypatch):
    monkeypatch.delenv("ECK_MAX_N", raising=False)
    assert run(["compute", "--kind", "P", "--n", "9"]) == 2
    assert "ECK_MAX_N" in capsys.readouterr().err

    monkeypatch.setenv("ECK_MAX_N", "9")
    assert run(["compute", "--kind", "P", "--n", "9"]) == 0
    capsys.readouterr()

    monkeypatch.setenv("ECK_MAX_N", "4")
    assert run(["csm", "--n", "6"]) == 2
    capsys.readouterr()

    monkeypatch.setenv("ECK_MAX_N", "banana")
    assert run(["csm", "--n", "2"]) == 2
    assert "ECK_MAX_N" in capsys.readouterr().err


def test_compute_latex_forms(capsys):
    assert run(["compute", "--kind", "CCQ", "--n", "2", "--format", "latex"]) == 0
    unexpanded = capsys.readouterr().out
    assert "h(T T_{1})" in unexpanded and "\\frac" not in unexpanded

    assert run(["compute", "--kind", "CCQ", "--n", "2", "--format", "latex", "--expand"]) == 0
    expanded = capsys.readouterr().out
    assert "\\frac" in expanded


def test_compute_json_lists_every_point(capsys):
    assert run(["compute", "--kind", "Qc", "--n", "3", "--format", "json"]) == 0
    doc, _ = _json_out(capsys)
    points = doc["results"][0]["values"]
    assert [p["point"] for p in points] == ["p_-1", "p_0", "p_1"]
    for p in points:
        assert set(p) == {"point", "recipe", "num", "den"}


def test_certify_paths(capsys):
    assert run(["certify", "--kind", "CCQ", "--n", "2..4"]) == 0
    out = capsys.readouterr().out
    assert out.count("nonnegative") == 3 or out.count("PASS") == 3

    assert run(["certify", "--kind", "CQ", "--n", "3", "--format", "json"]) == 0
    doc, _ = _json_out(capsys)
    cert = doc["results"][0]
    assert cert["nonnegative"] is True and cert["roundtrip_ok"] is True


def test_remark_without_k_runs_every_level(capsys):
    assert run(["verify", "--formula", "remark_k", "--n", "6", "--format", "json"]) == 0
    doc, _ = _json_out(capsys)
    assert [r["k"] for r in doc["results"]] == [0, 1, 2]
    assert all(r["verified"] for r in doc["results"])


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    assert run(["verify", "--formula", "con", "--n", "2", "--format", "json", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    doc = json.loads(target.read_text())
    assert doc["command"] == "verify"


def test_table_reports_the_failing_criterion(capsys):
    assert run(["table", "--max-n", "4"]) == 1
    out = capsys.readouterr().out
    assert "12/13 criteria passed" in out
    fail_lines = [line for line in out.splitlines() if "FAIL" in line]
    assert len(fail_lines) == 1 and "9" in fail_lines[0]
    assert "n=3" in out  # the mismatch detail names the first odd case


def test_table_json_envelope(capsys):
    assert run(["table", "--max-n", "4", "--format", "json"]) == 1
    doc, _ = _json_out(capsys)
    rows = doc["results"]
    assert len(rows) == 13
    assert [r["number"] for r in rows] == list(range(1, 14))
    assert sum(1 for r in rows if not r["passed"]) == 1
