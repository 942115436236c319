import csv
import io
import json
from importlib import resources

import jsonschema
import pytest

from dp3asym import cli, verify
from dp3asym import serialization as S
from dp3asym.errors import SchemaVersionError
from dp3asym.report import latex_document, render_text
from dp3asym.series_oracle import oracle_trig_coeffs
from dp3asym.trig_expansion import TrigContext, compute_B_infty
from dp3asym.verify import Check, CheckResult

SCHEMA = json.loads(resources.files("dp3asym").joinpath("schemas/document.schema.json").read_text())


def call(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_passing_suite_exits_zero(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "trig-truncated")
    assert code == 0
    assert "11/11 checks passed" in out


def test_verify_without_suites(capsys):
    code, out, _ = call(capsys, "verify")
    assert code == 0 and "0/0 checks" in out


def test_failing_check_exits_one(capsys, monkeypatch):
    bad = Check("injected", "deliberately false", lambda: (False, "forced"))
    monkeypatch.setitem(verify.SUITES, "trig-truncated", lambda: [bad])
    code, out, err = call(capsys, "verify", "--suite", "trig-truncated")
    assert code == 1
    assert "FAIL  trig-truncated/injected" in out
    assert "FAILED trig-truncated/injected: deliberately false" in err


def test_raising_check_is_a_failure(capsys, monkeypatch):
    def boom():
        raise RuntimeError("kaput")
    monkeypatch.setitem(verify.SUITES, "trig-truncated", lambda: [Check("boom", "raises", boom)])
    code, out, _ = call(capsys, "verify", "--suite", "trig-truncated")
    assert code == 1 and "kaput" in out


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "nonsense"],
    ["expand", "nonsense"],
    ["expand", "trig", "--param", "novalue"],
    ["numeval", "--depth", "40"],
    ["verify", "--branch", "s=*"],
])
def test_bad_input_exits_two(capsys, argv):
    assert call(capsys, *argv)[0] == 2


def test_config_file(tmp_path, capsys):
    good = tmp_path / "ok.json"
    good.write_text(json.dumps({"depth": 1, "format": "text"}))
    code, out, _ = call(capsys, "expand", "trig", "--config", str(good))
    assert code == 0 and out.startswith("A_0 = ")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"depht": 1}))
    assert call(capsys, "expand", "trig", "--config", str(bad))[0] == 2
    assert call(capsys, "expand", "trig", "--config", str(tmp_path / "missing.json"))[0] == 2


def test_flags_override_config(tmp_path, capsys):
    cfgfile = tmp_path / "c.json"
    cfgfile.write_text(json.dumps({"format": "csv"}))
    code, out, _ = call(capsys, "expand", "trig", "--depth", "1", "--config", str(cfgfile), "--format", "text")
    assert code == 0 and not out.startswith("name,value")


def test_expand_json_is_deterministic_and_valid(capsys):
    a = call(capsys, "expand", "trig-b", "--depth", "3")[1]
    b = call(capsys, "expand", "trig-b", "--depth", "3")[1]
    assert a == b
    doc = json.loads(a)
    jsonschema.validate(doc, SCHEMA)
    assert doc["kind"] == "expansion/trig-b"


def test_param_binding(capsys):
    out = call(capsys, "expand", "trig", "--depth", "2", "--param", "alpha=0", "--format", "text")[1]
    assert "alpha" not in out


def test_oracle_csv(capsys):
    code, out, _ = call(capsys, "oracle", "trig-doubly-truncated", "--depth", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {(int(r["n"]), int(r["j"])) for r in rows} == {(n, j) for n in range(4) for j in range(-n, n + 1)}
    assert next(r for r in rows if r["n"] == "2" and r["j"] == "0")["value"] == "-I*alpha/2"


def test_verify_csv_and_json(capsys):
    out = call(capsys, "verify", "--suite", "trig-truncated", "--format", "csv")[1]
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 11 and all(r["passed"] == "1" for r in rows)
    assert list(rows[0]) == ["suite", "name", "passed", "seconds", "citation", "detail"]
    doc = json.loads(call(capsys, "verify", "--suite", "trig-truncated", "--format", "json")[1])
    jsonschema.validate(doc, SCHEMA)
    kind, payload = S.loads(json.dumps(doc))
    assert payload["summary"] == {"failed": 0, "passed": 11, "total": 11}


def test_numeval_csv(capsys):
    code, out, _ = call(capsys, "numeval", "--param", "a=1", "--depth", "3", "--samples", "5")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [float(r["rho"]) for r in rows] == pytest.approx([10, 32.5, 55, 77.5, 100])
    nxt = [float(r["next_term"]) for r in rows]
    assert nxt == sorted(nxt, reverse=True)


def test_bridge_with_branch(capsys):
    code, out, _ = call(capsys, "bridge", "--param", "q=0.8", "--branch", "s=-", "--format", "text")
    assert code == 0 and "check g2: PASS" in out and "k2 = " in out


def test_out_dir_environment(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("DP3ASYM_OUT_DIR", str(tmp_path))
    code, out, _ = call(capsys, "expand", "trig", "--depth", "1", "--out", "sub/a.json")
    assert code == 0 and out == ""
    assert S.loads((tmp_path / "sub" / "a.json").read_text())[0] == "expansion/trig"


def test_threads_environment(capsys, monkeypatch):
    monkeypatch.setenv("DP3ASYM_THREADS", "3")
    code, out, _ = call(capsys, "verify", "--suite", "trig-truncated")
    assert code == 0 and out.index("b2 ") < out.index("b20 ")
    monkeypatch.setenv("DP3ASYM_THREADS", "zero")
    assert call(capsys, "verify", "--suite", "trig-truncated")[0] == 2


def test_latex_document(capsys):
    out = call(capsys, "expand", "trig-truncated", "--depth", "2", "--format", "latex")[1]
    assert out.startswith("\\documentclass{article}")
    assert out.rstrip().endswith("\\end{document}")
    assert out.count("\\[") == out.count("\\]") >= 2
    assert "b\\_2" in out


# ---------------------------------------------------------------------------
# serialization

def test_roundtrip_b7():
    B = compute_B_infty(7, TrigContext.generic_b())
    payload = S.expansion_payload(B)
    text = S.dumps("expansion/trig-b", payload)
    kind, back = S.loads(text)
    assert kind == "expansion/trig-b"
    assert back["polynomials"] == payload["polynomials"]
    assert back["ledger"] == payload["ledger"]
    assert S.dumps(kind, back) == text


def test_roundtrip_oracle_grid():
    g = oracle_trig_coeffs(3).grid
    kind, back = S.loads(S.dumps("oracle/trig", g))
    assert back == g


def test_roundtrip_edge_values():
    from fractions import Fraction
    for v in ({}, [], (), {(1, -1): Fraction(-3, 7)}, 1 + 2j, {"x": None}):
        assert S.loads(S.dumps("t", v))[1] == v


def test_version_mismatch():
    doc = json.loads(S.dumps("t", 1))
    doc["version"] = 2
    with pytest.raises(SchemaVersionError):
        S.loads(json.dumps(doc))
    with pytest.raises(SchemaVersionError):
        S.loads(json.dumps({"schema": "other", "version": 1}))
    with pytest.raises(SchemaVersionError):
        S.decode({"bogus": 1})


def test_text_report_lists_citation_for_failures():
    rs = [CheckResult("s", "ok", "c1", True, "fine"), CheckResult("s", "no", "c2", False, "bad")]
    text = render_text(rs)
    assert "citation: c2" in text and "citation: c1" not in text
    assert text.endswith("1/2 checks passed, 1 failed\n")


def test_latex_escapes_names():
    doc = latex_document({"a_1 & 50%": "x"}, title="t#1")
    assert "a\\_1 \\& 50\\%" in doc and "t\\#1" in doc
