import io
import json
from pathlib import Path

import pytest

from realizability.cli import run

DATA = Path(__file__).resolve().parent.parent / "data"


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_eval_k():
    assert call("eval", "K a b") == (0, "a\n")


def test_eval_cycle_is_unknown():
    code, out = call("eval", "S I I (S I I)", "--fuel", "1000")
    assert code == 3 and out == "unknown\n"


def test_dco_check_trivial():
    code, out = call("dco-check", str(DATA / "trivial.dco"))
    assert code == 0 and out.endswith("overall: pass\n")


def test_compile():
    code, out = call("compile", "x2 x1")
    assert code == 0 and out.strip()


def test_usage_and_parse_errors(tmp_path, capsys):
    assert call("eval", "K (a")[0] == 2
    assert call("nonsense")[0] == 2
    bad = tmp_path / "bad.dco"
    bad.write_text("dco bad\ncarrier 0\nfn id 0->0 0->1\nidentity id\n")
    assert call("dco-check", str(bad))[0] == 2
    assert "line 3" in capsys.readouterr().err
    assert call("dco-check", str(tmp_path / "missing.dco"))[0] == 2
    assert call("eval", "K", "--fuel", "-1")[0] == 2


def test_structured_report_schema(tmp_path):
    out_path = tmp_path / "r.json"
    code, out = call("fam-leq", str(DATA / "two_point_c0.dco"), "phi", "phi",
                     "--format", "structured", "--out", str(out_path))
    doc = json.loads(out)
    assert code == 0 and doc["overall"] == "pass" and doc["seed"] == 0
    assert out_path.read_text() == out
    assert {"name", "verdict", "witness", "fuel"} == set(doc["checks"][0])


def test_audits_report_failures_with_witnesses():
    code, out = call("exlex-audit", str(DATA / "two_point_c0.dco"), "--format", "structured")
    doc = json.loads(out)
    assert code == 1 and all(c["verdict"] == "fail" and c["witness"] for c in doc["checks"])
    assert call("exlex-audit", str(DATA / "trivial.dco"))[0] == 0
    assert call("pasm-audit", str(DATA / "trivial.dco"))[0] == 0
    assert call("pasm-limits", str(DATA / "trivial.dco"))[0] == 0


@pytest.mark.parametrize("argv", [
    ["pca-laws", "--seed", "3"],
    ["dco-induce", "--seed", "3"],
    ["dco-reconstruct"],
    ["dco-reconstruct", str(DATA / "two_point_c0.dco")],
    ["rt-hom", "nabla:2", "nabla:2"],
])
def test_determinism(argv):
    first = call(*argv, "--format", "structured")
    assert first == call(*argv, "--format", "structured")
    assert first[0] in (0, 3)
