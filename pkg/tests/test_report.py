import json

from realizability.report import SCHEMA_VERSION, Check, Report, Verdict, check, emit_report


def report(*verdicts):
    r = Report("demo", seed=0)
    for k, v in enumerate(verdicts):
        r.add(Check(f"c{k}", v))
    return r


def test_overall_status():
    assert report(Verdict.PASS, Verdict.PASS).overall is Verdict.PASS
    assert report(Verdict.PASS, Verdict.FAIL, Verdict.UNKNOWN).overall is Verdict.FAIL
    assert report(Verdict.UNKNOWN, Verdict.UNKNOWN).overall is Verdict.UNKNOWN
    assert report().overall is Verdict.PASS


def test_structured_output(tmp_path):
    r = report(Verdict.PASS)
    r.add(check("broken", False, "x=1"))
    path = tmp_path / "r.json"
    emit_report(r, path)
    doc = json.loads(path.read_text())
    assert list(doc) == ["schema_version", "command", "seed", "params", "checks", "overall"]
    assert doc["schema_version"] == SCHEMA_VERSION and doc["overall"] == "fail"
    assert doc["checks"][1] == {"name": "broken", "verdict": "fail", "witness": "x=1", "fuel": 0}
    emit_report(r, tmp_path / "r.txt", "text")
    assert (tmp_path / "r.txt").read_text().endswith("overall: fail\n")
