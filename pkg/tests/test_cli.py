import json
import subprocess
import sys

import numpy as np
import pytest

from caustica.cli import main
from caustica.jetcore import PolyGerm
from caustica.planecurve import CurveSamples


def germ_file(tmp_path, text, n, name="g.json"):
    gens = ["x1", "x2", "x3"][:n] if n > 1 else ["q"]
    path = tmp_path / name
    path.write_text(PolyGerm.parse(text, n, gens=gens).to_json())
    return str(path)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_germ_e8(tmp_path, capsys):
    code, out, err = run(capsys, "classify-germ", germ_file(tmp_path, "x1^3 + x2^5", 2))
    rep = json.loads(out)
    assert code == 0 and rep["label"] == "E_{8/2}" and rep["codim"] == 4 and not err


def test_classify_germ_three_variables_hits_gate(tmp_path, capsys):
    code, out, _ = run(capsys, "classify-germ", germ_file(tmp_path, "x1^3 + x2^3 + x3^3", 3))
    rep = json.loads(out)
    assert code == 0 and rep["label"] == "NONSIMPLE"
    assert rep["diagnostics"]["message"].startswith("NONSIMPLE-GATE")


def test_classify_germ_inconclusive_exit(tmp_path, capsys):
    path = tmp_path / "z.json"
    path.write_text('{"vars": 2, "terms": []}')
    code, out, _ = run(capsys, "classify-germ", path)
    assert code == 2 and json.loads(out)["label"].startswith("INCONCLUSIVE")


def test_even_germ_rejected(tmp_path, capsys):
    code, out, err = run(capsys, "classify-germ", germ_file(tmp_path, "x1^2 + x2^3", 2))
    assert code == 1 and not out
    assert err.startswith("error: not-odd:") and err.count("\n") == 1


def test_malformed_json_single_line(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"vars": 2, "terms": [}')
    code, out, err = run(capsys, "classify-germ", path)
    assert code == 1 and not out
    assert err.startswith("error: malformed-json: line 1 column") and err.count("\n") == 1


def test_missing_file(capsys):
    code, _, err = run(capsys, "classify-germ", "/nonexistent/g.json")
    assert code == 1 and err.startswith("error: io:")


@pytest.mark.parametrize("flags, needle", [
    (["--order", "8"], "--order"),
    (["--epsilon", "0"], "--epsilon"),
    (["--grid", "4"], "--grid"),
    (["--q-range", "1"], "--q-range"),
])
def test_bad_flags(tmp_path, capsys, flags, needle):
    code, _, err = run(capsys, "classify-germ", germ_file(tmp_path, "x1^3 + x2^5", 2), *flags)
    assert code == 1 and err.startswith("error: config:") and needle in err


def test_unknown_command(capsys):
    code, _, err = run(capsys, "frobnicate", "x.json")
    assert code == 1 and err.startswith("error: usage:")


def test_output_is_byte_identical(tmp_path, capsys):
    g = germ_file(tmp_path, "x1^2*x2 + x2^5", 2)
    outs = []
    for k in range(2):
        target = tmp_path / f"o{k}.json"
        assert run(capsys, "classify-germ", g, "--out", target)[0] == 0
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]


def test_classify_curve_point(tmp_path, capsys):
    code, out, _ = run(capsys, "classify-curve-point", germ_file(tmp_path, "q^4 + q^5", 1))
    assert code == 0 and json.loads(out)["label"] == "A_{4/2}-inflection"


def test_classify_surface_point(tmp_path, capsys):
    code, out, _ = run(capsys, "classify-surface-point", germ_file(tmp_path, "x1^2*x2 + x2^3", 2))
    rep = json.loads(out)
    assert code == 0 and rep["basic"] == "elliptic"


def test_trace_onshell_csv_and_summary(tmp_path, capsys):
    target = tmp_path / "br.csv"
    code, out, _ = run(capsys, "trace-onshell", germ_file(tmp_path, "q^4 + q^5", 1),
                       "--q-range", "-0.05,0.05", "--resolution", "201", "--beta-max", "0.5",
                       "--out", target)
    assert code == 0
    summary = json.loads(out)
    assert summary["branches"] == 2
    rows = target.read_text().splitlines()
    assert len(rows) > 201


def test_trace_surface_slice(tmp_path, capsys):
    code, out, _ = run(capsys, "trace-onshell", germ_file(tmp_path, "x1^2*x2 + x2^3", 2),
                       "--resolution", "32")
    rows = out.splitlines()
    assert code == 0 and rows[0] == "ray,beta1,beta2,p1,p2" and rows[1].startswith("-1,")


def curve_file(tmp_path, fn, n, name="c.csv"):
    path = tmp_path / name
    path.write_text(CurveSamples.from_function(fn, n).to_csv())
    return str(path)


def test_scan_chords_reports_cusps(tmp_path, capsys):
    c = curve_file(tmp_path, lambda t: (np.cos(t) + 0.1 * np.cos(2 * t), 2 * np.sin(t)), 1024)
    code, out, _ = run(capsys, "scan-chords", c, "--out", tmp_path / "ch.csv")
    summary = json.loads(out)
    assert code == 0 and summary["cusps"] == 3 and summary["confidence"] == "high"
    assert not summary["nonsmooth_warning"]


def test_scan_chords_open_curve(tmp_path, capsys):
    path = tmp_path / "open.csv"
    path.write_text("theta,p,q\n" + "".join(f"{k},{np.cos(k / 10)},{np.sin(k / 10)}\n" for k in range(30)))
    code, _, err = run(capsys, "scan-chords", path)
    assert code == 1 and err.startswith("error: open-curve:")


def test_versal_check(tmp_path, capsys):
    path = tmp_path / "v.json"
    f = PolyGerm.parse("x1^3 + x2^5", 2, gens=["x1", "x2"])
    dirs = [PolyGerm.parse(t, 2, gens=["x1", "x2"]) for t in ("x1", "x2", "x2^3", "x1*x2^2")]
    path.write_text(json.dumps({"germ": f.to_dict(), "directions": [d.to_dict() for d in dirs]}))
    code, out, _ = run(capsys, "versal-check", path)
    assert code == 0 and json.loads(out)["verdict"] == "versal"
    path.write_text(json.dumps({"germ": f.to_dict(), "directions": [d.to_dict() for d in dirs[:3]]}))
    code, out, _ = run(capsys, "versal-check", path)
    assert code == 0 and json.loads(out)["verdict"] == "not_versal"


def test_realize(tmp_path, capsys):
    path = tmp_path / "r.json"
    f = PolyGerm.parse("x^5", 1, gens=["x"])
    h = [PolyGerm.parse("x^3", 1, gens=["x"])]
    path.write_text(json.dumps({"germ": f.to_dict(), "h": [g.to_dict() for g in h]}))
    code, out, _ = run(capsys, "realize", path)
    rep = json.loads(out)
    assert code == 0 and rep["accepted"] and rep["S"] is not None


def test_console_entry_point(tmp_path):
    g = germ_file(tmp_path, "x1^3 + x2^5", 2)
    res = subprocess.run([sys.executable, "-m", "caustica", "classify-germ", g],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["label"] == "E_{8/2}"


def test_negative_point_value(tmp_path, capsys):
    g = germ_file(tmp_path, "(q+1)^4 + (q+1)^5", 1)
    code, out, _ = run(capsys, "classify-curve-point", g, "--point", "-1")
    assert code == 0 and json.loads(out)["label"] == "A_{4/2}-inflection"
