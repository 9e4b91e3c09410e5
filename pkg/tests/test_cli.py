from __future__ import annotations

import csv
import io
import json
import math
import subprocess
import sys

import pytest

from bhturan.canon import canonical_form
from bhturan.cli import run
from bhturan.graph import complete, extremal_candidate, friendship, path, split_graph
from bhturan.graph6 import to_graph6
from bhturan.reports import Report, emit_report, ingest_graph6_file, normalize
from conftest import GOLDEN


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, err = call(capsys, *argv)
    return code, json.loads(out), err


def close(a, b, tol=1e-9):
    """Structural equality with floats compared to ``tol``."""
    if isinstance(a, float) or isinstance(b, float):
        return a is not None and b is not None and math.isclose(a, b, rel_tol=0, abs_tol=tol)
    if isinstance(a, dict):
        return isinstance(b, dict) and a.keys() == b.keys() and all(close(a[k], b[k], tol) for k in a)
    if isinstance(a, list):
        return isinstance(b, list) and len(a) == len(b) and all(close(x, y, tol) for x, y in zip(a, b))
    return a == b


def test_construct(capsys):
    code, rep, _ = report(capsys, "construct", "extremal", "2", "5")
    assert code == 0
    assert rep["records"][0]["graph6"] == to_graph6(extremal_candidate(2, 5))
    assert rep["schema_version"] == 1 and "wall_clock" in rep
    code, _, err = call(capsys, "construct", "extremal", "2")
    assert code == 2 and "parameter" in err
    code, _, err = call(capsys, "construct", "extremal", "1", "3")
    assert code == 2


def test_spectrum_k4(capsys, tmp_path):
    f = tmp_path / "g.g6"
    f.write_text(to_graph6(complete(4)) + "\n")
    code, rep, _ = report(capsys, "spectrum", "--input", str(f))
    assert code == 0
    (rec,) = rep["records"]
    assert rec["id"] == "L1"
    assert abs(rec["rho"] - 3) <= 1e-9
    assert abs(rec["lambda2"] + 1) <= 1e-9


def test_check_bound_extremal(capsys):
    code, rep, _ = report(capsys, "check-bound", "--k", "2", "--t", "5")
    assert code == 0
    (rec,) = rep["records"]
    assert abs(rec["slack_plus"]) <= 1e-6
    assert rec["equality_flag"] and rec["fk_free"] and not rec["violation"]


def test_check_bound_violation_and_contrast(capsys):
    code, rep, _ = report(capsys, "check-bound", "--k", "2", "--graph6", "C~")
    assert code == 1 and rep["records"][0]["violation"]
    # a graph containing F_2 is reported but never counted as a violation
    code, rep, _ = report(capsys, "check-bound", "--k", "2", "--graph6", to_graph6(friendship(2)))
    assert code == 0 and rep["records"][0]["fk_free"] is False


def test_replay(capsys):
    code, rep, _ = report(capsys, "replay", "--k", "2", "--t", "5")
    assert code == 0
    (rec,) = rep["records"]
    assert rec["size_w"] == 0 and rec["e_w"] == 0
    assert rec["classification"] == {"H1": 1, "H2": 0, "H3": 0}
    assert abs(rec["eta_u"] + 1) <= 1e-6 and rec["gu_is_split"]
    code, _, err = call(capsys, "replay", "--k", "2", "--graph6", "C`")
    assert code == 2 and "connected" in err


@pytest.mark.parametrize(
    "argv, golden",
    [
        (["scan", "--k", "2", "--n-max", "7"], "scan_k2_n7.json"),
        (["scan", "--k", "3", "--n-max", "7"], "scan_k3_n7.json"),
        (["fan-scan", "--k", "2", "--n-max", "7"], "fan_scan_k2_n7.json"),
        (["bn-scan", "--n-max", "6"], "bn_scan_n6.json"),
    ],
)
def test_scans_match_golden(capsys, argv, golden):
    code, rep, _ = report(capsys, *argv)
    want = json.loads((GOLDEN / golden).read_text())
    got = normalize(rep)
    assert code == (1 if want["records"] else 0)
    assert sorted(r["graph6"] for r in got["records"]) == sorted(r["graph6"] for r in want["records"])
    assert close(got, want)


def test_scan_violations_reverify(capsys):
    _, rep, _ = report(capsys, "scan", "--k", "2", "--n-max", "7")
    assert rep["records"]
    for rec in rep["records"]:
        code, again, _ = report(capsys, "check-bound", "--k", "2", "--graph6", rec["graph6"])
        assert code == 1
        assert abs(again["records"][0]["rho"] - rec["rho"]) <= 1e-9


def test_turan(capsys):
    code, rep, _ = report(capsys, "turan", "--n", "6", "--predicate", "kk2_free(2)")
    assert code == 0
    assert rep["summary"]["max_edges"] == 5
    assert [r["graph6"] for r in rep["records"]] == [canonical_form(split_graph(6, 1)).decode()]
    code, _, err = call(capsys, "turan", "--n", "6", "--predicate", "bogus")
    assert code == 2 and "unknown predicate" in err


def test_search(capsys):
    code, rep, _ = report(capsys, "search", "--k", "2", "--n", "12", "--m", "21", "--plant-t", "10", "--steps", "50", "--seed", "3")
    assert code == 0
    (rec,) = rep["records"]
    assert rec["rho"] >= (1 + math.sqrt(81)) / 2 - 1e-6
    assert rec["flags"]["seed"] == 3


def test_empty_input_file(capsys, tmp_path):
    f = tmp_path / "empty.g6"
    f.write_text("")
    code, rep, _ = report(capsys, "spectrum", "--input", str(f))
    assert code == 0 and rep["records"] == []


def test_malformed_line_reported(capsys, tmp_path):
    good = [to_graph6(path(n)) for n in range(2, 11)]
    f = tmp_path / "bad.g6"
    f.write_text("\n".join(["D?{{"] + good) + "\n")
    code, out, err = call(capsys, "check-bound", "--k", "2", "--input", str(f))
    assert code == 2
    assert out == ""
    assert "line 1:" in err and "line 2:" not in err


def test_all_bad_lines_listed(capsys, tmp_path):
    f = tmp_path / "bad.g6"
    f.write_text("A_\n!!\nBw\n~~\n")
    code, _, err = call(capsys, "spectrum", "--input", str(f))
    assert code == 2 and "line 2:" in err and "line 4:" in err


def test_csv_output(capsys):
    code, out, _ = call(capsys, "check-bound", "--k", "2", "--graph6", "C~", "--graph6", "Bw", "--format", "csv")
    assert code == 1
    rows = list(csv.DictReader(io.StringIO(out)))
    header = out.splitlines()[0].split(",")
    assert header[:2] == ["id", "graph6"] and header[2:] == sorted(header[2:])
    assert [r["graph6"] for r in rows] == ["Bw", "C~"]
    assert {r["violation"] for r in rows} == {"True", "False"}


def test_round_trip(tmp_path):
    graphs = [complete(4), path(5), extremal_candidate(3, 2), friendship(3)]
    recs = [{"id": str(i), "graph6": to_graph6(g)} for i, g in enumerate(graphs)]
    out = tmp_path / "r.json"
    emit_report(Report("x", {}, recs), "json", out)
    lines = tmp_path / "w.g6"
    lines.write_text("".join(r["graph6"] + "\n" for r in json.loads(out.read_text())["records"]))
    back = ingest_graph6_file(lines)
    assert [ln for ln, _ in back] == [1, 2, 3, 4]
    assert [canonical_form(g) for _, g in back] == [canonical_form(g) for g in graphs]


def test_output_file_and_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["bn-scan", "--n-max", "5", "--workers", "1", "--output", str(a)]) == 0
    assert run(["bn-scan", "--n-max", "5", "--workers", "2", "--output", str(b)]) == 0
    da, db = json.loads(a.read_text()), json.loads(b.read_text())
    assert da["config"]["workers"] == 1 and db["config"]["workers"] == 2
    assert json.dumps(normalize(da)) == json.dumps(normalize(db))


def test_exit_codes(capsys, tmp_path):
    assert call(capsys)[0] == 2
    assert call(capsys, "scan", "--k", "2")[0] == 2
    assert call(capsys, "check-bound", "--k", "2", "--graph6", "C~", "--tol", "0")[0] == 2
    assert call(capsys, "scan", "--k", "2", "--n-max", "4", "--workers", "0")[0] == 2
    assert call(capsys, "check-bound", "--k", "2")[0] == 2
    assert call(capsys, "check-bound", "--k", "2", "--graph6", "?!")[0] == 2
    assert call(capsys, "scan", "--k", "2", "--n-max", "9")[0] == 2
    assert call(capsys, "spectrum", "--input", str(tmp_path / "missing.g6"))[0] == 3
    code, _, err = call(capsys, "construct", "complete", "3", "--output", str(tmp_path / "no" / "dir.json"))
    assert code == 3 and "cannot write" in err


def test_console_script():
    p = subprocess.run([sys.executable, "-m", "bhturan.cli", "check-bound", "--k", "2", "--t", "5"], capture_output=True, text=True)
    assert p.returncode == 0
    assert abs(json.loads(p.stdout)["records"][0]["slack_plus"]) <= 1e-6
