import csv
import io
import json
import math
import subprocess
import sys
from fractions import Fraction

import pytest

from commnorm import cli
from commnorm.constants import constant_ppr
from commnorm.indices import parse_index


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_constant_json(capsys):
    code, out, _ = run(capsys, "constant", "2", "2", "2")
    assert code == 0 and out.endswith("\n")
    doc = json.loads(out)
    assert doc["status"] == "Exact" and doc["value"] == pytest.approx(math.sqrt(2), rel=1e-15)
    assert list(doc) == sorted(doc)


def test_constant_missing_dim(capsys):
    code, out, err = run(capsys, "constant", "1", "3", "6")
    assert code == 1 and out == ""
    assert "dimension required" in err


@pytest.mark.parametrize("argv,code", [
    (["constant", "2", "2"], 2),
    (["constant", "2", "2", "2", "--bogus"], 2),
    (["nosuch"], 2),
    ([], 2),
    (["constant", "0.5", "2", "2"], 2),
    (["constant", "2", "2", "2", "--dim", "1"], 1),
    (["witness", "1", "3", "6", "--dim", "4"], 0),
    (["bounds", "p11", "--pmin", "3/2"], 1),
    (["bounds", "pinfinf", "--dim", "4"], 1),
    (["polygon", "1"], 1),
    (["polygon", "9", "--oracle"], 1),
    (["maximality", "--pair", "/nonexistent.json", "--p", "2", "--q", "2", "--r", "2"], 1),
    (["scan", "--axis", "p:0:2:3", "--fix", "q=2", "--fix", "r=2"], 1),
    (["scan", "--axis", "p:0:1:1", "--fix", "q=2", "--fix", "r=2"], 1),
    (["scan", "--axis", "p:0:1:3"], 1),
    (["scan", "--fix", "p=2", "--fix", "q=2", "--fix", "r=2", "--out", "/nonexistent/dir/x.csv"], 1),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_polygon(capsys):
    assert run(capsys, "polygon", "4")[1] == "8\n"


def test_polygon_oracle(capsys):
    code, out, _ = run(capsys, "polygon", "3", "--oracle")
    doc = json.loads(out)
    assert doc["oracle"] == pytest.approx(doc["formula"], abs=1e-6)


def _read_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


def test_scan_ppr_grid(tmp_path, capsys):
    path = tmp_path / "ppr.csv"
    code, _, _ = run(capsys, "scan", "--axis", "p:0:1:33", "--axis", "r:0:1:33", "--fix", "q=p", "--out", str(path))
    assert code == 0
    header, rows = _read_csv(path.read_text())
    assert header == cli.SCAN_COLUMNS
    assert len(rows) == 1089
    for row in rows:
        rec = dict(zip(header, row))
        p, q, r = (parse_index(rec[k]) for k in "pqr")
        assert p == q
        assert float(rec["s_p"]) == pytest.approx(float(1 - p.u), abs=1e-15)
        if rec["status"] == "Exact" and rec["region"] != "Pyramid":
            assert float(rec["value"]) == constant_ppr(p, r)


def test_scan_single_point(capsys):
    code, out, _ = run(capsys, "scan", "--fix", "p=2", "--fix", "q=2", "--fix", "r=2")
    header, rows = _read_csv(out)
    assert code == 0 and len(rows) == 1
    assert float(dict(zip(header, rows[0]))["value"]) == pytest.approx(math.sqrt(2), rel=1e-15)


def test_scan_dimension_required_rows(capsys):
    code, out, _ = run(capsys, "scan", "--axis", "p:0:1:5", "--fix", "q=inf", "--fix", "r=inf")
    _, rows = _read_csv(out)
    assert code == 0 and len(rows) == 5
    assert [row[7] for row in rows][:-1] == ["DimensionRequired"] * 4


def test_scan_round_trip():
    spec = cli.ScanSpec({"p": (Fraction(0), Fraction(1), 9), "q": (Fraction(0), Fraction(1), 9)},
                        {"r": parse_index("3/2")}, dim=4)
    rows = list(cli.scan_rows(spec))
    points = list(spec.points())
    assert len(rows) == len(points) == 81
    from commnorm.constants import constant
    for row, (p, q, r) in zip(rows, points):
        res = constant(p, q, r, 4)
        for col, val in (("value", res.value), ("lower", res.lower), ("upper", res.upper)):
            text = row[cli.SCAN_COLUMNS.index(col)]
            if val is None:
                assert text == ""
            else:
                assert abs(float(text) - val) <= 1e-12 * abs(val)


def test_bounds_p11_csv(tmp_path, capsys):
    path = tmp_path / "p11.csv"
    code, _, _ = run(capsys, "bounds", "p11", "--pmin", "2", "--pmax", "32", "--steps", "9", "--csv", str(path))
    header, rows = _read_csv(path.read_text())
    assert code == 0 and header[:4] == ["p", "lower", "upper_refined", "upper_interp"]
    assert len(rows) == 9
    for row in rows:
        lo, mid, hi = (float(x) for x in row[1:4])
        assert lo <= mid * (1 + 1e-12) and mid <= hi * (1 + 1e-12)
    assert float(rows[0][1]) == pytest.approx(math.sqrt(2), rel=1e-10)


def test_bounds_pinfinf_stdout(capsys):
    code, out, _ = run(capsys, "bounds", "pinfinf", "--dim", "3", "--steps", "5")
    header, rows = _read_csv(out)
    assert code == 0 and len(rows) == 5
    assert float(rows[0][1]) == pytest.approx(3 * math.sqrt(3), rel=1e-14)


def test_witness_then_maximality(tmp_path, capsys):
    path = tmp_path / "pair.json"
    code, out, _ = run(capsys, "witness", "3", "4", "4", "--dim", "2", "--out", str(path))
    doc = json.loads(out)
    assert code == 0 and doc["recipe"] == "Pauli"
    assert doc["ratio"] == pytest.approx(2 ** (1 + 1 / 3 - 1 / 2), rel=1e-14)
    code, out, _ = run(capsys, "maximality", "--pair", str(path), "--p", "3", "--q", "4", "--r", "4")
    rep = json.loads(out)
    assert code == 0 and rep["core"]["holds"] and rep["required_hold"]


def test_maximality_bad_json(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"X": {"rows": 2}}')
    code, _, err = run(capsys, "maximality", "--pair", str(path), "--p", "2", "--q", "2", "--r", "2")
    assert code == 1 and err.startswith("error:")


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "1", "1", "2", "--dim", "2", "--restarts", "2", "--max-iters", "20", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "AttainedWithin"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "commnorm", "polygon", "6"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "12\n"
