import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from ordanova.cli import main
from ordanova.report import schema

from .conftest import DATA


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_analyze_table3():
    code, text = run("analyze", str(DATA / "table3.csv"), "--alpha", "0.05")
    assert code == 0
    rep = json.loads(text)
    jsonschema.validate(rep, schema())
    assert rep["statistics"]["I_N"] == pytest.approx(0.4, abs=1e-12)
    t_in = rep["tests"][0]
    assert t_in["threshold"] == pytest.approx(0.646, abs=0.002)
    assert t_in["decision"] == "no-reject"
    assert rep["statistics"]["I_P_consistent"] == pytest.approx(3.6)
    assert rep["statistics"]["I_P_paper_literal"] == pytest.approx(0.72)


def test_shipped_schema_matches_docs_copy():
    from pathlib import Path

    docs = Path(__file__).resolve().parents[1] / "docs" / "report.schema.json"
    assert json.loads(docs.read_text()) == schema()


def test_analyze_bad_table(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("lab,c1,c2\nA,2,0\nB,1,2\n")
    code, _ = run("analyze", str(bad))
    assert code == 2
    assert "'B'" in capsys.readouterr().err


def test_analyze_missing_file(tmp_path):
    assert run("analyze", str(tmp_path / "nope.csv"))[0] == 2


def test_bad_flag_is_input_error():
    assert run("analyze", "--alpha", "2", str(DATA / "table3.csv"))[0] == 2


def test_analyze_mc_is_reproducible():
    args = ("analyze", str(DATA / "table3.csv"), "--mc-reps", "10000", "--seed", "42")
    code, first = run(*args)
    assert code == 0
    _, second = run(*args, "--workers", "4")
    assert first == second
    rep = json.loads(first)
    jsonschema.validate(rep, schema())
    assert set(rep["mc_pvalues"]) == {"S2B", "IN", "IP"}
    assert rep["mc_pvalues"]["S2B"] < 0.05


def test_analyze_text_format():
    code, text = run("analyze", str(DATA / "table4.csv"), "--format", "text")
    assert code == 0
    assert "M-1" in text and "M(n-1)" in text
    assert "0.6496" in text


def test_float_precision():
    _, text = run("analyze", str(DATA / "table4.csv"))
    rep = json.loads(text)
    assert json.loads(json.dumps(rep)) == rep
    assert rep["approx"]["sigma2"] == pytest.approx(0.056064, rel=1e-12)


def test_degenerate_table_report(tmp_path):
    f = tmp_path / "one.csv"
    f.write_text("lab,a,b,c\nx,0,3,0\ny,0,3,0\n")
    code, text = run("analyze", str(f), "--mc-reps", "200")
    assert code == 0
    rep = json.loads(text)
    jsonschema.validate(rep, schema())
    assert rep["statistics"]["I_P_consistent"] is None
    assert {t["decision"] for t in rep["tests"]} == {"degenerate"}
    assert rep["mc_pvalues"] == {"S2B": 1.0, "IN": 1.0, "IP": 1.0}


@pytest.mark.parametrize("name, stat, thr", [("table3", 0.4, 0.646), ("table4", 0.6496, 1.04)])
def test_example(name, stat, thr):
    code, text = run("example", name)
    assert code == 0
    rep = json.loads(text)
    jsonschema.validate(rep, schema())
    assert rep["statistics"]["I_N"] == pytest.approx(stat, abs=1e-12)
    assert rep["tests"][0]["threshold"] == pytest.approx(thr, abs=0.005)
    assert rep["tests"][0]["decision"] == "no-reject"
    assert rep["paper_values"]["I_N"] == {"table3": 0.544, "table4": 1.88}[name]
    assert any("1.88" in note for note in rep["notes"])


def test_simulate_ip(tmp_path):
    ecdf = tmp_path / "ip.csv"
    code, text = run("simulate", "--probs", "1/3,1/3,1/3", "--labs", "5", "--reps-per-lab", "5",
                     "--draws", "10000", "--statistic", "ip", "--seed", "7", "--ecdf-out", str(ecdf))
    assert code == 0
    out = json.loads(text)
    assert out["upper5"] == pytest.approx(1.97, abs=0.08)
    assert out["tail_ge3"] == pytest.approx(0.002, abs=0.003)
    rows = list(csv.reader(ecdf.open()))
    assert rows[0] == ["value", "cumulative_fraction"]
    assert float(rows[-1][1]) == 1.0


def test_simulate_in_case_b():
    code, text = run("simulate", "--probs", "3/6,1/6,2/6", "--labs", "5", "--reps-per-lab", "5",
                     "--statistic", "in", "--seed", "7")
    assert code == 0
    assert json.loads(text)["upper5"] == pytest.approx(1.49, abs=0.05)


def test_simulate_degenerate():
    code, text = run("simulate", "--probs", "1,0", "--labs", "3", "--reps-per-lab", "4",
                     "--draws", "300")
    out = json.loads(text)
    assert code == 0 and out["upper5"] == 0.0 and out["variance"] == 0.0


@pytest.mark.parametrize("probs", ["0.5,0.6", "1/3,1/3", "x"])
def test_simulate_bad_probs(probs):
    code, _ = run("simulate", "--probs", probs, "--labs", "3", "--reps-per-lab", "2")
    assert code == 2


def test_simulate_is_byte_identical():
    args = ("simulate", "--probs", "3/6,1/6,2/6", "--labs", "10", "--reps-per-lab", "5",
            "--statistic", "ip", "--seed", "99")
    assert run(*args)[1] == run(*args, "--workers", "8")[1]


def _md_rows(text):
    lines = [l for l in text.splitlines() if l.startswith("|")]
    head = [c.strip() for c in lines[0].strip("|").split("|")]
    return [dict(zip(head, (c.strip() for c in l.strip("|").split("|")))) for l in lines[2:]]


@pytest.mark.parametrize(
    "target, expected",
    [
        ("table5", {(5, 5): 1.43, (5, 10): 1.27, (10, 10): 1.16}),
        ("table6", {(5, 5): 1.54, (10, 5): 1.36, (20, 10): 1.15}),
    ],
)
def test_reproduce_approx_columns(target, expected):
    code, text = run("reproduce", target, "--draws", "500")
    assert code == 0
    rows = {(int(r["M"]), int(r["n"])): r for r in _md_rows(text)}
    for key, val in expected.items():
        assert float(rows[key]["approx_upper5"]) == pytest.approx(val, abs=0.01)
    assert all("known discrepancy" in r["flag"] for k, r in rows.items() if k[1] == 20)
    assert not any(r["flag"] for k, r in rows.items() if k[1] != 20)


def test_reproduce_table1_seed_stability():
    _, a = run("reproduce", "table1", "--seed", "1", "--format", "csv")
    _, b = run("reproduce", "table1", "--seed", "2", "--format", "csv")
    ra = list(csv.DictReader(io.StringIO(a)))
    rb = list(csv.DictReader(io.StringIO(b)))
    assert len(ra) == len(rb) == 9
    for x, y in zip(ra, rb):
        assert abs(float(x["upper5"]) - float(y["upper5"])) < 0.1
        assert x["flag"] == y["flag"]


def test_reproduce_figures(tmp_path):
    code, text = run("reproduce", "figures", "--draws", "400", "--out", str(tmp_path))
    assert code == 0
    ecdfs = sorted(tmp_path.glob("*_ecdf.csv"))
    overlays = sorted(tmp_path.glob("*_overlay.csv"))
    assert len(ecdfs) == 16 and len(overlays) == 16
    approx = [p for p in overlays if p.name.startswith(("fig3", "fig4"))]
    for p in approx:
        rows = list(csv.reader(p.open()))
        assert rows[0] == ["value", "approx_cdf"] and len(rows) == 513


def test_entry_point_module():
    proc = subprocess.run([sys.executable, "-m", "ordanova.cli", "example", "table3",
                           "--format", "text"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "no-reject" in proc.stdout
