import csv
import io
import json
import subprocess
import sys

import pytest

from dyloom import algebra
from dyloom.cli import run


def call(*argv, env_cache=None, monkeypatch=None):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


@pytest.fixture(autouse=True)
def no_env_cache(monkeypatch):
    monkeypatch.delenv("DYLOOM_CACHE", raising=False)


def test_multiply_both():
    code, out = call("multiply", "--sigma", "1", "--tau", "1", "--method", "both")
    assert code == 0
    recs = records(out)
    loom = {r["cycles"]: r["coeff"] for r in recs if r.get("method") == "loom"}
    rew = {r["cycles"]: r["coeff"] for r in recs if r.get("method") == "rewriter"}
    assert loom == rew == {"id_2": "2", "(12)": "-1"}
    assert recs[-1] == {"check": "methods_agree", "status": "PASS"}


def test_count_looms():
    code, out = call("count", "looms", "--n", "2", "--m", "2", "--method", "recursion")
    assert code == 0 and records(out)[0]["count"] == "129"
    for meth in ("recursion_col", "conjectured", "enumeration"):
        assert records(call("count", "looms", "--n", "2", "--m", "2", "--method", meth)[1])[0]["count"] == "129"
    for meth in ("recursion", "recursion_col", "stirling", "closed_sum", "enumeration"):
        assert records(call("count", "mosaics", "--n", "2", "--m", "2", "--method", meth)[1])[0]["count"] == "31"


def test_big_counts_are_strings():
    rec = records(call("count", "mosaics", "--n", "25", "--m", "25")[1])[0]
    assert isinstance(rec["count"], str) and int(rec["count"]) > 2 ** 64


def test_enumerate_degenerate():
    code, out = call("enumerate", "mosaics", "--n", "0", "--m", "3")
    assert code == 0 and len(records(out)) == 1


def test_enumerate_looms():
    recs = records(call("enumerate", "looms", "--n", "1", "--m", "1")[1])
    assert len(recs) == 5
    assert sum(r["sign"] for r in recs) == 1
    assert len(records(call("enumerate", "looms", "--n", "2", "--m", "2", "--limit", "7")[1])) == 7


def test_constants_csv():
    code, out = call("constants", "--n", "1", "--m", "1", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["n", "m", "sigma", "tau", "pi", "P", "N", "c"]
    assert [(r["pi"], r["P"], r["N"], r["c"]) for r in rows] == [("[1,2]", "2", "0", "2"), ("[2,1]", "1", "2", "-1")]


def test_essential():
    code, out = call("essential", "--sigma", "1", "--tau", "1")
    recs = records(out)
    assert code == 0 and recs[-1]["size"] == 3 and recs[-1]["status"] == "PASS"


def test_realize():
    recs = records(call("realize", "--sigma", "1")[1])
    assert {(r["e"], r["f"], r["h"]): r["coeff"] for r in recs} == {(1, 1, 0): "1", (0, 0, 2): "1/4"}
    code, out = call("realize", "--sigma", "(12)", "--tau", "1")
    assert code == 0 and records(out)[-1]["status"] == "PASS"


def test_bpd_rows_and_loom(tmp_path):
    code, out = call("bpd", "--rows", "XjVV,XHXj,j.V.,HHj.")
    assert code == 0 and records(out)[0]["trace"] == [2, 4, 1, 3]
    code, out = call("bpd", "--rows", "r")
    assert code == 1
    loom = {"n": 2, "m": 2, "tiles": [{"s": "X"}, {"s": "MA"}, {"s": "DB"}, {"s": "X"}]}
    p = tmp_path / "loom.json"
    p.write_text(json.dumps(loom))
    code, out = call("bpd", "--loom", str(p))
    assert code == 0
    assert records(out)[0]["rows"] == ["XjVV", "XHXj", "j.V.", "HHj."]


def test_verify():
    code, out = call("verify", "--max-total", "3")
    assert code == 0
    assert all(r["status"] == "PASS" for r in records(out))


def test_usage_errors():
    assert call("count", "looms", "--n", "-1", "--m", "2")[0] == 2
    assert call("multiply", "--sigma", "x", "--tau", "1")[0] == 2
    assert call("bogus")[0] == 2
    assert call("count", "looms", "--n", "1", "--m", "1", "--method", "magic")[0] == 2
    assert call("bpd")[0] == 2
    assert call("constants", "--n", "1")[0] == 2


def test_budget_errors():
    assert call("multiply", "--sigma", "12", "--tau", "21", "--method", "rewriter", "--budget", "3")[0] == 3
    assert call("conjectures", "--max-n", "5", "--max-m", "5")[0] == 3


def test_determinism_across_threads():
    a = call("constants", "--n", "2", "--m", "2", "--threads", "1")[1]
    b = call("constants", "--n", "2", "--m", "2", "--threads", "3")[1]
    assert a == b and a == call("constants", "--n", "2", "--m", "2")[1]


def test_parallel_table_matches_serial():
    assert algebra.build_loom_table(3, 4, threads=1) == algebra.build_loom_table(3, 4, threads=3)


def test_cache_round_trip_and_corruption(tmp_path, monkeypatch):
    cache = tmp_path / "cache"
    first = call("multiply", "--sigma", "21", "--tau", "12", "--cache-dir", str(cache))
    files = list(cache.iterdir())
    assert first[0] == 0 and len(files) == 1
    monkeypatch.setenv("DYLOOM_CACHE", str(cache))
    again = call("multiply", "--sigma", "21", "--tau", "12")
    assert again == first
    doc = json.loads(files[0].read_text())
    doc["entries"][0][3] += 1
    files[0].write_text(json.dumps(doc))
    code, out = call("multiply", "--sigma", "21", "--tau", "12")
    assert code == 3 and out == ""
    # the corrupt file is left in place, not regenerated
    assert json.loads(files[0].read_text())["entries"][0][3] == doc["entries"][0][3]


def test_output_file(tmp_path):
    p = tmp_path / "out.jsonl"
    code, out = call("count", "mosaics", "--n", "1", "--m", "1", "--output", str(p))
    assert code == 0 and out == ""
    assert records(p.read_text())[0]["count"] == "3"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "dyloom", "count", "looms", "--n", "1", "--m", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["count"] == "5"
