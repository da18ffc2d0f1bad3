import csv
import io
import json

import pytest

from oddinduced import generators as gen
from oddinduced.cli import main, parse_corpus
from oddinduced.errors import PreconditionError
from oddinduced.graph import format_edge_list, parse_edge_list, verify_all_odd


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_extract_json(capsys, write, p5):
    path = write("p5.txt", format_edge_list(p5))
    code, out, _ = run(capsys, "extract", path, "--json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["set"]) >= 2 and verify_all_odd(p5, doc["set"])
    assert set(doc) >= {"n", "set", "branch", "guarantee"}


def test_extract_trace_on_k2_union(capsys, write, tmp_path):
    g = gen.disjoint_union([gen.complete(2)] * 5)
    path = write("m.txt", format_edge_list(g))
    trace = tmp_path / "t.log"
    code, out, _ = run(capsys, "extract", "--trace", str(trace), path, "--json")
    assert code == 0
    assert json.loads(out)["set"] == list(range(10))
    log = trace.read_text()
    assert "branch=Case2" in log and "branch=LowDegreeFallback" in log


def test_extract_maps_back_isolated(capsys, write):
    path = write("g.txt", "5 2\n1 3\n3 4\n")
    code, out, _ = run(capsys, "extract", path, "--json")
    doc = json.loads(out)
    assert code == 0 and doc["n"] == 5 and set(doc["set"]) <= {1, 3, 4}


@pytest.mark.parametrize("text", ["\n", "3 1\n0 0\n", "2 0\n"])
def test_extract_input_errors(capsys, write, text):
    code, _, err = run(capsys, "extract", write("bad.txt", text))
    assert code == 2 and "error" in err


def test_extract_bad_param(capsys, write, p5):
    code, _, err = run(capsys, "extract", write("p.txt", format_edge_list(p5)), "--param", "beta=1")
    assert code == 2


def test_extract_stdin(capsys, monkeypatch, k3):
    monkeypatch.setattr("sys.stdin", io.StringIO(format_edge_list(k3)))
    code, out, _ = run(capsys, "extract", "-")
    assert code == 0 and out.startswith("size=2")


def test_oracle(capsys, write, p5, c4):
    code, out, _ = run(capsys, "oracle", write("p5.txt", format_edge_list(p5)))
    doc = json.loads(out)
    assert code == 0 and doc["size"] == 4 and doc["witness"] == [0, 1, 3, 4]
    code, out, _ = run(capsys, "oracle", write("c4.txt", format_edge_list(c4)))
    assert json.loads(out)["size"] == 2


def test_oracle_limit(capsys, write):
    g = gen.disjoint_union([gen.complete(30)] * 4)
    code, _, _ = run(capsys, "oracle", write("k.txt", format_edge_list(g)), "--limit", "20")
    assert code == 4


def test_gallai(capsys, write, p3):
    code, out, _ = run(capsys, "gallai", write("p3.txt", format_edge_list(p3)), "--mode", "odd-even")
    doc = json.loads(out)
    assert code == 0 and doc["Vo"] in ([0, 1], [1, 2]) and len(doc["Ve"]) == 1
    code, out, _ = run(capsys, "gallai", write("p3b.txt", format_edge_list(p3)), "--mode", "even-even")
    assert json.loads(out) == {"mode": "even-even", "V1": [0, 2], "V2": [1]}


def test_verify(capsys, write, p5):
    g = write("p5.txt", format_edge_list(p5))
    good = write("good.json", json.dumps({"n": 5, "set": [0, 1, 3, 4], "branch": "Oracle",
                                          "guarantee": {"num": 0, "den": 1}}))
    bad = write("bad.json", json.dumps({"n": 5, "set": [0, 1, 2], "branch": "Oracle",
                                         "guarantee": {"num": 0, "den": 1}}))
    assert run(capsys, "verify", g, good)[0] == 0
    assert run(capsys, "verify", g, bad)[0] == 1
    assert run(capsys, "verify", g, write("junk.json", "[1"))[0] == 2


def test_gen_scott(capsys):
    code, out, _ = run(capsys, "gen", "scott", "4")
    g = parse_edge_list(out)
    assert code == 0 and (g.n, g.m) == (10, 12)


def test_gen_gnp_seeded(capsys):
    a = run(capsys, "gen", "gnp", "50", "0.1", "--seed", "3")[1]
    b = run(capsys, "gen", "gnp", "50", "0.1", "--seed", "3")[1]
    assert a == b and parse_edge_list(a) == gen.gnp(50, 0.1, 3)


def test_bench_csv(capsys, tmp_path):
    out = tmp_path / "r.csv"
    code, stdout, _ = run(capsys, "bench", "path:10..30:10", "scott:4..5", "--out", str(out))
    assert code == 0
    rows = list(csv.DictReader(out.read_text().splitlines()))
    assert [r["kind"] for r in rows] == ["path:10", "path:20", "path:30", "scott:4", "scott:5"]
    assert list(rows[0]) == ["kind", "n", "m", "seed", "branch", "size", "ratio", "guarantee", "ms"]
    for r in rows:
        assert r["ratio"] == f"{int(r['size']) / int(r['n']):.6f}"
        if r["kind"].startswith("path"):
            assert float(r["ratio"]) >= 0.4
    assert "min_ratio=" in stdout and "ok" in stdout


def test_bench_byte_identical(capsys):
    a = run(capsys, "bench", "gnp:200:0.02:2seeds", "union:2x5+30x1", "--no-timing")[1]
    b = run(capsys, "bench", "gnp:200:0.02:2seeds", "union:2x5+30x1", "--no-timing")[1]
    assert a == b and a.count("\n") == 5  # header, 3 rows, summary


def test_corpus_grammar():
    assert len(parse_corpus("gnp:1000:0.01:10seeds")) == 10
    assert len(parse_corpus("path:10..100")) == 91
    assert [i.params for i in parse_corpus("scott:4..6")] == [(4,), (5,), (6,)]
    with pytest.raises(PreconditionError):
        parse_corpus("torus:3")
    with pytest.raises(PreconditionError):
        parse_corpus("gnp:10:0.1")
