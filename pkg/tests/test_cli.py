import json

import pytest

from hsideals.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def query(capsys, *argv):
    code, out, _ = run(capsys, "query", *argv, "--format", "json")
    assert code == 0
    return json.loads(out)["result"]


def test_query_ops(capsys):
    path = ("--graph", "3; 1-2,2-3")
    assert query(capsys, *path, "--op", "hs", "--i", "1") == "x1*x2*x3"
    assert query(capsys, *path, "--op", "ass-hs", "--i", "1", "--k", "2") == [[1], [2], [3], [1, 3]]
    assert query(capsys, *path, "--op", "ass") == [[2], [1, 3]]
    assert query(capsys, *path, "--op", "min") == [[2], [1, 3]]
    assert query(capsys, *path, "--op", "reg") == 2
    assert query(capsys, *path, "--op", "linear") is True
    assert query(capsys, *path, "--op", "lq")["sets"] == [[], [1]]
    assert query(capsys, "--graph", "D?{", "--op", "vnum", "--i", "0", "--k", "2") == 3
    assert query(capsys, *path, "--op", "vnum", "--i", "2") is None


def test_query_betti_principal(capsys):
    table = query(capsys, "--ideal", "x1^2*x2", "--op", "betti")
    assert table["entries"] == [{"i": 0, "multidegree": [2, 1], "rank": 1}]
    code, out, _ = run(capsys, "query", "--ideal", "x1^2*x2", "--op", "betti")
    assert code == 0
    assert out.splitlines()[-1].split() == ["3:", "1"]


def test_query_errors(capsys):
    code, _, err = run(capsys, "query", "--ideal", "x1^", "--op", "hs")
    assert code == 2 and err.startswith("hs:")
    code, _, err = run(capsys, "query", "--graph", "3; 1-4", "--op", "hs")
    assert code == 2


def test_usage_errors_exit_2(capsys):
    for argv in ([], ["sweep"], ["sweep", "--conjecture", "C"], ["query", "--op", "hs"],
                 ["sweep", "--conjecture", "A", "--n", "9"], ["census", "--format", "xml"]):
        assert main(argv) == 2, argv
        capsys.readouterr()
    assert main(["--help"]) == 0
    capsys.readouterr()


def test_census(capsys):
    code, out, _ = run(capsys, "census", "--n", "4")
    assert code == 0 and out.strip().endswith("10 graphs")
    code, out, _ = run(capsys, "census", "--n", "4", "--format", "csv")
    assert out.splitlines()[0] == "graph6,n,m,linear_resolution" and len(out.splitlines()) == 11
    code, out, _ = run(capsys, "census", "--n", "3", "--allow-isolated", "--format", "json")
    assert len(out.splitlines()) == 7


def test_sweep_exit_codes(capsys, tmp_path):
    out_file = tmp_path / "a.jsonl"
    code, out, _ = run(capsys, "sweep", "--conjecture", "A", "--n", "4", "--format", "json", "--out", str(out_file))
    assert code == 0 and "no violations" in out
    lines = out_file.read_text().splitlines()
    assert json.loads(lines[-1])["violations"] == 0
    code, _, _ = run(capsys, "sweep", "--conjecture", "B", "--n", "1")
    assert code == 0


def test_out_dir_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("HS_OUT_DIR", str(tmp_path / "reports"))
    assert main(["sweep", "--conjecture", "B", "--n", "3", "--format", "csv"]) == 0
    assert main(["theorems", "--n", "3", "--format", "json"]) == 0
    assert main(["vnum-probe", "--n", "3"]) == 0
    assert main(["census", "--n", "3"]) == 0
    capsys.readouterr()
    names = sorted(p.name for p in (tmp_path / "reports").iterdir())
    assert names == ["census.txt", "sweep-B.csv", "theorems.jsonl", "vnum-probe.txt"]


def test_jobs_do_not_change_reports(capsys, tmp_path):
    files = []
    for jobs in ("1", "3"):
        f = tmp_path / f"t{jobs}.jsonl"
        assert main(["theorems", "--n", "4", "--jobs", jobs, "--format", "json", "--out", str(f)]) == 0
        files.append(f.read_bytes())
    capsys.readouterr()
    assert files[0] == files[1]
