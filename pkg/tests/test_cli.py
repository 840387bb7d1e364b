import json

import pytest

from kopt_pls.cli import EXIT_BUDGET, EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main
from kopt_pls.reduction import triangle_inequality_holds
from kopt_pls.tsp import read_tsp


@pytest.fixture
def h1_file(tmp_path):
    p = tmp_path / "h1.txt"
    p.write_text("2 1\n0 1 5\n")
    return p


def test_reduce(h1_file, tmp_path, capsys):
    out = tmp_path / "art"
    assert main(["reduce", str(h1_file), "--k", "3", "--out", str(out)]) == EXIT_OK
    assert "N=15" in capsys.readouterr().out
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["k"] == 3 and manifest["M"] == "10"
    assert read_tsp(out / "instance.tsp").vertex_count == 15


def test_reduce_errors(h1_file, tmp_path, capsys):
    assert main(["reduce", str(h1_file), "--k", "2", "--out", str(tmp_path / "x")]) == EXIT_FAILURE
    assert "minimum feasible k is 3" in capsys.readouterr().err
    star = tmp_path / "star.txt"
    star.write_text("7 6\n" + "".join(f"0 {v} 1\n" for v in range(1, 7)))
    assert main(["reduce", str(star), "--out", str(tmp_path / "y")]) == EXIT_FAILURE
    bad = tmp_path / "bad.txt"
    bad.write_text("2 2\n0 1 1\n")
    assert main(["reduce", str(bad), "--out", str(tmp_path / "z")]) == EXIT_FAILURE
    assert main(["reduce", str(h1_file), "--paper-strict", "--k", "3", "--out", str(tmp_path / "w")]) == EXIT_FAILURE


def test_solve_maxcut(h1_file, tmp_path, capsys):
    out = tmp_path / "cut.txt"
    assert main(["solve", "maxcut", str(h1_file), "--start", "all-first", "--out", str(out)]) == EXIT_OK
    assert "value=5" in capsys.readouterr().out
    assert out.read_text() == "10\n"
    assert main(["solve", "maxcut", str(h1_file), "--pivot", "sideways"]) == EXIT_USAGE


def test_map_and_solve_tsp(h1_file, tmp_path, capsys):
    art = tmp_path / "art"
    main(["reduce", str(h1_file), "--k", "3", "--out", str(art)])
    cut = tmp_path / "c.txt"
    cut.write_text("00\n")
    tour = tmp_path / "t.txt"
    assert main(["map", "--manifest", str(art / "manifest.json"), "--to-tour", str(cut), "--out", str(tour)]) == 0
    back = tmp_path / "back.txt"
    assert main(["map", "--manifest", str(art / "manifest.json"), "--to-cut", str(tour), "--out", str(back)]) == 0
    assert back.read_text() == "00\n"
    capsys.readouterr()
    end, trace = tmp_path / "end.txt", tmp_path / "trace.json"
    args = ["solve", "tsp", str(art / "instance.tsp"), "--start", str(tour), "--k", "3",
            "--out", str(end), "--trace", str(trace)]
    assert main(args) == EXIT_OK
    assert "weight=0" in capsys.readouterr().out
    data = json.loads(trace.read_text())
    assert data["objective"] == ["5", "0"] and len(data["moves"]) == 1
    assert main(["solve", "tsp", str(art / "instance.tsp"), "--budget", "10"]) == EXIT_BUDGET


def test_verify(h1_file, tmp_path, capsys):
    summary = tmp_path / "summary.txt"
    code = main(["verify", str(h1_file), "--all", "--samples", "50", "--starts", "5", "--summary", str(summary)])
    assert code == EXIT_OK
    lines = summary.read_text().splitlines()
    assert len(lines) == 8 and all("\tpass\t" in ln for ln in lines)
    assert main(["verify", str(h1_file), "--check", "gadgets"]) == EXIT_OK


def test_transition_graph_dot(h1_file, capsys):
    assert main(["transition-graph", str(h1_file), "--kind", "tsp"]) == EXIT_OK
    dot = capsys.readouterr().out
    assert dot.startswith("digraph standard_tours") and dot.count("doublecircle") == 2
    assert main(["transition-graph", str(h1_file)]) == EXIT_OK
    assert capsys.readouterr().out.count("->") == 4


def test_transition_graph_limit_env(h1_file, monkeypatch, capsys):
    monkeypatch.setenv("KOPT_PLS_ENUMERATION_LIMIT", "1")
    assert main(["transition-graph", str(h1_file)]) == EXIT_FAILURE
    assert main(["transition-graph", str(h1_file), "--limit", "5"]) == EXIT_OK


def test_describe_gadget_stable(capsys):
    main(["describe-gadget", "strict"])
    first = capsys.readouterr().out
    main(["describe-gadget", "strict"])
    assert capsys.readouterr().out == first
    assert len(first.splitlines()) == 18 and all(ln.split()[2] in "SDP" for ln in first.splitlines())


def test_metricize(h1_file, tmp_path):
    art = tmp_path / "art"
    main(["reduce", str(h1_file), "--out", str(art)])
    out = tmp_path / "metric.tsp"
    assert main(["metricize", str(art / "instance.tsp"), "--out", str(out)]) == EXIT_OK
    assert triangle_inequality_holds(read_tsp(out))


def test_usage_errors():
    assert main([]) == EXIT_USAGE
    assert main(["nonsense"]) == EXIT_USAGE
