"""CLI: output shapes, exit codes, determinism."""

import json
import math
import subprocess
import sys

import pytest

from algconn.cli import main
from algconn.families import path
from algconn.graphs import graph6_decode, graph6_encode


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lambda2_named(capsys):
    code, out, err = run_cli(capsys, "lambda2", "named:petersen")
    assert code == 0 and err == ""
    rec = json.loads(out)
    assert rec["command"] == "lambda2"
    assert rec["results"]["lambda2"] == pytest.approx(2.0)
    assert rec["results"]["n"] == 10 and rec["results"]["m"] == 15
    assert "wall_time" not in rec


def test_lambda2_literal_and_vector(capsys):
    code, out, _ = run_cli(capsys, "lambda2", "Ch", "--vector")
    assert code == 0
    rec = json.loads(out)
    assert rec["results"]["lambda2"] == pytest.approx(2 - math.sqrt(2))
    vec = rec["results"]["fiedler_vector"]
    assert len(vec) == 4
    assert sum(vec) == pytest.approx(0, abs=1e-9)


def test_lambda2_from_file(capsys, tmp_path):
    f = tmp_path / "graphs.g6"
    f.write_text(graph6_encode(path(5)) + "\n" + graph6_encode(path(3)) + "\n")
    code, out, _ = run_cli(capsys, "lambda2", str(f))
    assert code == 0
    rec = json.loads(out)
    assert rec["results"]["n"] == 5  # first line wins


def test_bounds_heawood(capsys):
    code, out, _ = run_cli(capsys, "bounds", "named:heawood")
    rec = json.loads(out)
    assert code == 0
    assert rec["results"]["lambda2"] == pytest.approx(3 - math.sqrt(2))
    by_name = {e["name"]: e for e in rec["results"]["bounds"]}
    girth = by_name["girth_cubic"]
    assert girth["applicable"] and girth["attained"]
    assert girth["value"] == pytest.approx(3 - math.sqrt(2))
    assert not by_name["tree_layered"]["applicable"]


def test_bounds_csv(capsys):
    code, out, _ = run_cli(capsys, "bounds", "named:heawood", "--format", "csv")
    lines = out.strip().split("\n")
    assert lines[0] == "name,value,applicable,certified,attained,note"
    assert len(lines) == 8  # header + 7 bounds
    girth_row = [l for l in lines if l.startswith("girth_cubic")]
    assert len(girth_row) == 1 and ",true," in girth_row[0]


def test_tree_split(capsys):
    code, out, _ = run_cli(capsys, "tree-split", graph6_encode(path(9)))
    assert code == 0
    rec = json.loads(out)
    assert rec["results"]["vertex"] == 4
    assert rec["results"]["component_sizes"] == [4, 4]
    assert rec["results"]["spectral_bound"] >= rec["results"]["lambda2"] - 1e-12


def test_enumerate_streams_graph6(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "trees", "-n", "4", "-d", "3")
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 2
    for line in lines:
        g = graph6_decode(line)
        assert g.n == 4 and g.m == 3

    code, out, _ = run_cli(capsys, "enumerate", "cubic", "-n", "6")
    assert len(out.strip().split("\n")) == 2

    code, out, _ = run_cli(
        capsys, "enumerate", "graphs", "-n", "5", "-m", "6", "--min-degree", "2"
    )
    assert len(out.strip().split("\n")) == 3


def test_enumerate_max_lambda2(capsys):
    code, out, _ = run_cli(
        capsys, "enumerate", "trees", "-n", "10", "-d", "3", "--max-lambda2"
    )
    assert code == 0
    rec = json.loads(out)
    assert rec["results"]["enumerated"] == 37
    assert len(rec["results"]["maximizers"]) == 1


def test_verify_exit_codes(capsys):
    code, out, _ = run_cli(capsys, "verify", "k2", "-n", "6")
    assert code == 0
    assert json.loads(out)["results"]["passed"] is True

    # sampled-only pass reports exit 3
    code, out, _ = run_cli(capsys, "verify", "k2", "-n", "10", "--samples", "5")
    assert code == 3
    rec = json.loads(out)
    assert rec["results"]["passed"] is True and not rec["results"]["exhaustive"]

    code, _, _ = run_cli(capsys, "verify", "tree2", "-d", "3", "-K", "2")
    assert code == 0


def test_augment_csv(capsys):
    code, out, _ = run_cli(capsys, "augment", "-n", "4", "-m", "6")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "step,i,j,lambda2"
    assert len(lines) == 7
    assert float(lines[-1].split(",")[-1]) == pytest.approx(4.0)


def test_compare_csv_and_note(capsys):
    code, out, _ = run_cli(capsys, "compare", "-n", "12", "--m-list", "18,20")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].startswith("m,augmented,bipartite_b,bipartite,regular_d")
    assert len(lines) == 3
    # m=20: 2m/n = 10/3 is not an integer -> flagged, regular cells empty
    row20 = lines[2].split(",")
    assert row20[0] == "20" and row20[4] == ""
    assert "not an integer" in lines[2]


def test_consensus(capsys):
    code, out, _ = run_cli(capsys, "consensus", "named:petersen", "--seed", "7")
    assert code == 0
    rec = json.loads(out)
    assert rec["results"]["rel_gap"] < 0.02
    assert rec["results"]["rate"] == pytest.approx(2.0, rel=0.02)


def test_timing_flag(capsys):
    _, out, _ = run_cli(capsys, "lambda2", "Ch", "--timing")
    assert "wall_time" in json.loads(out)
    _, out, _ = run_cli(capsys, "lambda2", "Ch", "--format", "csv", "--timing")
    assert out.split("\n")[0].endswith("wall_time")


def test_usage_errors_exit_1(capsys):
    for argv in (
        ["lambda2", "not-a-graph!!"],
        ["lambda2", "named:nonesuch"],
        ["tree-split", "named:petersen"],
        ["enumerate", "trees"],
        ["enumerate", "graphs", "-n", "5"],
        ["verify", "k2", "-n", "99"],
        ["augment", "-n", "1", "-m", "0"],
    ):
        code, out, err = run_cli(capsys, *argv)
        assert code == 1, argv
        assert out == "" and err.startswith("error:")


def test_stdout_deterministic(capsys):
    runs = [
        run_cli(capsys, "verify", "k2", "-n", "10", "--samples", "5")[1]
        for _ in range(2)
    ]
    assert runs[0] == runs[1]
    runs = [run_cli(capsys, "compare", "-n", "10", "--m-list", "15")[1] for _ in range(2)]
    assert runs[0] == runs[1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "algconn", "lambda2", "named:petersen"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["lambda2"] == 2.0
