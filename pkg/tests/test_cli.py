import json
import os
import subprocess
import sys

import pytest

from dtcomplexity.cli import SOLVE_MODES, run
from dtcomplexity.table import read_table
from dtcomplexity.tree import DecisionTree, Terminal, Work, read_tree, write_tree


def dtc(capsys, *argv):
    code = run([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def t1(tmp_path, capsys):
    path = tmp_path / "t.json"
    assert dtc(capsys, "gen", "--family", "u1", "--n", 2, "-o", path)[0] == 0
    return path


def test_gen_then_solve(t1, capsys):
    code, out, _ = dtc(capsys, "solve", "--table", t1, "--mode", "det-nodes")
    assert code == 0
    doc = json.loads(out)
    assert doc["objective"] == 6 and doc["optimality"] == "exact"


def test_gen_to_stdout(capsys):
    code, out, _ = dtc(capsys, "gen", "--family", "u2", "--n", 2)
    assert code == 0
    assert json.loads(out)["rows"] == [{"t": "00", "d": 1}, {"t": "01", "d": 2}, {"t": "10", "d": 3}]


def test_reduction_tree_dot(t1, tmp_path, capsys):
    dot = tmp_path / "g.dot"
    code, out, _ = dtc(capsys, "solve", "--table", t1, "--mode", "reduction-tree", "--dot", dot)
    assert code == 0
    text = dot.read_text()
    node_lines = [ln for ln in text.splitlines() if ln.strip().startswith("n") and "->" not in ln]
    assert len(node_lines) == 8


def test_verify_corrupted_exits_1(t1, tmp_path, capsys, caplog):
    bad = DecisionTree.single(Work(0, ((0, Terminal(1)), (1, Work(1, ((0, Terminal(2)), (1, Terminal(2))))))))
    write_tree(bad, tmp_path / "bad.json")
    code, out, _ = dtc(capsys, "verify", "--table", t1, "--tree", tmp_path / "bad.json", "--mode", "det")
    assert code == 1
    doc = json.loads(out)
    assert doc["ok"] is False and doc["violations"][0]["index"] == 2
    assert "row 11" in caplog.text


def test_input_errors_exit_2(tmp_path, capsys):
    assert dtc(capsys, "solve", "--table", tmp_path / "missing.json", "--mode", "det-nodes")[0] == 2
    (tmp_path / "junk.json").write_text("{not json")
    assert dtc(capsys, "analyze", "--table", tmp_path / "junk.json")[0] == 2
    (tmp_path / "dup.json").write_text(json.dumps(
        {"format": "dtable-v1", "n": 2, "rows": [{"t": "00", "d": 1}, {"t": "00", "d": 2}]}))
    code, _, err = dtc(capsys, "analyze", "--table", tmp_path / "dup.json")
    assert code == 2 and err.count("\n") == 1
    with pytest.raises(SystemExit) as exc:
        run(["solve", "--mode", "nonsense", "--table", "x"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_budget_required(t1, capsys):
    assert dtc(capsys, "solve", "--table", t1, "--mode", "det-nodes-budget")[0] == 2
    code, out, _ = dtc(capsys, "solve", "--table", t1, "--mode", "det-nodes-budget", "--budget", 1)
    assert code == 0 and json.loads(out)["optimality"] == "infeasible"


def test_resource_limit_exits_3(tmp_path, capsys):
    path = tmp_path / "big.json"
    assert dtc(capsys, "gen", "--family", "u1", "--n", 5, "-o", path)[0] == 0
    code, _, err = dtc(capsys, "oracle", "--table", path)
    assert code == 3 and "resource limit" in err


def test_oracle_command(t1, capsys):
    code, out, _ = dtc(capsys, "oracle", "--table", t1)
    assert code == 0
    assert json.loads(out) == {"det": {"depth": 2, "nodes": 6}, "nondet": {"depth": 2, "nodes": 6}}


def test_analyze_command(t1, capsys):
    code, out, _ = dtc(capsys, "analyze", "--table", t1, "--reduction", "all")
    assert code == 0
    assert json.loads(out) == {"N": 3, "idim": 1, "reduction_full_rows": 2, "reduction_all": 2, "prop6_ok": True}


def test_profile_classify_reach(tmp_path, capsys):
    csv_path = tmp_path / "p.csv"
    code, out, _ = dtc(capsys, "profile", "--family", "u1", "--n-max", 4, "--csv", csv_path)
    assert code == 0
    assert csv_path.read_text().splitlines()[0] == "n,h_ld,h_la,L_ld,L_la,N,idim,m_hat"
    code, out, _ = dtc(capsys, "classify", "--family", "u3", "--n-max", 4)
    assert code == 0 and json.loads(out)["w_class"] == "W3"
    code, out, _ = dtc(capsys, "classify", "--family", "u1", "--n-max", 3)
    assert code == 1
    code, out, _ = dtc(capsys, "reach", "--family", "u1", "--n", 4, "--kind", "la")
    assert code == 0 and json.loads(out)["reachable"] == "no"


@pytest.mark.parametrize("family", ["u1", "u2", "u3", "halfplane", "feature"])
def test_round_trip_every_mode(family, tmp_path, capsys):
    table_path = tmp_path / "t.json"
    assert dtc(capsys, "gen", "--family", family, "--n", 3, "-o", table_path)[0] == 0
    text = table_path.read_text()
    assert read_table(table_path).dumps() + "\n" == text
    for mode in SOLVE_MODES:
        tree_path = tmp_path / f"{mode}.json"
        extra = ["--budget", 3] if mode == "det-nodes-budget" else []
        code, out, _ = dtc(capsys, "solve", "--table", table_path, "--mode", mode, "-o", tree_path, *extra)
        assert code == 0, mode
        assert read_tree(tree_path).dumps() + "\n" == tree_path.read_text()
        kind = "det" if mode.startswith("det") else "nondet"
        assert dtc(capsys, "verify", "--table", table_path, "--tree", tree_path, "--mode", kind)[0] == 0, mode


def _strip_stats(text):
    doc = json.loads(text)
    doc.pop("stats", None)
    return json.dumps(doc, sort_keys=True)


def test_threads_give_identical_output(tmp_path):
    outputs = {}
    for threads in ("1", "4"):
        env = dict(os.environ, DT_THREADS=threads)
        runs = []
        for argv in (["profile", "--family", "u1", "--n-max", "5"],
                     ["classify", "--family", "u2", "--n-max", "5"],
                     ["gen", "--family", "u3", "--n", "3"]):
            proc = subprocess.run([sys.executable, "-m", "dtcomplexity", *argv], env=env, capture_output=True,
                                  text=True, check=True)
            runs.append(proc.stdout)
        table = tmp_path / f"t{threads}.json"
        table.write_text(runs[-1])
        proc = subprocess.run([sys.executable, "-m", "dtcomplexity", "solve", "--table", str(table),
                               "--mode", "det-nodes"], env=env, capture_output=True, text=True, check=True)
        runs.append(_strip_stats(proc.stdout))
        outputs[threads] = runs
    assert outputs["1"] == outputs["4"]
