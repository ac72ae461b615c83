from __future__ import annotations

import json

import pytest

from neighborly.cli import main
from neighborly.cnf import evaluate, from_dimacs_cnf
from neighborly.graph_io import load_graphs, to_graph6
from neighborly.graph import make_clique, make_cycle, make_path
from neighborly.solvers import is_proper, is_vertex_cover

TWO_CLAUSES = "p cnf 3 2\n1 2 3 0\n-1 2 -3 0\n"


@pytest.fixture
def files(tmp_path):
    def write(name: str, text: str) -> str:
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def g6(*graphs) -> str:
    return "".join(to_graph6(g) + "\n" for g in graphs)


def json_lines(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.startswith("{")]


def test_reduce_pw_round_trip(files, tmp_path):
    src = files("phi.cnf", TWO_CLAUSES)
    out = tmp_path / "pw.cnf"
    assert main(["reduce", "pw", src, "-o", str(out)]) == 0
    psi = from_dimacs_cnf(out.read_text())
    assert psi.num_clauses == 9
    wit = json_lines((tmp_path / "pw.cnf.witnesses.jsonl").read_text())
    assert len(wit) == 9
    for c, rec in enumerate(wit):
        assert rec["deleted_clause"] == c
        a = [bool(rec["assignment"][str(v + 1)]) for v in range(psi.variable_count)]
        assert evaluate(psi.without_clause(c), a)


def test_reduce_f_writes_witness_sidecar(files, tmp_path):
    src = files("phi.cnf", TWO_CLAUSES)
    side = tmp_path / "w.jsonl"
    assert main(["reduce", "f", src, "-o", str(tmp_path / "f.cnf"), "--witnesses", str(side)]) == 0
    psi = from_dimacs_cnf((tmp_path / "f.cnf").read_text())
    assert psi.is_e3cnf()
    assert len(side.read_text().splitlines()) == psi.num_clauses


def test_reduce_without_sidecar_warns(files, capsys):
    assert main(["reduce", "pw", files("phi.cnf", TWO_CLAUSES)]) == 0
    captured = capsys.readouterr()
    assert captured.out.startswith("p cnf 5 9")
    assert "witnesses not written" in captured.err


def test_reduce_cai_meyer_graph6(files, capsys):
    src = files("one.cnf", "p cnf 3 1\n1 2 3 0\n")
    assert main(["reduce", "cai-meyer", src, "--format", "graph6"]) == 0
    (g,) = load_graphs(capsys.readouterr().out, "graph6")
    assert g.vertex_count == 17 and g.has_edge(0, 1)
    assert main(["reduce", "cai-meyer", src, "--format", "graph6", "--without-vc-vs"]) == 0
    (h,) = load_graphs(capsys.readouterr().out, "graph6")
    assert not h.has_edge(0, 1)


def test_reduce_g_witnesses_are_proper(files, tmp_path):
    src = files("one.cnf", "p cnf 3 1\n1 2 3 0\n")
    out = tmp_path / "g.json"
    assert main(["reduce", "g", src, "-o", str(out)]) == 0
    (g,) = load_graphs(out.read_text(), "json")
    recs = json_lines((tmp_path / "g.json.witnesses.jsonl").read_text())
    assert len(recs) == len(g.edges) + g.vertex_count
    for rec in recs:
        if "deleted_edge" in rec:
            e = tuple(rec["deleted_edge"])
            assert is_proper(g.with_edges(removed=[e]), rec["coloring"])
        else:
            assert is_proper(g.without_vertices([rec["deleted_vertex"]]), rec["coloring"])


def test_reduce_vc(files, tmp_path):
    out = tmp_path / "vc.json"
    assert main(["reduce", "vc", files("one.cnf", "p cnf 3 1\n1 2 3 0\n"), "-o", str(out)]) == 0
    obj = json.loads(out.read_text())
    (g,) = load_graphs(out.read_text(), "json")
    assert obj["cover_bound"] > 0
    for rec in json_lines((tmp_path / "vc.json.witnesses.jsonl").read_text()):
        h = g.without_vertices(rec["deleted_triangle"])
        assert is_vertex_cover(h, rec["cover"])
        assert len(rec["cover"]) == obj["cover_bound"] - 2


def test_reduce_join_lift_and_theta(files, capsys):
    src = files("k3.g6", g6(make_clique(3)))
    assert main(["reduce", "join-lift", src, "--format", "graph6"]) == 0
    (g,) = load_graphs(capsys.readouterr().out, "graph6")
    assert g == make_clique(4)
    assert main(["reduce", "theta", src, src, "--format", "graph6"]) == 0
    (t,) = load_graphs(capsys.readouterr().out, "graph6")
    assert t.vertex_count == 8
    assert main(["reduce", "theta", src]) == 3


def test_solve(files, capsys):
    assert main(["solve", "chromatic", files("c5.g6", g6(make_cycle(5), make_path(3)))]) == 0
    recs = json_lines(capsys.readouterr().out)
    assert [r["value"] for r in recs] == [3, 2]
    assert main(["solve", "vc", files("c5b.g6", g6(make_cycle(5)))]) == 0
    assert json_lines(capsys.readouterr().out)[0]["value"] == 3
    assert main(["solve", "sat", files("phi.cnf", TWO_CLAUSES)]) == 0
    rec = json_lines(capsys.readouterr().out)[0]
    assert rec["value"] is True
    assert evaluate(from_dimacs_cnf(TWO_CLAUSES), [bool(x) for x in rec["witness"]])
    assert main(["solve", "sat", files("u.cnf", "p cnf 1 2\n1 0\n-1 0\n")]) == 0
    assert json_lines(capsys.readouterr().out)[0] == {"problem": "sat", "value": False, "witness": None}


@pytest.mark.parametrize("algorithm,size,queries", [
    ("colorer", 2, 2),
    ("vc-vertex-del", 2, 2),
    ("vc-edge-add", 2, 2),
    ("coloring-isolated", 2, 1),
    ("vc-isolated", 2, 1),
])
def test_oracle_run(files, capsys, algorithm, size, queries):
    assert main(["oracle-run", algorithm, files("p4.g6", g6(make_path(4)))]) == 0
    head, *transcript = json_lines(capsys.readouterr().out)
    assert head["size"] == size and head["queries"] == queries == len(transcript)


@pytest.mark.parametrize("algorithm", ["chain-coloring-add-edge", "chain-vc-delete-vertex", "chain-vc-add-edge"])
def test_oracle_run_chains(files, capsys, algorithm):
    assert main(["oracle-run", algorithm, files("c5.g6", g6(make_cycle(5)))]) == 0
    rec = json_lines(capsys.readouterr().out)[0]
    assert isinstance(rec["steps"], list) and rec["solution"]


def test_oracle_budget_exceeded_exits_3(files):
    assert main(["oracle-run", "colorer", files("p4.g6", g6(make_path(4))), "--query-budget", "1"]) == 3


def test_recognize(files, capsys):
    src = files("g.g6", g6(make_cycle(5), make_path(4)))
    assert main(["recognize", "chi-critical", src]) == 0
    out = capsys.readouterr().out
    assert [r["verdict"] for r in json_lines(out)] == [True, False]
    assert out.splitlines()[-1] == "summary: 1 true, 1 false"
    assert main(["recognize", "edge-minimal-uncolorable", src, "--k", "2"]) == 0
    assert [r["verdict"] for r in json_lines(capsys.readouterr().out)] == [True, False]
    assert main(["recognize", "minimal-unsat", files("u.cnf", "p cnf 1 2\n1 0\n-1 0\n")]) == 0
    assert json_lines(capsys.readouterr().out)[0]["verdict"] is True


def test_catalog(files, capsys):
    src = files("g.g6", g6(make_path(3), make_clique(3)))
    assert main(["catalog", "beta-stable", src]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == [to_graph6(make_path(3)), "summary: 1 of 2 graphs are beta-stable"]
    assert main(["catalog", "beta-stable", src, "--max-vertices", "2"]) == 3


def test_verify_uses_env_seed(monkeypatch, capsys):
    monkeypatch.setenv("NEIGHBORLY_SEED", "5")
    assert main(["verify", "oracle-budgets"]) == 0
    assert capsys.readouterr().out.startswith("neighborly verify oracle-budgets seed=5 ")
    assert main(["verify", "oracle-budgets", "--seed", "6"]) == 0
    assert "seed=6 " in capsys.readouterr().out
    monkeypatch.setenv("NEIGHBORLY_SEED", "x")
    assert main(["verify", "oracle-budgets"]) == 3


def test_parse_error_exits_2(files):
    assert main(["solve", "sat", files("bad.cnf", "p cnf x\n")]) == 2
    assert main(["solve", "chromatic", files("bad.g6", "\x01\x02\n")]) == 2


def test_precondition_exits_3(files):
    assert main(["reduce", "f", files("two.cnf", "p cnf 2 1\n1 2 0\n")]) == 3
    assert main(["reduce", "join-lift", files("c5.g6", g6(make_cycle(5))), "--k", "3"]) == 3
    assert main(["solve", "sat", "/nonexistent/file.cnf"]) == 3


def test_timeout_exits_4(files):
    # pigeonhole: 8 pigeons, 7 holes
    clauses = []
    var = lambda p, h: p * 7 + h + 1
    for p in range(8):
        clauses.append([var(p, h) for h in range(7)])
    for h in range(7):
        for p in range(8):
            for q in range(p + 1, 8):
                clauses.append([-var(p, h), -var(q, h)])
    text = f"p cnf 56 {len(clauses)}\n" + "".join(" ".join(map(str, c)) + " 0\n" for c in clauses)
    assert main(["solve", "sat", files("php.cnf", text), "--time-budget-ms", "50"]) == 4


def test_usage_errors_exit_via_argparse():
    with pytest.raises(SystemExit) as exc:
        main(["reduce", "nope", "x"])
    assert exc.value.code == 2
