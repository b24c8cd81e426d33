import csv
import io
import subprocess
import sys

from conftest import check_cycle, complete_graph
from rainbowgraph.cli import main
from rainbowgraph.generators import HostSpec, color_uniform, gen_host, k_out, perturb, split_host
from rainbowgraph.graph import ColoredGraph, Graph, dumps, loads, union


def _write(tmp_path, name, g):
    p = tmp_path / name
    p.write_text(dumps(g))
    return str(p)


def _run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_no_arguments_is_usage_error(capsys):
    code, _, err = _run([], capsys)
    assert code == 2 and "usage" in err.lower()


def test_unknown_subcommand(capsys):
    code, _, _ = _run(["frobnicate"], capsys)
    assert code == 2


def test_rc_check_exit_codes(tmp_path, capsys):
    tri = _write(tmp_path, "tri.txt", ColoredGraph(complete_graph(3), [1, 2, 3], 3))
    code, out, _ = _run(["rc-check", "--in", tri], capsys)
    assert code == 0 and out.startswith("rainbow_connected true")
    path = ColoredGraph(Graph(6, [(i, i + 1) for i in range(5)]), [1, 2, 3, 4, 1], 4)
    p = _write(tmp_path, "p.txt", path)
    code, out, _ = _run(["rc-check", "--in", p, "--witness"], capsys)
    assert code == 1 and "witness 0 5" in out


def test_rc_check_lists_paths(tmp_path, capsys):
    tri = _write(tmp_path, "tri.txt", ColoredGraph(complete_graph(3), [1, 2, 3], 3))
    code, out, _ = _run(["rc-check", "--in", tri, "--witness"], capsys)
    assert code == 0 and "0 1: 0 1" in out and "1 2: 1 2" in out


def test_malformed_input_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n0 1\n")
    code, _, err = _run(["rc-check", "--in", str(bad)], capsys)
    assert code == 3 and err
    code, _, _ = _run(["rc-check", "--in", str(tmp_path / "missing.txt")], capsys)
    assert code == 3


def test_infeasible_perturbation_exit_code(tmp_path, capsys):
    k5 = _write(tmp_path, "k5.txt", complete_graph(5))
    code, _, err = _run(["perturb", "--in", k5, "--m", "3"], capsys)
    assert code == 3 and "non-edges" in err


def test_gen_matches_library(tmp_path, capsys):
    code, out, _ = _run(["gen", "--kind", "random_dense", "--n", "40", "--delta", "0.3",
                         "--seed", "5"], capsys)
    assert code == 0
    assert loads(out) == gen_host(HostSpec("random_dense", 40, 0.3), 5)


def test_perturb_color_split_kout_match_library(tmp_path, capsys):
    h = gen_host(HostSpec("random_dense", 40, 0.3), 1)
    hp = _write(tmp_path, "h.txt", h)

    code, out, _ = _run(["perturb", "--in", hp, "--m", "25", "--seed", "3"], capsys)
    assert code == 0 and loads(out) == union(h, perturb(h, 25, 3))
    code, out, _ = _run(["perturb", "--in", hp, "--m", "25", "--seed", "3", "--only-new"], capsys)
    assert loads(out).edge_set == set(perturb(h, 25, 3))

    code, out, _ = _run(["color", "--in", hp, "--r", "7", "--seed", "2"], capsys)
    cg = loads(out)
    assert code == 0 and cg.coloring == color_uniform(h, 7, 2).coloring

    rest = tmp_path / "rest.txt"
    code, out, _ = _run(["split", "--in", hp, "--p", "0.3", "--seed", "4",
                         "--rest-out", str(rest)], capsys)
    s = split_host(h, 0.3, 4)
    assert code == 0 and loads(out) == s.h_prime and loads(rest.read_text()) == s.h_double_prime

    code, out, _ = _run(["kout", "--in", hp, "--k", "3", "--seed", "6"], capsys)
    assert code == 0 and loads(out) == k_out(h, 3, 6)
    sparse = _write(tmp_path, "sparse.txt", Graph(4, [(0, 1)]))
    assert _run(["kout", "--in", sparse, "--k", "2"], capsys)[0] == 3
    assert _run(["kout", "--in", sparse, "--k", "2", "--lenient"], capsys)[0] == 0


def test_output_file(tmp_path, capsys):
    out = tmp_path / "g.txt"
    assert main(["gen", "--kind", "complete_bipartite", "--n", "10", "--delta", "0.3",
                 "--out", str(out)]) == 0
    assert loads(out.read_text()).num_edges == 21


def test_expansion_check(tmp_path, capsys):
    k10 = _write(tmp_path, "k10.txt", complete_graph(10))
    code, out, _ = _run(["expansion-check", "--in", k10, "--samples", "100"], capsys)
    assert code == 0 and "ok true" in out
    star = _write(tmp_path, "star.txt", Graph(11, [(0, i) for i in range(1, 11)]))
    csv_path = tmp_path / "viol.csv"
    code, out, _ = _run(["expansion-check", "--in", star, "--small-cap", "1",
                         "--csv", str(csv_path)], capsys)
    assert code == 1 and "ok false" in out
    rows = list(csv.reader(io.StringIO(csv_path.read_text())))
    assert len(rows) > 1 and rows[1][0] == "small"


def test_ham(tmp_path, capsys):
    path = Graph(6, [(i, i + 1) for i in range(5)])
    p = _write(tmp_path, "path.txt", path)
    b = _write(tmp_path, "b.txt", Graph(6, [(0, 5)]))
    code, out, _ = _run(["ham", "--in", p, "--boosters", b], capsys)
    assert code == 0 and "# verified true boosters_used 1" in out
    cycle = [int(x) for x in out.splitlines()[0].split()]
    check_cycle(cycle, 6, path.edge_set | {(0, 5)})
    code, out, _ = _run(["ham", "--in", p], capsys)
    assert code == 1 and "exhausted" in out


def test_rainbow_pack(tmp_path, capsys):
    n = 100
    g = complete_graph(n)
    cg = color_uniform(g, 40 * n, 1)
    cp, hp = _write(tmp_path, "cg.txt", cg), _write(tmp_path, "h.txt", g)
    code, out, _ = _run(["rainbow-pack", "--in", cp, "--host", hp, "--t", "2", "--k", "3",
                         "--split-p", "0.2", "--chunk", str(20 * n), "--target", str(4 * n),
                         "--delta", "0.45", "--seed", "3"], capsys)
    lines = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert ("# cycles %d of 2" % len(lines)) in out
    assert code == (0 if len(lines) == 2 else 1)
    for ln in lines:
        check_cycle([int(x) for x in ln.split()], n, g.edge_set, cg.coloring)
    code, _, _ = _run(["rainbow-pack", "--in", hp, "--host", hp], capsys)
    assert code == 3  # uncolored input


def test_experiment_flags_and_plan(tmp_path, capsys):
    argv = ["experiment", "--property", "rainbow_connected", "--kind", "complete_bipartite",
            "--n", "40", "--delta", "0.1", "--values", "0,50", "--r", "3", "--trials", "3",
            "--seed", "2"]
    code, out, _ = _run(argv, capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) == 3 and rows[0][0] == "property"
    plan = tmp_path / "plan.txt"
    plan.write_text("property=rainbow_connected\nkind=complete_bipartite\nn=40\ndelta=0.1\n"
                    "values=0,50\nr=3\ntrials=3\nseed=2\n")
    code, out2, _ = _run(["experiment", "--plan", str(plan)], capsys)
    rows2 = list(csv.reader(io.StringIO(out2)))
    assert code == 0
    drop = lambda rs: [r[:9] + r[10:] for r in rs]  # noqa: E731  (mean_ms is timing)
    assert drop(rows) == drop(rows2)
    assert _run(["experiment", "--property", "hamiltonian"], capsys)[0] == 3


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "rainbowgraph", "--version"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip()
