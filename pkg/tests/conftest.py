import itertools

import numpy as np
import pytest

from rainbowgraph.graph import ColoredGraph, Graph

ACCEPTANCE_LOG: list[str] = []


# -- independent oracles --------------------------------------------------------

def brute_rainbow_reach(n, edges, colors, u):
    """Vertices reachable from u by a rainbow *simple path*, by exhaustive DFS."""
    adj = {v: [] for v in range(n)}
    for (a, b), c in zip(edges, colors):
        adj[a].append((b, c))
        adj[b].append((a, c))
    reach = {u}

    def dfs(v, visited, used):
        for w, c in adj[v]:
            if w in visited or c in used:
                continue
            reach.add(w)
            dfs(w, visited | {w}, used | {c})

    dfs(u, {u}, frozenset())
    return reach


def brute_expansion_violations(g: Graph, small_cap: int, max_size: int):
    out = set()
    for size in range(1, min(small_cap, max_size) + 1):
        for s in itertools.combinations(range(g.n), size):
            nb = set()
            for v in s:
                nb.update(g.adj[v])
            nb -= set(s)
            if len(nb) <= 2 * size:
                out.add((s, len(nb)))
    return out


def check_cycle(cycle, n, edge_set, coloring=None):
    """Own verifier, deliberately not shared with the package."""
    assert len(cycle) == n and set(cycle) == set(range(n))
    cols = []
    for i in range(n):
        a, b = cycle[i], cycle[(i + 1) % n]
        e = (min(a, b), max(a, b))
        assert e in edge_set, f"cycle step {e} is not an allowed edge"
        if coloring is not None:
            cols.append(coloring[e])
    if coloring is not None:
        assert len(set(cols)) == n, "cycle is not rainbow"


def random_colored(rng, n, p, r):
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
    g = Graph(n, pairs)
    colors = rng.integers(1, r + 1, g.num_edges)
    return ColoredGraph(g, colors, r)


def complete_graph(n):
    return Graph(n, list(itertools.combinations(range(n), 2)))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# -- suite-wide audit of every solver result -------------------------------------

SOLVER_AUDIT = {"cycles": 0, "failures": []}


def _audited_rotations_close(orig):
    def wrapper(state, boosters=(), rotation_budget=None):
        boosters = list(boosters)
        start = state.boosters_consumed
        base = state.base_graph
        out = orig(state, boosters, rotation_budget)
        if out.found:
            SOLVER_AUDIT["cycles"] += 1
            allowed = set(base.edge_set) | {
                (min(a, b), max(a, b)) for a, b in boosters[:out.boosters_used - start]}
            try:
                check_cycle(list(out.cycle), base.n, allowed)
            except AssertionError as exc:
                SOLVER_AUDIT["failures"].append(f"rotations_close: {exc}")
        return out
    return wrapper


def _audited_pack(orig):
    def wrapper(g, host, t, config, seed=None):
        res = orig(g, host, t, config, seed)
        used = set()
        for c in res.cycles:
            SOLVER_AUDIT["cycles"] += 1
            try:
                check_cycle(list(c.cycle), g.n, g.graph.edge_set, g.coloring)
                steps = {(min(a, b), max(a, b)) for a, b in zip(c.cycle, c.cycle[1:] + c.cycle[:1])}
                assert not steps & used, "packed cycles share an edge"
                used |= steps
            except AssertionError as exc:
                SOLVER_AUDIT["failures"].append(f"pack_rainbow_hamilton: {exc}")
        return res
    return wrapper


@pytest.fixture(autouse=True, scope="session")
def _solver_audit():
    from rainbowgraph import cli, experiments, hamiltonicity

    mp = pytest.MonkeyPatch()
    mp.setattr(hamiltonicity, "rotations_close", _audited_rotations_close(hamiltonicity.rotations_close))
    packed = _audited_pack(hamiltonicity.pack_rainbow_hamilton)
    for mod in (hamiltonicity, experiments, cli):
        mp.setattr(mod, "pack_rainbow_hamilton", packed)
    yield SOLVER_AUDIT
    mp.undo()


def pytest_sessionfinish(session, exitstatus):
    if SOLVER_AUDIT["failures"]:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LOG:
            terminalreporter.write_line(line)
    status = "PASS" if not SOLVER_AUDIT["failures"] else "FAIL"
    terminalreporter.write_line(
        f"[solver audit] {status}: {SOLVER_AUDIT['cycles']} returned cycles verified, "
        f"{len(SOLVER_AUDIT['failures'])} failures")
    for f in SOLVER_AUDIT["failures"]:
        terminalreporter.write_line(f"  {f}")
