"""Rotation-extension Hamilton cycle search and the rainbow packing pipeline.

The solver keeps a longest path ``x ... y``. When neither end can be extended
it computes the rotation closure END(x; P) (endpoints reachable by rotations
that keep ``x`` fixed) and, for each such endpoint ``z``, the second-level
closure END(z; P(x, z)). Booster edges are then consumed in order; a booster
``{z, z'}`` with ``z'`` in END(z; P(x, z)) closes a cycle, and a cycle that is
not Hamiltonian is reopened into a longer path through an outside neighbor.
"""
from __future__ import annotations

import bisect
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import params as P
from .generators import make_rng, split_host
from .graph import ColoredGraph, Graph, InputError, components, difference, union
from .verify import cycle_edges, is_hamilton_cycle, is_rainbow_cycle, pairwise_edge_disjoint

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class HamiltonCycle:
    cycle: tuple[int, ...]
    boosters_used: int = 0
    found = True

    def edges(self) -> list[tuple[int, int]]:
        return cycle_edges(self.cycle)


@dataclass(frozen=True)
class Exhausted:
    """No Hamilton cycle was found (this is not a proof that none exists)."""

    longest_path: int
    boosters_used: int
    reason: str
    certificate: tuple[tuple[int, ...], ...] | None = None
    found = False


@dataclass
class RotationState:
    """Working state of the rotation solver.

    ``end_sets`` maps each z in END(x; P) to its witness path P(x, z);
    ``second_ends`` maps z to END(z; P(x, z)) stored as rotation history
    ``z' -> (parent endpoint, pivot vertex)``.
    """

    base_graph: Graph
    path: list[int] = field(default_factory=list)
    end_sets: dict[int, list[int]] = field(default_factory=dict)
    second_ends: dict[int, dict[int, tuple[int, int] | None]] = field(default_factory=dict)
    boosters_consumed: int = 0
    posa_checks: int = 0

    def in_booster_pairs(self, a: int, b: int) -> bool:
        """Whether {a, b} is in the current pair set: z in END(x; P), z' in END(z; P(x, z))."""
        return b in self.second_ends.get(a, ()) or a in self.second_ends.get(b, ())


class _Solver:
    def __init__(self, state: RotationState, budget: int):
        g = state.base_graph
        self.state = state
        self.n = g.n
        self.nbrs = [list(a) for a in g.adj]
        self.nbr_sets = [set(a) for a in g.adj]
        self.budget = budget
        self.spent = 0
        self.on = [False] * self.n
        self.extra: set[tuple[int, int]] = set()

    # -- working graph -----------------------------------------------------
    def add_edge(self, a: int, b: int) -> None:
        if b in self.nbr_sets[a]:
            return
        for u, v in ((a, b), (b, a)):
            self.nbr_sets[u].add(v)
            bisect.insort(self.nbrs[u], v)
        self.extra.add((a, b) if a < b else (b, a))

    def set_path(self, path: list[int]) -> None:
        self.on = [False] * self.n
        for v in path:
            self.on[v] = True
        self.state.path = path

    # -- moves ---------------------------------------------------------------
    def _extend_tail(self, path: list[int]) -> None:
        on, nbrs = self.on, self.nbrs
        while True:
            for w in nbrs[path[-1]]:
                if not on[w]:
                    on[w] = True
                    path.append(w)
                    break
            else:
                return

    def extend_both(self, path: list[int]) -> list[int]:
        self._extend_tail(path)
        path.reverse()
        self._extend_tail(path)
        return path

    def closure(self, path: list[int], check_close: bool = True):
        """Breadth-first rotation closure keeping ``path[0]`` fixed.

        Returns ``("extend", p)`` or ``("cycle", p)`` on progress, else
        ``("stuck", witnesses, history, complete)``.
        """
        x = path[0]
        L = len(path)
        on, nbrs = self.on, self.nbrs
        close_set = self.nbr_sets[x]
        witness = {path[-1]: path}
        history: dict[int, tuple[int, int] | None] = {path[-1]: None}
        queue = deque([path[-1]])
        complete = True
        while queue:
            z = queue.popleft()
            p = witness[z]
            for v in nbrs[z]:
                if not on[v]:
                    return ("extend", p + [v])
            if check_close and L >= 3 and z in close_set:
                return ("cycle", p)
            pos = {v: i for i, v in enumerate(p)}
            for v in nbrs[z]:
                i = pos[v]
                if i >= L - 2:
                    continue
                w = p[i + 1]
                if w in witness:
                    continue
                if self.spent >= self.budget:
                    complete = False
                    queue.clear()
                    break
                self.spent += 1
                witness[w] = p[:i + 1] + p[:i:-1]
                history[w] = (z, v)
                queue.append(w)
        return ("stuck", witness, history, complete)

    def posa_check(self, ends: Iterable[int]) -> None:
        ends = set(ends)
        nb = set()
        for z in ends:
            nb.update(self.nbr_sets[z])
        nb -= ends
        if not len(nb) < 2 * len(ends):
            raise RuntimeError(
                f"rotation closure violates |N(END)| < 2|END|: {len(nb)} vs {len(ends)}"
            )
        self.state.posa_checks += 1

    def absorb(self, cycle: list[int]) -> list[int]:
        """Open a non-Hamiltonian cycle into a longer path via an outside neighbor."""
        on = self.on
        for u in sorted(cycle):
            for w in self.nbrs[u]:
                if not on[w]:
                    i = cycle.index(u)
                    return cycle[i + 1:] + cycle[:i + 1] + [w]
        raise RuntimeError("connected graph has a cycle with no outside neighbor")

    @staticmethod
    def replay(root: list[int], history, target: int) -> list[int]:
        chain = []
        z = target
        while history[z] is not None:
            chain.append(history[z])
            z = history[z][0]
        p = root
        for _, pivot in reversed(chain):
            i = p.index(pivot)
            p = p[:i + 1] + p[:i:-1]
        return p


def _audit(cycle: Sequence[int], base: Graph, extra: set[tuple[int, int]]) -> None:
    for e in cycle_edges(cycle):
        if e not in extra and not base.has_edge(*e):
            raise RuntimeError(f"solver produced cycle edge {e} outside base ∪ boosters")
    if sorted(cycle) != list(range(base.n)):
        raise RuntimeError("solver produced a cycle that is not Hamiltonian")


def rotations_close(state: RotationState, boosters: Iterable[Sequence[int]] = (),
                    rotation_budget: int | None = None) -> HamiltonCycle | Exhausted:
    """Run rotation-extension on ``state.base_graph``, consuming ``boosters`` in order.

    ``rotation_budget`` caps the rotated paths built per phase (default n²);
    once spent the phase is treated as stuck.
    """
    g = state.base_graph
    n = g.n
    if n < 3:
        return Exhausted(n, 0, "a Hamilton cycle needs at least 3 vertices")
    comps = components(g)
    if len(comps) > 1:
        return Exhausted(0, 0, "base graph is disconnected", tuple(map(tuple, comps)))

    solver = _Solver(state, rotation_budget if rotation_budget is not None else n * n)
    booster_iter = iter(boosters)
    used = state.boosters_consumed
    path = list(state.path) if state.path else [0]
    solver.set_path(path)

    def finish(cycle: list[int]) -> HamiltonCycle:
        _audit(cycle, g, solver.extra)
        state.boosters_consumed = used
        return HamiltonCycle(tuple(cycle), used)

    while True:
        solver.spent = 0
        path = solver.extend_both(state.path)
        x = path[0]
        out = solver.closure(path)
        progress = None
        if out[0] != "stuck":
            progress = out[:2]
        else:
            _, ends, _, complete = out
            if complete:
                solver.posa_check(ends)
            state.end_sets = ends
            state.second_ends = {}
            for z, pz in ends.items():
                if solver.spent >= solver.budget:
                    break
                out2 = solver.closure(pz[::-1])
                if out2[0] != "stuck":
                    progress = out2[:2]
                    break
                _, ends2, hist2, complete2 = out2
                if complete2:
                    solver.posa_check(ends2)
                state.second_ends[z] = hist2

        if progress is None:
            for a, b in booster_iter:
                a, b = int(a), int(b)
                used += 1
                solver.add_edge(a, b)
                if state.in_booster_pairs(a, b):
                    z, z2 = (a, b) if b in state.second_ends.get(a, ()) else (b, a)
                    root = state.end_sets[z][::-1]
                    progress = ("cycle", _Solver.replay(root, state.second_ends[z], z2))
                    break
                for inside, outside in ((a, b), (b, a)):
                    if solver.on[inside] and not solver.on[outside]:
                        if inside == x:
                            progress = ("extend", path[::-1] + [outside])
                        elif inside in state.end_sets:
                            progress = ("extend", state.end_sets[inside] + [outside])
                if progress is not None:
                    break
            else:
                state.boosters_consumed = used
                return Exhausted(len(state.path), used, "boosters exhausted")

        kind, p = progress
        if kind == "cycle":
            if len(p) == n:
                return finish(p)
            p = solver.absorb(p)
        solver.set_path(p)


def find_hamilton(g: Graph, q1: Iterable[Sequence[int]] = (), q2: Iterable[Sequence[int]] = (),
                  rotation_budget: int | None = None) -> HamiltonCycle | Exhausted:
    """Search for a Hamilton cycle in ``g ∪ q1``, using ``q2`` as ordered booster edges."""
    base = union(g, list(q1))
    return rotations_close(RotationState(base), list(q2), rotation_budget)


# ---------------------------------------------------------------------------
# rainbow packing


@dataclass
class RainbowPart:
    graph: Graph
    colors: frozenset[int]
    deficient: dict[int, int]


def extract_rainbow_parts(h_prime: ColoredGraph, t: int, k: int, seed=None) -> list[RainbowPart]:
    """Greedy edge-disjoint rainbow parts, each aiming at degree >= ``k`` everywhere.

    For each part, vertices are visited in random order and each claims up to
    ``k`` unclaimed incident edges (in random order) whose colors are new to the
    part. ``deficient`` maps vertices left below degree ``k`` to their degree.
    """
    rng = make_rng(seed)
    g = h_prime.graph
    n = g.n
    indptr, _, arc_edge = g.csr
    edges = g.edge_array
    colors = h_prime.colors.tolist()
    claimed = np.zeros(g.num_edges, dtype=bool)
    parts = []
    for _ in range(t):
        used: set[int] = set()
        deg = [0] * n
        chosen = []
        for v in rng.permutation(n).tolist():
            need = k - deg[v]
            if need <= 0:
                continue
            row = arc_edge[indptr[v]:indptr[v + 1]]
            for e in rng.permutation(row.copy()).tolist():
                if claimed[e] or colors[e] in used:
                    continue
                claimed[e] = True
                used.add(colors[e])
                chosen.append(e)
                a, b = edges[e]
                deg[a] += 1
                deg[b] += 1
                need -= 1
                if need == 0:
                    break
        if not chosen:
            break
        parts.append(RainbowPart(
            Graph(n, edges[np.sort(chosen)]),
            frozenset(used),
            {v: d for v, d in enumerate(deg) if d < k},
        ))
    return parts


@dataclass
class FilteredChunk:
    edges: list[tuple[int, int]]
    colors: list[int]
    deficiency: int


def chunk_and_filter(rest: ColoredGraph, t: int, chunk: int, target: int,
                     forbidden_colors: Sequence[Iterable[int]] | None = None,
                     seed=None) -> list[FilteredChunk]:
    """Cut a random permutation of ``rest``'s edges into ``t`` chunks and pick
    up to ``target`` edges of distinct, non-forbidden colors from each."""
    total = rest.graph.num_edges
    if total < t * chunk:
        raise InputError(f"chunking needs {t * chunk} edges but only {total} are available")
    if forbidden_colors is None:
        forbidden_colors = [()] * t
    rng = make_rng(seed)
    perm = rng.permutation(total).tolist()
    edges = rest.graph.edges
    colors = rest.colors.tolist()
    out = []
    for i in range(t):
        used = set(forbidden_colors[i])
        sel = []
        for e in perm[i * chunk:(i + 1) * chunk]:
            if len(sel) == target:
                break
            if colors[e] in used:
                continue
            used.add(colors[e])
            sel.append(e)
        out.append(FilteredChunk([edges[e] for e in sel], [colors[e] for e in sel],
                                 target - len(sel)))
    return out


@dataclass(frozen=True)
class PackConfig:
    """Constants of the packing pipeline; ``None`` means the model default for ``n``."""

    delta: float
    k: int = P.K_OUT
    split_p: float = P.SPLIT_P
    chunk: int | None = None
    target: int | None = None
    q1_frac: float | None = None
    q2_frac: float | None = None
    rotation_budget: int | None = None

    @classmethod
    def from_perturb(cls, cfg: P.PerturbConfig, **overrides) -> "PackConfig":
        return cls(delta=cfg.delta, **overrides)

    def resolved(self, n: int) -> dict:
        q1 = self.q1_frac if self.q1_frac is not None else P.q1_fraction(self.delta)
        q2 = self.q2_frac if self.q2_frac is not None else 1 - q1
        if q1 < 0 or q2 < 0 or q1 + q2 > 1 + 1e-12:
            raise InputError("q1/q2 fractions must be non-negative with sum <= 1")
        return {
            "chunk": self.chunk if self.chunk is not None else int(P.chunk_size(n, self.delta)),
            "target": self.target if self.target is not None else int(P.booster_pool_size(n, self.delta)),
            "q1_frac": q1,
            "q2_frac": q2,
        }


@dataclass
class RainbowPacking:
    requested: int
    cycles: list[HamiltonCycle] = field(default_factory=list)
    color_sets: list[list[int]] = field(default_factory=list)
    edge_sets: list[list[tuple[int, int]]] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return len(self.cycles) == self.requested


def _seed_sequence(seed) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    if isinstance(seed, np.random.Generator):
        return np.random.SeedSequence(int(seed.integers(2**63)))
    return np.random.SeedSequence(seed)


def pack_rainbow_hamilton(g: ColoredGraph, host: Graph, t: int, config: PackConfig,
                          seed=None) -> RainbowPacking:
    """Find up to ``t`` edge-disjoint rainbow Hamilton cycles in ``g`` (= host ∪ R, colored).

    Stages: split the host into H' and H''; extract ``t`` rainbow parts from H';
    chunk H'' ∪ R and filter each chunk to colors unused by its part; run the
    rotation solver on part ∪ Q1 with Q2 as boosters. Only cycles that pass the
    independent verifier are returned.
    """
    n = g.n
    if host.n != n:
        raise InputError("host and colored graph must share the vertex set")
    if difference(host, g.graph).num_edges:
        raise InputError("host edges must all be present in the colored graph")
    res = RainbowPacking(requested=t)
    if t <= 0:
        return res
    consts = config.resolved(n)
    ss_split, ss_parts, ss_chunks = _seed_sequence(seed).spawn(3)

    split = split_host(host, config.split_p, ss_split)
    parts = extract_rainbow_parts(g.restrict(split.h_prime), t, config.k, ss_parts)
    if len(parts) < t:
        res.diagnostics.append(f"partition: only {len(parts)} of {t} rainbow parts are nonempty")
    for i, part in enumerate(parts):
        if part.deficient:
            res.diagnostics.append(
                f"partition: part {i} has {len(part.deficient)} vertices below degree {config.k}"
            )
    if not parts:
        return res

    rest = g.restrict(difference(g.graph, split.h_prime))
    try:
        chunks = chunk_and_filter(rest, len(parts), consts["chunk"], consts["target"],
                                  [p.colors for p in parts], ss_chunks)
    except InputError as exc:
        res.diagnostics.append(f"chunking: {exc}")
        return res

    coloring = g.coloring
    for i, (part, ch) in enumerate(zip(parts, chunks)):
        if ch.deficiency:
            res.diagnostics.append(f"filter: chunk {i} is {ch.deficiency} edges short of target")
        nq1 = round(len(ch.edges) * consts["q1_frac"])
        nq2 = round(len(ch.edges) * consts["q2_frac"])
        q1, q2 = ch.edges[:nq1], ch.edges[nq1:nq1 + nq2]
        out = find_hamilton(part.graph, q1, q2, config.rotation_budget)
        if not out.found:
            res.diagnostics.append(f"hamilton: part {i} exhausted ({out.reason}, "
                                   f"longest path {out.longest_path})")
            continue
        allowed = set(part.graph.edges) | set(q1) | set(q2)
        if not (is_hamilton_cycle(out.cycle, n, allowed)
                and is_rainbow_cycle(out.cycle, coloring)
                and pairwise_edge_disjoint([c.cycle for c in res.cycles] + [out.cycle])):
            res.diagnostics.append(f"verify: part {i} cycle rejected")
            continue
        res.cycles.append(out)
        es = out.edges()
        res.edge_sets.append(es)
        res.color_sets.append([coloring[e] for e in es])
    return res
