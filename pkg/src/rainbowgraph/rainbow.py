"""Exact rainbow reachability and rainbow connectivity for small color counts.

Reachability is a closure over states ``(vertex, used-color mask)``. The states
describe rainbow walks; since deleting the closed sub-walks of a rainbow walk
leaves a rainbow path, the set of reachable *vertices* is exactly the set of
vertices joined to the source by a rainbow path.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .graph import ColoredGraph, Graph, InputError, canonical, components
from .params import min_degree_target

MAX_COLORS = 24


def _check_r(cg: ColoredGraph) -> None:
    if cg.r > MAX_COLORS:
        raise InputError(
            f"exact rainbow search supports at most {MAX_COLORS} colors (got {cg.r}); "
            "use a sampling method for more colors"
        )


def rainbow_states(cg: ColoredGraph, u: int) -> np.ndarray:
    """Boolean ``(n, 2**r)`` table of reachable ``(vertex, color mask)`` states from ``u``.

    Bit ``c - 1`` of the mask stands for color ``c``.
    """
    _check_r(cg)
    indptr, indices, _ = cg.graph.csr
    return _kernels.rainbow_states(indptr, indices, cg.arc_colors, max(cg.r, 0), int(u))


def rainbow_reachable(cg: ColoredGraph, u: int) -> np.ndarray:
    """Boolean vector: ``v`` is joined to ``u`` by a rainbow path (``u`` itself included)."""
    _check_r(cg)
    indptr, indices, _ = cg.graph.csr
    return _kernels.rainbow_reach(indptr, indices, cg.arc_colors, max(cg.r, 0), int(u))


def rainbow_path(cg: ColoredGraph, u: int, v: int) -> list[int] | None:
    """A shortest rainbow path from ``u`` to ``v`` as a vertex list, or ``None``.

    Breadth-first over states with one predecessor per state (first reached
    wins; neighbors are scanned in ascending order).
    """
    _check_r(cg)
    if u == v:
        return [u]
    adj = cg.graph.adj
    color = cg.color
    start = (u, 0)
    pred: dict[tuple[int, int], tuple[int, int] | None] = {start: None}
    queue = deque([start])
    while queue:
        w, mask = queue.popleft()
        for x in adj[w]:
            bit = 1 << (color(w, x) - 1)
            if mask & bit:
                continue
            state = (x, mask | bit)
            if state in pred:
                continue
            pred[state] = (w, mask)
            if x == v:
                walk = [x]
                s = pred[state]
                while s is not None:
                    walk.append(s[0])
                    s = pred[s]
                return _shortcut(walk[::-1])
            queue.append(state)
    return None


def _shortcut(walk: list[int]) -> list[int]:
    """Remove closed sub-walks so every vertex appears once."""
    out: list[int] = []
    where: dict[int, int] = {}
    for v in walk:
        if v in where:
            for dropped in out[where[v] + 1:]:
                del where[dropped]
            del out[where[v] + 1:]
        else:
            where[v] = len(out)
            out.append(v)
    return out


@dataclass
class ConnectivityResult:
    connected: bool
    witness: tuple[int, int] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.connected


def is_rainbow_connected(cg: ColoredGraph) -> ConnectivityResult:
    """Decide whether every pair of vertices is joined by a rainbow path.

    Sources are scanned in ascending order. Per source, a vertex further than
    ``r`` hops away is an immediate witness; otherwise the state closure decides.
    """
    _check_r(cg)
    n = cg.n
    if n <= 1:
        return ConnectivityResult(True)
    comps = components(cg.graph)
    if len(comps) > 1:
        return ConnectivityResult(False, (comps[0][0], comps[1][0]), "disconnected")
    indptr, indices, _ = cg.graph.csr
    for u in range(n):
        dist = _kernels.bfs_distances(indptr, indices, u)
        far = np.flatnonzero(dist > cg.r)
        if far.size:
            return ConnectivityResult(False, (u, int(far[0])), f"distance {int(dist[far[0]])} > r")
        reach = rainbow_reachable(cg, u)
        if not reach.all():
            return ConnectivityResult(False, (u, int(np.flatnonzero(~reach)[0])), "no rainbow path")
    return ConnectivityResult(True)


@dataclass
class HubSet:
    hubs: list[int]
    assignment: dict[int, tuple[int, int]] = field(default_factory=dict)
    threshold: float = 0.0


def common_neighbor_counts(h: Graph) -> np.ndarray:
    a = h.adjacency_matrix(np.float32)
    return np.rint(a @ a).astype(np.int64)


def build_hub_set(h: Graph, delta: float) -> HubSet:
    """Maximal set of vertices with pairwise fewer than δ²n/4 common neighbors.

    Every other vertex is assigned the hub it shares the most neighbors with
    (lowest index on ties); that count is at least δ²n/4 by maximality.
    """
    n = h.n
    if not 0 < delta <= 1:
        raise InputError("delta must lie in (0, 1]")
    if n and h.min_degree() < min_degree_target(n, delta):
        raise InputError(f"host minimum degree {h.min_degree()} is below {delta}*n")
    thr = delta * delta * n / 4
    common = common_neighbor_counts(h)
    hubs: list[int] = []
    for v in range(n):
        if all(common[v, s] < thr for s in hubs):
            hubs.append(v)
    hs = HubSet(hubs, threshold=thr)
    hub_arr = np.array(hubs, dtype=np.int64)
    hub_set = set(hubs)
    for v in range(n):
        if v in hub_set:
            continue
        shared = common[v, hub_arr]
        j = int(np.argmax(shared))
        hs.assignment[v] = (hubs[j], int(shared[j]))
    bound = int(np.ceil(2 / delta - 1e-9))
    if len(hubs) > bound or any(c < thr for _, c in hs.assignment.values()):
        raise RuntimeError("hub set violates its size or sharing bound")
    return hs


def count_short_rainbow_paths(cg: ColoredGraph, u: int, v: int, via_host: Graph,
                              via_random: Iterable[Sequence[int]]) -> int:
    """Count rainbow paths u, u0, v0, v with {u,u0}, {v0,v} host edges and {u0,v0} random."""
    count = 0
    hu, hv = via_host.adj_sets[u], via_host.adj_sets[v]
    for a, b in {canonical(*e) for e in via_random}:
        for u0, v0 in ((a, b), (b, a)):
            if u0 not in hu or v0 not in hv:
                continue
            if len({u, u0, v0, v}) < 4:
                continue
            cols = {cg.color(u, u0), cg.color(u0, v0), cg.color(v0, v)}
            if len(cols) == 3:
                count += 1
    return count
