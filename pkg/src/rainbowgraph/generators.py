"""Seeded constructors for hosts, random perturbations, colorings and subgraphs.

Every function is a pure function of its inputs and ``seed``; ``seed`` may be an
int, a :class:`numpy.random.SeedSequence` or a :class:`numpy.random.Generator`.
"""
from __future__ import annotations

import math
import zlib
from dataclasses import dataclass

import numpy as np

from .graph import ColoredGraph, Graph, InputError, complement_size
from .params import min_degree_target

HOST_KINDS = ("random_dense", "complete_bipartite", "two_blob")

#: coefficient of sqrt(ln n / n) in the random_dense edge probability
DENSE_SLACK = 1.0


def make_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def derive_seed(master: int, trial: int, tag: str) -> np.random.SeedSequence:
    """Independent stream for (master seed, trial index, purpose tag)."""
    return np.random.SeedSequence(master, spawn_key=(trial, zlib.crc32(tag.encode())))


@dataclass(frozen=True)
class HostSpec:
    kind: str
    n: int
    delta: float
    blob_edge_prob: float = 0.22

    def __post_init__(self):
        if self.kind not in HOST_KINDS:
            raise InputError(f"unknown host kind {self.kind!r}; expected one of {HOST_KINDS}")
        if not 0 < self.delta < 0.5:
            raise InputError("delta must lie in (0, 0.5)")
        if self.n < 1:
            raise InputError("n must be positive")
        if self.kind == "two_blob" and self.n % 2:
            raise InputError("two_blob needs an even vertex count")
        if not 0 <= self.blob_edge_prob <= 1:
            raise InputError("blob_edge_prob must lie in [0, 1]")


@dataclass(frozen=True)
class SplitResult:
    h_prime: Graph
    h_double_prime: Graph


def _triu_sample(rng, n: int, p: float, offset: int = 0) -> np.ndarray:
    iu, iv = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    return np.stack([iu[keep], iv[keep]], axis=1) + offset


def gen_host(spec: HostSpec, seed=None) -> Graph:
    rng = make_rng(seed)
    n, delta = spec.n, spec.delta
    if spec.kind == "two_blob":
        half = n // 2
        a = _triu_sample(rng, half, spec.blob_edge_prob)
        b = _triu_sample(rng, half, spec.blob_edge_prob, offset=half)
        return Graph(n, np.concatenate([a, b]))

    d = min_degree_target(n, delta)
    if delta * n < 1 or d > n - 1:
        raise InputError(f"no graph on {n} vertices has minimum degree {delta}*n")
    if spec.kind == "complete_bipartite":
        iu, iv = np.meshgrid(np.arange(d), np.arange(d, n), indexing="ij")
        return Graph(n, np.stack([iu.ravel(), iv.ravel()], axis=1))

    p = min(1.0, 1.2 * delta + DENSE_SLACK * math.sqrt(math.log(n) / n))
    adj = np.zeros((n, n), dtype=bool)
    e = _triu_sample(rng, n, p)
    adj[e[:, 0], e[:, 1]] = True
    adj |= adj.T
    deg = adj.sum(axis=1)
    for v in range(n):
        need = d - deg[v]
        if need <= 0:
            continue
        free = np.flatnonzero(~adj[v])
        free = free[free != v]
        pick = rng.choice(free, size=need, replace=False)
        adj[v, pick] = adj[pick, v] = True
        deg[v] += need
        deg[pick] += 1
    return Graph(n, np.argwhere(np.triu(adj, 1)))


def perturb(h: Graph, m: int, seed=None) -> list[tuple[int, int]]:
    """``m`` distinct non-edges of ``h``, uniformly without replacement, in draw order."""
    rng = make_rng(seed)
    n = h.n
    avail = complement_size(h)
    if m < 0 or m > avail:
        raise InputError(f"cannot add {m} random edges: only {avail} non-edges exist")
    if m == 0:
        return []
    if avail >= 2 * m:
        taken = set(h._keys.tolist())
        out = []
        while len(out) < m:
            size = 2 * (m - len(out)) + 16
            u = rng.integers(0, n, size)
            v = rng.integers(0, n - 1, size)
            v = v + (v >= u)
            lo, hi = np.minimum(u, v), np.maximum(u, v)
            for a, b in zip(lo.tolist(), hi.tolist()):
                key = a * n + b
                if key in taken:
                    continue
                taken.add(key)
                out.append((a, b))
                if len(out) == m:
                    break
        return out
    iu, iv = np.triu_indices(n, k=1)
    keep = ~np.isin(iu * n + iv, h._keys)
    iu, iv = iu[keep], iv[keep]
    idx = rng.choice(len(iu), size=m, replace=False)
    return list(zip(iu[idx].tolist(), iv[idx].tolist()))


def color_uniform(g: Graph, r: int, seed=None) -> ColoredGraph:
    if r < 1 and g.num_edges:
        raise InputError("need at least one color for a nonempty edge set")
    rng = make_rng(seed)
    colors = rng.integers(1, r + 1, g.num_edges) if g.num_edges else np.empty(0, np.int64)
    return ColoredGraph(g, colors, r)


def split_host(h: Graph, p: float, seed=None) -> SplitResult:
    if not 0 <= p <= 1:
        raise InputError("split probability must lie in [0, 1]")
    rng = make_rng(seed)
    mask = rng.random(h.num_edges) < p
    return SplitResult(
        Graph._from_canonical(h.n, h.edge_array[mask].copy()),
        Graph._from_canonical(h.n, h.edge_array[~mask].copy()),
    )


def k_out(g: Graph, k: int, seed=None, strict: bool = True) -> Graph:
    """Union over vertices of ``k`` uniformly chosen incident edges per vertex.

    With ``strict=False`` a vertex of degree below ``k`` keeps all its edges
    instead of raising.
    """
    rng = make_rng(seed)
    deg = g.degrees
    if strict and g.n and deg.min() < k:
        v = int(np.argmin(deg))
        raise InputError(f"vertex {v} has degree {int(deg[v])} < k = {k}")
    indptr, indices, _ = g.csr
    chosen = []
    for v in range(g.n):
        d = int(deg[v])
        row = indices[indptr[v]:indptr[v + 1]]
        pick = row if d <= k else row[rng.choice(d, size=k, replace=False)]
        chosen.append(np.stack([np.full(len(pick), v), pick], axis=1))
    if not chosen:
        return Graph(g.n)
    return Graph(g.n, np.concatenate(chosen))
