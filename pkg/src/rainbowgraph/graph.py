"""Undirected simple graphs and edge-colored graphs on vertices ``0..n-1``.

Graphs are immutable once built. Edges are stored canonically as ``(u, v)``
with ``u < v`` in lexicographic order, which makes iteration order (and so
everything seeded downstream) reproducible.
"""
from __future__ import annotations

import io
from functools import cached_property
from typing import Iterable, Sequence, TextIO

import numpy as np

Edge = tuple[int, int]


class InputError(ValueError):
    """Malformed or infeasible input."""


def canonical(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _as_edge_array(n: int, edges) -> np.ndarray:
    if isinstance(edges, np.ndarray):
        arr = edges.astype(np.int64, copy=False).reshape(-1, 2)
    else:
        arr = np.array(list(edges), dtype=np.int64).reshape(-1, 2)
    if arr.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    if arr.min() < 0 or arr.max() >= n:
        bad = arr[(arr < 0).any(axis=1) | (arr >= n).any(axis=1)][0]
        raise InputError(f"edge {tuple(bad.tolist())} has an endpoint outside 0..{n - 1}")
    if (arr[:, 0] == arr[:, 1]).any():
        v = int(arr[arr[:, 0] == arr[:, 1]][0, 0])
        raise InputError(f"self-loop at vertex {v}")
    arr = np.sort(arr, axis=1)
    return np.unique(arr, axis=0)


class Graph:
    """Simple undirected graph.

    ``edges`` may be any iterable of vertex pairs or an ``(E, 2)`` array;
    duplicates and orientation are normalised away.
    """

    def __init__(self, n: int, edges: Iterable[Sequence[int]] | np.ndarray = ()):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        self.n = int(n)
        self.edge_array = _as_edge_array(self.n, edges)
        self.edge_array.setflags(write=False)

    @classmethod
    def _from_canonical(cls, n: int, arr: np.ndarray) -> "Graph":
        g = cls.__new__(cls)
        g.n = n
        g.edge_array = arr
        arr.setflags(write=False)
        return g

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.edge_array, other.edge_array)

    __hash__ = None  # type: ignore[assignment]

    @property
    def num_edges(self) -> int:
        return len(self.edge_array)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(map(tuple, self.edge_array.tolist()))

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def _keys(self) -> np.ndarray:
        # sorted because edge_array is lexicographically sorted
        return self.edge_array[:, 0] * self.n + self.edge_array[:, 1]

    def edge_index(self, u: int, v: int) -> int:
        """Position of edge ``{u, v}`` in :attr:`edges`, or -1."""
        u, v = canonical(u, v)
        key = u * self.n + v
        i = int(np.searchsorted(self._keys, key))
        if i < len(self._keys) and self._keys[i] == key:
            return i
        return -1

    def has_edge(self, u: int, v: int) -> bool:
        return self.edge_index(u, v) >= 0

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(indptr, indices, arc_edge)``; rows sorted by neighbor index.

        ``arc_edge[a]`` is the index into :attr:`edges` of the edge behind arc ``a``.
        """
        e = self.edge_array
        m = len(e)
        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        eid = np.concatenate([np.arange(m), np.arange(m)])
        order = np.lexsort((dst, src))
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=self.n), out=indptr[1:])
        out = (indptr, np.ascontiguousarray(dst[order]), np.ascontiguousarray(eid[order]))
        for a in out:
            a.setflags(write=False)
        return out

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        indptr, indices, _ = self.csr
        flat = indices.tolist()
        bounds = indptr.tolist()
        return tuple(tuple(flat[bounds[v]:bounds[v + 1]]) for v in range(self.n))

    @cached_property
    def adj_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.csr[0])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return int(self.degrees[v])

    def min_degree(self) -> int:
        return int(self.degrees.min()) if self.n else 0

    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    def adjacency_matrix(self, dtype=np.float32) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        e = self.edge_array
        a[e[:, 0], e[:, 1]] = 1
        a[e[:, 1], e[:, 0]] = 1
        return a


class ColoredGraph:
    """A graph with a total edge coloring ``edge -> 1..r``.

    ``colors`` is aligned with ``graph.edges`` (an array/sequence) or a mapping
    from vertex pairs to colors.
    """

    def __init__(self, graph: Graph, colors, r: int):
        self.graph = graph
        self.r = int(r)
        if isinstance(colors, dict):
            arr = np.zeros(graph.num_edges, dtype=np.int64)
            if len(colors) != graph.num_edges:
                raise InputError("coloring must cover every edge exactly once")
            for (u, v), c in colors.items():
                i = graph.edge_index(u, v)
                if i < 0:
                    raise InputError(f"colored pair {(u, v)} is not an edge")
                arr[i] = c
        else:
            arr = np.asarray(colors, dtype=np.int64).reshape(-1)
            if len(arr) != graph.num_edges:
                raise InputError("coloring must cover every edge exactly once")
        if len(arr) and (arr.min() < 1 or arr.max() > self.r):
            raise InputError(f"edge colors must lie in 1..{self.r}")
        self.colors = arr
        self.colors.setflags(write=False)

    def __repr__(self) -> str:
        return f"ColoredGraph(n={self.n}, m={self.graph.num_edges}, r={self.r})"

    @property
    def n(self) -> int:
        return self.graph.n

    def color(self, u: int, v: int) -> int:
        i = self.graph.edge_index(u, v)
        if i < 0:
            raise InputError(f"{canonical(u, v)} is not an edge")
        return int(self.colors[i])

    @cached_property
    def coloring(self) -> dict[Edge, int]:
        return dict(zip(self.graph.edges, self.colors.tolist()))

    @cached_property
    def arc_colors(self) -> np.ndarray:
        out = np.ascontiguousarray(self.colors[self.graph.csr[2]])
        out.setflags(write=False)
        return out

    def restrict(self, sub: Graph) -> "ColoredGraph":
        """The coloring restricted to a subgraph ``sub`` on the same vertex set."""
        idx = np.searchsorted(self.graph._keys, sub._keys)
        if len(idx) and (idx.max() >= self.graph.num_edges
                         or not np.array_equal(self.graph._keys[idx], sub._keys)):
            raise InputError("subgraph has edges outside the colored graph")
        return ColoredGraph(sub, self.colors[idx], self.r)


def union(g: Graph, extra: Iterable[Sequence[int]]) -> Graph:
    """Graph on the same vertices with edge set ``edges(g) | extra``."""
    extra_arr = _as_edge_array(g.n, extra)
    if len(extra_arr) == 0:
        return g
    return Graph._from_canonical(
        g.n, np.unique(np.concatenate([g.edge_array, extra_arr]), axis=0)
    )


def difference(g: Graph, other: Graph) -> Graph:
    """Edges of ``g`` not present in ``other`` (same vertex count)."""
    keep = ~np.isin(g._keys, other._keys)
    return Graph._from_canonical(g.n, g.edge_array[keep].copy())


def complement_size(g: Graph) -> int:
    return g.n * (g.n - 1) // 2 - g.num_edges


def complement_pairs(g: Graph) -> list[Edge]:
    """All pairs of distinct vertices that are not edges of ``g``, in lexicographic order."""
    n = g.n
    iu, iv = np.triu_indices(n, k=1)
    keys = iu * n + iv
    keep = ~np.isin(keys, g._keys)
    return list(zip(iu[keep].tolist(), iv[keep].tolist()))


def is_rainbow(cg: ColoredGraph, edges: Iterable[Sequence[int]]) -> bool:
    seen = set()
    for u, v in edges:
        c = cg.color(u, v)
        if c in seen:
            return False
        seen.add(c)
    return True


class DisjointSet:
    """Union-find with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.count = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.count -= 1
        return True


def components(g: Graph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    from . import _kernels

    indptr, indices, _ = g.csr
    labels = _kernels.component_labels(indptr, indices)
    out: list[list[int]] = [[] for _ in range(int(labels.max()) + 1 if g.n else 0)]
    for v, c in enumerate(labels.tolist()):
        out[c].append(v)
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


# ---------------------------------------------------------------------------
# text format: header "n r", then one "u v color" line per edge.
# Uncolored graphs use r = 0 and color 0 throughout.


def write_graph(g: Graph | ColoredGraph, fh: TextIO) -> None:
    if isinstance(g, ColoredGraph):
        fh.write(f"{g.n} {g.r}\n")
        for (u, v), c in zip(g.graph.edges, g.colors.tolist()):
            fh.write(f"{u} {v} {c}\n")
    else:
        fh.write(f"{g.n} 0\n")
        for u, v in g.edges:
            fh.write(f"{u} {v} 0\n")


def dumps(g: Graph | ColoredGraph) -> str:
    buf = io.StringIO()
    write_graph(g, buf)
    return buf.getvalue()


def read_graph(fh: TextIO) -> Graph | ColoredGraph:
    """Parse the text format; returns a :class:`Graph` when ``r == 0``.

    Edge order in the file is not significant, except that :func:`read_edge_list`
    preserves it for booster sequences.
    """
    n, r, pairs, colors = _parse(fh)
    if r == 0:
        if any(colors):
            raise InputError("uncolored graph (r = 0) must use color 0")
        return Graph(n, pairs)
    if len(set(map(lambda p: canonical(*p), pairs))) != len(pairs):
        raise InputError("duplicate edge in colored graph")
    g = Graph(n, pairs)
    return ColoredGraph(g, {canonical(u, v): c for (u, v), c in zip(pairs, colors)}, r)


def read_edge_list(fh: TextIO) -> tuple[int, list[Edge]]:
    """Vertex count and edges of a graph file, in file order (duplicates dropped)."""
    n, _, pairs, _ = _parse(fh)
    seen: set[Edge] = set()
    out = []
    for u, v in pairs:
        e = canonical(u, v)
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise InputError(f"bad edge {(u, v)} for n = {n}")
        if e not in seen:
            seen.add(e)
            out.append(e)
    return n, out


def loads(text: str) -> Graph | ColoredGraph:
    return read_graph(io.StringIO(text))


def _parse(fh: TextIO):
    lines = [ln.split() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise InputError("empty graph file")
    try:
        n, r = (int(x) for x in lines[0])
        rows = [tuple(int(x) for x in ln) for ln in lines[1:]]
    except ValueError as exc:
        raise InputError(f"malformed graph file: {exc}") from None
    if any(len(row) != 3 for row in rows):
        raise InputError("edge lines must have the form 'u v color'")
    pairs = [(u, v) for u, v, _ in rows]
    colors = [c for _, _, c in rows]
    return n, r, pairs, colors
