"""Pure-Python (numpy) versions of the compiled kernels.

Same signatures and outputs as ``_ckernels``; used when the extension is not
built or when ``RAINBOWGRAPH_PURE_PYTHON=1``.
"""
import numpy as np


def _gather_arcs(indptr, vertices):
    """Arc indices of all CSR rows in ``vertices``, plus the row each arc came from."""
    starts = indptr[vertices]
    lens = indptr[vertices + 1] - starts
    total = int(lens.sum())
    if total == 0:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    rows = np.repeat(np.arange(len(vertices)), lens)
    offsets = np.arange(total) - np.repeat(np.cumsum(lens) - lens, lens)
    return starts[rows] + offsets, rows


def rainbow_states(indptr, indices, arc_color, r, src):
    n = len(indptr) - 1
    nm = 1 << r
    seen = np.zeros((n, nm), dtype=np.uint8)
    seen[src, 0] = 1
    arc_bit = np.left_shift(1, arc_color - 1)
    # every transition adds a bit, so increasing mask order is topological
    for mask in range(nm):
        frontier = np.flatnonzero(seen[:, mask])
        if frontier.size == 0:
            continue
        arcs, _ = _gather_arcs(indptr, frontier)
        bits = arc_bit[arcs]
        keep = (bits & mask) == 0
        seen[indices[arcs[keep]], mask | bits[keep]] = 1
    return seen


def rainbow_reach(indptr, indices, arc_color, r, src):
    n = len(indptr) - 1
    nm = 1 << r
    seen = np.zeros((n, nm), dtype=np.uint8)
    seen[src, 0] = 1
    reached = np.zeros(n, dtype=bool)
    reached[src] = True
    arc_bit = np.left_shift(1, arc_color - 1)
    for mask in range(nm):
        if reached.all():
            break
        frontier = np.flatnonzero(seen[:, mask])
        if frontier.size == 0:
            continue
        arcs, _ = _gather_arcs(indptr, frontier)
        bits = arc_bit[arcs]
        keep = (bits & mask) == 0
        targets = indices[arcs[keep]]
        seen[targets, mask | bits[keep]] = 1
        reached[targets] = True
    return reached


def bfs_distances(indptr, indices, src):
    n = len(indptr) - 1
    dist = np.full(n, -1, dtype=np.int64)
    dist[src] = 0
    frontier = np.array([src], dtype=np.int64)
    level = 0
    while frontier.size:
        level += 1
        arcs, _ = _gather_arcs(indptr, frontier)
        nxt = np.unique(indices[arcs])
        nxt = nxt[dist[nxt] < 0]
        dist[nxt] = level
        frontier = nxt
    return dist


def component_labels(indptr, indices):
    n = len(indptr) - 1
    label = np.full(n, -1, dtype=np.int64)
    comp = 0
    for s in range(n):
        if label[s] >= 0:
            continue
        label[bfs_distances(indptr, indices, s) >= 0] = comp
        comp += 1
    return label


def neighborhood_sizes(indptr, indices, members, offsets):
    n = len(indptr) - 1
    out = np.zeros(len(offsets) - 1, dtype=np.int64)
    inset = np.zeros(n, dtype=bool)
    for j in range(len(out)):
        s = members[offsets[j]:offsets[j + 1]]
        arcs, _ = _gather_arcs(indptr, s)
        inset[s] = True
        nb = np.unique(indices[arcs])
        out[j] = np.count_nonzero(~inset[nb])
        inset[s] = False
    return out
