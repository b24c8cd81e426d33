"""Independent certificate checks for Hamilton cycles and packings.

Kept free of solver code so a solver bug cannot hide behind a shared helper.
"""
from __future__ import annotations

from typing import Collection, Iterable, Mapping, Sequence


def cycle_edges(cycle: Sequence[int]) -> list[tuple[int, int]]:
    k = len(cycle)
    out = []
    for i in range(k):
        a, b = cycle[i], cycle[(i + 1) % k]
        out.append((a, b) if a < b else (b, a))
    return out


def is_hamilton_cycle(cycle: Sequence[int], n: int,
                      edges: Collection[tuple[int, int]]) -> bool:
    """``cycle`` visits each of ``0..n-1`` once and every step (closing step included) is an edge."""
    if n < 3 or len(cycle) != n or sorted(cycle) != list(range(n)):
        return False
    return all(e in edges for e in cycle_edges(cycle))


def is_rainbow_cycle(cycle: Sequence[int], coloring: Mapping[tuple[int, int], int]) -> bool:
    colors = []
    for e in cycle_edges(cycle):
        if e not in coloring:
            return False
        colors.append(coloring[e])
    return len(set(colors)) == len(colors)


def pairwise_edge_disjoint(cycles: Iterable[Sequence[int]]) -> bool:
    seen: set[tuple[int, int]] = set()
    for c in cycles:
        es = cycle_edges(c)
        if len(set(es)) != len(es) or seen.intersection(es):
            return False
        seen.update(es)
    return True
