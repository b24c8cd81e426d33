"""Connectivity and vertex-expansion checks: is |N(S)| > 2|S| for all small S?

Sets up to ``small_cap`` are checked exhaustively; larger sets up to
``max_fraction * n`` are sampled with log-uniform sizes.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import numpy as np

from . import _kernels
from .generators import make_rng
from .graph import Graph, InputError, components

ENUMERATION_LIMIT = 10**7


def external_neighborhood(g: Graph, s: Iterable[int]) -> set[int]:
    s = set(s)
    out: set[int] = set()
    for u in s:
        out.update(g.adj[u])
    return out - s


@dataclass
class ExpansionReport:
    connected: bool
    small_set_violations: list[tuple[tuple[int, ...], int]] = field(default_factory=list)
    sampled_violations: list[tuple[tuple[int, ...], int]] = field(default_factory=list)
    small_cap: int = 0
    samples: int = 0
    max_size: int = 0
    num_components: int = 1

    @property
    def ok(self) -> bool:
        return self.connected and not self.small_set_violations and not self.sampled_violations

    def to_text(self) -> str:
        lines = [
            f"connected {str(self.connected).lower()}",
            f"components {self.num_components}",
            f"small_cap {self.small_cap}",
            f"max_size {self.max_size}",
            f"samples {self.samples}",
            f"small_set_violations {len(self.small_set_violations)}",
            f"sampled_violations {len(self.sampled_violations)}",
        ]
        for kind, viols in (("small", self.small_set_violations),
                            ("sampled", self.sampled_violations)):
            for s, size in viols:
                lines.append(f"violation {kind} |S|={len(s)} |N(S)|={size} S={' '.join(map(str, s))}")
        lines.append(f"ok {str(self.ok).lower()}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["phase", "set_size", "neighborhood_size", "members"])
        for kind, viols in (("small", self.small_set_violations),
                            ("sampled", self.sampled_violations)):
            for s, size in viols:
                w.writerow([kind, len(s), size, " ".join(map(str, s))])
        return buf.getvalue()


def _small_set_violations(g: Graph, size: int) -> list[tuple[tuple[int, ...], int]]:
    # Every member v of a violating S has N(v) within N(S) ∪ S∖{v}, so
    # deg(v) <= 2|S| + |S| - 1; only such vertices need enumerating.
    cand = np.flatnonzero(g.degrees <= 3 * size - 1).tolist()
    adj = g.adj_sets
    out = []
    for s in combinations(cand, size):
        nb = set().union(*(adj[v] for v in s)).difference(s)
        if len(nb) <= 2 * size:
            out.append((s, len(nb)))
    return out


def _sample_sizes(rng, lo: int, hi: int, count: int) -> np.ndarray:
    """Log-uniform integer sizes in ``[lo, hi]``."""
    x = rng.uniform(math.log(lo), math.log(hi + 1), count)
    return np.clip(np.floor(np.exp(x)).astype(np.int64), lo, hi)


def check_expansion(g: Graph, max_fraction: float = 0.2, small_cap: int = 3,
                    samples: int = 10_000, seed=None) -> ExpansionReport:
    if not 0 < max_fraction <= 1:
        raise InputError("max_fraction must lie in (0, 1]")
    n = g.n
    if small_cap < 0 or math.comb(n, small_cap) > ENUMERATION_LIMIT:
        raise InputError(
            f"exhaustive check over C({n}, {small_cap}) sets exceeds {ENUMERATION_LIMIT}"
        )
    rng = make_rng(seed)
    comps = components(g)
    max_size = math.floor(max_fraction * n)
    report = ExpansionReport(connected=len(comps) <= 1, small_cap=small_cap,
                             max_size=max_size, num_components=len(comps))

    for size in range(1, min(small_cap, max_size) + 1):
        report.small_set_violations.extend(_small_set_violations(g, size))

    lo = small_cap + 1
    if samples > 0 and lo <= max_size:
        sizes = _sample_sizes(rng, lo, max_size, samples)
        members = np.concatenate([rng.choice(n, size=s, replace=False) for s in sizes.tolist()])
        offsets = np.zeros(samples + 1, dtype=np.int64)
        np.cumsum(sizes, out=offsets[1:])
        indptr, indices, _ = g.csr
        nsizes = _kernels.neighborhood_sizes(indptr, indices, members.astype(np.int64), offsets)
        for j in np.flatnonzero(nsizes <= 2 * sizes).tolist():
            s = tuple(sorted(members[offsets[j]:offsets[j + 1]].tolist()))
            report.sampled_violations.append((s, int(nsizes[j])))
        report.samples = samples
    return report
