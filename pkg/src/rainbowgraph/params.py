"""Derived constants of the perturbed-colored-graph model.

All logarithms are natural.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import InputError

#: probability that a host edge lands in the sparse part H'
SPLIT_P = 1 / 20
#: k of the k-out subgraph used for Hamiltonicity
K_OUT = 6


def theta(delta: float) -> float:
    return -math.log(delta)


def cycle_count(n: int, delta: float) -> int:
    """Number of edge-disjoint rainbow Hamilton cycles targeted, floored and at least 1."""
    th = theta(delta)
    return max(1, math.floor(min(delta * n / 260, n / (1000 + 200 * th))))


def min_degree_target(n: int, delta: float) -> int:
    # guard against 0.3 * 10 == 3.0000000000000004
    return math.ceil(delta * n - 1e-9)


def hamilton_edge_threshold(n: int, delta: float, t: int | None = None) -> float:
    """Random edges sufficient for ``t`` rainbow Hamilton cycles: (435+75θ)·t·n."""
    if t is None:
        t = cycle_count(n, delta)
    return (435 + 75 * theta(delta)) * t * n


def hamilton_color_threshold(n: int, delta: float) -> float:
    """Colors sufficient for the rainbow packing: (120+20θ)·n."""
    return (120 + 20 * theta(delta)) * n


def booster_pool_size(n: int, delta: float) -> float:
    """|Q| = (81+15θ)·n random edges for one Hamilton cycle."""
    return (81 + 15 * theta(delta)) * n


def q1_size(n: int, delta: float) -> float:
    """|Q1| = (45+15θ)·n edges supporting expansion."""
    return (45 + 15 * theta(delta)) * n


def q2_size(n: int) -> float:
    """|Q2| = 36·n booster edges."""
    return 36 * n


def chunk_size(n: int, delta: float) -> float:
    """Size (435+75θ)·n of each chunk Q_i' cut from H'' ∪ R."""
    return (435 + 75 * theta(delta)) * n


def q1_fraction(delta: float) -> float:
    th = theta(delta)
    return (45 + 15 * th) / (81 + 15 * th)


def rc3_edge_threshold(n: int, delta: float) -> int:
    """m = ⌈60 δ⁻² ln n⌉ random edges for rainbow connectivity with 3 colors."""
    return math.ceil(60 * delta ** -2 * math.log(n))


def rc4_counterexample_edges(n: int) -> int:
    """m = ⌈0.5 ln n⌉: too few random edges for 4 colors on the two-blob host."""
    return math.ceil(0.5 * math.log(n))


@dataclass(frozen=True)
class PerturbConfig:
    """Parameters of one draw of the colored perturbed graph."""

    n: int
    delta: float
    m: int
    r: int
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.delta < 0.5:
            raise InputError("delta must lie in (0, 0.5)")
        if self.m < 0 or self.r < 0 or self.n < 1:
            raise InputError("n must be positive and m, r non-negative")

    @property
    def theta(self) -> float:
        return theta(self.delta)

    @property
    def t(self) -> int:
        return cycle_count(self.n, self.delta)

    @property
    def paper_m(self) -> float:
        return hamilton_edge_threshold(self.n, self.delta, self.t)

    @property
    def paper_r(self) -> float:
        return hamilton_color_threshold(self.n, self.delta)

    def clamped(self, complement: int) -> "PerturbConfig":
        """Copy with ``m`` clamped to the number of available non-edges."""
        if self.m <= complement:
            return self
        return PerturbConfig(self.n, self.delta, complement, self.r, self.seed)
