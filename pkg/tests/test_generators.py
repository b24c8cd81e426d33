import itertools
import math

import numpy as np
import pytest

from conftest import complete_graph
from rainbowgraph.generators import (
    HostSpec, color_uniform, derive_seed, gen_host, k_out, perturb, split_host,
)
from rainbowgraph.graph import Graph, InputError, complement_pairs, is_rainbow


def test_complete_bipartite_host():
    g = gen_host(HostSpec("complete_bipartite", 10, 0.3), 0)
    left, right = set(range(3)), set(range(3, 10))
    assert g.num_edges == 21
    assert all((u in left) != (v in left) for u, v in g.edges)
    assert g.min_degree() == 3
    assert {v for e in g.edges for v in e} == left | right


def test_two_blob_with_full_probability():
    g = gen_host(HostSpec("two_blob", 8, 0.2, blob_edge_prob=1.0), 0)
    want = set(itertools.combinations(range(4), 2)) | set(itertools.combinations(range(4, 8), 2))
    assert g.edge_set == want


def test_random_dense_meets_min_degree():
    for seed in range(5):
        g = gen_host(HostSpec("random_dense", 100, 0.2), seed)
        assert g.min_degree() >= 20


def test_host_spec_validation():
    for bad in (("nope", 10, 0.3), ("random_dense", 10, 0.0), ("random_dense", 10, 0.5),
                ("two_blob", 9, 0.2), ("random_dense", 0, 0.2)):
        with pytest.raises(InputError):
            HostSpec(*bad)
    with pytest.raises(InputError):
        gen_host(HostSpec("random_dense", 3, 0.2), 0)  # δn < 1


def test_host_determinism():
    spec = HostSpec("random_dense", 60, 0.3)
    assert gen_host(spec, 5) == gen_host(spec, 5)
    assert gen_host(spec, 5) != gen_host(spec, 6)


def test_derive_seed_streams():
    a = derive_seed(1, 0, "host").generate_state(4)
    assert np.array_equal(a, derive_seed(1, 0, "host").generate_state(4))
    for other in (derive_seed(1, 1, "host"), derive_seed(1, 0, "color"), derive_seed(2, 0, "host")):
        assert not np.array_equal(a, other.generate_state(4))


def test_perturb_examples():
    assert perturb(complete_graph(5), 0, 1) == []
    with pytest.raises(InputError):
        perturb(complete_graph(5), 1, 1)
    g = Graph(4, [(0, 1)])
    new = perturb(g, 5, 3)
    assert sorted(new) == complement_pairs(g)
    with pytest.raises(InputError):
        perturb(g, 6, 3)
    with pytest.raises(InputError):
        perturb(g, -1, 3)


@pytest.mark.parametrize("m", [1, 3, 6, 9])
def test_perturb_is_uniform(m):
    # 10 pairs; both the rejection path (m <= 5) and the enumeration path are used
    h = Graph(5)
    counts = {}
    trials = 3000
    rng = np.random.default_rng(m)
    for _ in range(trials):
        out = perturb(h, m, rng)
        assert len(set(out)) == m and all(u < v for u, v in out)
        for e in out:
            counts[e] = counts.get(e, 0) + 1
    p = m / 10
    sd = math.sqrt(trials * p * (1 - p))
    for e in itertools.combinations(range(5), 2):
        assert abs(counts.get(e, 0) - trials * p) < 5 * sd + 1e-9


def test_perturb_avoids_existing_edges():
    h = gen_host(HostSpec("random_dense", 80, 0.3), 2)
    new = perturb(h, 200, 9)
    assert len(set(new)) == 200
    assert not set(new) & h.edge_set


def test_color_uniform_range_and_determinism():
    g = complete_graph(12)
    cg = color_uniform(g, 5, 4)
    assert cg.colors.min() >= 1 and cg.colors.max() <= 5
    assert np.array_equal(cg.colors, color_uniform(g, 5, 4).colors)
    with pytest.raises(InputError):
        color_uniform(g, 0, 1)


def test_triangle_rainbow_probability():
    # exact value by enumerating all 27 colorings of a triangle with 3 colors
    tri = Graph(3, [(0, 1), (1, 2), (0, 2)])
    exact = sum(len(set(c)) == 3 for c in itertools.product(range(3), repeat=3)) / 27
    assert exact == pytest.approx(2 / 9)
    trials = 20_000
    rng = np.random.default_rng(0)
    hits = sum(is_rainbow(color_uniform(tri, 3, rng), tri.edges) for _ in range(trials))
    sd = math.sqrt(exact * (1 - exact) / trials)
    assert abs(hits / trials - exact) < 5 * sd


def test_split_extremes():
    h = complete_graph(10)
    s0 = split_host(h, 0.0, 1)
    assert s0.h_prime.num_edges == 0 and s0.h_double_prime == h
    s1 = split_host(h, 1.0, 1)
    assert s1.h_prime == h and s1.h_double_prime.num_edges == 0


def test_split_partitions_edges():
    h = gen_host(HostSpec("random_dense", 80, 0.3), 1)
    s = split_host(h, 0.3, 2)
    assert not s.h_prime.edge_set & s.h_double_prime.edge_set
    assert s.h_prime.edge_set | s.h_double_prime.edge_set == h.edge_set
    with pytest.raises(InputError):
        split_host(h, 1.5, 0)


def _binom_cdf(n, p, k):
    """P(Bin(n, p) < k), exactly."""
    return sum(math.comb(n, j) * p**j * (1 - p) ** (n - j) for j in range(k))


def test_split_degrees_follow_binomial():
    # host K_2001 (min degree 2000), p = 1/20: each H' degree is Bin(2000, 1/20)
    h = complete_graph(2001)
    q80 = _binom_cdf(2000, 1 / 20, 80)
    q60 = _binom_cdf(2000, 1 / 20, 60)
    below80 = 0
    min_ok = 0
    for seed in range(100):
        hp = split_host(h, 1 / 20, seed).h_prime
        deg = np.bincount(hp.edge_array.ravel(), minlength=h.n)
        below80 += int((deg < 80).sum())
        min_ok += int(deg.min() >= 60)
    total = 100 * h.n
    sd = math.sqrt(total * q80)  # vertices are nearly independent
    assert abs(below80 - total * q80) < 6 * sd
    # min degree >= 2000/33: oracle probability ~0.99 per seed
    assert min_ok >= 95
    assert (1 - q60) ** h.n > 0.98


def test_k_out_examples():
    k5 = complete_graph(5)
    assert k_out(k5, 4, 0) == k5
    path = Graph(3, [(0, 1), (1, 2)])
    assert k_out(path, 1, 0).edge_set >= {(0, 1), (1, 2)}  # forced choices at the ends
    with pytest.raises(InputError):
        k_out(path, 2, 0)
    assert k_out(path, 2, 0, strict=False) == path


def test_k_out_degrees():
    g = complete_graph(20)
    for seed in range(50):
        ko = k_out(g, 6, seed)
        assert ko.edge_set <= g.edge_set
        assert ko.min_degree() >= 6 and ko.max_degree() <= 19
        assert ko.num_edges <= 6 * 20
        assert ko == k_out(g, 6, seed)
