"""Time the compiled kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--n 400] [--repeat 5]
"""
import argparse
import time

import numpy as np

from rainbowgraph._kernels import _pykernels as py
from rainbowgraph.generators import HostSpec, color_uniform, gen_host, perturb
from rainbowgraph.graph import union

try:
    from rainbowgraph._kernels import _ckernels as cy
except ImportError:
    cy = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=400)
    ap.add_argument("--r", type=int, default=7)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    a = ap.parse_args()

    h = gen_host(HostSpec("random_dense", a.n, 0.25), a.seed)
    cg = color_uniform(union(h, perturb(h, a.n, a.seed)), a.r, a.seed)
    indptr, indices, _ = cg.graph.csr
    arc = cg.arc_colors
    rng = np.random.default_rng(a.seed)
    sizes = rng.integers(4, a.n // 5, 2000)
    members = np.concatenate([rng.choice(a.n, s, replace=False) for s in sizes]).astype(np.int64)
    offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)

    jobs = {
        "rainbow_states": lambda k: k.rainbow_states(indptr, indices, arc, a.r, 0),
        "rainbow_reach": lambda k: k.rainbow_reach(indptr, indices, arc, a.r, 0),
        "bfs_distances x n": lambda k: [k.bfs_distances(indptr, indices, u) for u in range(a.n)],
        "component_labels": lambda k: k.component_labels(indptr, indices),
        "neighborhood_sizes": lambda k: k.neighborhood_sizes(indptr, indices, members, offsets),
    }
    print(f"graph n={a.n} edges={cg.graph.num_edges} r={a.r}; best of {a.repeat}")
    print(f"{'kernel':<22}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, job in jobs.items():
        tp = best_of(lambda: job(py), a.repeat)
        if cy is None:
            print(f"{name:<22}{tp * 1e3:>12.2f}{'n/a':>12}{'':>10}")
            continue
        tc = best_of(lambda: job(cy), a.repeat)
        print(f"{name:<22}{tp * 1e3:>12.2f}{tc * 1e3:>12.2f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
