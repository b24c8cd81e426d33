"""Seeded Monte Carlo sweeps over the model parameters, with CSV output.

Each trial draws host → random edges → coloring from streams derived from the
trial's seed, which is itself derived from (master seed, trial index). The same
trial index therefore sees the same host at every sweep point.
"""
from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import TextIO

import numpy as np

from . import params as P
from .expansion import check_expansion
from .generators import (
    HostSpec, color_uniform, derive_seed, gen_host, k_out, perturb, split_host,
)
from .graph import InputError, union
from .hamiltonicity import PackConfig, find_hamilton, pack_rainbow_hamilton
from .rainbow import is_rainbow_connected

PROPERTIES = ("hamiltonian", "rainbow_hamiltonian", "rainbow_pack_t",
              "rainbow_connected", "expansion_ok")
SWEEPS = ("m", "r", "n")
CSV_COLUMNS = ("property", "kind", "n", "delta", "m", "r", "trials", "successes",
               "fraction", "mean_ms", "seed", "status")


def resolve_count(expr, n: int, delta: float) -> int:
    """An integer count, or a named threshold evaluated at (n, delta).

    Names: ``rc3`` ⌈60δ⁻² ln n⌉, ``rc4`` ⌈0.5 ln n⌉, ``paper_m`` (435+75θ)tn,
    ``paper_r`` (120+20θ)n, ``q1`` (45+15θ)n, ``pow<x>`` ⌈n^x⌉, ``<x>n`` ⌈x·n⌉.
    """
    if isinstance(expr, (int, np.integer)):
        return int(expr)
    s = str(expr).strip()
    try:
        return int(s)
    except ValueError:
        pass
    if s == "rc3":
        return P.rc3_edge_threshold(n, delta)
    if s == "rc4":
        return P.rc4_counterexample_edges(n)
    if s == "paper_m":
        return math.ceil(P.hamilton_edge_threshold(n, delta))
    if s == "paper_r":
        return math.ceil(P.hamilton_color_threshold(n, delta))
    if s == "q1":
        return math.ceil(P.q1_size(n, delta))
    try:
        if s.startswith("pow"):
            return math.ceil(n ** float(s[3:]))
        if s.endswith("n"):
            return math.ceil(float(s[:-1]) * n)
    except ValueError:
        pass
    raise InputError(f"cannot interpret count {expr!r}")


@dataclass
class ExperimentPlan:
    property: str
    host: HostSpec
    sweep: str
    values: list
    m: object = 0
    r: object = 1
    trials: int = 1
    master_seed: int = 0
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.property not in PROPERTIES:
            raise InputError(f"unknown property {self.property!r}; expected one of {PROPERTIES}")
        if self.sweep not in SWEEPS:
            raise InputError(f"sweep variable must be one of {SWEEPS}")
        if not self.values:
            raise InputError("sweep value list is empty")
        if self.trials < 1:
            raise InputError("trials must be at least 1")

    def points(self) -> list[tuple[HostSpec, int, int]]:
        out = []
        for val in self.values:
            host, m, r = self.host, self.m, self.r
            if self.sweep == "n":
                host = replace(host, n=int(val))
            elif self.sweep == "m":
                m = val
            else:
                r = val
            out.append((host, resolve_count(m, host.n, host.delta),
                        resolve_count(r, host.n, host.delta)))
        return out


@dataclass
class ExperimentRecord:
    property: str
    kind: str
    n: int
    delta: float
    m: int
    r: int
    trials: int
    successes: int
    mean_ms: float
    seed: int
    trial_seeds: list[int] = field(default_factory=list)
    skipped: str | None = None

    @property
    def fraction(self) -> float:
        return self.successes / self.trials if self.trials else 0.0


def trial_seed(master: int, trial: int) -> int:
    return int(derive_seed(master, trial, "trial").generate_state(1, np.uint64)[0])


def _expansion_graph(h, seed_int: int, q1_edges: int, k: int = P.K_OUT, split_p: float = P.SPLIT_P):
    """k-out of the sparse host part H' plus ``q1_edges`` uniformly random new edges."""
    hp = split_host(h, split_p, derive_seed(seed_int, 0, "split")).h_prime
    ko = k_out(hp, k, derive_seed(seed_int, 0, "kout"), strict=False)
    q1 = perturb(ko, q1_edges, derive_seed(seed_int, 0, "q1"))
    return ko, q1


def evaluate(prop: str, host: HostSpec, m: int, r: int, options: dict, seed: int) -> bool:
    """Run one trial of ``prop`` at one parameter point."""
    h = gen_host(host, derive_seed(seed, 0, "host"))
    if prop == "expansion_ok":
        ko, q1 = _expansion_graph(h, seed, m, int(options.get("k", P.K_OUT)),
                               float(options.get("split_p", P.SPLIT_P)))
        rep = check_expansion(union(ko, q1), float(options.get("max_fraction", 0.2)),
                              int(options.get("small_cap", 3)), int(options.get("samples", 10_000)),
                              derive_seed(seed, 0, "expansion"))
        return rep.ok
    extra = perturb(h, m, derive_seed(seed, 0, "perturb"))
    g = union(h, extra)
    if prop == "hamiltonian":
        return find_hamilton(g, rotation_budget=options.get("rotation_budget")).found
    cg = color_uniform(g, r, derive_seed(seed, 0, "color"))
    if prop == "rainbow_connected":
        return is_rainbow_connected(cg).connected
    t = 1 if prop == "rainbow_hamiltonian" else int(options.get("t", P.cycle_count(host.n, host.delta)))
    cfg = PackConfig(
        delta=host.delta,
        k=int(options.get("k", P.K_OUT)),
        split_p=float(options.get("split_p", P.SPLIT_P)),
        chunk=_opt_count(options, "chunk", host),
        target=_opt_count(options, "target", host),
        q1_frac=_opt_float(options, "q1_frac"),
        q2_frac=_opt_float(options, "q2_frac"),
        rotation_budget=_opt_count(options, "rotation_budget", host),
    )
    return pack_rainbow_hamilton(cg, h, t, cfg, derive_seed(seed, 0, "pack")).complete


def _opt_count(options, key, host):
    return None if options.get(key) is None else resolve_count(options[key], host.n, host.delta)


def _opt_float(options, key):
    return None if options.get(key) is None else float(options[key])


def _run_trial(args):
    prop, host, m, r, options, seed = args
    t0 = time.perf_counter()
    try:
        ok = evaluate(prop, host, m, r, options, seed)
    except InputError as exc:
        return None, str(exc), 0.0
    return bool(ok), None, (time.perf_counter() - t0) * 1000


def run_plan(plan: ExperimentPlan, threads: int = 1) -> list[ExperimentRecord]:
    """Evaluate every (point, trial); results do not depend on ``threads``."""
    seeds = [trial_seed(plan.master_seed, i) for i in range(plan.trials)]
    points = plan.points()
    tasks = [(plan.property, host, m, r, plan.options, s)
             for host, m, r in points for s in seeds]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_trial, tasks))
    else:
        results = [_run_trial(t) for t in tasks]

    records = []
    for j, (host, m, r) in enumerate(points):
        chunk = results[j * plan.trials:(j + 1) * plan.trials]
        errors = [err for _, err, _ in chunk if err is not None]
        rec = ExperimentRecord(plan.property, host.kind, host.n, host.delta, m, r,
                               plan.trials, 0, 0.0, plan.master_seed, list(seeds))
        if errors:
            rec.skipped = errors[0]
        else:
            rec.successes = sum(ok for ok, _, _ in chunk)
            rec.mean_ms = sum(ms for _, _, ms in chunk) / len(chunk)
        records.append(rec)
    return records


def emit_csv(records: list[ExperimentRecord], fh: TextIO | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rec in records:
        w.writerow([
            rec.property, rec.kind, rec.n, f"{rec.delta:g}", rec.m, rec.r, rec.trials,
            rec.successes, f"{rec.fraction:.4f}", f"{rec.mean_ms:.3f}", rec.seed,
            "ok" if rec.skipped is None else f"skipped: {rec.skipped}",
        ])
    text = buf.getvalue()
    if fh is not None:
        fh.write(text)
    return text


def _parse_value(s: str):
    for cast in (int, float):
        try:
            return cast(s)
        except ValueError:
            pass
    return s


def parse_plan(text: str) -> ExperimentPlan:
    """Parse ``key=value`` lines (``#`` comments allowed) into a plan.

    Keys: property, kind, n, delta, blob_edge_prob, m, r, sweep, values
    (comma-separated), trials, seed; any other key becomes a property option.
    """
    kv = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"plan line {line!r} is not key=value")
        k, v = line.split("=", 1)
        kv[k.strip()] = v.strip()
    try:
        host = HostSpec(kv.pop("kind", "random_dense"), int(kv.pop("n")),
                        float(kv.pop("delta", 0.3)), float(kv.pop("blob_edge_prob", 0.22)))
        sweep = kv.pop("sweep", "m")
        values = [_parse_value(v.strip()) for v in kv.pop("values").split(",") if v.strip()]
        plan = ExperimentPlan(
            property=kv.pop("property"), host=host, sweep=sweep, values=values,
            m=_parse_value(kv.pop("m", "0")), r=_parse_value(kv.pop("r", "1")),
            trials=int(kv.pop("trials", 1)), master_seed=int(kv.pop("seed", 0)),
        )
    except KeyError as exc:
        raise InputError(f"plan is missing required key {exc.args[0]!r}") from None
    plan.options = {k: _parse_value(v) for k, v in kv.items()}
    return plan
