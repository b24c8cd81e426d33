"""Command-line entry point.

Exit status: 0 success / property holds, 1 property fails, 2 usage error,
3 infeasible or malformed input.
"""
from __future__ import annotations

import argparse
import contextlib
import logging
import os
import sys

from . import __version__
from . import experiments as X
from .expansion import check_expansion
from .generators import HostSpec, color_uniform, gen_host, k_out, perturb, split_host
from .graph import ColoredGraph, Graph, InputError, read_edge_list, read_graph, union, write_graph
from .hamiltonicity import PackConfig, find_hamilton, pack_rainbow_hamilton
from .rainbow import is_rainbow_connected, rainbow_path
from .verify import is_hamilton_cycle

DEFAULT_SEED = 20_160_229

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


@contextlib.contextmanager
def _open_in(path):
    if path in (None, "-"):
        yield sys.stdin
    else:
        try:
            fh = open(path)
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
        with fh:
            yield fh


@contextlib.contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _load(path) -> Graph | ColoredGraph:
    with _open_in(path) as fh:
        return read_graph(fh)


def _plain(g) -> Graph:
    return g.graph if isinstance(g, ColoredGraph) else g


def _colored(g) -> ColoredGraph:
    if not isinstance(g, ColoredGraph):
        raise InputError("this command needs a colored graph (r > 0 in the header)")
    return g


def _save(g, path) -> None:
    with _open_out(path) as fh:
        write_graph(g, fh)


# -- subcommands --------------------------------------------------------------

def cmd_gen(a) -> int:
    spec = HostSpec(a.kind, a.n, a.delta, a.blob_edge_prob)
    _save(gen_host(spec, a.seed), a.out)
    return EXIT_OK


def cmd_perturb(a) -> int:
    h = _plain(_load(a.inp))
    delta = a.delta if a.delta is not None else max(h.min_degree() / max(h.n, 1), 1e-9)
    m = X.resolve_count(a.m, h.n, delta)
    extra = perturb(h, m, a.seed)
    _save(Graph(h.n, extra) if a.only_new else union(h, extra), a.out)
    return EXIT_OK


def cmd_color(a) -> int:
    _save(color_uniform(_plain(_load(a.inp)), a.r, a.seed), a.out)
    return EXIT_OK


def cmd_split(a) -> int:
    res = split_host(_plain(_load(a.inp)), a.p, a.seed)
    _save(res.h_prime, a.out)
    if a.rest_out:
        _save(res.h_double_prime, a.rest_out)
    return EXIT_OK


def cmd_kout(a) -> int:
    _save(k_out(_plain(_load(a.inp)), a.k, a.seed, strict=not a.lenient), a.out)
    return EXIT_OK


def cmd_expansion(a) -> int:
    rep = check_expansion(_plain(_load(a.inp)), a.max_fraction, a.small_cap, a.samples, a.seed)
    with _open_out(a.out) as fh:
        fh.write(rep.to_text())
    if a.csv:
        with open(a.csv, "w") as fh:
            fh.write(rep.to_csv())
    return EXIT_OK if rep.ok else EXIT_FALSE


def _edges_of(path):
    if not path:
        return []
    with _open_in(path) as fh:
        return read_edge_list(fh)[1]


def cmd_ham(a) -> int:
    g = _plain(_load(a.inp))
    q1, q2 = _edges_of(a.q1), _edges_of(a.boosters)
    out = find_hamilton(g, q1, q2, a.rotation_budget)
    with _open_out(a.out) as fh:
        if out.found:
            ok = is_hamilton_cycle(out.cycle, g.n, set(g.edges) | set(q1) | set(q2))
            fh.write(" ".join(map(str, out.cycle)) + "\n")
            fh.write(f"# verified {str(ok).lower()} boosters_used {out.boosters_used}\n")
        else:
            fh.write(f"# exhausted: {out.reason}; longest path {out.longest_path}; "
                     f"boosters_used {out.boosters_used}\n")
    return EXIT_OK if out.found else EXIT_FALSE


def cmd_pack(a) -> int:
    cg = _colored(_load(a.inp))
    host = _plain(_load(a.host))
    delta = a.delta
    if delta is None:
        delta = min(max(host.min_degree() / host.n, 1e-9), 0.5 - 1e-9)
    cfg = PackConfig(delta=delta, k=a.k, split_p=a.split_p, chunk=a.chunk, target=a.target,
                     q1_frac=a.q1_frac, q2_frac=a.q2_frac, rotation_budget=a.rotation_budget)
    res = pack_rainbow_hamilton(cg, host, a.t, cfg, a.seed)
    with _open_out(a.out) as fh:
        for c in res.cycles:
            fh.write(" ".join(map(str, c.cycle)) + "\n")
        fh.write(f"# cycles {len(res.cycles)} of {a.t}; all verified rainbow, "
                 f"pairwise edge-disjoint\n")
        for d in res.diagnostics:
            fh.write(f"# {d}\n")
    return EXIT_OK if res.complete else EXIT_FALSE


def cmd_rc(a) -> int:
    cg = _colored(_load(a.inp))
    res = is_rainbow_connected(cg)
    with _open_out(a.out) as fh:
        fh.write(f"rainbow_connected {str(res.connected).lower()}\n")
        if a.witness:
            if not res.connected:
                u, v = res.witness
                fh.write(f"witness {u} {v} ({res.reason})\n")
            else:
                for u in range(cg.n):
                    for v in range(u + 1, cg.n):
                        fh.write(f"{u} {v}: {' '.join(map(str, rainbow_path(cg, u, v)))}\n")
    return EXIT_OK if res.connected else EXIT_FALSE


def cmd_experiment(a) -> int:
    if a.plan:
        with _open_in(a.plan) as fh:
            plan = X.parse_plan(fh.read())
    else:
        if not (a.property and a.n and a.values):
            raise InputError("experiment needs --plan or --property, --n and --values")
        plan = X.ExperimentPlan(
            a.property, HostSpec(a.kind, a.n, a.delta, a.blob_edge_prob), a.sweep,
            [X._parse_value(v) for v in a.values.split(",") if v],
            m=X._parse_value(a.m), r=X._parse_value(a.r), trials=a.trials,
            master_seed=a.seed,
        )
    for opt in a.option:
        if "=" not in opt:
            raise InputError(f"--option expects key=value, got {opt!r}")
        k, v = opt.split("=", 1)
        plan.options[k] = X._parse_value(v)
    recs = X.run_plan(plan, threads=a.threads)
    with _open_out(a.out) as fh:
        X.emit_csv(recs, fh)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rainbowgraph",
                                description="Randomly perturbed, randomly colored graphs.")
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help=f"RNG seed (default {DEFAULT_SEED})")
    common.add_argument("--in", dest="inp", default="-", help="input graph file (default stdin)")
    common.add_argument("--out", default="-", help="output file (default stdout)")
    common.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", metavar="COMMAND")

    s = sub.add_parser("gen", parents=[common], help="generate a host graph")
    s.add_argument("--kind", choices=("random_dense", "complete_bipartite", "two_blob"),
                   default="random_dense")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--delta", type=float, default=0.3)
    s.add_argument("--blob-edge-prob", type=float, default=0.22)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("perturb", parents=[common], help="add m random non-edges")
    s.add_argument("--m", required=True, help="count or named threshold (rc3, rc4, q1, pow0.7, 40n)")
    s.add_argument("--delta", type=float, help="delta for named thresholds (default min degree / n)")
    s.add_argument("--only-new", action="store_true", help="write only the added edges")
    s.set_defaults(func=cmd_perturb)

    s = sub.add_parser("color", parents=[common], help="color edges uniformly from 1..r")
    s.add_argument("--r", type=int, required=True)
    s.set_defaults(func=cmd_color)

    s = sub.add_parser("split", parents=[common], help="split host edges into H' and H''")
    s.add_argument("--p", type=float, default=1 / 20)
    s.add_argument("--rest-out", help="file for H'' (edges not sent to H')")
    s.set_defaults(func=cmd_split)

    s = sub.add_parser("kout", parents=[common], help="random k-out subgraph")
    s.add_argument("--k", type=int, default=6)
    s.add_argument("--lenient", action="store_true",
                   help="vertices of degree < k keep all edges instead of failing")
    s.set_defaults(func=cmd_kout)

    s = sub.add_parser("expansion-check", parents=[common], help="connectivity and |N(S)| > 2|S|")
    s.add_argument("--max-fraction", type=float, default=0.2)
    s.add_argument("--small-cap", type=int, default=3)
    s.add_argument("--samples", type=int, default=10_000)
    s.add_argument("--csv", help="also write violations as CSV here")
    s.set_defaults(func=cmd_expansion)

    s = sub.add_parser("ham", parents=[common], help="rotation-extension Hamilton cycle search")
    s.add_argument("--q1", help="graph file of extra base edges")
    s.add_argument("--boosters", help="graph file of booster edges, consumed in file order")
    s.add_argument("--rotation-budget", type=int)
    s.set_defaults(func=cmd_ham)

    s = sub.add_parser("rainbow-pack", parents=[common],
                       help="edge-disjoint rainbow Hamilton cycles in a colored perturbed graph")
    s.add_argument("--host", required=True, help="host graph H (uncolored)")
    s.add_argument("--t", type=int, default=1)
    s.add_argument("--k", type=int, default=6)
    s.add_argument("--delta", type=float)
    s.add_argument("--split-p", type=float, default=1 / 20)
    s.add_argument("--chunk", type=int)
    s.add_argument("--target", type=int)
    s.add_argument("--q1-frac", type=float)
    s.add_argument("--q2-frac", type=float)
    s.add_argument("--rotation-budget", type=int)
    s.set_defaults(func=cmd_pack)

    s = sub.add_parser("rc-check", parents=[common], help="decide rainbow connectivity")
    s.add_argument("--witness", action="store_true",
                   help="print a failing pair, or a rainbow path for every pair")
    s.set_defaults(func=cmd_rc)

    s = sub.add_parser("experiment", parents=[common], help="Monte Carlo sweep, CSV output")
    s.add_argument("--plan", help="plan file of key=value lines")
    s.add_argument("--property", choices=X.PROPERTIES)
    s.add_argument("--kind", default="random_dense")
    s.add_argument("--n", type=int)
    s.add_argument("--delta", type=float, default=0.3)
    s.add_argument("--blob-edge-prob", type=float, default=0.22)
    s.add_argument("--m", default="0")
    s.add_argument("--r", default="1")
    s.add_argument("--sweep", choices=X.SWEEPS, default="m")
    s.add_argument("--values")
    s.add_argument("--trials", type=int, default=10)
    s.add_argument("--option", action="append", default=[], help="property option key=value")
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=max(logging.DEBUG, logging.WARNING - 10 * args.verbose))
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
