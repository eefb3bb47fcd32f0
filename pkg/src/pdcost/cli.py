"""``pdcost`` command-line interface.

Vertex ids on the command line and in every output are 0-based; graph files
use 1-based ids.  Exit codes: 0 success, 2 unreadable graph file, 3 the
result could not be certified exact (or a resource cap was hit), 4 bad
arguments.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import graph as graph_mod
from .analysis import analyze, plot_csv, sample_betas, table_csv
from .constructions import GadgetSpec, build_gadget, realize_useful_sizes
from .cost import TableNotExactError, as_rational
from .datasets import BUNDLED, load_bundled
from .forts import (
    FortLimitError,
    default_size_cap,
    enumerate_minimal_forts,
    fort_complement,
    minimum_fort,
)
from .graph import (
    Graph,
    GraphFormatError,
    VertexCapError,
    cartesian_product,
    members,
    parse_graph,
    serialize_graph,
    to_mask,
)
from .propagation import observe
from .solver import (
    SolverLimitError,
    greedy_observance,
    max_obs,
    observance_table,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INEXACT = 3
EXIT_USAGE = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_graph(spec: str) -> Graph:
    path = Path(spec)
    if path.exists():
        return parse_graph(path.read_text(encoding="utf-8"))
    for name in (spec, spec + ".gr"):
        if name in BUNDLED:
            return load_bundled(name)
    raise FileNotFoundError(f"no graph file {spec!r} (bundled: {', '.join(BUNDLED)})")


def _vertex_list(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad vertex list {text!r}") from None


def _sensor_mask(G: Graph, text: str) -> int:
    vs = _vertex_list(text)
    bad = [v for v in vs if not 0 <= v < G.n]
    if bad:
        raise UsageError(f"vertices {bad} outside 0..{G.n - 1}")
    return to_mask(vs)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _write(path: str, content: str) -> None:
    Path(path).write_text(content, encoding="utf-8")


# ---------------------------------------------------------------------------


def cmd_obs(args) -> int:
    G = load_graph(args.graph)
    S = _sensor_mask(G, args.sensors)
    tr = observe(G, S)
    payload = {"sensors": members(S), "size": tr.size, "observed": tr.observed}
    text = f"|Obs| = {tr.size} of {G.n}\nobserved: {' '.join(map(str, tr.observed))}"
    if args.trace:
        payload["forces"] = [list(f) for f in tr.forces]
        text += "\nforces: " + ", ".join(f"{x}->{y}" for x, y in tr.forces)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_maxobs(args) -> int:
    G = load_graph(args.graph)
    if not 0 <= args.k <= G.n:
        raise UsageError(f"-k must lie in 0..{G.n}")
    res = greedy_observance(G, args.k) if args.greedy else max_obs(G, args.k)
    payload = {"k": args.k, "maxObs": res.value, "witness": list(res.witness),
               "exact": res.exact}
    kind = "exact" if res.exact else "lower bound"
    text = f"maxObs(k={args.k}) = {res.value} ({kind})\nwitness: {list(res.witness)}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_pdn(args) -> int:
    G = load_graph(args.graph)
    table = observance_table(G, strict=True)
    witness = list(table.rows[-1].witness)
    _emit(args, {"gammaP": table.gamma_p, "witness": witness},
          f"gamma_P = {table.gamma_p}\nwitness: {witness}")
    return EXIT_OK


def cmd_table(args) -> int:
    G = load_graph(args.graph)
    k_max = G.n if args.kmax is None else args.kmax
    if not 0 <= k_max <= G.n:
        raise UsageError(f"--kmax must lie in 0..{G.n}")
    table = observance_table(G, k_max)
    payload = table.to_json()
    if args.out:
        _write(args.out, json.dumps(payload, indent=2) + "\n")
    _emit(args, payload, table_csv(table).rstrip("\n"))
    return EXIT_OK if table.all_exact else EXIT_INEXACT


def _report_text(report) -> str:
    lines = [f"n = {report.graph['n']}, m = {report.graph['m']}, "
             f"components = {report.graph['components']}"]
    lines.append("k  maxObs  witness")
    for r in report.table["rows"]:
        flag = "" if r["exact"] else "  (lower bound)"
        lines.append(f"{r['k']:<2} {r['maxObs']:<7} {r['witness']}{flag}")
    if report.envelope:
        lines.append("envelope:")
        for seg in report.envelope:
            hi = "inf)" if seg["hi"] == "inf" else seg["hi"] + "]"
            lines.append(f"  k={seg['k']:<3} [{seg['lo']}, {hi}  {seg['line']}")
        lines.append(f"useful sizes: {report.useful['useful']}")
        lines.append(f"gamma_P = {report.gamma_p}")
    f = report.fort
    lines.append(f"min fort number: {f['value']}" if f["exact"]
                 else f"min fort number: >= {f['lowerBound']}")
    if report.gamma_threshold:
        gt = report.gamma_threshold
        tag = " (conservative)" if gt["conservative"] else ""
        lines.append(f"gamma_P sensors are beta-best for beta >= {gt['beta']}{tag}")
    if report.beta_query:
        q = report.beta_query
        lines.append(f"beta = {q['beta']}: best size(s) {q['bestSizes']}, "
                     f"cost {q['cost']}, witness {q['witness']}")
    if not report.exact:
        lines.append("table not certified exact; envelope omitted")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    G = load_graph(args.graph)
    beta = _parse_beta(args.beta) if args.beta is not None else None
    report, table = analyze(G, beta=beta, fort_cap=args.fort_cap)
    if args.plot_data:
        if not table.complete():
            print("cannot write plot data: table is not exact", file=sys.stderr)
        else:
            _write(args.plot_data, plot_csv(table, sample_betas(args.samples)))
    if args.csv:
        print(table_csv(table), end="")
    else:
        _emit(args, report.to_json(), _report_text(report))
    return EXIT_OK if report.exact else EXIT_INEXACT


def cmd_plot_data(args) -> int:
    G = load_graph(args.graph)
    table = observance_table(G)
    text = plot_csv(table, sample_betas(args.samples, _parse_beta(args.beta_max)))
    if args.out:
        _write(args.out, text)
    else:
        print(text, end="")
    return EXIT_OK


def cmd_fort(args) -> int:
    G = load_graph(args.graph)
    if args.enumerate_minimal:
        forts = enumerate_minimal_forts(G, limit=args.limit)
        payload = {"minimalForts": [c.to_json() for c in forts]}
        text = "\n".join(f"{members(c.fort)} entrance {members(c.entrance)}"
                         for c in forts)
        _emit(args, payload, f"{len(forts)} minimal forts\n{text}")
        return EXIT_OK
    if args.sensors is not None:
        cert = fort_complement(G, _sensor_mask(G, args.sensors))
        payload = {"fort": None if cert is None else cert.to_json()}
        text = ("sensors power-dominate; no unobserved fort" if cert is None
                else f"unobserved fort of size {cert.size}: {members(cert.fort)}")
        _emit(args, payload, text)
        return EXIT_OK
    cap = default_size_cap(G) if args.cap is None else args.cap
    F = minimum_fort(G, cap)
    if F is None:
        _emit(args, {"value": None, "lowerBound": cap + 1, "exact": False},
              f"min fort number > {cap}")
    else:
        _emit(args, {"value": F.bit_count(), "witness": members(F), "exact": True},
              f"min fort number = {F.bit_count()}\nwitness: {members(F)}")
    return EXIT_OK


def cmd_construct(args) -> int:
    cap = args.vertex_cap
    if args.kind == "gadget":
        gadget = build_gadget(GadgetSpec(args.a, args.l, args.m), vertex_cap=cap)
        G, meta = gadget.graph, {"roles": {r: members(m) for r, m in gadget.roles.items()}}
        comment = f"gadget a={args.a} ell={args.l} cycle={args.m}"
    elif args.kind == "realize":
        R = set(_vertex_list(args.R))
        cycles = None
        if args.cycles:
            cycles = {int(k): int(v) for k, v in
                      (item.split(":") for item in args.cycles.split(","))}
        real = realize_useful_sizes(args.s, R, vertex_cap=cap, ell=args.ell,
                                    cycles=cycles)
        G, meta = real.graph, real.to_json()
        comment = f"useful-size realization s={args.s} R={sorted(R)}"
    else:
        G = cartesian_product(load_graph(args.g1), load_graph(args.g2), vertex_cap=cap)
        meta = {"factors": [args.g1, args.g2]}
        comment = "cartesian product"
    text = serialize_graph(G, [comment])
    if args.out:
        _write(args.out, text)
    else:
        print(text, end="")
    if getattr(args, "meta", None):
        _write(args.meta, json.dumps(meta, indent=2) + "\n")
    if args.out:
        print(f"wrote {G.n} vertices, {G.m} edges to {args.out}", file=sys.stderr)
    return EXIT_OK


def _parse_beta(text: str):
    try:
        b = as_rational(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad rational {text!r}; use p/q") from None
    if b < 0:
        raise UsageError("beta must be nonnegative")
    return b


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="accepted for compatibility; search is single-threaded")
    common.add_argument("--deterministic", action="store_true",
                        default=argparse.SUPPRESS)
    common.add_argument("--vertex-cap", type=int, default=argparse.SUPPRESS,
                        help="largest graph any command may build")

    p = _Parser(prog="pdcost", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--deterministic", action="store_true")
    p.add_argument("--vertex-cap", type=int, default=None)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("obs", parents=[common], help="observed set of a placement")
    s.add_argument("graph")
    s.add_argument("-S", "--sensors", required=True, help="comma-separated vertices")
    s.add_argument("--trace", action="store_true", help="print the forces")
    s.set_defaults(func=cmd_obs)

    s = sub.add_parser("maxobs", parents=[common], help="maximum observance")
    s.add_argument("graph")
    s.add_argument("-k", type=int, required=True)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--greedy", action="store_true")
    s.set_defaults(func=cmd_maxobs)

    s = sub.add_parser("pdn", parents=[common], help="power domination number")
    s.add_argument("graph")
    s.set_defaults(func=cmd_pdn)

    s = sub.add_parser("table", parents=[common], help="maxObs for k = 0..kmax")
    s.add_argument("graph")
    s.add_argument("--kmax", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("analyze", parents=[common], help="full cost analysis")
    s.add_argument("graph")
    s.add_argument("--beta", help="report the beta-best size at this ratio (p/q)")
    s.add_argument("--csv", action="store_true", help="per-k rows as CSV")
    s.add_argument("--plot-data", metavar="OUT.csv")
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--fort-cap", type=int)
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("plot-data", parents=[common], help="sampled cost curves")
    s.add_argument("graph")
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--beta-max", default="1")
    s.add_argument("--out")
    s.set_defaults(func=cmd_plot_data)

    s = sub.add_parser("fort", parents=[common], help="forts")
    s.add_argument("graph")
    what = s.add_mutually_exclusive_group()
    what.add_argument("--min", action="store_true")
    what.add_argument("--enumerate-minimal", action="store_true")
    what.add_argument("-S", "--sensors", help="fort left unobserved by these sensors")
    s.add_argument("--limit", type=int, default=10**6)
    s.add_argument("--cap", type=int, help="largest fort size to search")
    s.set_defaults(func=cmd_fort)

    s = sub.add_parser("construct", parents=[common], help="build graphs")
    kinds = s.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    g = kinds.add_parser("gadget", parents=[common])
    g.add_argument("-a", type=int, required=True, help="affix vertices")
    g.add_argument("-l", type=int, required=True, help="path length")
    g.add_argument("-m", type=int, required=True, help="cycle length (even)")
    g.add_argument("-o", "--out")
    g.add_argument("--meta")
    g = kinds.add_parser("realize", parents=[common])
    g.add_argument("-s", type=int, required=True)
    g.add_argument("-R", required=True, help="sizes, e.g. 0,2,5")
    g.add_argument("--ell", type=int, help="small path length (mini instance)")
    g.add_argument("--cycles", help="small cycle lengths, e.g. 1:6,2:4")
    g.add_argument("-o", "--out")
    g.add_argument("--meta")
    g = kinds.add_parser("product", parents=[common])
    g.add_argument("g1")
    g.add_argument("g2")
    g.add_argument("-o", "--out")
    g.add_argument("--meta")
    s.set_defaults(func=cmd_construct)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    saved_cap = graph_mod.VERTEX_CAP
    if args.vertex_cap is not None:
        graph_mod.VERTEX_CAP = args.vertex_cap
    try:
        return args.func(args)
    except (GraphFormatError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"pdcost: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SolverLimitError, TableNotExactError, FortLimitError, VertexCapError) as exc:
        print(f"pdcost: {exc}", file=sys.stderr)
        return EXIT_INEXACT
    except (UsageError, ValueError) as exc:
        print(f"pdcost: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        graph_mod.VERTEX_CAP = saved_cap


if __name__ == "__main__":
    sys.exit(main())
