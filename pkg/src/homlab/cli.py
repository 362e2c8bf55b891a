"""Unified command-line entry point.

Subcommands: hom, valhom, oddcycle, sa, triple (verify | search |
from-track | cohen | combine), bench. All numeric output is exact
(`p/q` or `inf`); every stochastic run reports its seed. Exit codes:
0 solved, 2 budget exceeded, 64 usage error, 66 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

from . import bench
from .fileio import (
    ParseError,
    parse_coloring,
    parse_cost_map,
    parse_graph,
    parse_layering,
    parse_track_layout,
    parse_vcsp,
)
from .graphs import DiGraph, Graph, GraphError
from .polymorphisms import (
    Triple,
    cohen_triple,
    distance2_coloring,
    search_triple,
    shadow_combine,
    triple_from_track_layout,
    verify_persistent_triple,
)
from .rational import format_value, parse_value
from .sherali_adams import lp_solve_exact, build_sa
from .solvers import (
    brute_force_hom,
    graph_to_digraph,
    odd_cycle_solve,
    valhom_solve,
)
from .vcsp import (
    ArcCostMap,
    BudgetExceeded,
    CrispLanguage,
    ValHomInstance,
    crisp_language_of_coloring,
    odd_cycle_language,
)

EXIT_OK = 0
EXIT_BUDGET = 2
EXIT_USAGE = 64
EXIT_IO = 66


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="ascii") as fh:
            return fh.read()
    except OSError as exc:
        print(f"cannot read {path}: {exc}", file=sys.stderr)
        sys.exit(EXIT_IO)


def _load_graph(path: str):
    try:
        return parse_graph(_read(path))
    except ParseError as exc:
        print(f"{path}: {exc}", file=sys.stderr)
        sys.exit(EXIT_IO)


def _default_budget(fallback: int) -> int:
    raw = os.environ.get("HOMLAB_BUDGET")
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        print("HOMLAB_BUDGET must be an integer", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _print_witness(witness) -> None:
    if witness:
        print("witness " + " ".join(f"{v}->{witness[v]}" for v in sorted(witness)))


def cmd_hom(args) -> int:
    g = _load_graph(args.G)
    h = _load_graph(args.H)
    if isinstance(g, Graph) != isinstance(h, Graph):
        print("G and H must both be graphs or both digraphs", file=sys.stderr)
        return EXIT_USAGE
    if args.method == "brute":
        found, witness = brute_force_hom(g, h, budget=_default_budget(10 ** 8))
    else:
        dg = graph_to_digraph(g) if isinstance(g, Graph) else g
        dh = graph_to_digraph(h) if isinstance(h, Graph) else h
        inst = ValHomInstance(dg, dh, ArcCostMap())
        report = valhom_solve(inst, subproblem_budget=_default_budget(5_000_000))
        found = not report.answer.is_infinite
        witness = report.witness if found else None
    print("YES" if found else "NO")
    _print_witness(witness)
    return EXIT_OK


def cmd_valhom(args) -> int:
    g = _load_graph(args.G)
    h = _load_graph(args.H)
    if not isinstance(g, DiGraph) or not isinstance(h, DiGraph):
        print("valhom expects digraph inputs", file=sys.stderr)
        return EXIT_USAGE
    default = parse_value(args.default_cost)
    try:
        eta = parse_cost_map(_read(args.cost), default)
    except ParseError as exc:
        print(f"{args.cost}: {exc}", file=sys.stderr)
        return EXIT_IO
    hint = None
    if args.coloring:
        hint = parse_coloring(_read(args.coloring), h.underlying_graph())
    report = valhom_solve(
        ValHomInstance(g, h, eta),
        coloring_hint=hint,
        subproblem_budget=_default_budget(5_000_000),
    )
    print(f"value {format_value(report.answer)}")
    _print_witness(report.witness)
    print(f"subproblems {report.stats['subproblems']}")
    return EXIT_OK


def cmd_oddcycle(args) -> int:
    g = _load_graph(args.G)
    if not isinstance(g, Graph):
        print("oddcycle expects an undirected graph", file=sys.stderr)
        return EXIT_USAGE
    report = odd_cycle_solve(g, args.k, args.seed, trials=args.trials)
    print("YES" if report.answer else "NO")
    print(f"seed {args.seed}")
    print(f"trials {report.stats['trials_run']} of {report.stats['trials_planned']}")
    return EXIT_OK


def cmd_sa(args) -> int:
    try:
        inst = parse_vcsp(_read(args.instance))
    except ParseError as exc:
        print(f"{args.instance}: {exc}", file=sys.stderr)
        return EXIT_IO
    rlp = build_sa(inst, args.k, args.l)
    if args.dump_lp:
        print(rlp.dump(), end="")
    res = lp_solve_exact(rlp)
    print(f"status {res.status}")
    print(f"optimum {format_value(res.optimum)}")
    return EXIT_OK


def _language_from_args(args) -> CrispLanguage:
    if args.odd_cycle is not None:
        lang, _ = odd_cycle_language(args.odd_cycle)
        return lang
    g = _load_graph(args.graph)
    gamma = parse_coloring(_read(args.coloring), g)
    return crisp_language_of_coloring(g, gamma)


def _parse_triple_file(text: str) -> Triple:
    from .fileio import parse_triple

    return parse_triple(text)


def cmd_triple(args) -> int:
    if args.action == "verify":
        lang = _language_from_args(args)
        triple = _parse_triple_file(_read(args.triple))
        ok, witness = verify_persistent_triple(lang, triple)
        print("VERIFIED" if ok else f"FAILED {witness}")
        return EXIT_OK
    if args.action == "search":
        lang = _language_from_args(args)
        try:
            found = search_triple(lang, max_domain=_default_budget(12))
        except BudgetExceeded as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_BUDGET
        if found is None:
            print("NONE")
        else:
            from .fileio import emit_triple

            print("FOUND")
            print(emit_triple(found), end="")
        return EXIT_OK
    if args.action == "from-track":
        g = _load_graph(args.graph)
        layout = parse_track_layout(_read(args.layout), g)
        triple = triple_from_track_layout(layout)
        from .fileio import emit_triple

        print(emit_triple(triple), end="")
        return EXIT_OK
    if args.action == "cohen":
        g = _load_graph(args.graph)
        gamma = (
            parse_coloring(_read(args.coloring), g)
            if args.coloring
            else distance2_coloring(g)
        )
        triple = cohen_triple(g.vertices, gamma)
        from .fileio import emit_coloring, emit_triple

        print(emit_coloring(gamma), end="")
        print(emit_triple(triple), end="")
        return EXIT_OK
    if args.action == "combine":
        g = _load_graph(args.graph)
        layering = parse_layering(_read(args.layering), g)
        gamma, triple = shadow_combine(g, layering)
        from .fileio import emit_coloring, emit_triple

        print(emit_coloring(gamma), end="")
        print(emit_triple(triple), end="")
        return EXIT_OK
    raise AssertionError(args.action)


def cmd_bench(args) -> int:
    rows = bench.run_suite(args.suite, seed=args.seed)
    text = bench.to_csv(rows)
    if args.out:
        try:
            with open(args.out, "w", encoding="ascii") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        print(text, end="")
    return EXIT_OK


FORMATS_HELP = """\
file formats (ASCII, whitespace-separated, `#` comments):
  graph file:       `graph N` or `digraph N`, then `e u v` / `a u v` lines
  coloring file:    `c v color` lines (colors are positive integers)
  layering file:    `layer i v1 v2 ...` with contiguous indices from 0
  track layout:     coloring lines plus one `order v1 ... vN` line
  tree decomp.:     `bag x v1 ...` and `tedge x y` lines
  cost file:        `cost gu gv hu hv VALUE`, VALUE = integer | p/q | inf;
                    unlisted arc pairs take --default-cost
  vcsp file:        `vcsp D N`, then per term `term arity v1 ... vr`
                    followed by dense rows `t d1 ... dr VALUE`
  triple file:      `triple D`, then 3*D^3 rows `f idx a b c val`

environment: HOMLAB_BUDGET overrides the default budgets (brute-force
assignments, enumeration subproblems, search domain size).
exit codes: 0 solved, 2 budget exceeded, 64 usage error, 66 I/O error.
"""


def build_parser() -> _Parser:
    parser = _Parser(
        prog="homlab",
        description=__doc__,
        epilog=FORMATS_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hom", help="decide graph homomorphism G -> H")
    p.add_argument("G")
    p.add_argument("H")
    p.add_argument("--method", choices=["brute", "enumerate"], default="enumerate")
    p.set_defaults(fn=cmd_hom)

    p = sub.add_parser("valhom", help="minimum-cost homomorphism between digraphs")
    p.add_argument("G")
    p.add_argument("H")
    p.add_argument("--cost", required=True, help="cost file (`cost gu gv hu hv VALUE`)")
    p.add_argument("--default-cost", default="0", choices=["0", "inf"],
                   help="cost of arc pairs not listed in the file")
    p.add_argument("--coloring", help="optional persistent majority coloring of H")
    p.set_defaults(fn=cmd_valhom)

    p = sub.add_parser("oddcycle", help="randomized homomorphism test into C_{2k+1}")
    p.add_argument("G")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=None)
    p.set_defaults(fn=cmd_oddcycle)

    p = sub.add_parser("sa", help="solve the SA(k,l) relaxation of a VCSP file")
    p.add_argument("instance")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--l", type=int, default=3)
    p.add_argument("--dump-lp", action="store_true")
    p.set_defaults(fn=cmd_sa)

    p = sub.add_parser("triple", help="persistent majority triple operations")
    p.add_argument("action", choices=["verify", "search", "from-track", "cohen", "combine"])
    p.add_argument("--graph", help="graph file")
    p.add_argument("--coloring", help="coloring file")
    p.add_argument("--layout", help="track layout file")
    p.add_argument("--layering", help="layering file")
    p.add_argument("--triple", help="triple file")
    p.add_argument("--odd-cycle", type=int, default=None,
                   help="use the odd-cycle list language for this k")
    p.set_defaults(fn=cmd_triple)

    p = sub.add_parser("bench", help="benchmark suites emitting CSV")
    p.add_argument("--suite", required=True,
                   choices=["alpha-table", "polymorphism-audit", "oracle-equivalence", "odd-cycles"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output CSV path (stdout when omitted)")
    p.set_defaults(fn=cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except BudgetExceeded as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, GraphError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
