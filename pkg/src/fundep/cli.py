"""Command-line front end.

Exit codes are verdicts: 0 true, 1 false, 2 error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from fundep import io
from fundep.canonical import counterexample, formula_counterexample
from fundep.derivation import (DEFAULT_BOUND, decide_query, normalize_hypotheses,
                               saturate_atoms)
from fundep.errors import FundepError, NoCounterexampleError
from fundep.formula import Dep, implies, parse
from fundep.fuzz import run_fuzz
from fundep.game import DEFAULT_GUARD, enumerate_nash, models
from fundep.proofs import derive_trace, format_trace

VACUITY_WARNING = ("warning: the game has no pure Nash equilibrium; "
                   "every dependence atom holds vacuously")


class _Out:
    """Collects output so each stream is written once, at the end."""

    def __init__(self):
        self.out: list[str] = []
        self.err: list[str] = []

    def print(self, *parts):
        self.out.append(" ".join(map(str, parts)))

    def warn(self, *parts):
        self.err.append(" ".join(map(str, parts)))

    def flush(self):
        if self.out:
            sys.stdout.write("\n".join(self.out) + "\n")
        if self.err:
            sys.stderr.write("\n".join(self.err) + "\n")
        sys.stdout.flush()


def _fmt_profile(game, p) -> str:
    return " ".join(f"{v}={_fmt_label(s)}" for v, s in zip(game.graph.vertices, p))


def _fmt_label(s) -> str:
    if isinstance(s, tuple):
        return "(" + ",".join(_fmt_label(x) for x in s) + ")"
    return str(s)


def cmd_nash(args, out: _Out) -> int:
    game = io.load_game(args.game)
    ne = enumerate_nash(game, args.guard, args.threads)
    for p in ne:
        out.print(_fmt_profile(game, p))
    if not ne:
        out.warn(VACUITY_WARNING)
    return 0


def cmd_models(args, out: _Out) -> int:
    game = io.load_game(args.game)
    f = parse(args.formula, game.graph)
    if not enumerate_nash(game, args.guard, args.threads):
        out.warn(VACUITY_WARNING)
    verdict = models(game, f, args.guard)
    out.print("true" if verdict else "false")
    return 0 if verdict else 1


def cmd_derive(args, out: _Out) -> int:
    g, hyps, goal = io.load_query(args.query)
    if args.oracle:
        if not isinstance(goal, Dep):
            raise FundepError("--oracle decides atom goals only")
        verdict = goal.atom in saturate_atoms(g, hyps)
    else:
        verdict = decide_query(g, hyps, goal, bound=args.bound)
    out.print("derivable" if verdict else "underivable")
    if args.trace:
        if not isinstance(goal, Dep):
            out.warn("note: --trace applies to atom goals only")
        elif verdict:
            out.print(format_trace(derive_trace(g, hyps, goal.atom, bound=args.bound)))
    return 0 if verdict else 1


def cmd_counterexample(args, out: _Out) -> int:
    g, hyps, goal = io.load_query(args.query)
    try:
        if isinstance(goal, Dep):
            cx = counterexample(g, hyps, goal.atom, guard=args.guard, bound=args.bound)
            doc = io.counterexample_to_doc(cx)
            summary = (f"refuted {cx.refuted}: closure of lhs is "
                       f"{{{','.join(sorted(cx.a_star))}}}, witnesses differ at {cx.vertex}")
        else:
            full = implies(*(Dep(a) for a in sorted(normalize_hypotheses(g, hyps))), goal)
            fx = formula_counterexample(g, full, guard=args.guard, bound=args.bound)
            doc = io.game_to_doc(fx.game)
            doc["witness"] = {
                "refuted": str(full),
                "assignment": {str(a): t for a, t in sorted(fx.assignment.items())},
                "factors": [sorted(c) for c in fx.factors],
            }
            summary = f"refuted {full} with a product of {len(fx.factors)} pennies game(s)"
    except NoCounterexampleError as exc:
        out.warn(str(exc))
        return 1
    io.write_json(args.out, doc)
    out.print(summary)
    out.print(f"wrote {args.out}")
    return 0


def cmd_fuzz(args, out: _Out) -> int:
    g = io.load_graph(args.graph)
    report = run_fuzz(g, args.seed, args.samples, args.max_strategies, args.value_range)
    out.print(report.render().rstrip("\n"))
    return 0 if report.ok else 1


def cmd_graph_validate(args, out: _Out) -> int:
    g = io.load_graph(args.graph)
    out.print(f"ok: {g.n} vertices, {len(g.edges)} edges")
    return 0


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fundep",
        description="Functional dependence in Nash equilibria of games over a dependency graph.")
    sub = parser.add_subparsers(dest="command", required=True)

    def engine_flags(p):
        p.add_argument("--guard", type=int, default=DEFAULT_GUARD,
                       help="maximum number of profiles to enumerate (default %(default)s)")
        p.add_argument("--threads", type=int, default=1, help="worker threads for enumeration")

    p = sub.add_parser("nash", help="list pure Nash equilibria")
    p.add_argument("game")
    engine_flags(p)
    p.set_defaults(func=cmd_nash)

    p = sub.add_parser("models", help="check a formula in a game")
    p.add_argument("game")
    p.add_argument("formula")
    engine_flags(p)
    p.set_defaults(func=cmd_models)

    p = sub.add_parser("derive", help="decide derivability of a query")
    p.add_argument("query")
    p.add_argument("--trace", action="store_true", help="print a checkable derivation")
    p.add_argument("--oracle", action="store_true", help="use brute-force saturation (n <= 5)")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="vertex bound for the closure map")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("counterexample", help="build a game refuting an underivable query")
    p.add_argument("query")
    p.add_argument("--out", required=True)
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    engine_flags(p)
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("fuzz", help="soundness checks on random games")
    p.add_argument("graph")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--max-strategies", type=int, default=3)
    p.add_argument("--value-range", type=int, default=1)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("graph", help="graph file utilities")
    gsub = p.add_subparsers(dest="graph_command", required=True)
    v = gsub.add_parser("validate", help="load and check a graph file")
    v.add_argument("graph")
    v.set_defaults(func=cmd_graph_validate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    out = _Out()
    try:
        code = args.func(args, out)
    except FundepError as exc:
        out.warn(f"error: {exc}")
        code = 2
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
