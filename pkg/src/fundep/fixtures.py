"""Worked examples: graphs, games and derivability cases.

Edge sets of the named graphs are reconstructions chosen to satisfy the border
computations their derivations rely on:

* ``PATH4``: path a-b-c-d.
* ``DIAMOND``: a-b, a-c, b-c, b-d, c-d.  ``b`` and ``c`` separate ``a`` from
  ``d``; the edge b-c lets the rock-paper-scissors payoffs of ``b`` and ``c``
  read each other.
* ``PATH3``: path a-b-c.
* ``SQUARE_TAIL``: a-b, a-c, b-d, c-d, d-e, so B({a,b,c}) = {b,c} and
  B({d,e}) = {d}.
* ``SPIDER``: a-d, b-e, c-f, d-f, e-f, so B({c,f}) = {f}, B({a,b,d,e}) = {d,e},
  and {a,b,c} is sparse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from fundep.formula import Formula, parse
from fundep.game import Game
from fundep.graph import Graph, complete_graph, path_graph

EDGE = Graph("ab", [("a", "b")])
TRIANGLE = complete_graph("abc")
K4 = complete_graph("abcd")
PATH4 = path_graph("abcd")
DIAMOND = Graph("abcd", [("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d")])
PATH3 = path_graph("abc")
SQUARE_TAIL = Graph("abcde", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d"), ("d", "e")])
SPIDER = Graph("abcdef", [("a", "d"), ("b", "e"), ("c", "f"), ("d", "f"), ("e", "f")])

GRAPHS = {
    "edge": EDGE,
    "triangle": TRIANGLE,
    "k4": K4,
    "path4": PATH4,
    "diamond": DIAMOND,
    "path3": PATH3,
    "square_tail": SQUARE_TAIL,
    "spider": SPIDER,
}

SMALL_GRAPHS = {name: g for name, g in GRAPHS.items() if g.n <= 4}


def _bimatrix(rows, cols, cells) -> Game:
    """Two-player game on EDGE from ``cells[r][c] = (pay_a, pay_b)``."""
    def pay(v, local):
        r, c = rows.index(local["a"]), cols.index(local["b"])
        return cells[r][c][0 if v == "a" else 1]
    return Game.from_function(EDGE, {"a": rows, "b": cols}, pay)


def coordination_game() -> Game:
    return _bimatrix(("a1", "a2"), ("b1", "b2"), [[(1, 1), (0, 0)], [(0, 0), (1, 1)]])


def asymmetric_game() -> Game:
    return _bimatrix(("a1", "a2", "a3"), ("b1", "b2"),
                     [[(1, 1), (0, 0)], [(0, 0), (1, 1)], [(1, 1), (0, 0)]])


def matching_pennies() -> Game:
    """``a`` wins on a match, ``b`` on a mismatch; no pure equilibrium."""
    return _bimatrix(("h", "t"), ("h", "t"), [[(1, 0), (0, 1)], [(0, 1), (1, 0)]])


def parity_game() -> Game:
    bitsets = {v: ("0", "1") for v in "abc"}
    return Game.from_function(TRIANGLE, bitsets,
                              lambda v, local: int(sum(int(x) for x in local.values()) % 2 == 0))


def copy_game() -> Game:
    bitsets = {v: ("0", "1") for v in "abc"}
    return Game.from_function(TRIANGLE, bitsets, lambda v, local: int(len(set(local.values())) == 1))


RPS = ("rock", "paper", "scissors")


def rps_game() -> Game:
    """Over DIAMOND: ``b`` and ``c`` play rock-paper-scissors unless ``a`` and ``d`` agree."""
    beats = {("rock", "scissors"), ("paper", "rock"), ("scissors", "paper")}

    def pay(v, local):
        if v in ("a", "d") or local["a"] == local["d"]:
            return 0
        me, other = local[v], local["c" if v == "b" else "b"]
        return 1 if (me, other) in beats else -1 if (other, me) in beats else 0

    return Game.from_function(DIAMOND, {v: RPS for v in "abcd"}, pay)


GAMES = {
    "coordination": coordination_game,
    "asymmetric": asymmetric_game,
    "matching_pennies": matching_pennies,
    "parity": parity_game,
    "copy": copy_game,
    "rps": rps_game,
}


@dataclass(frozen=True)
class FixtureCase:
    """A formula with its expected verdict.

    ``verdict`` is one of ``"models"`` / ``"not-models"`` (needs ``game``) or
    ``"derivable"`` / ``"underivable"``.
    """

    name: str
    graph: str
    formula: str
    verdict: str
    provenance: str
    game: Optional[str] = None

    def parsed(self) -> Formula:
        return parse(self.formula, GRAPHS[self.graph])


CASES = (
    FixtureCase("coordination-a-b", "edge", "a |> b", "models",
                "coordination game: equilibria (a1,b1), (a2,b2); a's choice fixes b's", "coordination"),
    FixtureCase("coordination-b-a", "edge", "b |> a", "models",
                "coordination game: the dependence is symmetric", "coordination"),
    FixtureCase("asymmetric-a-b", "edge", "a |> b", "models",
                "three-by-two game: a's choice fixes b's", "asymmetric"),
    FixtureCase("asymmetric-b-a", "edge", "b |> a", "not-models",
                "three-by-two game: b1 is matched by both a1 and a3", "asymmetric"),
    FixtureCase("parity-ab-c", "triangle", "a,b |> c", "models",
                "parity game: any two bits fix the third", "parity"),
    FixtureCase("parity-a-c", "triangle", "a |> c", "not-models",
                "parity game: one bit fixes nothing", "parity"),
    FixtureCase("copy-a-bc", "triangle", "a |> b,c", "models",
                "copy game: only all-0 and all-1 are equilibria", "copy"),
    FixtureCase("rps-a-d", "diamond", "a |> d", "models",
                "rock-paper-scissors game: equilibria need a = d", "rps"),
    FixtureCase("rps-bc-d", "diamond", "b,c |> d", "not-models",
                "rock-paper-scissors game: b, c are free once a = d", "rps"),
    FixtureCase("rps-implication", "diamond", "(a |> d) -> (b,c |> d)", "not-models",
                "rock-paper-scissors game: separating b, c do not inherit a's dependence", "rps"),
    FixtureCase("path4-contiguity", "path4", "a |> d -> b,c |> d", "derivable",
                "one contiguity step across the cut ({a,b},{c,d})"),
    FixtureCase("path4-two-ends", "path4", "a,c |> d -> (d,b |> a -> b,c |> a,d)", "derivable",
                "contiguity twice, then augmentation and transitivity"),
    FixtureCase("square-tail-contiguity", "square_tail", "a,c |> e -> b,c,d |> e", "derivable",
                "contiguity across the cut ({a,b,c},{d,e})"),
    FixtureCase("spider-cycle", "spider", "a |> b -> (b |> c -> (c |> a -> d,e,f |> a,b,c))", "derivable",
                "sparse leaves {a,b,c} determined by the inner vertices {d,e,f}"),
    FixtureCase("path4-sparse", "path4", "a,b,c |> d -> (b,c,d |> a -> b,c |> a,d)", "derivable",
                "sparse-set principle for {a,d}"),
    FixtureCase("path3-no-relay", "path3", "(a |> c) -> (b |> c)", "underivable",
                "the middle vertex need not inherit a dependence between the ends"),
    FixtureCase("diamond-separation", "diamond", "(a |> d) -> (b,c |> d)", "underivable",
                "a separating pair without a double border does not relay dependence"),
    FixtureCase("falsum", "path4", "false", "underivable",
                "consistency: the constant-zero game is a model"),
)
