"""Counterexample games for underivable statements.

For a vertex set ``a_star`` the pennies game has, per player ``v``:

* ``"pass"`` if ``v`` is in ``a_star``, else the two bits ``"0"`` and ``"1"``;
* unless ``v`` is isolated, one ``"p:..."`` strategy per assignment of heads
  (``H``) or tails (``T``) to each neighbour, listed in vertex order.

Each edge is a matching-pennies mini-game that pays out only when both ends
play pennies: the tail (lexicographically smaller endpoint) wins 1 on a
match, the head wins 1 on a mismatch.  A player who does not play pennies
loses 1 whenever its closed neighbourhood, minus ``a_star``, shows both bits.
The closed neighbourhood includes the player itself.

Its equilibria are exactly the pennies-free profiles that are bit-constant on
every class of :func:`fundep.graph.equiv_classes` outside ``a_star``.  In
particular the two constant profiles are equilibria and disagree on every
vertex outside ``a_star``, which refutes ``A |> b`` for ``b`` outside
``a_star`` whenever ``A`` is inside it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional, Sequence

from fundep.derivation import (DEFAULT_BOUND, closure_map, falsifying_assignment,
                               normalize_hypotheses)
from fundep.errors import (InternalSoundnessError, InvalidVertexError,
                           NoCounterexampleError, TooLargeError)
from fundep.formula import Atom, AtomLike, Formula, as_atom
from fundep.game import (DEFAULT_GUARD, Game, Profile, enumerate_nash, holds_atom,
                         is_nash, models)
from fundep.graph import Graph, adj_plus_mask, bits

PASS = "pass"
HEADS, TAILS = "H", "T"


def is_pennies(label: str) -> bool:
    return label.startswith("p:")


def pennies_label(choices: Sequence[str]) -> str:
    return "p:" + ",".join(choices)


def pennies_choices(graph: Graph, v: str, label: str) -> dict[str, str]:
    """Neighbour -> H/T for a pennies label of ``v``."""
    return dict(zip(sorted(graph.neighbors(v)), label[2:].split(",")))


def pennies_strategies(graph: Graph, a_star: Iterable[str], v: str) -> tuple[str, ...]:
    base = (PASS,) if v in set(a_star) else ("0", "1")
    nbrs = sorted(graph.neighbors(v))
    if not nbrs:
        return base
    return base + tuple(pennies_label(c) for c in product((HEADS, TAILS), repeat=len(nbrs)))


def orientation(graph: Graph) -> dict[frozenset, tuple[str, str]]:
    """Edge -> (tail, head); the tail is the lexicographically smaller endpoint."""
    return {frozenset(e): (min(e), max(e)) for e in graph.edges}


@lru_cache(maxsize=1024)
def _pennies_game(graph: Graph, a_star: frozenset[str]) -> Game:
    strategies = {v: pennies_strategies(graph, a_star, v) for v in graph.vertices}
    nbrs = {v: sorted(graph.neighbors(v)) for v in graph.vertices}

    def pay(v: str, local: dict) -> int:
        mine = local[v]
        if is_pennies(mine):
            my_calls = dict(zip(nbrs[v], mine[2:].split(",")))
            reward = 0
            for u in nbrs[v]:
                theirs = local[u]
                if not is_pennies(theirs):
                    continue
                their_call = dict(zip(nbrs[u], theirs[2:].split(",")))[v]
                match = my_calls[u] == their_call
                reward += match if v < u else not match
            return reward
        shown = {local[u] for u in local if u not in a_star}
        return -1 if {"0", "1"} <= shown else 0

    return Game.from_function(graph, strategies, pay)


def build_pennies_game(graph: Graph, a_star: Iterable[str]) -> Game:
    a_star = frozenset(a_star)
    for v in a_star:
        graph.check_vertex(v)
    return _pennies_game(graph, a_star)


def constant_profile(graph: Graph, a_star: Iterable[str], k: int) -> Profile:
    """``pass`` on ``a_star``, bit ``k`` everywhere else."""
    if k not in (0, 1):
        raise ValueError(f"k must be 0 or 1, not {k!r}")
    a_star = set(a_star)
    for v in a_star:
        graph.check_vertex(v)
    return tuple(PASS if v in a_star else str(k) for v in graph.vertices)


def product_game(games: Sequence[Game], guard: int = DEFAULT_GUARD) -> Game:
    """Strategies are tuples (one label per factor); payoffs add up."""
    if not games:
        raise ValueError("product of no games")
    graph = games[0].graph
    for other in games[1:]:
        if other.graph != graph:
            raise ValueError("all factors must be games over the same graph")
    total = 1
    for i in range(graph.n):
        for game in games:
            total *= game.sizes[i]
    if total > guard:
        raise TooLargeError(f"product game has {total} profiles, above the guard of {guard}")
    strategies = {v: tuple(product(*(g.strategies[v] for g in games))) for v in graph.vertices}
    tables = [{v: g.payoff_table(v) for v in graph.vertices} for g in games]
    local_names = {v: games[0].local_vertices(v) for v in graph.vertices}

    def pay(v: str, local: dict):
        names = local_names[v]
        return sum(t[v][tuple(local[u][i] for u in names)] for i, t in enumerate(tables))

    return Game.from_function(graph, strategies, pay)


def project(profile: Sequence[tuple], i: int) -> Profile:
    """Factor ``i`` of a product-game profile."""
    return tuple(s[i] for s in profile)


FULL_PRODUCT_MAX_VERTICES = 3


def full_product_game(graph: Graph, h: Iterable[AtomLike] = (), *, guard: int = DEFAULT_GUARD,
                      max_vertices: int = FULL_PRODUCT_MAX_VERTICES) -> Game:
    """One pennies game per distinct closure set, multiplied together.

    Its atom theory is exactly the set of atoms derivable from ``h``.  The
    size grows as a product over all vertex subsets, so it is only built for
    very small graphs.
    """
    if graph.n > max_vertices:
        raise TooLargeError(f"full product limited to {max_vertices} vertices; graph has {graph.n}")
    cm = closure_map(graph, h)
    closures = sorted({frozenset(graph.names(c)) for c in set(cm.table)}, key=lambda c: (len(c), sorted(c)))
    factors = [build_pennies_game(graph, c) for c in closures]
    return factors[0] if len(factors) == 1 else product_game(factors, guard)


@dataclass(frozen=True)
class Counterexample:
    """A game satisfying every hypothesis in which ``refuted`` fails.

    ``first`` and ``second`` are equilibria that agree on ``refuted.lhs``
    and differ at ``vertex``.
    """

    game: Game
    first: Profile
    second: Profile
    refuted: Atom
    hypotheses: frozenset[Atom]
    a_star: frozenset[str]
    vertex: str


def counterexample(graph: Graph, h: Iterable[AtomLike], atom: AtomLike, *,
                   guard: int = DEFAULT_GUARD, bound: int = DEFAULT_BOUND,
                   verify: bool = True) -> Counterexample:
    """Pennies game refuting ``atom`` while satisfying ``h``, verified by enumeration."""
    hyps = normalize_hypotheses(graph, h)
    atom = as_atom(atom, graph)
    a_star = closure_map(graph, hyps, bound=bound).closure(atom.lhs)
    missing = [v for v in atom.rhs if v not in a_star]
    if not missing:
        raise NoCounterexampleError(f"{atom} is derivable; no game refutes it")
    game = build_pennies_game(graph, a_star)
    out = Counterexample(game, constant_profile(graph, a_star, 0), constant_profile(graph, a_star, 1),
                         atom, hyps, frozenset(a_star), missing[0])
    if verify:
        verify_counterexample(out, guard)
    return out


def verify_counterexample(cx: Counterexample, guard: int = DEFAULT_GUARD) -> None:
    game = cx.game
    g = game.graph
    for p in (cx.first, cx.second):
        if not is_nash(game, p):
            raise InternalSoundnessError(f"witness {p} is not an equilibrium")
    i = g.index[cx.vertex]
    if cx.first[i] == cx.second[i]:
        raise InternalSoundnessError(f"witnesses agree at {cx.vertex}")
    for v in cx.refuted.lhs:
        if cx.first[g.index[v]] != cx.second[g.index[v]]:
            raise InternalSoundnessError(f"witnesses disagree on lhs vertex {v}")
    for hyp in cx.hypotheses:
        if not holds_atom(game, hyp, guard):
            raise InternalSoundnessError(f"hypothesis {hyp} fails in the constructed game")
    if holds_atom(game, cx.refuted, guard):
        raise InternalSoundnessError(f"{cx.refuted} holds in the constructed game")


@dataclass(frozen=True)
class FormulaCounterexample:
    game: Game
    assignment: dict
    factors: tuple[frozenset[str], ...]


def formula_counterexample(graph: Graph, f: Formula, *, guard: int = DEFAULT_GUARD,
                           bound: int = DEFAULT_BOUND, verify: bool = True) -> FormulaCounterexample:
    """A game falsifying an underivable formula.

    Takes a closed falsifying assignment and multiplies one pennies game per
    false atom (deduplicated by its closure set).  Every factor satisfies
    all true atoms, and each false atom fails in its own factor.
    """
    truth = falsifying_assignment(graph, f, bound=bound)
    if truth is None:
        raise NoCounterexampleError("formula is derivable; no game falsifies it")
    true_atoms = [a for a, t in truth.items() if t]
    cm = closure_map(graph, true_atoms, bound=bound)
    closures = sorted({cm.closure(a.lhs) for a, t in truth.items() if not t}, key=sorted)
    if closures:
        factors = [build_pennies_game(graph, c) for c in closures]
        game = factors[0] if len(factors) == 1 else product_game(factors, guard)
    else:
        # every atom true: any pennies game with a_star = V satisfies them all
        closures = [frozenset(graph.vertices)]
        game = build_pennies_game(graph, closures[0])
    out = FormulaCounterexample(game, truth, tuple(closures))
    if verify and models(game, f, guard):
        raise InternalSoundnessError("constructed game satisfies the formula")
    return out


def pennies_free(profile: Sequence[str]) -> bool:
    return not any(is_pennies(s) for s in profile)


def bit_classes_constant(graph: Graph, a_star: Iterable[str], profile: Sequence[str]) -> bool:
    """Within each closed neighbourhood, the players outside ``a_star`` share one label."""
    a_mask = graph.mask(a_star)
    for i in range(graph.n):
        seen = {profile[j] for j in bits(adj_plus_mask(graph, i) & ~a_mask)}
        if len(seen) > 1:
            return False
    return True
