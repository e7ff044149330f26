"""Finite strategic games over a dependency graph, pure Nash equilibria, and
the dependence semantics.

Payoffs are exact :class:`fractions.Fraction` values.  The payoff of ``v`` is
stored as a table over the local profiles of ``adj_plus(v)`` (vertex order),
so a game cannot let ``v``'s payoff read a vertex outside its closed
neighbourhood.

Profiles are tuples of strategy labels aligned with ``graph.vertices``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence, Union

import numpy as np

from fundep import kernels
from fundep.errors import IncompleteGameError, InvalidVertexError, TooLargeError
from fundep.formula import Atom, Formula, atoms_of, eval_prop
from fundep.graph import Cut, Graph, adj_plus_mask, bits

DEFAULT_GUARD = 10**7

Label = Hashable
Profile = tuple
ProfileLike = Union[Sequence[Label], Mapping[str, Label]]


def to_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("payoff must be a number, not bool")
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        # floats are accepted only when they are exact integers or dyadics
        return Fraction(value)
    raise TypeError(f"cannot use {value!r} as a payoff")


class Game:
    """A strategic game whose payoff locality follows ``graph``.

    ``payoffs[v]`` maps tuples of labels, one per member of ``adj_plus(v)`` in
    vertex order, to payoff values (ints, Fractions or ``"p/q"`` strings).
    Tables must be total.
    """

    def __init__(self, graph: Graph, strategies: Mapping[str, Sequence[Label]],
                 payoffs: Mapping[str, Mapping[tuple, Any]]):
        self.graph = graph
        if set(strategies) != set(graph.vertices):
            missing = set(graph.vertices) - set(strategies)
            extra = set(strategies) - set(graph.vertices)
            if extra:
                raise InvalidVertexError(sorted(extra)[0], "strategy table")
            raise IncompleteGameError(f"no strategies for {sorted(missing)}")
        self.strategies: dict[str, tuple] = {}
        for v in graph.vertices:
            labels = tuple(strategies[v])
            if not labels:
                raise IncompleteGameError(f"empty strategy set for {v!r}")
            if len(set(labels)) != len(labels):
                raise IncompleteGameError(f"duplicate strategy labels for {v!r}")
            self.strategies[v] = labels
        self._label_index = [{s: k for k, s in enumerate(self.strategies[v])} for v in graph.vertices]
        self.sizes = tuple(len(self.strategies[v]) for v in graph.vertices)
        self._local = tuple(tuple(bits(adj_plus_mask(graph, i))) for i in range(graph.n))
        self._tables = []
        for i, v in enumerate(graph.vertices):
            table = payoffs.get(v)
            if table is None:
                raise IncompleteGameError(f"no payoff table for {v!r}")
            self._tables.append(self._flatten(i, table))

    @classmethod
    def from_function(cls, graph: Graph, strategies: Mapping[str, Sequence[Label]],
                      pay: Callable[[str, dict], Any]) -> "Game":
        """Build the tables by calling ``pay(v, local)`` on every local profile.

        ``local`` maps each member of ``adj_plus(v)`` to its label.
        """
        payoffs = {}
        for i, v in enumerate(graph.vertices):
            names = [graph.vertices[j] for j in bits(adj_plus_mask(graph, i))]
            payoffs[v] = {
                key: pay(v, dict(zip(names, key)))
                for key in product(*(strategies[u] for u in names))
            }
        return cls(graph, strategies, payoffs)

    def _flatten(self, i: int, table: Mapping[tuple, Any]) -> list[Fraction]:
        v = self.graph.vertices[i]
        local = self._local[i]
        size = math.prod(self.sizes[j] for j in local)
        flat: list = [None] * size
        for key, value in table.items():
            if not isinstance(key, tuple) or len(key) != len(local):
                raise IncompleteGameError(
                    f"payoff key {key!r} for {v!r} must list one label per member of "
                    f"Adj+({v}) = {[self.graph.vertices[j] for j in local]}")
            k = 0
            for j, label in zip(local, key):
                idx = self._label_index[j].get(label)
                if idx is None:
                    raise IncompleteGameError(
                        f"payoff key for {v!r} uses unknown strategy {label!r} of {self.graph.vertices[j]!r}")
                k = k * self.sizes[j] + idx
            flat[k] = to_fraction(value)
        if any(x is None for x in flat):
            raise IncompleteGameError(f"payoff table for {v!r} is not total ({flat.count(None)} missing)")
        return flat

    def __repr__(self):
        sizes = ", ".join(f"{v}:{n}" for v, n in zip(self.graph.vertices, self.sizes))
        return f"Game({self.graph!r}; strategies {sizes})"

    def __eq__(self, other):
        if not isinstance(other, Game):
            return NotImplemented
        return (self.graph == other.graph and self.strategies == other.strategies
                and self._tables == other._tables)

    __hash__ = object.__hash__

    @property
    def num_profiles(self) -> int:
        return math.prod(self.sizes)

    def local_vertices(self, v: str) -> tuple[str, ...]:
        return tuple(self.graph.vertices[j] for j in self._local[self.graph.check_vertex(v)])

    def payoff_table(self, v: str) -> dict[tuple, Fraction]:
        i = self.graph.check_vertex(v)
        local = self._local[i]
        keys = product(*(self.strategies[self.graph.vertices[j]] for j in local))
        return dict(zip(keys, self._tables[i]))

    # -- profiles ---------------------------------------------------------

    def profile(self, p: ProfileLike) -> Profile:
        """Normalise ``p`` to a label tuple, validating every choice."""
        g = self.graph
        if isinstance(p, Mapping):
            for name in p:
                g.check_vertex(name)
            try:
                p = tuple(p[v] for v in g.vertices)
            except KeyError as exc:
                raise IncompleteGameError(f"profile has no choice for {exc.args[0]!r}") from None
        p = tuple(p)
        if len(p) != g.n:
            raise IncompleteGameError(f"profile has {len(p)} choices for {g.n} players")
        for i, label in enumerate(p):
            if label not in self._label_index[i]:
                raise IncompleteGameError(f"{label!r} is not a strategy of {g.vertices[i]!r}")
        return p

    def indices(self, p: ProfileLike) -> tuple[int, ...]:
        p = self.profile(p)
        return tuple(self._label_index[i][s] for i, s in enumerate(p))

    def labels(self, idx: Sequence[int]) -> Profile:
        return tuple(self.strategies[v][k] for v, k in zip(self.graph.vertices, idx))

    def _payoff_idx(self, i: int, idx: Sequence[int]) -> Fraction:
        k = 0
        for j in self._local[i]:
            k = k * self.sizes[j] + idx[j]
        return self._tables[i][k]

    # -- equilibria -------------------------------------------------------

    @cached_property
    def _scan_arrays(self):
        """Flat arrays for the kernel: per-player local digits, strides, best-response flags."""
        local_idx, local_off, strides, flag_off, flags = [], [0], [], [], []
        for i in range(self.graph.n):
            local = self._local[i]
            stride = 1
            st = []
            for j in reversed(local):
                st.append(stride)
                stride *= self.sizes[j]
            st.reverse()
            local_idx.extend(local)
            strides.extend(st)
            local_off.append(len(local_idx))
            flag_off.append(len(flags))
            flags.extend(_best_response_flags(self._tables[i], st[local.index(i)], self.sizes[i]))
        as64 = lambda xs: np.asarray(xs, dtype=np.int64)
        return (as64(self.sizes), as64(local_idx), as64(local_off), as64(strides),
                as64(flag_off), np.asarray(flags, dtype=np.uint8))

    def _nash_linear(self, guard: int, threads: int, backend=None) -> np.ndarray:
        total = self.num_profiles
        if total > guard:
            raise TooLargeError(
                f"{total} profiles exceed the enumeration guard of {guard}; raise the guard to proceed")
        scan = (backend or kernels.active).nash_scan
        arrays = self._scan_arrays
        threads = max(1, min(threads, total))
        if threads == 1:
            return scan(*arrays, 0, total)
        bounds = [total * t // threads for t in range(threads + 1)]
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda t: scan(*arrays, bounds[t], bounds[t + 1]), range(threads)))
        return np.concatenate(parts)

    def _unrank(self, lin: int) -> tuple[int, ...]:
        out = [0] * self.graph.n
        for i in range(self.graph.n - 1, -1, -1):
            lin, out[i] = divmod(lin, self.sizes[i])
        return tuple(out)

    def nash_indices(self, guard: int = DEFAULT_GUARD, threads: int = 1) -> list[tuple[int, ...]]:
        """Equilibria as strategy-index tuples, lexicographic. Cached per game."""
        cached = self.__dict__.get("_ne_cache")
        if cached is None:
            lins = self._nash_linear(guard, threads)
            cached = [self._unrank(int(x)) for x in lins]
            self.__dict__["_ne_cache"] = cached
        return cached


def _best_response_flags(table: Sequence[Fraction], own_stride: int, own_size: int) -> list[int]:
    flags = [0] * len(table)
    block = own_stride * own_size
    for start in range(0, len(table), block):
        for off in range(own_stride):
            base = start + off
            cells = range(base, base + block, own_stride)
            best = max(table[k] for k in cells)
            for k in cells:
                if table[k] == best:
                    flags[k] = 1
    return flags


# -- operations -------------------------------------------------------------

def payoff(game: Game, v: str, p: ProfileLike) -> Fraction:
    """Payoff of ``v`` at ``p``; only ``adj_plus(v)`` is read."""
    i = game.graph.check_vertex(v)
    return game._payoff_idx(i, game.indices(p))


def is_nash(game: Game, p: ProfileLike) -> bool:
    """True iff no player can strictly gain by a unilateral change."""
    idx = list(game.indices(p))
    for i in range(game.graph.n):
        current = game._payoff_idx(i, idx)
        own = idx[i]
        for alt in range(game.sizes[i]):
            if alt == own:
                continue
            idx[i] = alt
            better = game._payoff_idx(i, idx) > current
            idx[i] = own
            if better:
                return False
    return True


def enumerate_nash(game: Game, guard: int = DEFAULT_GUARD, threads: int = 1) -> list[Profile]:
    """All pure equilibria, in lexicographic order of strategy indices."""
    return [game.labels(idx) for idx in game.nash_indices(guard, threads)]


def determined_mask(game: Game, lhs_mask: int, guard: int = DEFAULT_GUARD) -> int:
    """Mask of vertices ``v`` with ``lhs |> v`` true in ``game``."""
    ne = game.nash_indices(guard)
    n = game.graph.n
    lhs = list(bits(lhs_mask))
    seen: dict[tuple, tuple] = {}
    out = game.graph.full_mask
    for idx in ne:
        key = tuple(idx[j] for j in lhs)
        first = seen.setdefault(key, idx)
        if first is not idx:
            for j in range(n):
                if first[j] != idx[j]:
                    out &= ~(1 << j)
    return out


def holds_atom(game: Game, atom: Atom, guard: int = DEFAULT_GUARD) -> bool:
    """``game`` satisfies ``atom``: equilibria equal on lhs are equal on rhs.

    Vacuously true when the game has no pure equilibrium.
    """
    g = game.graph
    rhs = g.mask(atom.rhs)
    return rhs & ~determined_mask(game, g.mask(atom.lhs), guard) == 0


def models(game: Game, f: Formula, guard: int = DEFAULT_GUARD) -> bool:
    truth = {a: holds_atom(game, a, guard) for a in atoms_of(f)}
    return eval_prop(f, truth)


def stitch(p: Sequence[Label], q: Sequence[Label], cut: Cut, graph: Graph) -> Profile:
    """``p``'s choices on ``cut.u`` and ``q``'s on ``cut.w``."""
    return tuple(p[i] if v in cut.u else q[i] for i, v in enumerate(graph.vertices))


def random_game(graph: Graph, sizes: Union[int, Mapping[str, int]], value_range: int,
                seed: Union[int, np.random.SeedSequence]) -> Game:
    """Integer payoffs drawn uniformly from ``[-value_range, value_range]``.

    Deterministic in its arguments.  Strategy labels are ``"0"``, ``"1"``, ...
    """
    if isinstance(sizes, int):
        sizes = {v: sizes for v in graph.vertices}
    for v in graph.vertices:
        if sizes.get(v, 0) < 1:
            raise IncompleteGameError(f"strategy count for {v!r} must be at least 1")
    rng = np.random.default_rng(seed)
    strategies = {v: tuple(str(k) for k in range(sizes[v])) for v in graph.vertices}
    payoffs = {}
    for i, v in enumerate(graph.vertices):
        names = [graph.vertices[j] for j in bits(adj_plus_mask(graph, i))]
        keys = list(product(*(strategies[u] for u in names)))
        values = rng.integers(-value_range, value_range, size=len(keys), endpoint=True)
        payoffs[v] = {k: int(x) for k, x in zip(keys, values)}
    return Game(graph, strategies, payoffs)


def profile_dict(game: Game, p: Sequence[Label]) -> dict[str, Label]:
    return dict(zip(game.graph.vertices, p))


def constant_game(graph: Graph, sizes: Union[int, Mapping[str, int]], value: int = 0) -> Game:
    if isinstance(sizes, int):
        sizes = {v: sizes for v in graph.vertices}
    strategies = {v: tuple(str(k) for k in range(sizes[v])) for v in graph.vertices}
    return Game.from_function(graph, strategies, lambda v, local: value)


def game_from_tables(graph: Graph, strategies: Mapping[str, Sequence[Label]],
                     rows: Iterable[tuple[str, Mapping[str, Label], Any]]) -> Game:
    """Build from ``(vertex, {name: label over adj_plus}, value)`` rows."""
    payoffs: dict[str, dict] = {v: {} for v in graph.vertices}
    for v, local, value in rows:
        i = graph.check_vertex(v)
        names = [graph.vertices[j] for j in bits(adj_plus_mask(graph, i))]
        for name in local:
            graph.check_vertex(name)
            if name not in names:
                raise IncompleteGameError(
                    f"payoff of {v!r} keyed on {name!r}, which is outside Adj+({v})")
        missing = [u for u in names if u not in local]
        if missing:
            raise IncompleteGameError(f"payoff row of {v!r} gives no label for {missing}")
        key = tuple(local[u] for u in names)
        if key in payoffs[v]:
            raise IncompleteGameError(f"duplicate payoff row for {v!r} at {dict(local)}")
        payoffs[v][key] = value
    return Game(graph, strategies, payoffs)
