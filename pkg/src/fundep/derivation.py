"""Derivability of dependence statements over a fixed graph.

Two independent routes:

* :func:`saturate_atoms` is the brute-force oracle.  It closes the set of
  atoms over the whole atom space under Reflexivity, Augmentation,
  Transitivity and every instance of Contiguity.  Exponential in ``4**n``.
* :func:`closure_map` computes, for every lhs set ``L``, the set ``clos(L)``
  of vertices ``v`` with ``L |> v`` derivable, as a fixpoint over bitmasks
  (see ``closure_pass`` in the kernels).  ``A |> B`` is derivable iff
  ``B <= clos(A)``.

:func:`decide_formula` reduces derivability of an arbitrary formula to atom
derivability: a formula is underivable iff some falsifying assignment of
its atoms is closed, i.e. no atom it makes false is derivable from the
atoms it makes true.
"""

from __future__ import annotations

from collections import defaultdict, deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional

import numpy as np

from fundep import kernels
from fundep.errors import NotSparseError, TooLargeError
from fundep.formula import (Atom, AtomLike, Dep, Formula, as_atom, atoms_of,
                            check_formula, eval_prop, implies)
from fundep.graph import Graph, bits, is_sparse

ORACLE_MAX_VERTICES = 5
DEFAULT_BOUND = 12
FORMULA_MAX_ATOMS = 20


def normalize_hypotheses(g: Graph, h: Iterable[AtomLike]) -> frozenset[Atom]:
    return frozenset(as_atom(a, g) for a in h)


def _atom_masks(g: Graph, a: Atom) -> tuple[int, int]:
    return g.mask(a.lhs), g.mask(a.rhs)


def _subsets(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


# -- oracle -------------------------------------------------------------------

def saturate_masks(g: Graph, h: Iterable[Atom], *, use_contiguity: bool = True,
                   extra_rules: Iterable[str] = (), max_vertices: int = ORACLE_MAX_VERTICES) -> set[tuple[int, int]]:
    """Least set of ``(lhs, rhs)`` mask pairs closed under the axioms.

    ``extra_rules`` may name ``"left_mono"`` and ``"right_mono"`` to add the
    two derived monotonicity rules (used to check they are admissible).
    """
    if g.n > max_vertices:
        raise TooLargeError(
            f"saturation oracle limited to {max_vertices} vertices (atom space 4**n); graph has {g.n}")
    extra = set(extra_rules)
    unknown = extra - {"left_mono", "right_mono"}
    if unknown:
        raise ValueError(f"unknown extra rules {sorted(unknown)}")
    full = g.full_mask
    masks = range(full + 1)
    bb = g.cut_border_table
    derived: set[tuple[int, int]] = set()
    by_lhs: dict[int, list[int]] = defaultdict(list)
    by_rhs: dict[int, list[int]] = defaultdict(list)
    queue: deque = deque()

    def add(a, b):
        if (a, b) not in derived:
            derived.add((a, b))
            by_lhs[a].append(b)
            by_rhs[b].append(a)
            queue.append((a, b))

    for a in masks:
        for b in _subsets(a):
            add(a, b)
    for atom in h:
        add(*_atom_masks(g, atom))

    while queue:
        a, b = queue.popleft()
        for c in masks:
            add(a | c, b | c)
        for c in list(by_lhs[b]):
            add(a, c)
        for x in list(by_rhs[a]):
            add(x, b)
        if use_contiguity:
            for u in masks:
                w = full & ~u
                if b & u:
                    continue
                for s in _subsets(a & u):
                    add(bb[u] | (a & w) | s, b)
        if "left_mono" in extra:
            for c in masks:
                add(a | c, b)
        if "right_mono" in extra:
            for s in _subsets(b):
                add(a, s)
    return derived


def saturate_atoms(g: Graph, h: Iterable[AtomLike] = (), **kw) -> frozenset[Atom]:
    """Every atom derivable from ``h`` over ``g`` (brute force, ``n <= 5``)."""
    hyps = normalize_hypotheses(g, h)
    pairs = saturate_masks(g, hyps, **kw)
    return frozenset(Atom(g.names(a), g.names(b)) for a, b in pairs)


# -- closure map ----------------------------------------------------------------

@dataclass(frozen=True)
class ClosureMap:
    """``table[L]`` is the mask of vertices derivable from the lhs mask ``L``."""

    graph: Graph
    hypotheses: frozenset[Atom]
    table: tuple[int, ...]

    def closure_mask(self, lhs: int) -> int:
        return self.table[lhs]

    def closure(self, lhs: Iterable[str]) -> frozenset[str]:
        return self.graph.names(self.table[self.graph.mask(lhs)])

    def derives(self, atom: AtomLike) -> bool:
        lhs, rhs = _atom_masks(self.graph, as_atom(atom, self.graph))
        return rhs & ~self.table[lhs] == 0

    def atoms(self) -> frozenset[Atom]:
        """All derivable atoms (``4**n`` of them at most)."""
        g = self.graph
        return frozenset(Atom(g.names(a), g.names(b))
                         for a, c in enumerate(self.table) for b in _subsets(c))


def _hyp_arrays(g: Graph, hyps: Iterable[Atom]):
    pairs = sorted(_atom_masks(g, a) for a in hyps)
    lhs = np.array([p[0] for p in pairs], dtype=np.uint32)
    rhs = np.array([p[1] for p in pairs], dtype=np.uint32)
    return lhs, rhs


def closure_fixpoint(g: Graph, hyps: Iterable[Atom], *, use_contiguity: bool = True,
                     threads: int = 1, backend=None) -> np.ndarray:
    """Run closure sweeps to the least fixpoint.

    With ``threads > 1`` each round hands a slice of lhs masks to each worker,
    every worker sweeping its own copy of the previous round's map; the
    copies are OR-merged.  Every rule is monotone, so the least fixpoint does
    not depend on the schedule.
    """
    kern = backend or kernels.active
    size = 1 << g.n
    clos = np.arange(size, dtype=np.uint32)
    hl, hr = _hyp_arrays(g, hyps)
    bb = np.asarray(g.cut_border_table, dtype=np.uint32)
    if threads <= 1:
        while kern.closure_pass(clos, 0, size, hl, hr, bb, use_contiguity):
            pass
        return clos
    threads = min(threads, size)
    bounds = [size * t // threads for t in range(threads + 1)]

    def sweep(snapshot, t):
        part = snapshot.copy()
        kern.closure_pass(part, bounds[t], bounds[t + 1], hl, hr, bb, use_contiguity)
        return part

    with ThreadPoolExecutor(threads) as pool:
        while True:
            parts = list(pool.map(lambda t: sweep(clos, t), range(threads)))
            merged = np.bitwise_or.reduce(parts)
            if np.array_equal(merged, clos):
                return clos
            clos = merged


@lru_cache(maxsize=8192)
def _closure_cached(g: Graph, hyps: frozenset[Atom], use_contiguity: bool) -> ClosureMap:
    table = closure_fixpoint(g, hyps, use_contiguity=use_contiguity)
    return ClosureMap(g, hyps, tuple(int(x) for x in table))


def closure_map(g: Graph, h: Iterable[AtomLike] = (), *, bound: int = DEFAULT_BOUND,
                use_contiguity: bool = True, threads: int = 1) -> ClosureMap:
    if g.n > bound:
        raise TooLargeError(
            f"closure map limited to {bound} vertices ({g.n} given); raise the bound to proceed")
    hyps = normalize_hypotheses(g, h)
    if threads > 1:
        table = closure_fixpoint(g, hyps, use_contiguity=use_contiguity, threads=threads)
        return ClosureMap(g, hyps, tuple(int(x) for x in table))
    return _closure_cached(g, hyps, use_contiguity)


def derives_atom(g: Graph, h: Iterable[AtomLike], atom: AtomLike, *, bound: int = DEFAULT_BOUND) -> bool:
    """True iff ``h`` proves ``atom`` over ``g``: ``rhs <= clos(lhs)``."""
    return closure_map(g, h, bound=bound).derives(as_atom(atom, g))


# -- formulas -----------------------------------------------------------------

def falsifying_assignment(g: Graph, f: Formula, *, bound: int = DEFAULT_BOUND,
                          max_atoms: int = FORMULA_MAX_ATOMS) -> Optional[dict[Atom, bool]]:
    """A closed truth assignment that falsifies ``f``, or None if ``f`` is derivable.

    Closed means: no atom assigned false is derivable from the atoms assigned true.
    Such an assignment is exactly the atom-theory of some game.
    """
    check_formula(f, g)
    atoms = sorted(atoms_of(f))
    if len(atoms) > max_atoms:
        raise TooLargeError(f"formula has {len(atoms)} distinct atoms; limit is {max_atoms}")
    if g.n > bound:
        raise TooLargeError(f"closure map limited to {bound} vertices ({g.n} given)")
    for values in product((True, False), repeat=len(atoms)):
        truth = dict(zip(atoms, values))
        if eval_prop(f, truth):
            continue
        true_atoms = frozenset(a for a in atoms if truth[a])
        cm = closure_map(g, true_atoms, bound=bound)
        if not any(cm.derives(a) for a in atoms if not truth[a]):
            return truth
    return None


def decide_formula(g: Graph, f: Formula, *, bound: int = DEFAULT_BOUND,
                   max_atoms: int = FORMULA_MAX_ATOMS) -> bool:
    """True iff ``f`` is a theorem of the proof system over ``g``."""
    return falsifying_assignment(g, f, bound=bound, max_atoms=max_atoms) is None


def decide_query(g: Graph, h: Iterable[AtomLike], goal: Formula, **kw) -> bool:
    """``h`` proves ``goal``; atoms go through the closure map directly."""
    hyps = sorted(normalize_hypotheses(g, h))
    if isinstance(goal, Dep):
        return derives_atom(g, hyps, goal.atom, bound=kw.get("bound", DEFAULT_BOUND))
    return decide_formula(g, implies(*(Dep(a) for a in hyps), goal), **kw)


def sparse_principle_formula(g: Graph, w: Iterable[str]) -> Formula:
    """``/\\_{v in w} (V - v |> v)  ->  V - w |> w`` as nested implications."""
    members = sorted(g.names(g.mask(w)))
    if not is_sparse(g, members):
        raise NotSparseError(f"{{{','.join(members)}}} has two members at distance < 3")
    everyone = set(g.vertices)
    premises = [Dep(Atom(everyone - {v}, [v])) for v in members]
    return implies(*premises, Dep(Atom(everyone - set(members), members)))
