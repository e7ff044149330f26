"""Proof traces for derivable atoms, and an independent checker.

A trace is a list of :class:`ProofStep`; each step names its rule and the
1-based indices of its premises.  Text form, one step per line::

    3. b,c |> d [Contiguity from 2; cut=(a,b|c,d)]

:func:`check_trace` re-verifies every step from plain Python sets and the
graph's edge list; it shares no code with the fixpoint that produced the
trace.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional

from fundep.derivation import DEFAULT_BOUND, closure_map, normalize_hypotheses
from fundep.errors import FundepError, NoProofError, TooLargeError
from fundep.formula import Atom, AtomLike, as_atom, parse_atom
from fundep.graph import Cut, Graph, bits

RULES = ("Reflexivity", "Hypothesis", "Augmentation", "Transitivity",
         "Contiguity", "LeftMono", "RightMono")


class ProofCheckError(FundepError, ValueError):
    pass


@dataclass(frozen=True)
class ProofStep:
    index: int
    atom: Atom
    rule: str
    premises: tuple[int, ...] = ()
    cut: Optional[Cut] = field(default=None)

    def __str__(self):
        text = f"{self.index}. {self.atom} [{self.rule}"
        if self.premises:
            text += " from " + ",".join(map(str, self.premises))
        if self.cut is not None:
            text += f"; cut={self.cut}"
        return text + "]"


def format_trace(steps: Iterable[ProofStep]) -> str:
    return "\n".join(map(str, steps))


_LINE_RE = re.compile(
    r"\s*(\d+)\.\s*(.*?)\s*\[(\w+)(?:\s+from\s+([\d,\s]+?))?\s*(?:;\s*cut=\(([^|)]*)\|([^)]*)\))?\s*\]\s*$")


def parse_trace(text: str, graph: Optional[Graph] = None) -> list[ProofStep]:
    steps = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        m = _LINE_RE.match(line)
        if m is None:
            raise ProofCheckError(f"line {lineno}: cannot read step {line!r}")
        idx, atom_text, rule, prem, u, w = m.groups()
        premises = tuple(int(x) for x in prem.split(",")) if prem else ()
        cut = None
        if u is not None:
            names = lambda s: frozenset(x.strip() for x in s.split(",") if x.strip())
            cut = Cut(names(u), names(w))
        steps.append(ProofStep(int(idx), parse_atom(atom_text, graph), rule, premises, cut))
    return steps


# -- checker ------------------------------------------------------------------

def _plain_border(edges, u: set, everyone: set) -> set:
    out = set()
    for x, y in edges:
        if x in u and y not in u:
            out.add(x)
        if y in u and x not in u:
            out.add(y)
    return out


def check_step(graph: Graph, hypotheses: set, step: ProofStep, earlier: dict) -> None:
    lhs, rhs = set(step.atom.lhs), set(step.atom.rhs)
    prem = []
    for k in step.premises:
        if k not in earlier or k >= step.index:
            raise ProofCheckError(f"step {step.index}: premise {k} is not an earlier step")
        prem.append(earlier[k])
    want = {"Reflexivity": 0, "Hypothesis": 0, "Augmentation": 1, "Transitivity": 2,
            "Contiguity": 1, "LeftMono": 1, "RightMono": 1}
    if step.rule not in want:
        raise ProofCheckError(f"step {step.index}: unknown rule {step.rule!r}")
    if len(prem) != want[step.rule]:
        raise ProofCheckError(f"step {step.index}: {step.rule} takes {want[step.rule]} premises")
    if (step.cut is not None) != (step.rule == "Contiguity"):
        raise ProofCheckError(f"step {step.index}: a cut is given exactly for Contiguity")
    bad = lambda why: ProofCheckError(f"step {step.index} ({step.rule}): {why}")

    if step.rule == "Reflexivity":
        if not rhs <= lhs:
            raise bad("rhs is not contained in lhs")
    elif step.rule == "Hypothesis":
        if step.atom not in hypotheses:
            raise bad("atom is not a hypothesis")
    elif step.rule == "Augmentation":
        # A |> B  gives  A u C |> B u C  for some C
        a, b = (set(x) for x in (prem[0].lhs, prem[0].rhs))
        if not (a <= lhs and b <= rhs and lhs - a <= rhs and rhs - b <= lhs):
            raise bad("no set C turns the premise into the conclusion")
    elif step.rule == "Transitivity":
        a, b = set(prem[0].lhs), set(prem[0].rhs)
        b2, c = set(prem[1].lhs), set(prem[1].rhs)
        if b != b2 or lhs != a or rhs != c:
            raise bad("premises A |> B and B |> C must conclude A |> C")
    elif step.rule == "LeftMono":
        if not (set(prem[0].lhs) <= lhs and set(prem[0].rhs) == rhs):
            raise bad("conclusion must enlarge only the lhs")
    elif step.rule == "RightMono":
        if not (set(prem[0].lhs) == lhs and rhs <= set(prem[0].rhs)):
            raise bad("conclusion must shrink only the rhs")
    elif step.rule == "Contiguity":
        everyone = set(graph.vertices)
        u, w = set(step.cut.u), set(step.cut.w)
        if u & w or u | w != everyone:
            raise bad("not a cut of the graph")
        premise_lhs, premise_rhs = set(prem[0].lhs), set(prem[0].rhs)
        if premise_rhs != rhs or not rhs <= w:
            raise bad("premise and conclusion must share a rhs inside W")
        borders = _plain_border(graph.edges, u, everyone) | _plain_border(graph.edges, w, everyone)
        # premise lhs is A u B with A inside U; conclusion lhs is borders u B
        b = premise_lhs & lhs
        if not (premise_lhs & w <= b and lhs == borders | b):
            raise bad("no decomposition A u B of the premise lhs fits this cut")


def check_trace(graph: Graph, hypotheses: Iterable[AtomLike], steps: list[ProofStep],
                goal: Optional[AtomLike] = None) -> None:
    """Raise :class:`ProofCheckError` unless every step is a valid rule application."""
    hyps = {as_atom(a, graph) for a in hypotheses}
    earlier: dict[int, Atom] = {}
    for pos, step in enumerate(steps, 1):
        if step.index != pos:
            raise ProofCheckError(f"step numbered {step.index} at position {pos}")
        for name in step.atom.lhs + step.atom.rhs:
            graph.check_vertex(name)
        check_step(graph, hyps, step, earlier)
        earlier[step.index] = step.atom
    if goal is not None:
        goal = as_atom(goal, graph)
        if not steps or steps[-1].atom != goal:
            raise ProofCheckError(f"trace does not end with the goal {goal}")


# -- extraction -----------------------------------------------------------------

def _justified_fixpoint(g: Graph, hyps: list[tuple[int, int]]):
    """Closure fixpoint that remembers, per fact ``(L, v)``, the rule that first set it.

    Justifications only cite facts that already existed, so following them
    back always terminates.
    """
    full = g.full_mask
    size = full + 1
    bb = g.cut_border_table
    clos = list(range(size))
    why: dict[tuple[int, int], tuple] = {}
    for L in range(size):
        for v in bits(L):
            why[(L, v)] = ("refl",)

    def grow(L, c, new, reason):
        for v in bits(new & ~c):
            why[(L, v)] = reason
        return c | new

    changed = True
    while changed:
        changed = False
        for L in range(size):
            c = clos[L]
            while True:
                before = c
                for low in bits(L):
                    sub = L ^ (1 << low)
                    c = grow(L, c, clos[sub], ("mono", sub))
                for k, (hl, hr) in enumerate(hyps):
                    if hl & ~c == 0:
                        c = grow(L, c, hr, ("hyp", k))
                x = c
                c = grow(L, c, clos[x], ("trans", x))
                if c == before:
                    break
            if c != clos[L]:
                clos[L] = c
                changed = True
            for U in range(size):
                W = full & ~U
                cw = c & W
                if not cw:
                    continue
                X = bb[U] | (L & W)
                old = clos[X]
                if old | cw != old:
                    for v in bits(cw & ~old):
                        why[(X, v)] = ("cut", U, L)
                    clos[X] = old | cw
                    changed = True
                    if X == L:
                        c |= cw
    return clos, why


class _Builder:
    def __init__(self, g: Graph, hyps: list[tuple[int, int]], why):
        self.g = g
        self.hyps = hyps
        self.why = why
        self.steps: list[tuple[tuple[int, int], str, tuple[int, ...], Optional[int]]] = []
        self.known: dict[tuple[int, int], int] = {}

    def add(self, lhs, rhs, rule, premises=(), cut=None) -> int:
        key = (lhs, rhs)
        if key in self.known:
            return self.known[key]
        self.steps.append((key, rule, tuple(premises), cut))
        self.known[key] = len(self.steps)
        return len(self.steps)

    def vertex(self, L: int, v: int) -> int:
        """Index of a step concluding ``L |> v``."""
        key = (L, 1 << v)
        if key in self.known:
            return self.known[key]
        if (L >> v) & 1:
            return self.add(L, 1 << v, "Reflexivity")
        reason = self.why[(L, v)]
        kind = reason[0]
        if kind == "mono":
            i = self.vertex(reason[1], v)
            return self.add(L, 1 << v, "LeftMono", (i,))
        if kind == "hyp":
            hl, hr = self.hyps[reason[1]]
            i = self.aggregate(L, hl)
            j = self.add(hl, hr, "Hypothesis")
            k = self.add(L, hr, "Transitivity", (i, j))
            return self.add(L, 1 << v, "RightMono", (k,))
        if kind == "trans":
            x = reason[1]
            i = self.aggregate(L, x)
            j = self.vertex(x, v)
            return self.add(L, 1 << v, "Transitivity", (i, j))
        if kind == "cut":
            _, U, src = reason
            i = self.vertex(src, v)
            return self.add(L, 1 << v, "Contiguity", (i,), U)
        raise AssertionError(reason)

    def aggregate(self, L: int, S: int) -> int:
        """Index of a step concluding ``L |> S``, built one vertex at a time."""
        if (L, S) in self.known:
            return self.known[(L, S)]
        if S & ~L == 0:
            return self.add(L, S, "Reflexivity")
        outside = list(bits(S & ~L))
        inside = S & L
        if inside:
            cur_rhs, cur = inside, self.add(L, inside, "Reflexivity")
            todo = outside
        else:
            first = outside[0]
            cur_rhs, cur = 1 << first, self.vertex(L, first)
            todo = outside[1:]
        for x in todo:
            bit = 1 << x
            got_x = self.vertex(L, x)
            widened = self.add(L | bit, cur_rhs | bit, "Augmentation", (cur,))
            lifted = self.add(L, L | bit, "Augmentation", (got_x,))
            cur_rhs |= bit
            cur = self.add(L, cur_rhs, "Transitivity", (lifted, widened))
        return cur


def derive_trace(g: Graph, h: Iterable[AtomLike], atom: AtomLike, *,
                 bound: int = DEFAULT_BOUND) -> list[ProofStep]:
    """A checkable derivation of ``atom`` from ``h``; raises NoProofError if none exists."""
    hyps = normalize_hypotheses(g, h)
    goal = as_atom(atom, g)
    if goal.trivial:
        return [ProofStep(1, goal, "Reflexivity")]
    if goal in hyps:
        return [ProofStep(1, goal, "Hypothesis")]
    if g.n > bound:
        raise TooLargeError(f"trace extraction limited to {bound} vertices")
    if not closure_map(g, hyps, bound=bound).derives(goal):
        raise NoProofError(f"{goal} is not derivable from the given hypotheses")
    hyp_masks = sorted((g.mask(a.lhs), g.mask(a.rhs)) for a in hyps)
    _, why = _justified_fixpoint(g, hyp_masks)
    b = _Builder(g, hyp_masks, why)
    target = b.aggregate(g.mask(goal.lhs), g.mask(goal.rhs))
    return _prune(g, b.steps, target)


def _prune(g: Graph, raw, target: int) -> list[ProofStep]:
    """Keep the steps the goal depends on, renumbered, goal last."""
    needed = set()
    stack = [target]
    while stack:
        k = stack.pop()
        if k in needed:
            continue
        needed.add(k)
        stack.extend(raw[k - 1][2])
    renumber = {old: new for new, old in enumerate(sorted(needed), 1)}
    out = []
    full = g.full_mask
    for old in sorted(needed):
        (lhs, rhs), rule, premises, u = raw[old - 1]
        cut = None if u is None else Cut(g.names(u), g.names(full & ~u))
        out.append(ProofStep(renumber[old], Atom(g.names(lhs), g.names(rhs)), rule,
                             tuple(renumber[p] for p in premises), cut))
    return out
