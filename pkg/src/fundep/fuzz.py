"""Randomised soundness checks of the four axioms and of profile stitching.

All randomness comes from one seed: ``SeedSequence(seed).spawn(samples)``
gives each sample its own stream, so a run is reproducible byte for byte.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from fundep.game import Game, determined_mask, random_game
from fundep.graph import Graph, bits

CHECKS = ("reflexivity", "augmentation", "transitivity", "contiguity", "stitching")


@dataclass
class FuzzReport:
    graph: Graph
    seed: int
    samples: int
    max_strategies: int
    value_range: int
    instances: dict = field(default_factory=lambda: dict.fromkeys(CHECKS, 0))
    violations: dict = field(default_factory=lambda: dict.fromkeys(CHECKS, 0))
    equilibria: int = 0
    vacuous: int = 0
    first_violation: Optional[str] = None

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def render(self) -> str:
        g = self.graph
        lines = [
            f"fuzz graph={g!r} seed={self.seed} samples={self.samples} "
            f"max_strategies={self.max_strategies} value_range={self.value_range}",
            f"games={self.samples} equilibria={self.equilibria} games_without_equilibria={self.vacuous}",
        ]
        for name in CHECKS:
            lines.append(f"{name}: {self.instances[name]} instances, {self.violations[name]} violations")
        if self.first_violation:
            lines.append(f"first violation: {self.first_violation}")
        lines.append("result: " + ("PASS" if self.ok else "FAIL"))
        return "\n".join(lines) + "\n"


def _record(report: FuzzReport, check: str, ok: bool, describe) -> None:
    report.instances[check] += 1
    if not ok:
        report.violations[check] += 1
        if report.first_violation is None:
            report.first_violation = f"{check}: {describe()}"


def check_game(game: Game, report: FuzzReport, sample: int = 0) -> None:
    g = game.graph
    full = g.full_mask
    masks = range(full + 1)
    det = [determined_mask(game, a) for a in masks]

    def holds(a, b):
        return b & ~det[a] == 0

    def atom(a, b):
        return f"{','.join(g.sorted_names(a)) or '.'} |> {','.join(g.sorted_names(b)) or '.'}"

    for a in masks:
        _record(report, "reflexivity", a & ~det[a] == 0,
                lambda: f"sample {sample}: {atom(a, a)} fails")
    for a in masks:
        for b in masks:
            if not holds(a, b):
                continue
            for c in masks:
                _record(report, "augmentation", holds(a | c, b | c),
                        lambda: f"sample {sample}: {atom(a, b)} holds, {atom(a | c, b | c)} fails")
                if holds(b, c):
                    _record(report, "transitivity", holds(a, c),
                            lambda: f"sample {sample}: {atom(a, b)}, {atom(b, c)} hold, {atom(a, c)} fails")
    bb = g.cut_border_table
    for u in masks:
        w = full & ~u
        for a in _submasks(u):
            for c in _submasks(w):
                for b in masks:
                    if holds(a | b, c):
                        _record(report, "contiguity", holds(bb[u] | b, c),
                                lambda: f"sample {sample}: cut U={set(g.names(u))}: "
                                        f"{atom(a | b, c)} holds, {atom(bb[u] | b, c)} fails")

    ne = game.nash_indices()
    ne_set = set(ne)
    for u in masks:
        border = list(bits(bb[u]))
        groups = defaultdict(list)
        for p in ne:
            groups[tuple(p[j] for j in border)].append(p)
        for group in groups.values():
            for p in group:
                for q in group:
                    if p is q:
                        continue
                    e = tuple(p[j] if (u >> j) & 1 else q[j] for j in range(g.n))
                    _record(report, "stitching", e in ne_set,
                            lambda: f"sample {sample}: stitching {game.labels(p)} and "
                                    f"{game.labels(q)} on U={set(g.names(u))} is not an equilibrium")


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def run_fuzz(graph: Graph, seed: int = 0, samples: int = 100, max_strategies: int = 3,
             value_range: int = 1) -> FuzzReport:
    report = FuzzReport(graph, seed, samples, max_strategies, value_range)
    for i, child in enumerate(np.random.SeedSequence(seed).spawn(samples)):
        sizes_seed, payoff_seed = child.spawn(2)
        draw = np.random.default_rng(sizes_seed).integers(1, max_strategies, size=graph.n, endpoint=True)
        sizes = {v: int(k) for v, k in zip(graph.vertices, draw)}
        game = random_game(graph, sizes, value_range, payoff_seed)
        ne = game.nash_indices()
        report.equilibria += len(ne)
        report.vacuous += not ne
        check_game(game, report, i)
    return report
