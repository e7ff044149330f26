"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Equilibrium scans run over random games; closure sweeps run over paths.
"""

import argparse
import time

from fundep import kernels
from fundep.derivation import closure_fixpoint
from fundep.formula import Atom
from fundep.game import random_game
from fundep.graph import path_graph


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def nash_cases():
    for n, k in ((6, 6), (8, 5)):
        g = path_graph([f"v{i}" for i in range(n)])
        game = random_game(g, k, 3, seed=n)
        yield f"nash path{n} x{k} ({game.num_profiles} profiles)", game


def closure_cases():
    for n in (8, 10, 12):
        g = path_graph([f"v{i}" for i in range(n)])
        hyps = [Atom([g.vertices[0]], [g.vertices[-1]]), Atom([g.vertices[2]], [g.vertices[1]])]
        yield f"closure path{n} ({1 << n} lhs sets)", g, hyps


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    backends = kernels.backends()
    names = list(backends)
    print(f"{'case':44s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    rows = []
    for label, game in nash_cases():
        arrays, total = game._scan_arrays, game.num_profiles
        rows.append((label, [best_of(args.repeat, lambda b=b: b.nash_scan(*arrays, 0, total))
                             for b in backends.values()]))
    for label, g, hyps in closure_cases():
        rows.append((label, [best_of(args.repeat, lambda b=b: closure_fixpoint(g, hyps, backend=b))
                             for b in backends.values()]))
    for label, times in rows:
        line = f"{label:44s}" + "".join(f"{t:11.4f}s" for t in times)
        if len(times) > 1:
            line += f"{times[-1] / times[0]:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
