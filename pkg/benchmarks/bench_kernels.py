"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Times each kernel on a few corpus groups, then full lattice enumeration with
each backend selected in turn.
"""

import argparse
import time

import numpy as np

from tigroups import kernels
from tigroups.corpus import build, family_recipes
from tigroups.subgroups import all_subgroups

GROUPS = ("S4", "S5", "Z5^2:Q8", "Z5^2:Dic3")


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    recipes = {r.name: r for r in family_recipes()}
    print(f"backends: {', '.join(backends)}")
    header = f"{'group':<12} {'kernel':<22}" + "".join(f"{b:>12}" for b in backends)
    print(header)
    print("-" * len(header))
    for name in GROUPS:
        G = build(recipes[name])
        rng = np.random.default_rng(0)
        gens = [int(x) for x in rng.integers(1, G.order, size=2)]
        members = np.arange(G.order, dtype=np.int32)[: G.order // 2]
        cases = {
            "dimino(2 random gens)": lambda b: kernels.dimino(G, [0], gens, backend=b),
            "conjugate(half table)": lambda b: [kernels.conjugate_bits(G, members, g, backend=b) for g in range(0, G.order, 7)],
            "associativity scan": lambda b: kernels.associativity_violation(G, backend=b),
        }
        for label, fn in cases.items():
            times = [best_of(lambda: fn(b), args.repeat) for b in backends]
            print(f"{name:<12} {label:<22}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times))
        saved = kernels.BACKEND
        times = []
        for b in backends:
            kernels.BACKEND = b
            times.append(best_of(lambda: all_subgroups(G), args.repeat))
        kernels.BACKEND = saved
        print(f"{name:<12} {'all_subgroups':<22}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times))


if __name__ == "__main__":
    main()
