"""Time the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
from __future__ import annotations

import argparse
import random
import time

from catassoc import kernels, oracle
from catassoc.bst import balanced
from catassoc.caterpillar import Caterpillar
from catassoc.wilber import bit_reversal


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def cases():
    graph = Caterpillar((1, 1, 1, 1))
    codes = [t.code() for t in oracle.enumerate_stgs(graph)]
    off, adj = oracle._csr(graph)
    rg = oracle.rotation_graph(graph)
    rng = random.Random(0)
    weights = [rng.randint(0, 20) for _ in range(150)]
    s = balanced(1024)
    sigma = bit_reversal(1024) * 4
    left, right, parent = list(s.left), list(s.right), list(s.parent)
    return {
        f"rotation_graph C(1,1,1,1) [{len(codes)} trees]": lambda k: k.rotation_graph(codes, off, adj),
        f"eccentricities C(1,1,1,1) [{rg.nodes} nodes]": lambda k: k.eccentricities(rg.offsets, rg.targets),
        "optimal_bst_tables n=150": lambda k: k.optimal_bst_tables(weights),
        "wilber_lambdas n=1024, |sigma|=4096": lambda k: k.wilber_lambdas(left, right, parent, sigma),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the Python backend is available")
    print(f"{'kernel':48s}" + "".join(f"{name:>12s}" for name in backends) + "     speedup")
    for label, run in cases().items():
        times = {name: _best(lambda: run(mod), args.repeat) for name, mod in backends.items()}
        row = f"{label:48s}" + "".join(f"{t * 1000:10.2f}ms" for t in times.values())
        if "cython" in times:
            row += f"  {times['python'] / times['cython']:8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
