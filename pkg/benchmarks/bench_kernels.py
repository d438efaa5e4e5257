"""Compiled vs pure-Python kernels on generated single-root trees.

    python3 benchmarks/bench_kernels.py [--sizes 25 50 100] [--repeat 3]
"""
import argparse
import time

import numpy as np

from arboreal import _kernels_py
from arboreal.encoding import Codec, triplet_keys
from arboreal.generate import GenConfig, random_network
from arboreal.network import descendant_tree

try:
    from arboreal import _kernels as compiled
except ImportError:
    compiled = None


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(n):
    net = random_network(GenConfig(n, 1, target_roots=1))
    codec = Codec(net.label_set)
    csr = descendant_tree(net, net.roots()[0]).csr(codec.code)
    rows = codec.rows(triplet_keys(net, codec))
    leaves = np.arange(codec.n, dtype=np.int64)
    duets = np.array([[0, codec.n - 1]], dtype=np.int64)
    a, b = rows[:, 0].copy(), rows[:, 1].copy()
    return {
        "tree_triplets": lambda k: k.tree_triplets(*csr),
        "build": lambda k: k.build(rows, leaves, codec.n),
        "closure_blocks": lambda k: k.closure_blocks(rows, duets, codec.n),
        "pair_components": lambda k: k.pair_components(a, b, codec.n),
    }, len(rows)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[25, 50, 100])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if compiled is None:
        print("compiled extension not built; nothing to compare")
        return
    print(f"{'kernel':<16}{'n':>5}{'|R|':>10}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for n in args.sizes:
        fns, m = cases(n)
        for name, fn in fns.items():
            t_py = best_of(lambda: fn(_kernels_py), args.repeat)
            t_c = best_of(lambda: fn(compiled), args.repeat)
            print(f"{name:<16}{n:>5}{m:>10}{t_py:>12.4f}{t_c:>12.4f}{t_py / t_c:>9.1f}x")


if __name__ == "__main__":
    main()
