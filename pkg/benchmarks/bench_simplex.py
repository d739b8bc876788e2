"""Compare the compiled and pure-Python simplex backends on norm LPs.

Run from the repository root after an editable install:

    python3 benchmarks/bench_simplex.py [--sizes 6 8 10] [--repeat 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from lipfree.free_element import FreeElement
from lipfree.metric_space import PointedMetricSpace
from lipfree.simplex import backends


def random_space(rng: np.random.Generator, n: int) -> PointedMetricSpace:
    d = rng.uniform(0.1, 10.0, size=(n, n))
    d = (d + d.T) / 2
    np.fill_diagonal(d, 0.0)
    # Floyd-Warshall repair to a genuine metric
    for k in range(n):
        d = np.minimum(d, d[:, k, None] + d[None, k, :])
    return PointedMetricSpace(points=tuple(map(str, range(n))), base=0, dist=d)


def norm_lp_instance(rng: np.random.Generator, n: int):
    """The LP of a real free-space norm on a random n-point space."""
    from lipfree import norm_oracle

    space = random_space(rng, n)
    terms = {i: complex(rng.uniform(-5, 5)) for i in range(1, n)}
    gamma = FreeElement(space, terms)
    # rebuild the LP exactly as the oracle does, but keep the matrices
    from itertools import combinations

    free = space.non_base_indices()
    pos = {idx: k for k, idx in enumerate(free)}
    rows, rhs = [], []
    for i, j in combinations(range(n), 2):
        row = np.zeros(len(free))
        if i in pos:
            row[pos[i]] = 1.0
        if j in pos:
            row[pos[j]] = -1.0
        rows.append(row)
        rhs.append(space.d(i, j))
        rows.append(-row)
        rhs.append(space.d(i, j))
    obj = np.zeros(len(free))
    for idx, a in gamma.terms.items():
        obj[pos[idx]] = a.real
    A = np.hstack([np.array(rows), -np.array(rows)])
    c = np.concatenate([obj, -obj])
    return A, np.array(rhs), c


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[6, 8, 10, 12])
    parser.add_argument("--repeat", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    impls = backends()
    print(f"backends available: {sorted(impls)}")
    for n in args.sizes:
        rng = np.random.default_rng(args.seed)
        instances = [norm_lp_instance(rng, n) for _ in range(args.repeat)]
        row = [f"n={n:3d}"]
        values = {}
        for name, impl in sorted(impls.items()):
            t0 = time.perf_counter()
            vals = [impl.solve_lp_max(A, b, c, 0)[0] for A, b, c in instances]
            dt = (time.perf_counter() - t0) / len(instances)
            values[name] = vals
            row.append(f"{name}: {dt * 1e3:8.2f} ms/LP")
        if len(values) == 2:
            a, b = (np.array(v) for v in values.values())
            row.append(f"max |diff| = {np.max(np.abs(a - b)):.2e}")
        print("  ".join(row))


if __name__ == "__main__":
    main()
