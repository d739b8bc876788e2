"""Independent brute-force norms on free elements.

Three routes are provided and cross-checked against each other in the test
suite:

* ``real_norm_lp``   -- dual route: maximize sum a_i t(x_i) over 1-Lipschitz
  t vanishing at the base point (dense simplex).
* ``real_norm_flow`` -- primal route: cheapest transport of the coefficient
  masses to the base point (successive shortest augmenting paths).
* ``complex_norm_bracket`` -- the complex norm squeezed between two LPs in
  which the disc constraint |t(x)-t(y)| <= d(x,y) is replaced by an outer
  (circumscribed) and an inner (inscribed) regular polygon with k sides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .free_element import FreeElement, NormBracket
from .simplex import solve_lp_max

__all__ = [
    "LpProblem",
    "NormBracket",
    "real_norm_lp",
    "real_norm_flow",
    "complex_norm_bracket",
]


@dataclass(frozen=True)
class LpProblem:
    """max c.x over {A x <= b, x >= 0}; a thin record around the kernel."""

    c: np.ndarray
    A: np.ndarray
    b: np.ndarray

    def solve(self) -> tuple[float, np.ndarray]:
        return solve_lp_max(self.A, self.b, self.c)


def _require_real(gamma: FreeElement) -> None:
    if not gamma.is_real:
        raise ValueError("element has a non-real coefficient")


def real_norm_lp(gamma: FreeElement) -> float:
    """Exact free-space norm of a real-coefficient element.

    Maximizes sum a_i t_i over t with t(base) = 0 and |t_i - t_j| <= d(i,j)
    for every pair of points of the space.  Optimizing over all points
    (not only the support) gives the same value, since Lipschitz functions
    on a subset extend without increasing the constant.
    """
    _require_real(gamma)
    if gamma.is_zero:
        return 0.0
    space = gamma.space
    free = space.non_base_indices()
    pos = {idx: k for k, idx in enumerate(free)}
    nf = len(free)

    rows: list[np.ndarray] = []
    rhs: list[float] = []
    for i, j in combinations(range(len(space)), 2):
        row = np.zeros(nf)
        if i in pos:
            row[pos[i]] = 1.0
        if j in pos:
            row[pos[j]] = -1.0
        d = space.d(i, j)
        rows.append(row)
        rhs.append(d)
        rows.append(-row)
        rhs.append(d)

    obj = np.zeros(nf)
    for idx, a in gamma.terms.items():
        obj[pos[idx]] = a.real
    # free variables t = p - q with p, q >= 0
    A = np.hstack([np.array(rows), -np.array(rows)])
    c = np.concatenate([obj, -obj])
    value, _ = solve_lp_max(A, np.array(rhs), c)
    return value


def real_norm_flow(gamma: FreeElement) -> float:
    """Primal transport value of the same norm.

    Minimizes sum u_ij d(i,j) over nonnegative flows whose net outflow at
    each support point equals the coefficient, the base point absorbing the
    imbalance.  Because d is a metric, routing along direct arcs between
    excess and deficit nodes is optimal, so this reduces to a transportation
    problem solved by successive shortest augmenting paths.
    """
    _require_real(gamma)
    if gamma.is_zero:
        return 0.0
    space = gamma.space
    balance: dict[int, float] = {i: a.real for i, a in gamma.terms.items()}
    balance[space.base] = -sum(balance.values())

    sources = {i: v for i, v in balance.items() if v > 0}
    sinks = {i: -v for i, v in balance.items() if v < 0}
    if not sources or not sinks:
        return 0.0
    return _transport(space, sources, sinks)


def _transport(space, supply: dict[int, float], demand: dict[int, float]) -> float:
    """Min-cost transportation via successive shortest augmenting paths.

    Bipartite residual network between supply and demand nodes with metric
    arc costs; shortest residual paths by Bellman-Ford (residual arcs carry
    negative costs).  Node counts here are tiny, so no potentials needed.
    Relaxations must improve by more than ``_EPS``: a tolerance below the
    rounding error of one add/subtract would let ties re-relax through a
    reverse arc and corrupt the predecessor tree into a cycle.
    """
    _EPS = 1e-12
    S = sorted(supply)
    T = sorted(demand)
    a = np.array([supply[i] for i in S])
    b = np.array([demand[j] for j in T])
    cost = np.array([[space.d(i, j) for j in T] for i in S])
    flow = np.zeros_like(cost)
    total = 0.0
    # supply and demand totals agree exactly in exact arithmetic, but float
    # drift can exhaust one side first; stop once either residual is dust
    dust = 1e-12 * max(a.sum(), b.sum(), 1.0)

    while True:
        rs = np.nonzero(a > dust)[0]
        if rs.size == 0 or not np.any(b > dust):
            break
        # Bellman-Ford over nodes: supply nodes 0..|S|-1, demand |S|..|S|+|T|-1
        ns, nt = len(S), len(T)
        dist = np.full(ns + nt, np.inf)
        pred = np.full(ns + nt, -1, dtype=int)
        dist[rs] = 0.0
        for _ in range(ns + nt):
            changed = False
            for i in range(ns):
                if not np.isfinite(dist[i]):
                    continue
                for j in range(nt):
                    if dist[i] + cost[i, j] < dist[ns + j] - _EPS:
                        dist[ns + j] = dist[i] + cost[i, j]
                        pred[ns + j] = i
                        changed = True
            for j in range(nt):
                if not np.isfinite(dist[ns + j]):
                    continue
                for i in range(ns):
                    if flow[i, j] > 1e-15 and dist[ns + j] - cost[i, j] < dist[i] - _EPS:
                        dist[i] = dist[ns + j] - cost[i, j]
                        pred[i] = ns + j
                        changed = True
            if not changed:
                break
        open_sinks = np.nonzero(b > dust)[0]
        j_best = int(open_sinks[np.argmin(dist[ns + open_sinks])])
        if not np.isfinite(dist[ns + j_best]):
            raise RuntimeError("transportation network disconnected")

        # trace path back, find bottleneck
        path: list[tuple[int, int, bool]] = []  # (i, j, forward)
        node = ns + j_best
        while True:
            if len(path) > ns + nt:
                raise RuntimeError("predecessor cycle in transportation network")
            prev = pred[node]
            if prev < 0:
                break
            if node >= ns:
                path.append((prev, node - ns, True))
            else:
                path.append((node, prev - ns, False))
            node = prev
        bottleneck = min(
            [a[path[-1][0]], b[j_best]]
            + [flow[i, j] for i, j, fwd in path if not fwd]
        )
        for i, j, fwd in path:
            if fwd:
                flow[i, j] += bottleneck
                total += bottleneck * cost[i, j]
            else:
                flow[i, j] -= bottleneck
                total -= bottleneck * cost[i, j]
        a[path[-1][0]] -= bottleneck
        b[j_best] -= bottleneck

    return total


def complex_norm_bracket(gamma: FreeElement, k: int = 64) -> NormBracket:
    """Bracket the complex free-space norm by polygonal relaxations.

    The true norm is the optimum of max sum(Re a_i u_i + Im a_i v_i) over
    real u, v vanishing at the base with ||(u_i-u_j, v_i-v_j)||_2 <= d(i,j)
    for all pairs.  Replacing each disc by k circumscribing half-planes
    yields an over-estimate ``hi``; shrinking the right-hand sides by
    cos(pi/k) inscribes the polygon in the disc and, by homogeneity of the
    feasible region, scales the optimum exactly, giving ``lo``.
    """
    if k < 8 or k % 2:
        raise ValueError(f"polygon order must be even and >= 8, got {k}")
    if gamma.is_zero:
        return NormBracket(0.0, 0.0, method=f"polygon-lp-k{k}")
    space = gamma.space
    free = space.non_base_indices()
    pos = {idx: m for m, idx in enumerate(free)}
    nf = len(free)

    theta = 2.0 * math.pi * np.arange(k) / k
    cos_t = np.cos(theta)
    sin_t = np.sin(theta)

    pairs = list(combinations(range(len(space)), 2))
    A = np.zeros((len(pairs) * k, 2 * nf))
    b = np.zeros(len(pairs) * k)
    r = 0
    for i, j in pairs:
        d = space.d(i, j)
        block = A[r : r + k]
        if i in pos:
            block[:, pos[i]] = cos_t
            block[:, nf + pos[i]] = sin_t
        if j in pos:
            block[:, pos[j]] -= cos_t
            block[:, nf + pos[j]] -= sin_t
        b[r : r + k] = d
        r += k

    obj = np.zeros(2 * nf)
    for idx, a in gamma.terms.items():
        obj[pos[idx]] = a.real
        obj[nf + pos[idx]] = a.imag
    # split free variables
    A2 = np.hstack([A, -A])
    c2 = np.concatenate([obj, -obj])
    hi, _ = solve_lp_max(A2, b, c2)
    lo = hi * math.cos(math.pi / k)
    return NormBracket(lo=lo, hi=hi, method=f"polygon-lp-k{k}")


def norm_bracket(gamma: FreeElement, k: int = 64) -> NormBracket:
    """Best available norm bracket: exact LP for real elements, polygonal
    bracket otherwise.  Single-point elements are exact in both cases."""
    if gamma.is_zero:
        return NormBracket(0.0, 0.0, method="zero")
    if gamma.is_real:
        v = real_norm_lp(gamma)
        return NormBracket(v, v, method="lp")
    if len(gamma.terms) == 1:
        ((idx, a),) = gamma.terms.items()
        v = abs(a) * gamma.space.d0(idx)
        return NormBracket(v, v, method="single-point")
    return complex_norm_bracket(gamma, k=k)
