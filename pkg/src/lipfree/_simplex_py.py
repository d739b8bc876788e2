"""Pure numpy dense simplex kernel (fallback backend).

Solves  max c.x  subject to  A x <= b, x >= 0  with b >= 0, so the
all-slack basis is feasible and no phase-1 is needed.  Pivot selection is
Bland's rule, which guarantees termination on the degenerate norm programs
this package generates.  The compiled backend in ``_simplex_cy`` implements
the same loop; :mod:`lipfree.simplex` picks one at import time.
"""

from __future__ import annotations

import numpy as np

FEAS_TOL = 1e-10


class SimplexError(RuntimeError):
    pass


def solve_lp_max(A, b, c, max_iter: int = 0):
    """Return (value, x) maximizing c.x over {A x <= b, x >= 0}.

    Assumes b >= 0 and a bounded optimum; raises SimplexError otherwise.
    """
    A = np.ascontiguousarray(A, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    c = np.ascontiguousarray(c, dtype=np.float64)
    m, n = A.shape
    if b.shape != (m,) or c.shape != (n,):
        raise ValueError("inconsistent LP dimensions")
    if m and b.min() < -FEAS_TOL:
        raise SimplexError("right-hand side must be nonnegative")
    if max_iter <= 0:
        max_iter = 100 * (m + n) + 1000

    # tableau: m constraint rows + objective row; columns: x, slacks, rhs
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n : n + m] = np.eye(m)
    T[:m, -1] = np.maximum(b, 0.0)
    T[m, :n] = -c
    basis = np.arange(n, n + m)

    for _ in range(max_iter):
        # Bland: entering = lowest-index column with negative reduced cost
        red = T[m, : n + m]
        neg = np.nonzero(red < -FEAS_TOL)[0]
        if neg.size == 0:
            x = np.zeros(n)
            in_x = basis < n
            x[basis[in_x]] = T[:m, -1][in_x]
            return float(T[m, -1]), x
        col = int(neg[0])

        colv = T[:m, col]
        pos = np.nonzero(colv > FEAS_TOL)[0]
        if pos.size == 0:
            raise SimplexError("unbounded LP")
        ratios = T[pos, -1] / colv[pos]
        best = ratios.min()
        # Bland tie-break: among minimizing rows leave the lowest basis index
        tied = pos[ratios <= best + FEAS_TOL * (1.0 + abs(best))]
        row = int(tied[np.argmin(basis[tied])])

        piv = T[row, col]
        T[row, :] /= piv
        pivot_row = T[row, :].copy()
        factors = T[:, col].copy()
        factors[row] = 0.0
        T -= np.outer(factors, pivot_row)
        T[:, col] = 0.0
        T[row, col] = 1.0
        basis[row] = col

    raise SimplexError(f"simplex did not converge within {max_iter} pivots")
