# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled dense simplex kernel.

Same contract as ``lipfree._simplex_py.solve_lp_max``: maximize c.x over
{A x <= b, x >= 0} with b >= 0 via Bland's rule on a dense tableau.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

FEAS_TOL = 1e-10
DEF _TOL = 1e-10


class SimplexError(RuntimeError):
    pass


def solve_lp_max(A, b, c, int max_iter=0):
    """Return (value, x) maximizing c.x over {A x <= b, x >= 0}."""
    A = np.ascontiguousarray(A, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    c = np.ascontiguousarray(c, dtype=np.float64)
    cdef Py_ssize_t m = A.shape[0]
    cdef Py_ssize_t n = A.shape[1]
    if b.shape[0] != m or c.shape[0] != n:
        raise ValueError("inconsistent LP dimensions")
    if m and b.min() < -_TOL:
        raise SimplexError("right-hand side must be nonnegative")
    if max_iter <= 0:
        max_iter = 100 * (m + n) + 1000

    T_arr = np.zeros((m + 1, n + m + 1))
    T_arr[:m, :n] = A
    T_arr[:m, n:n + m] = np.eye(m)
    T_arr[:m, n + m] = np.maximum(b, 0.0)
    T_arr[m, :n] = -c
    basis_arr = np.arange(n, n + m, dtype=np.int64)

    cdef double[:, ::1] T = T_arr
    cdef long long[::1] basis = basis_arr
    cdef Py_ssize_t ncols = n + m + 1
    cdef Py_ssize_t rhs = n + m
    cdef Py_ssize_t it, j, i, col, row
    cdef double best, ratio, piv, factor, tol_ratio

    for it in range(max_iter):
        col = -1
        for j in range(n + m):
            if T[m, j] < -_TOL:
                col = j
                break
        if col < 0:
            x = np.zeros(n)
            for i in range(m):
                if basis[i] < n:
                    x[basis[i]] = T[i, rhs]
            return float(T[m, rhs]), x

        # pass 1: minimum ratio
        row = -1
        best = 0.0
        for i in range(m):
            if T[i, col] > _TOL:
                ratio = T[i, rhs] / T[i, col]
                if row < 0 or ratio < best:
                    row = i
                    best = ratio
        if row < 0:
            raise SimplexError("unbounded LP")
        # pass 2: Bland tie-break, leave the lowest basis index among ties
        tol_ratio = _TOL * (1.0 + (best if best > 0 else -best))
        for i in range(m):
            if T[i, col] > _TOL:
                ratio = T[i, rhs] / T[i, col]
                if ratio <= best + tol_ratio and basis[i] < basis[row]:
                    row = i

        piv = T[row, col]
        for j in range(ncols):
            T[row, j] /= piv
        for i in range(m + 1):
            if i == row:
                continue
            factor = T[i, col]
            if factor != 0.0:
                for j in range(ncols):
                    T[i, j] -= factor * T[row, j]
                T[i, col] = 0.0
        T[row, col] = 1.0
        basis[row] = col

    raise SimplexError(f"simplex did not converge within {max_iter} pivots")
