"""Vertex enumeration of small Lipschitz unit-ball polytopes.

Used as an independent route for operator norms: the norm of a weighted
composition operator between finite spaces is the maximum of the image
Lipschitz norm over the vertices of the unit ball of the source function
space.  Only meant for very small dimensions (|N| <= 4 or so).
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .metric_space import PointedMetricSpace

_FEAS_TOL = 1e-9


def polytope_vertices(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """All vertices of {x : A x <= b} by enumerating active constraint sets.

    Brute force over dim-subsets of rows; assumes the polytope is bounded.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    m, dim = A.shape
    verts: list[np.ndarray] = []
    for idx in combinations(range(m), dim):
        sub = A[list(idx)]
        if abs(np.linalg.det(sub)) < 1e-12:
            continue
        x = np.linalg.solve(sub, b[list(idx)])
        if np.all(A @ x <= b + _FEAS_TOL):
            if not any(np.allclose(x, v, atol=1e-9) for v in verts):
                verts.append(x)
    return np.array(verts) if verts else np.zeros((0, dim))


def lip0_ball_vertices(space: PointedMetricSpace) -> np.ndarray:
    """Vertices of the unit ball of base-vanishing Lipschitz functions.

    Coordinates are the function values on the non-base points, in index
    order; the base value 0 is eliminated.
    """
    free = space.non_base_indices()
    pos = {idx: k for k, idx in enumerate(free)}
    rows, rhs = [], []
    for i, j in combinations(range(len(space)), 2):
        row = np.zeros(len(free))
        if i in pos:
            row[pos[i]] = 1.0
        if j in pos:
            row[pos[j]] = -1.0
        rows.append(row)
        rhs.append(space.d(i, j))
        rows.append(-row)
        rhs.append(space.d(i, j))
    if not free:
        return np.zeros((1, 0))
    return polytope_vertices(np.array(rows), np.array(rhs))


def lip_ball_vertices(space: PointedMetricSpace) -> np.ndarray:
    """Vertices of the unit ball of bounded Lipschitz functions under
    max(sup norm, Lipschitz constant); coordinates over all points."""
    n = len(space)
    rows, rhs = [], []
    for i in range(n):
        row = np.zeros(n)
        row[i] = 1.0
        rows.append(row)
        rhs.append(1.0)
        rows.append(-row)
        rhs.append(1.0)
    for i, j in combinations(range(n), 2):
        row = np.zeros(n)
        row[i] = 1.0
        row[j] = -1.0
        rows.append(row)
        rhs.append(space.d(i, j))
        rows.append(-row)
        rhs.append(space.d(i, j))
    return polytope_vertices(np.array(rows), np.array(rhs))
