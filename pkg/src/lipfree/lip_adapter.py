"""Transfer between bounded-Lipschitz problems and base-vanishing ones.

A weighted composition problem on bounded Lipschitz functions (norm
max(sup norm, Lipschitz constant), no base point) is conjugated to an
equivalent base-vanishing problem: truncate both metrics at 2, adjoin an
extra point ``e`` at distance 1 from everything, declare it the base, and
extend the map by f(e) = e with weight 0.  The conjugated operators have
the same norm, so every finite-space tool in this package applies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from .metric_space import PointedMetricSpace, adjoin_basepoint, truncate_diameter
from .polytope import lip_ball_vertices
from .weighted_operator import BoundednessReport, WeightedMap, boundedness_report, pair_stats

__all__ = [
    "LipProblem",
    "LipBoundednessReport",
    "to_lip0",
    "lip_boundedness_report",
    "lip0_extends_to_lip",
    "lip_function_norm",
    "lip_operator_norm_vertices",
]


@dataclass(frozen=True)
class LipProblem:
    """Weighted composition data w * (g o f) on bounded Lipschitz functions.

    The spaces carry a base index for reuse of :class:`PointedMetricSpace`,
    but the bounded-Lipschitz norm ignores it.
    """

    domain: PointedMetricSpace
    codomain: PointedMetricSpace
    f: tuple[int, ...]
    w: tuple[complex, ...]

    def __post_init__(self) -> None:
        f = tuple(int(i) for i in self.f)
        w = tuple(complex(z) for z in self.w)
        if len(f) != len(self.domain) or len(w) != len(self.domain):
            raise ValueError("f and w must be defined on every domain point")
        if any(not 0 <= i < len(self.codomain) for i in f):
            raise ValueError("f maps outside the codomain")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "w", w)


def to_lip0(prob: LipProblem, cap: float = 2.0) -> WeightedMap:
    """Conjugate a bounded-Lipschitz problem to a base-vanishing one.

    Truncation at ``cap`` (default 2) does not change either Lipschitz
    space; the adjoined point sits at distance 1 from everything and
    becomes the base, carrying weight 0.
    """
    dom = adjoin_basepoint(truncate_diameter(prob.domain, cap))
    cod = adjoin_basepoint(truncate_diameter(prob.codomain, cap))
    f = prob.f + (len(cod) - 1,)
    w = prob.w + (0j,)
    return WeightedMap(domain=dom, codomain=cod, f=f, w=w)


def lip0_extends_to_lip(op: WeightedMap) -> Optional[LipProblem]:
    """Strip an adjoined base point, recovering the bounded-Lipschitz data.

    Returns None unless the base point looks adjoined: distance exactly 1
    to every other point on both sides, weight 0, f(base) = base, and no
    other domain point mapping onto the codomain base.  This is the exact
    inverse of :func:`to_lip0` on its image.
    """
    dom, cod = op.domain, op.codomain
    if dom.base != len(dom) - 1 or cod.base != len(cod) - 1:
        return None
    for space in (dom, cod):
        if any(space.d0(i) != 1.0 for i in space.non_base_indices()):
            return None
    if op.w[dom.base] != 0 or op.f[dom.base] != cod.base:
        return None
    if any(op.f[x] == cod.base for x in dom.non_base_indices()):
        return None
    inner_dom = PointedMetricSpace(
        points=dom.points[:-1], base=0, dist=dom.dist[:-1, :-1]
    )
    inner_cod = PointedMetricSpace(
        points=cod.points[:-1], base=0, dist=cod.dist[:-1, :-1]
    )
    return LipProblem(
        domain=inner_dom, codomain=inner_cod, f=op.f[:-1], w=op.w[:-1]
    )


def lip_function_norm(space: PointedMetricSpace, values: np.ndarray) -> float:
    """max(sup norm, Lipschitz constant) of a function given by its values."""
    values = np.asarray(values, dtype=complex)
    sup = float(np.abs(values).max()) if values.size else 0.0
    lip = 0.0
    for i, j in combinations(range(len(space)), 2):
        lip = max(lip, abs(values[i] - values[j]) / space.d(i, j))
    return max(sup, lip)


def lip_operator_norm_vertices(prob: LipProblem) -> float:
    """Independent norm of g -> w * (g o f) on bounded Lipschitz functions.

    Maximizes the image norm over the vertices of the unit ball of the
    codomain function space; exact for real weights, and only intended for
    tiny spaces (vertex enumeration).
    """
    verts = lip_ball_vertices(prob.codomain)
    w = np.asarray(prob.w, dtype=complex)
    f = np.asarray(prob.f, dtype=int)
    best = 0.0
    for g in verts:
        best = max(best, lip_function_norm(prob.domain, w * g[f]))
    return best


@dataclass(frozen=True)
class LipBoundednessReport:
    """Boundedness data of a bounded-Lipschitz problem via conjugation."""

    w_sup: float
    w_lip: float
    n1_max: float
    norm_lo: float
    norm_hi: float
    norm_exact: Optional[float]
    is_real: bool
    sigma_base_identity_err: float
    free_report: BoundednessReport


def lip_boundedness_report(prob: LipProblem) -> LipBoundednessReport:
    """Boundedness constants through the base-vanishing conjugate.

    Also checks the structural identity sigma(x, e) = |w(x)| for the
    adjoined point e, which ties the sup norm of the weight directly to the
    pair statistics of the conjugate; the reported error is a sanity bound,
    not an estimate.
    """
    op = to_lip0(prob)
    rep = boundedness_report(op)
    dom = op.domain
    w = np.asarray(prob.w, dtype=complex)
    w_sup = float(np.abs(w).max()) if w.size else 0.0
    w_lip = 0.0
    trunc = truncate_diameter(prob.domain, 2.0)
    for i, j in combinations(range(len(trunc)), 2):
        w_lip = max(w_lip, abs(w[i] - w[j]) / trunc.d(i, j))
    err = 0.0
    for x in dom.non_base_indices():
        st = pair_stats(op, x, dom.base)
        err = max(err, abs(st.sigma - abs(op.w[x])))
    return LipBoundednessReport(
        w_sup=w_sup,
        w_lip=w_lip,
        n1_max=rep.n1_max,
        norm_lo=rep.norm_lo,
        norm_hi=rep.norm_hi,
        norm_exact=rep.norm_exact,
        is_real=rep.is_real,
        sigma_base_identity_err=err,
        free_report=rep,
    )
