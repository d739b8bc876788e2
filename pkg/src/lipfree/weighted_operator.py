"""Weighted Lipschitz operators between finite pointed metric spaces.

A :class:`WeightedMap` is a pair (f, w): f maps the domain into the
codomain, w is a complex weight on the domain, subject to the base-point
condition f(base) = base or w(base) = 0.  It generates both the operator on
free elements (delta(x) -> w(x) delta(f(x))) and, on function coordinates,
the weighted composition operator g -> w * (g o f).

The per-pair statistics a, b, sigma, tau govern boundedness and the
operator norm: for real weights the norm equals max(a_max, b_max); for
complex weights it is squeezed between max(a,b)/sqrt(2) and sqrt(2)*max(a,b).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .free_element import FreeElement, NormBracket, two_point_norm_real
from .metric_space import PointedMetricSpace
from .norm_oracle import norm_bracket

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class WeightedMap:
    domain: PointedMetricSpace
    codomain: PointedMetricSpace
    f: tuple[int, ...]
    w: tuple[complex, ...]

    def __post_init__(self) -> None:
        n = len(self.domain)
        f = tuple(int(i) for i in self.f)
        w = tuple(complex(z) for z in self.w)
        if len(f) != n or len(w) != n:
            raise ValueError("f and w must be defined on every domain point")
        if any(not 0 <= i < len(self.codomain) for i in f):
            raise ValueError("f maps outside the codomain")
        if f[self.domain.base] != self.codomain.base and w[self.domain.base] != 0:
            raise ValueError(
                "base-point condition violated: need f(base) = base or w(base) = 0"
            )
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "w", w)

    @property
    def has_real_weights(self) -> bool:
        return all(z.imag == 0 for z in self.w)

    def cozero(self) -> list[int]:
        """Indices where the weight does not vanish."""
        return [i for i, z in enumerate(self.w) if z != 0]

    # -- JSON -------------------------------------------------------------

    def to_json(self) -> dict:
        dom, cod = self.domain, self.codomain
        return {
            "domain": dom.to_json(),
            "codomain": cod.to_json(),
            "f": {dom.points[i]: cod.points[self.f[i]] for i in range(len(dom))},
            "w": {dom.points[i]: [self.w[i].real, self.w[i].imag] for i in range(len(dom))},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "WeightedMap":
        dom = PointedMetricSpace.from_json(obj["domain"])
        cod = PointedMetricSpace.from_json(obj["codomain"])
        f = tuple(cod.index(obj["f"][p]) for p in dom.points)
        w = tuple(complex(*obj["w"][p]) for p in dom.points)
        return cls(domain=dom, codomain=cod, f=f, w=w)


@dataclass(frozen=True)
class PairStats:
    """All per-pair statistics for one ordered pair (x, y)."""

    a: float
    b_xy: float
    b_yx: float
    sigma: float
    tau: float
    s_xy: float
    s_yx: float
    n1_x: float
    n2_x: float


def pair_statistics(d_xy, dfx0, dfy0, dfxfy, wx, wy):
    """Vectorized pair statistics from raw distance/weight channels.

    All arguments broadcast; returns a dict of arrays.  Shared by the
    finite-space reports and the asymptotic family evaluators.
    """
    d_xy = np.asarray(d_xy, dtype=float)
    dfx0 = np.asarray(dfx0, dtype=float)
    dfy0 = np.asarray(dfy0, dtype=float)
    dfxfy = np.asarray(dfxfy, dtype=float)
    wx = np.asarray(wx, dtype=complex)
    wy = np.asarray(wy, dtype=complex)

    a = np.abs(wx * dfx0 - wy * dfy0) / d_xy
    b_xy = np.abs(wx * dfx0 - wy * (dfx0 - dfxfy)) / d_xy
    b_yx = np.abs(wy * dfy0 - wx * (dfy0 - dfxfy)) / d_xy
    s_xy = (dfx0 >= dfy0).astype(float)
    s_yx = (dfy0 >= dfx0).astype(float)
    sigma = dfxfy / d_xy * (s_xy * np.abs(wx) + s_yx * np.abs(wy))
    tau = np.abs(wx - wy) / d_xy * np.minimum(dfx0, dfy0)
    n1_x = np.abs(wx) * dfxfy / d_xy
    n2_x = dfx0 * np.abs(wx - wy) / d_xy
    return {
        "a": a,
        "b_xy": b_xy,
        "b_yx": b_yx,
        "sigma": sigma,
        "tau": tau,
        "s_xy": s_xy,
        "s_yx": s_yx,
        "n1_x": n1_x,
        "n2_x": n2_x,
    }


def _channels(op: WeightedMap):
    """Distance/weight channels for every ordered pair, as (n, n) arrays."""
    dom, cod = op.domain, op.codomain
    f = np.array(op.f)
    w = np.array(op.w, dtype=complex)
    d_xy = dom.dist
    df0 = cod.dist[f, cod.base]
    dff = cod.dist[np.ix_(f, f)]
    return d_xy, df0[:, None] * np.ones_like(d_xy), df0[None, :] * np.ones_like(d_xy), dff, w[:, None] * np.ones(len(dom)), w[None, :] * np.ones(len(dom))


def pair_stats(op: WeightedMap, x: int, y: int) -> PairStats:
    """Statistics of a single ordered pair x != y."""
    if x == y:
        raise ValueError("pair statistics need two distinct points")
    dom, cod = op.domain, op.codomain
    stats = pair_statistics(
        dom.d(x, y),
        cod.d0(op.f[x]),
        cod.d0(op.f[y]),
        cod.d(op.f[x], op.f[y]),
        op.w[x],
        op.w[y],
    )
    return PairStats(**{k: float(np.real(v)) for k, v in stats.items()})


@dataclass(frozen=True)
class BoundednessReport:
    """Maxima of the pair statistics with witnesses, plus the norm estimate."""

    a_max: float
    b_max: float
    sigma_max: float
    tau_max: float
    n1_max: float
    n2_max: float
    witnesses: dict
    norm_lo: float
    norm_hi: float
    norm_exact: float | None
    is_real: bool


def boundedness_report(op: WeightedMap) -> BoundednessReport:
    """Maxima of a, b, sigma, tau, n1, n2 over all ordered pairs.

    Finite spaces are always bounded; the content is the estimate
    [max(a,b)/sqrt(2), sqrt(2)*max(a,b)], which collapses to the exact norm
    max(a, b) when all weights are real.
    """
    dom = op.domain
    n = len(dom)
    if n < 2:
        zero_w = {k: None for k in ("a", "b", "sigma", "tau", "n1", "n2")}
        return BoundednessReport(0, 0, 0, 0, 0, 0, zero_w, 0.0, 0.0, 0.0, True)

    d_xy, dfx0, dfy0, dfxfy, wx, wy = _channels(op)
    off = ~np.eye(n, dtype=bool)
    with np.errstate(divide="ignore", invalid="ignore"):
        stats = pair_statistics(d_xy, dfx0, dfy0, dfxfy, wx, wy)

    def max_with_witness(arr):
        vals = np.where(off, np.real(arr), -np.inf)
        flat = int(np.argmax(vals))
        x, y = divmod(flat, n)
        return float(vals[x, y]), (dom.points[x], dom.points[y])

    a_max, a_wit = max_with_witness(stats["a"])
    b_max, b_wit = max_with_witness(stats["b_xy"])
    sigma_max, sigma_wit = max_with_witness(stats["sigma"])
    tau_max, tau_wit = max_with_witness(stats["tau"])
    n1_max, n1_wit = max_with_witness(stats["n1_x"])
    n2_max, n2_wit = max_with_witness(stats["n2_x"])

    bound = max(a_max, b_max)
    is_real = op.has_real_weights
    return BoundednessReport(
        a_max=a_max,
        b_max=b_max,
        sigma_max=sigma_max,
        tau_max=tau_max,
        n1_max=n1_max,
        n2_max=n2_max,
        witnesses={
            "a": a_wit,
            "b": b_wit,
            "sigma": sigma_wit,
            "tau": tau_wit,
            "n1": n1_wit,
            "n2": n2_wit,
        },
        norm_lo=bound / SQRT2,
        norm_hi=bound * SQRT2,
        norm_exact=bound if is_real else None,
        is_real=is_real,
    )


def apply(op: WeightedMap, gamma: FreeElement) -> FreeElement:
    """Image of a free element: delta(x) -> w(x) delta(f(x)), extended
    linearly and canonicalized (coefficients at a common image merge)."""
    if gamma.space != op.domain:
        raise ValueError("element lives over a different space")
    terms: dict[int, complex] = {}
    for i, coeff in gamma.terms.items():
        z = op.f[i]
        terms[z] = terms.get(z, 0) + coeff * op.w[i]
    return FreeElement(op.codomain, terms)


def _image_norm_bracket(op: WeightedMap, x: int, y: int, k: int) -> NormBracket:
    """Norm (bracket) of the image of the molecule over the pair (x, y)."""
    dom, cod = op.domain, op.codomain
    d = dom.d(x, y)
    mu = apply(op, FreeElement(dom, {x: 1.0 / d, y: -1.0 / d}))
    if mu.is_zero:
        return NormBracket(0.0, 0.0, method="zero")
    if len(mu.terms) == 1:
        ((idx, a),) = mu.terms.items()
        v = abs(a) * cod.d0(idx)
        return NormBracket(v, v, method="single-point")
    (i, ai), (j, aj) = mu.terms.items()
    if mu.is_real:
        v = two_point_norm_real(cod, ai.real, aj.real, i, j)
        return NormBracket(v, v, method="two-point-exact")
    return norm_bracket(mu, k=k)


def operator_norm(op: WeightedMap, k: int = 64, jobs: int = 1) -> NormBracket:
    """Operator norm by molecule enumeration.

    The unit ball of the free space is the closed absolutely convex hull of
    molecules, so the norm is the supremum of image norms over all
    molecules.  Real weights give an exact value; complex weights give a
    bracket from the polygonal complex-norm relaxation.
    """
    dom = op.domain
    pairs = list(combinations(range(len(dom)), 2))
    if not pairs:
        return NormBracket(0.0, 0.0, method="empty")

    def reduce_chunk(chunk):
        lo = hi = 0.0
        for x, y in chunk:
            br = _image_norm_bracket(op, x, y, k)
            lo = max(lo, br.lo)
            hi = max(hi, br.hi)
        return lo, hi

    if jobs > 1:
        chunks = [pairs[i::jobs] for i in range(jobs)]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(reduce_chunk, chunks))
    else:
        parts = [reduce_chunk(pairs)]
    lo = max(p[0] for p in parts)
    hi = max(p[1] for p in parts)
    method = "molecule-exact" if op.has_real_weights else f"molecule-polygon-k{k}"
    return NormBracket(lo=lo, hi=hi, method=method)


def composition_matrix(op: WeightedMap) -> np.ndarray:
    """Matrix of g -> w * (g o f) on function coordinates.

    Rows are indexed by non-base domain points, columns by non-base
    codomain points (both in index order); entry is w(x) when f(x) is the
    column's point, 0 otherwise.
    """
    dom, cod = op.domain, op.codomain
    rows = dom.non_base_indices()
    cols = cod.non_base_indices()
    col_pos = {z: c for c, z in enumerate(cols)}
    mat = np.zeros((len(rows), len(cols)), dtype=complex)
    for r, x in enumerate(rows):
        z = op.f[x]
        if z in col_pos:
            mat[r, col_pos[z]] = op.w[x]
    return mat


def is_injective_criterion(op: WeightedMap) -> bool:
    """Injectivity of the composition operator on functions: every non-base
    codomain point must be hit by f at a point of nonzero weight."""
    hit = {op.f[x] for x in op.cozero()}
    return all(z in hit for z in op.codomain.non_base_indices())


@dataclass(frozen=True)
class SurjectivityReport:
    """Gates and quantitative data for surjectivity of the composition
    operator.  On finite spaces the boolean gates alone decide the verdict;
    the two sup values quantify the inverse operator when they apply."""

    w_nonvanishing: bool
    f_injective: bool
    f_avoids_base: bool
    sup_inverse_a: float
    sup_inverse_b: float
    surjective: bool


def is_surjective_criterion(op: WeightedMap) -> SurjectivityReport:
    dom, cod = op.domain, op.codomain
    non_base = dom.non_base_indices()
    w_ok = all(op.w[x] != 0 for x in non_base)
    images = [op.f[x] for x in non_base]
    f_inj = len(set(images)) == len(images)
    f_avoids = all(z != cod.base for z in images)
    surjective = w_ok and f_inj and f_avoids

    sup_a = sup_b = math.inf
    if surjective:
        # quantities of the inverse operator; convention 1/w(base) = 0
        def inv_w(x: int) -> complex:
            return 0 if x == dom.base else 1 / op.w[x]

        sup_a = sup_b = 0.0
        for x, y in combinations(range(len(dom)), 2):
            dff = cod.d(op.f[x], op.f[y])
            if dff == 0:
                continue
            sup_a = max(
                sup_a,
                abs(dom.d0(x) * inv_w(x) - dom.d0(y) * inv_w(y)) / dff,
            )
            sup_b = max(
                sup_b,
                abs(dom.d0(x) * inv_w(x) - (dom.d0(x) - dom.d(x, y)) * inv_w(y)) / dff,
                abs(dom.d0(y) * inv_w(y) - (dom.d0(y) - dom.d(x, y)) * inv_w(x)) / dff,
            )
    return SurjectivityReport(
        w_nonvanishing=w_ok,
        f_injective=f_inj,
        f_avoids_base=f_avoids,
        sup_inverse_a=sup_a,
        sup_inverse_b=sup_b,
        surjective=surjective,
    )
