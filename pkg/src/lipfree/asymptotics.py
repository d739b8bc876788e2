"""Desk-scale evaluation of compactness criteria on parametrized families.

Infinite metric spaces are never materialized: a family supplies closed-form
evaluators for the six channels of a pair sequence ((x_n, y_n))_n

    d(x_n, y_n), d(f(x_n), 0), d(f(y_n), 0), d(f(x_n), f(y_n)), w(x_n), w(y_n)

and every limit is estimated numerically along a geometric index ladder.
Verdicts are heuristic by construction and say so: a numerical ladder can
strongly suggest, but never certify, an asymptotic statement.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .free_element import FreeElement
from .metric_space import PointedMetricSpace
from .norm_oracle import norm_bracket
from .weighted_operator import WeightedMap, pair_statistics

DEFAULT_LADDER = tuple(int(2**k) for k in range(4, 21))

#: a detected limit with modulus below this is treated as zero
ZERO_TOL = 1e-3

CONVERGES = "converges"
DIVERGES = "diverges"
INCONCLUSIVE = "inconclusive"

PASS = "pass"
FAIL = "fail"
REJECTED = "rejected"


class ClassificationRefused(ValueError):
    """Raised when the limit evidence is too weak to assign a case."""


@dataclass(frozen=True)
class LimitVerdict:
    """Heuristic limit of a sequence along an index ladder."""

    tag: str
    value: Optional[complex]
    evidence: tuple[tuple[int, complex], ...]

    @property
    def converges(self) -> bool:
        return self.tag == CONVERGES

    @property
    def diverges(self) -> bool:
        return self.tag == DIVERGES

    def converges_to_zero(self, tol: float = ZERO_TOL) -> bool:
        return self.converges and abs(self.value) <= tol

    def converges_nonzero(self, tol: float = ZERO_TOL) -> bool:
        return self.converges and abs(self.value) > tol


def detect_limit(
    seq: Callable[[np.ndarray], np.ndarray],
    ladder: tuple[int, ...] = DEFAULT_LADDER,
    rtol: float = 1e-4,
    blowup: float = 1e8,
) -> LimitVerdict:
    """Estimate the limit of ``seq`` along the ladder.

    Converges when the last three ladder values agree within ``rtol``
    (relative to max(1, |last|)); diverges when the moduli grow
    monotonically beyond ``blowup``; otherwise inconclusive.
    """
    if len(ladder) < 6:
        raise ValueError("ladder needs at least 6 points")
    ns = np.asarray(ladder, dtype=np.int64)
    if np.any(np.diff(ns) <= 0):
        raise ValueError("ladder must be strictly increasing")
    vals = np.asarray(seq(ns), dtype=complex)
    if vals.shape != ns.shape:
        raise ValueError("sequence evaluator returned a wrong shape")
    if not np.all(np.isfinite(vals.real)) or not np.all(np.isfinite(vals.imag)):
        raise ValueError("sequence evaluator produced non-finite values")
    evidence = tuple(zip((int(n) for n in ns[-6:]), vals[-6:]))

    tail = vals[-3:]
    scale = max(1.0, abs(tail[-1]))
    if max(abs(tail[-1] - tail[0]), abs(tail[-1] - tail[1])) <= rtol * scale:
        return LimitVerdict(CONVERGES, complex(tail[-1]), evidence)
    mods = np.abs(vals)
    if np.all(np.diff(mods) >= 0) and mods[-1] > blowup:
        return LimitVerdict(DIVERGES, None, evidence)
    return LimitVerdict(INCONCLUSIVE, None, evidence)


@dataclass(frozen=True)
class PairSequenceFamily:
    """Closed-form channels of a pair sequence in a parametrized space.

    Evaluators take an int64 index array and return an array.  Optional
    cross-distance evaluators (d(f(x_n), f(x_m)) for index pairs) enable
    Cauchy checks when image convergence cannot be proxied through the
    base-point distance.
    """

    d_xy: Callable
    d_fx0: Callable
    d_fy0: Callable
    d_fxfy: Callable
    w_x: Callable
    w_y: Callable
    n_min: int = 2
    cross_fx: Optional[Callable] = None
    cross_fy: Optional[Callable] = None
    label: str = ""

    def ladder(self, ladder: tuple[int, ...]) -> np.ndarray:
        ns = np.asarray([n for n in ladder if n >= self.n_min], dtype=np.int64)
        d = np.asarray(self.d_xy(ns), dtype=float)
        if np.any(d <= 0):
            raise ValueError("family violates d(x_n, y_n) > 0 on the ladder")
        return ns

    def a_seq(self, ns):
        return np.asarray(self.w_x(ns), dtype=complex) / np.asarray(self.d_xy(ns), dtype=float)

    def b_seq(self, ns):
        return np.asarray(self.w_y(ns), dtype=complex) / np.asarray(self.d_xy(ns), dtype=float)

    def stats(self, ns):
        return pair_statistics(
            self.d_xy(ns),
            self.d_fx0(ns),
            self.d_fy0(ns),
            self.d_fxfy(ns),
            self.w_x(ns),
            self.w_y(ns),
        )


def _image_convergence(fam: PairSequenceFamily, which: str, ladder) -> LimitVerdict:
    """Proxy for convergence of (f(x_n))_n (or (f(y_n))_n).

    Uses the base-point distance when it tends to 0 (convergence to the
    base point) and a Cauchy check on cross-distances when the family
    exposes them; otherwise reports inconclusive rather than fabricating a
    limit point.
    """
    d0 = fam.d_fx0 if which == "x" else fam.d_fy0
    cross = fam.cross_fx if which == "x" else fam.cross_fy
    v = detect_limit(d0, ladder)
    if v.converges_to_zero():
        return LimitVerdict(CONVERGES, 0j, v.evidence)
    if cross is not None:
        ns = np.asarray(ladder, dtype=np.int64)
        gaps = np.asarray(cross(ns[:-1], ns[1:]), dtype=float)
        ev = tuple(zip((int(n) for n in ns[1:]), (complex(g) for g in gaps)))
        if gaps[-1] <= 1e-4 * max(1.0, gaps[0]) and np.all(np.diff(gaps[-4:]) <= 0):
            return LimitVerdict(CONVERGES, None, ev)
        return LimitVerdict(INCONCLUSIVE, None, ev)
    return LimitVerdict(INCONCLUSIVE, None, v.evidence)


def _size_class(v: LimitVerdict) -> str:
    if v.diverges:
        return "infinite"
    if v.converges_to_zero():
        return "zero"
    if v.converges:
        return "finite"
    return INCONCLUSIVE


@dataclass(frozen=True)
class CaseReport:
    """Outcome of the sequential-criterion case analysis for one family."""

    case: str
    a_verdict: LimitVerdict
    b_verdict: LimitVerdict
    diff_verdict: LimitVerdict
    conditions: dict
    overall: str
    heuristic: bool = True


def _branch_status(parts: list[str]) -> str:
    if all(p == PASS for p in parts):
        return PASS
    if any(p == FAIL for p in parts):
        return FAIL
    return INCONCLUSIVE


def classify_appendix_case(
    fam: PairSequenceFamily, ladder: tuple[int, ...] = DEFAULT_LADDER
) -> CaseReport:
    """Assign the governing sequential-criterion case and check its
    conclusions.

    Cases by the limits of a_n = w(x_n)/d(x_n,y_n) and b_n = w(y_n)/d(x_n,y_n):
    1 both finite nonzero; 2 one finite nonzero, the other to 0;
    2' one finite nonzero, the other to infinity; 3 both to 0;
    4 / 4' both to infinity with a_n - b_n to 0 / infinity;
    5 both to infinity with a_n - b_n to a nonzero finite limit.
    Refuses classification when the limit evidence is inconclusive or the
    (a, b) behaviour matches none of the cases.
    """
    ns = fam.ladder(ladder)
    eff = tuple(int(n) for n in ns)
    av = detect_limit(fam.a_seq, eff)
    bv = detect_limit(fam.b_seq, eff)
    dv = detect_limit(lambda m: fam.a_seq(m) - fam.b_seq(m), eff)
    ca, cb = _size_class(av), _size_class(bv)
    if INCONCLUSIVE in (ca, cb):
        raise ClassificationRefused(
            f"inconclusive limit evidence for (a_n, b_n): ({av.tag}, {bv.tag})"
        )

    def ab_decay() -> tuple[str, dict]:
        out = {}
        parts = []
        for name in ("a", "b_xy", "b_yx"):
            v = detect_limit(lambda m, _a=name: np.real(fam.stats(m)[_a]), eff)
            out[f"{name}_to_zero"] = v
            parts.append(
                PASS
                if v.converges_to_zero()
                else (FAIL if v.converges or v.diverges else INCONCLUSIVE)
            )
        return _branch_status(parts), out

    def lim_zero(seq, name, conditions) -> str:
        v = detect_limit(seq, eff)
        conditions[name] = v
        return PASS if v.converges_to_zero() else (FAIL if v.converges or v.diverges else INCONCLUSIVE)

    conditions: dict = {}
    branches: list[str] = []

    if ca == "finite" and cb == "finite":
        case = "1"
        s, out = ab_decay()
        conditions.update(out)
        branches.append(s)
        fx = _image_convergence(fam, "x", eff)
        fy = _image_convergence(fam, "y", eff)
        conditions["f_x_converges"] = fx
        conditions["f_y_converges"] = fy
        branches.append(
            _branch_status(
                [PASS if v.converges else INCONCLUSIVE for v in (fx, fy)]
            )
        )
    elif {ca, cb} == {"finite", "zero"}:
        case = "2"
        s, out = ab_decay()
        conditions.update(out)
        branches.append(s)
        # the finite side's image converges; the vanishing side's mass dies
        fin_is_x = ca == "finite"
        conv = _image_convergence(fam, "x" if fin_is_x else "y", eff)
        conditions["f_finite_side_converges"] = conv
        small = (
            (lambda m: fam.b_seq(m) * np.asarray(fam.d_fy0(m), dtype=float))
            if fin_is_x
            else (lambda m: fam.a_seq(m) * np.asarray(fam.d_fx0(m), dtype=float))
        )
        s2 = lim_zero(small, "vanishing_mass_to_zero", conditions)
        branches.append(
            _branch_status([PASS if conv.converges else INCONCLUSIVE, s2])
        )
    elif {ca, cb} == {"finite", "infinite"}:
        case = "2'"
        s, out = ab_decay()
        conditions.update(out)
        branches.append(s)
        # the diverging side's image converges; the finite side's mass dies
        inf_is_y = cb == "infinite"
        conv = _image_convergence(fam, "y" if inf_is_y else "x", eff)
        conditions["f_diverging_side_converges"] = conv
        small = (
            (lambda m: fam.a_seq(m) * np.asarray(fam.d_fx0(m), dtype=float))
            if inf_is_y
            else (lambda m: fam.b_seq(m) * np.asarray(fam.d_fy0(m), dtype=float))
        )
        s2 = lim_zero(small, "finite_side_mass_to_zero", conditions)
        branches.append(
            _branch_status([PASS if conv.converges else INCONCLUSIVE, s2])
        )
    elif ca == "zero" and cb == "zero":
        case = "3"
        s, out = ab_decay()
        conditions.update(out)
        branches.append(s)
    elif ca == "infinite" and cb == "infinite":
        cd = _size_class(dv)
        if cd == "zero":
            case = "4"
        elif cd == "infinite":
            case = "4'"
        elif cd == "finite":
            case = "5"
        else:
            raise ClassificationRefused(
                "both mass ratios diverge but their difference is inconclusive"
            )
        s, out = ab_decay()
        conditions.update(out)
        branches.append(s)
        if case == "5":
            s_img = lim_zero(fam.d_fxfy, "images_merge", conditions)
            s_mass = lim_zero(
                lambda m: fam.b_seq(m) * np.asarray(fam.d_fxfy(m), dtype=float),
                "merged_mass_to_zero",
                conditions,
            )
            branches.append(_branch_status([s_img, s_mass]))
    else:
        raise ClassificationRefused(
            f"(a_n, b_n) behaviour ({ca}, {cb}) matches no case of the criterion"
        )

    if any(b == PASS for b in branches):
        overall = PASS
    elif all(b == FAIL for b in branches):
        overall = FAIL
    else:
        overall = INCONCLUSIVE
    return CaseReport(
        case=case,
        a_verdict=av,
        b_verdict=bv,
        diff_verdict=dv,
        conditions=conditions,
        overall=overall,
    )


# ---------------------------------------------------------------------------
# criterion reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CriterionReport:
    criterion: str
    entries: tuple[dict, ...]
    overall: str
    heuristic: bool = True


def _aggregate(statuses: list[str]) -> str:
    informative = [s for s in statuses if s != REJECTED]
    if not informative:
        return INCONCLUSIVE
    if any(s == FAIL for s in informative):
        return FAIL
    if all(s == PASS for s in informative):
        return PASS
    return INCONCLUSIVE


@dataclass(frozen=True)
class RegimeFamily:
    """A pair family together with the limit regime it is meant to realize:
    ``image-distance`` (d(f(x_n), f(y_n)) -> 0) or ``image-radius``
    (min(d(f(x_n),0), d(f(y_n),0)) -> 0)."""

    family: PairSequenceFamily
    regime: str

    def __post_init__(self) -> None:
        if self.regime not in ("image-distance", "image-radius"):
            raise ValueError(f"unknown regime {self.regime!r}")


def check_caraccompact(
    families: list[RegimeFamily], ladder: tuple[int, ...] = DEFAULT_LADDER
) -> CriterionReport:
    """sigma -> 0 along image-distance regimes, tau -> 0 along image-radius
    regimes.  Families that fail to realize their declared regime are
    rejected rather than counted."""
    entries = []
    statuses = []
    for rf in families:
        fam = rf.family
        ns = fam.ladder(ladder)
        eff = tuple(int(n) for n in ns)
        if rf.regime == "image-distance":
            gate = detect_limit(fam.d_fxfy, eff)
            quantity = "sigma"
        else:
            gate = detect_limit(
                lambda m: np.minimum(
                    np.asarray(fam.d_fx0(m), dtype=float),
                    np.asarray(fam.d_fy0(m), dtype=float),
                ),
                eff,
            )
            quantity = "tau"
        entry = {"label": fam.label, "regime": rf.regime, "gate": gate}
        if not gate.converges_to_zero():
            entry["status"] = REJECTED
        else:
            v = detect_limit(lambda m: np.real(fam.stats(m)[quantity]), eff)
            entry["quantity"] = quantity
            entry["verdict"] = v
            entry["status"] = (
                PASS
                if v.converges_to_zero()
                else (FAIL if v.converges or v.diverges else INCONCLUSIVE)
            )
        entries.append(entry)
        statuses.append(entry["status"])
    return CriterionReport("CaracCompact", tuple(entries), _aggregate(statuses))


def greedy_net(dist_matrix: np.ndarray, eps: float) -> list[int]:
    """Greedy eps-net over a finite sample given its pairwise distances."""
    n = dist_matrix.shape[0]
    centers: list[int] = []
    covered = np.zeros(n, dtype=bool)
    while not covered.all():
        i = int(np.argmin(covered))
        centers.append(i)
        covered |= dist_matrix[i] <= eps
    return centers


def _net_growth_entry(dist_for_sample, sample_sizes, eps_grid) -> dict:
    """Net sizes per (sample size, eps); growth at the finest eps is the
    observable standing in for failure of total boundedness."""
    sizes = {}
    for m in sample_sizes:
        dm = dist_for_sample(m)
        if dm.shape[0] == 0:
            sizes[m] = {eps: 0 for eps in eps_grid}
            continue
        sizes[m] = {eps: len(greedy_net(dm, eps)) for eps in eps_grid}
    finest = min(eps_grid)
    counts = [sizes[m][finest] for m in sample_sizes]
    growing = len(counts) >= 2 and counts[-1] > 1.5 * max(1, counts[0])
    return {
        "net_sizes": sizes,
        "growth_flag": growing,
        "status": FAIL if growing else PASS,
    }


@dataclass(frozen=True)
class DiscreteFamily:
    """Sampled view of a weighted map on a uniformly discrete bounded space.

    ``sample(m)`` returns m representative indices, ``image_dist`` their
    pairwise image distances; ``w`` and ``d_f0`` are per-index channels.
    Optional subfamilies realize w -> 0 and |w| -> infinity regimes.
    """

    theta: float
    diam: float
    sample: Callable[[int], np.ndarray]
    image_dist: Callable[[np.ndarray], np.ndarray]
    w: Callable[[np.ndarray], np.ndarray]
    d_f0: Callable[[np.ndarray], np.ndarray]
    w_to_zero: Optional[Callable] = None
    w_to_inf: Optional[Callable] = None
    label: str = ""


def check_udb(
    fam: DiscreteFamily,
    alpha_grid: tuple[float, ...] = (0.01, 0.1, 1.0),
    eps_grid: tuple[float, ...] = (1.0, 0.1, 0.01),
    sample_sizes: tuple[int, ...] = (64, 256, 1024),
    ladder: tuple[int, ...] = DEFAULT_LADDER,
) -> CriterionReport:
    """Uniformly-discrete-and-bounded compactness criterion, desk scale.

    (i) per alpha: eps-net growth over sampled images of the super-level set
    of |w|; (ii) w(x) d(f(x), 0) -> 0 along the declared w -> 0 and
    |w| -> infinity subfamilies.
    """
    if fam.theta <= 0:
        raise ValueError("uniform discreteness bound theta must be positive")
    if not math.isfinite(fam.diam):
        raise ValueError("the criterion requires a bounded space")
    entries = []
    statuses = []
    for alpha in alpha_grid:
        def dist_for_sample(m, _alpha=alpha):
            idx = np.asarray(fam.sample(m))
            keep = idx[np.abs(np.asarray(fam.w(idx), dtype=complex)) > _alpha]
            return np.asarray(fam.image_dist(keep), dtype=float)

        entry = {"check": "level-set-net", "alpha": alpha}
        entry.update(_net_growth_entry(dist_for_sample, sample_sizes, eps_grid))
        entries.append(entry)
        statuses.append(entry["status"])
    for name, sub in (("w-to-zero", fam.w_to_zero), ("w-to-inf", fam.w_to_inf)):
        if sub is None:
            continue
        v = detect_limit(
            lambda k, _s=sub: np.asarray(fam.w(np.asarray(_s(k))), dtype=complex)
            * np.asarray(fam.d_f0(np.asarray(_s(k))), dtype=float),
            ladder,
        )
        status = (
            PASS
            if v.converges_to_zero()
            else (FAIL if v.converges or v.diverges else INCONCLUSIVE)
        )
        entries.append({"check": f"mass-decay-{name}", "verdict": v, "status": status})
        statuses.append(status)
    return CriterionReport("CaracCompactUDB", tuple(entries), _aggregate(statuses))


@dataclass(frozen=True)
class MapFamily:
    """Sampled view of an unweighted map between (possibly infinite) spaces.

    Tokens are whatever the samplers produce (typically float arrays); the
    distance callables must accept token arrays elementwise.
    """

    d_dom: Callable
    d_img: Callable
    close_pairs: Callable[[float, int, np.random.Generator], tuple]
    bounded_sample: Optional[Callable[[float, int, np.random.Generator], np.ndarray]] = None
    escaping_pairs: Optional[Callable[[int, np.random.Generator], tuple]] = None
    far_pairs: Optional[Callable[[int, np.random.Generator], tuple]] = None
    label: str = ""


DELTA_LADDER = (1.0, 0.3, 0.1, 0.03, 0.01, 0.003, 0.001)


def _ratio_ladder_entry(fam: MapFamily, rng, pairs_per_delta=512, deltas=DELTA_LADDER) -> dict:
    sups = {}
    for delta in deltas:
        xs, ys = fam.close_pairs(delta, pairs_per_delta, rng)
        xs = np.asarray(xs, dtype=float)
        if xs.size == 0:
            continue
        ys = np.asarray(ys, dtype=float)
        dd = np.asarray(fam.d_dom(xs, ys), dtype=float)
        keep = dd > 0
        if not keep.any():
            continue
        ratio = np.asarray(fam.d_img(xs[keep], ys[keep]), dtype=float) / dd[keep]
        sups[delta] = float(ratio.max())
    if not sups:
        return {"sups": sups, "status": INCONCLUSIVE}
    vals = [sups[d] for d in sorted(sups, reverse=True)]
    if vals[-1] <= 1e-3 or vals[-1] <= 0.05 * max(vals[0], 1e-12):
        status = PASS
    elif vals[-1] >= 0.5 * vals[0] and vals[-1] > 1e-2:
        status = FAIL
    else:
        status = INCONCLUSIVE
    return {"sups": sups, "status": status}


def check_w1_compact(
    fam: MapFamily, seed: int = 0, sample_sizes: tuple[int, ...] = (64, 256, 1024)
) -> CriterionReport:
    """Unweighted compactness battery: local flatness (ratio on shrinking
    close pairs), total boundedness of images of bounded sets (eps-nets),
    the escaping-pair disjunction, and radial flatness when far pairs are
    available."""
    rng = np.random.default_rng(seed)
    entries = []
    statuses = []

    flat = {"check": "uniformly-locally-flat"}
    flat.update(_ratio_ladder_entry(fam, rng))
    entries.append(flat)
    statuses.append(flat["status"])

    if fam.bounded_sample is not None:
        for radius in (1.0, 10.0):
            def dist_for_sample(m, _r=radius):
                xs = np.asarray(fam.bounded_sample(_r, m, rng), dtype=float)
                if xs.size == 0:
                    return np.zeros((0, 0))
                return np.asarray(
                    fam.d_img(xs[:, None], xs[None, :]), dtype=float
                )

            entry = {"check": "bounded-image-net", "radius": radius}
            entry.update(
                _net_growth_entry(dist_for_sample, sample_sizes, (1.0, 0.1, 0.01))
            )
            entries.append(entry)
            statuses.append(entry["status"])

    if fam.escaping_pairs is not None:
        xs, ys = fam.escaping_pairs(1024, rng)
        xs, ys = np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)
        dd = np.asarray(fam.d_dom(xs, ys), dtype=float)
        keep = dd > 0
        ratio = np.asarray(fam.d_img(xs[keep], ys[keep]), dtype=float) / dd[keep]
        img = np.asarray(fam.d_img(xs[:, None], xs[None, :]), dtype=float)
        accum = len(greedy_net(img, 0.01)) < 0.25 * len(xs)
        low = float(ratio.min()) if ratio.size else math.inf
        status = PASS if (accum or low <= 1e-2) else FAIL
        entries.append(
            {
                "check": "escaping-pairs",
                "min_ratio": low,
                "accumulation_proxy": accum,
                "status": status,
            }
        )
        statuses.append(status)

    if fam.far_pairs is not None:
        xs, ys = fam.far_pairs(1024, rng)
        xs, ys = np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)
        dd = np.asarray(fam.d_dom(xs, ys), dtype=float)
        order = np.argsort(dd)
        ratio = np.asarray(fam.d_img(xs, ys), dtype=float)[order] / dd[order]
        tail = ratio[-max(8, len(ratio) // 8) :]
        status = PASS if tail.max() <= 1e-2 else (
            FAIL if tail.min() >= 0.5 * max(float(ratio[0]), 1e-2) else INCONCLUSIVE
        )
        entries.append(
            {"check": "radially-flat", "tail_sup": float(tail.max()), "status": status}
        )
        statuses.append(status)

    return CriterionReport("ThmA-w1", tuple(entries), _aggregate(statuses))


@dataclass(frozen=True)
class PhiFamily:
    """Sampled view of x -> w(x) delta(f(x)) with a concrete finite codomain.

    Pairwise distances of the image curve are measured in the free space
    over the codomain through the norm oracle.
    """

    codomain: PointedMetricSpace
    f: Callable[[float], int]
    w: Callable[[float], complex]
    d_dom: Callable
    sample: Callable[[int, np.random.Generator], np.ndarray]
    close_pairs: Callable[[float, int, np.random.Generator], tuple]
    label: str = ""

    def phi_dist(self, x: float, y: float, k: int = 64) -> float:
        gamma = FreeElement(
            self.codomain, {self.f(x): complex(self.w(x))}
        ) - FreeElement(self.codomain, {self.f(y): complex(self.w(y))})
        return norm_bracket(gamma, k=k).hi


def check_phi_sufficient(
    fam: PhiFamily, seed: int = 0, sample_sizes: tuple[int, ...] = (32, 96, 256)
) -> CriterionReport:
    """Sufficient-only compactness test through the image curve phi.

    PASS certifies compactness; anything else reports that the sufficient
    condition is not met, which says nothing about non-compactness.
    """
    rng = np.random.default_rng(seed)
    entries = []
    statuses = []

    def dist_for_sample(m):
        xs = np.asarray(fam.sample(m, rng), dtype=float)
        d = np.zeros((len(xs), len(xs)))
        for i in range(len(xs)):
            for j in range(i + 1, len(xs)):
                d[i, j] = d[j, i] = fam.phi_dist(xs[i], xs[j])
        return d

    net = {"check": "phi-image-net"}
    net.update(_net_growth_entry(dist_for_sample, sample_sizes, (1.0, 0.1, 0.01)))
    entries.append(net)
    statuses.append(net["status"])

    sups = {}
    for delta in DELTA_LADDER:
        xs, ys = fam.close_pairs(delta, 64, rng)
        xs = np.asarray(xs, dtype=float)
        if xs.size == 0:
            continue
        ys = np.asarray(ys, dtype=float)
        dd = np.asarray(fam.d_dom(xs, ys), dtype=float)
        ratios = [
            fam.phi_dist(x, y) / d for x, y, d in zip(xs, ys, dd) if d > 0
        ]
        if ratios:
            sups[delta] = max(ratios)
    if not sups:
        flat_status = INCONCLUSIVE
    else:
        vals = [sups[d] for d in sorted(sups, reverse=True)]
        if vals[-1] <= 1e-3 or vals[-1] <= 0.05 * max(vals[0], 1e-12):
            flat_status = PASS
        elif vals[-1] >= 0.5 * vals[0] and vals[-1] > 1e-2:
            flat_status = FAIL
        else:
            flat_status = INCONCLUSIVE
    entries.append({"check": "phi-locally-flat", "sups": sups, "status": flat_status})
    statuses.append(flat_status)

    overall = _aggregate(statuses)
    verdict = "compact (sufficient)" if overall == PASS else "sufficient condition not met"
    entries = entries + [{"check": "verdict", "verdict": verdict, "status": overall}]
    return CriterionReport("thmA-sufficient", tuple(entries), overall)


# ---------------------------------------------------------------------------
# the weighted backward shift example
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShiftExample:
    """The radial sequence space with d(n, m) = n^-alpha + m^-alpha and the
    weighted one-step-down map f(n) = n-1 with weight w(n) = n^-beta."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if self.alpha <= 0 or self.beta < 0:
            raise ValueError("need alpha > 0 and beta >= 0")

    def radius(self, n):
        n = np.asarray(n, dtype=float)
        with np.errstate(divide="ignore"):
            return np.where(n == 0, 0.0, n ** -self.alpha)

    def dist(self, n, m):
        n, m = np.asarray(n, dtype=float), np.asarray(m, dtype=float)
        return np.where(n == m, 0.0, self.radius(n) + self.radius(m))

    def weight(self, n):
        n = np.asarray(n, dtype=float)
        with np.errstate(divide="ignore"):
            return np.where(n == 0, 0.0, n ** -self.beta)

    def shift_weight(self, n):
        """The l1 column weight (n/(n-1))^alpha * n^-beta for n >= 2."""
        n = np.asarray(n, dtype=float)
        return (n / (n - 1)) ** self.alpha * n ** -self.beta

    def family(self, xn: Callable, yn: Callable, n_min: int = 3, label: str = "") -> PairSequenceFamily:
        def fx(ns):
            return np.asarray(xn(ns), dtype=float) - 1

        def fy(ns):
            return np.asarray(yn(ns), dtype=float) - 1

        return PairSequenceFamily(
            d_xy=lambda ns: self.dist(xn(ns), yn(ns)),
            d_fx0=lambda ns: self.radius(fx(ns)),
            d_fy0=lambda ns: self.radius(fy(ns)),
            d_fxfy=lambda ns: self.dist(fx(ns), fy(ns)),
            w_x=lambda ns: self.weight(xn(ns)),
            w_y=lambda ns: self.weight(yn(ns)),
            n_min=n_min,
            label=label or f"shift(alpha={self.alpha}, beta={self.beta})",
        )

    def truncated_space(self, n_max: int) -> PointedMetricSpace:
        if n_max < 2:
            raise ValueError("need n_max >= 2")
        pts = tuple(str(i) for i in range(n_max + 1))
        idx = np.arange(n_max + 1)
        d = self.dist(idx[:, None], idx[None, :])
        return PointedMetricSpace(points=pts, base=0, dist=d)

    def weighted_map(self, n_max: int) -> WeightedMap:
        space = self.truncated_space(n_max)
        f = tuple(max(i - 1, 0) for i in range(n_max + 1))
        w = tuple(complex(x) for x in self.weight(np.arange(n_max + 1)))
        return WeightedMap(domain=space, codomain=space, f=f, w=w)


def shift_operator_matrix(ex: ShiftExample, n_max: int):
    """Truncated weighted-backward-shift matrix with compactness verdict.

    Basis vectors e_1..e_n_max index rows/columns 0..n_max-1; column n holds
    the single entry (n/(n-1))^alpha * n^-beta in row n-1.  The operator is
    compact exactly when the column weights vanish at infinity, i.e. when
    beta > 0; the finite-rank truncation errors sup_{n>k} weight(n) are the
    explicit compactness witness.
    """
    if n_max < 2:
        raise ValueError("need n_max >= 2")
    T = np.zeros((n_max, n_max))
    ns = np.arange(2, n_max + 1)
    T[ns - 2, ns - 1] = ex.shift_weight(ns)
    horizon = np.arange(n_max + 1, max(4 * n_max, 1 << 16) + 1)
    tail_weights = ex.shift_weight(horizon)
    limit = 0.0 if ex.beta > 0 else 1.0
    truncation_errors = {
        int(k): float(max(ex.shift_weight(np.arange(k + 1, horizon[-1] + 1)).max(), limit))
        for k in (n_max // 4, n_max // 2, n_max)
        if k >= 1
    }
    verdict = {
        "compact": ex.beta > 0,
        "column_weights": T[ns - 2, ns - 1],
        "truncation_errors": truncation_errors,
        "tail_sup": float(max(tail_weights.max(), limit)),
    }
    return T, verdict


def shift_psi_column_check(ex: ShiftExample, n_max: int) -> float:
    """Max discrepancy between l1 column norms of the shift matrix and the
    free-space norms of normalized single-point images on the truncation."""
    op = ex.weighted_map(n_max)
    space = op.domain
    worst = 0.0
    for n in range(2, n_max + 1):
        dn = space.d0(n)
        image = abs(op.w[n]) * space.d0(n - 1) / dn
        column = float(ex.shift_weight(np.asarray(float(n))))
        worst = max(worst, abs(image - column))
    return worst


# ---------------------------------------------------------------------------
# family JSON
# ---------------------------------------------------------------------------

_SEQ_RE = re.compile(r"^n(?:(?P<op>[+\-^])(?P<k>\d+))?$")


def sequence_from_expr(expr: str) -> Callable:
    """Tiny index-sequence grammar: 'n', 'n-1', 'n+2', 'n^2'."""
    m = _SEQ_RE.match(expr.replace(" ", ""))
    if not m:
        raise ValueError(f"unsupported sequence expression {expr!r}")
    if m.group("op") is None:
        return lambda ns: np.asarray(ns, dtype=float)
    k = int(m.group("k"))
    op = m.group("op")
    if op == "+":
        return lambda ns: np.asarray(ns, dtype=float) + k
    if op == "-":
        return lambda ns: np.asarray(ns, dtype=float) - k
    return lambda ns: np.asarray(ns, dtype=float) ** k


def remark_square_family(xn: Callable, yn: Callable, n_min: int = 2, label: str = "") -> PairSequenceFamily:
    """f(x) = x^2 with w(x) = 1/x on {0} union [1, inf) with the line metric."""
    def _x(ns):
        return np.asarray(xn(ns), dtype=float)

    def _y(ns):
        return np.asarray(yn(ns), dtype=float)

    return PairSequenceFamily(
        d_xy=lambda ns: np.abs(_x(ns) - _y(ns)),
        d_fx0=lambda ns: _x(ns) ** 2,
        d_fy0=lambda ns: _y(ns) ** 2,
        d_fxfy=lambda ns: np.abs(_x(ns) ** 2 - _y(ns) ** 2),
        w_x=lambda ns: 1.0 / _x(ns),
        w_y=lambda ns: 1.0 / _y(ns),
        n_min=n_min,
        label=label or "square-map",
    )


def remark_square_truncation(n: int) -> WeightedMap:
    """Finite truncation of the square map with reciprocal weight.

    Domain {0, 1, ..., n} with the line metric, f(x) = x^2 into the set of
    squares, w(x) = 1/x (w(0) = 0).  Its pair statistics reproduce the
    bounds sigma <= 2, tau <= 1 and the extremal single-term value n + 1 at
    the pair (1, n).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    xs = np.arange(n + 1)
    dom = PointedMetricSpace(
        points=tuple(str(i) for i in xs),
        base=0,
        dist=np.abs(xs[:, None] - xs[None, :]).astype(float),
    )
    sq = xs**2
    cod = PointedMetricSpace(
        points=tuple(str(i) for i in sq),
        base=0,
        dist=np.abs(sq[:, None] - sq[None, :]).astype(float),
    )
    w = tuple(0j if i == 0 else complex(1.0 / i) for i in xs)
    return WeightedMap(domain=dom, codomain=cod, f=tuple(range(n + 1)), w=w)


def family_from_json(obj: dict) -> PairSequenceFamily:
    builtin = obj.get("builtin")
    if builtin == "appendix-shift":
        ex = ShiftExample(alpha=float(obj["alpha"]), beta=float(obj["beta"]))
        return ex.family(
            sequence_from_expr(obj.get("xn", "n")),
            sequence_from_expr(obj.get("yn", "n-1")),
            label=f"appendix-shift:{obj.get('xn', 'n')},{obj.get('yn', 'n-1')}",
        )
    if builtin == "remark-square":
        return remark_square_family(
            sequence_from_expr(obj.get("xn", "n")),
            sequence_from_expr(obj.get("yn", "n+1")),
            label="remark-square",
        )
    if builtin == "custom-table":
        ns = np.asarray(obj["n"], dtype=np.int64)
        chans = {}
        for key in ("d_xy", "d_fx0", "d_fy0", "d_fxfy", "w_x", "w_y"):
            vals = np.asarray(obj[key], dtype=complex if key.startswith("w") else float)
            if vals.shape != ns.shape:
                raise ValueError(f"channel {key} length mismatch")
            lookup = dict(zip((int(n) for n in ns), vals))

            def chan(ms, _lk=lookup):
                return np.asarray([_lk[int(m)] for m in np.atleast_1d(ms)])

            chans[key] = chan
        return PairSequenceFamily(n_min=int(ns.min()), label="custom-table", **chans)
    raise ValueError(f"unknown family builtin {builtin!r}")
