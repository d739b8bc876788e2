"""Acceptance suite: one test per release criterion, one printed verdict line
per criterion, pinned tolerances.  These tests are the gate for the numeric
claims of the package: every closed-form route must agree with an
independent brute-force route."""

import itertools
import math
import time

import numpy as np
import pytest

from lipfree import asymptotics as asy
from lipfree.free_element import (
    FreeElement,
    delta,
    two_point_norm_complex_bracket,
    two_point_norm_real,
)
from lipfree.lip_adapter import LipProblem, lip_operator_norm_vertices, to_lip0
from lipfree.metric_space import PointedMetricSpace
from lipfree.norm_oracle import complex_norm_bracket, real_norm_flow, real_norm_lp
from lipfree.polytope import lip0_ball_vertices
from lipfree.weighted_operator import (
    WeightedMap,
    apply,
    boundedness_report,
    composition_matrix,
    is_injective_criterion,
    is_surjective_criterion,
    operator_norm,
    pair_stats,
)

from .conftest import random_metric_space, random_operator

SQRT2 = math.sqrt(2.0)


def verdict(name: str, ok: bool, detail: str = "") -> None:
    tag = "PASS" if ok else "FAIL"
    line = f"[{tag}] {name}" + (f" :: {detail}" if detail else "")
    print("\n" + line)
    assert ok, line


# -- criterion 1 ------------------------------------------------------------


def test_criterion_01_two_point_formula_matches_lp_oracle():
    rng = np.random.default_rng(101)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(500):
        n = int(rng.integers(3, 9))
        space = random_metric_space(rng, n)
        x, y = (int(v) for v in rng.choice(range(1, n), size=2, replace=False))
        a, b = rng.uniform(-5, 5, size=2)
        got = two_point_norm_real(space, a, b, x, y)
        want = real_norm_lp(FreeElement(space, {x: a, y: b}))
        worst = max(worst, abs(got - want) / max(1.0, abs(want)))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and elapsed < 10.0
    verdict(
        "criterion-01 two-point formula vs LP oracle (500 spaces)",
        ok,
        f"max rel err {worst:.2e}, {elapsed:.2f}s",
    )


# -- criterion 2 ------------------------------------------------------------


def test_criterion_02_lp_flow_duality():
    rng = np.random.default_rng(102)
    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(3, 8))
        space = random_metric_space(rng, n)
        support = rng.choice(range(1, n), size=min(6, n - 1), replace=False)
        g = FreeElement(space, {int(i): float(rng.uniform(-4, 4)) for i in support})
        lp = real_norm_lp(g)
        flow = real_norm_flow(g)
        worst = max(worst, abs(lp - flow) / max(1.0, abs(lp)))
    ok = worst <= 1e-7
    verdict(
        "criterion-02 dual LP vs primal transport (1000 elements)",
        ok,
        f"max rel gap {worst:.2e}",
    )


# -- criterion 3 ------------------------------------------------------------


def test_criterion_03_complex_sandwich_high_order_polygon():
    rng = np.random.default_rng(103)
    ok = True
    worst_width = 0.0
    for _ in range(500):
        space = random_metric_space(rng, 3)
        l1 = complex(*rng.uniform(-5, 5, size=2))
        l2 = complex(*rng.uniform(-5, 5, size=2))
        sandwich = two_point_norm_complex_bracket(space, l1, l2, 1, 2)
        br = complex_norm_bracket(FreeElement(space, {1: l1, 2: l2}), k=256)
        ok &= br.lo >= sandwich.lo - 1e-6 and br.hi <= sandwich.hi + 1e-6
        if br.midpoint > 0:
            worst_width = max(worst_width, br.width / br.midpoint)
    ok &= worst_width <= 1e-4
    verdict(
        "criterion-03 complex polygon bracket inside sqrt2 sandwich (k=256)",
        ok,
        f"max rel width {worst_width:.2e}",
    )


# -- criterion 4 ------------------------------------------------------------


def test_criterion_04_real_norm_inside_complex_bracket():
    rng = np.random.default_rng(104)
    ok = True
    for _ in range(200):
        n = int(rng.integers(3, 6))
        space = random_metric_space(rng, n)
        g = FreeElement(
            space, {i: float(rng.uniform(-4, 4)) for i in range(1, n)}
        )
        v = real_norm_lp(g)
        br = complex_norm_bracket(g, k=64)
        ok &= br.contains(v, tol=1e-9)
    verdict("criterion-04 real norm inside complex bracket (200 elements)", ok)


# -- criterion 5 ------------------------------------------------------------


def test_criterion_05_pair_statistic_inequalities():
    rng = np.random.default_rng(105)
    draws = 0
    min_slack = math.inf
    while draws < 10_000:
        op = random_operator(rng, 5, 4, complex_weights=bool(rng.integers(0, 2)))
        for x in range(5):
            for y in range(5):
                if x == y:
                    continue
                s = pair_stats(op, x, y)
                b = max(s.b_xy, s.b_yx)
                slacks = (
                    2 * (s.a + b) - s.sigma,
                    s.a + s.sigma - s.tau,
                    s.sigma + s.tau - s.a,
                    s.a + 2 * s.sigma - b,
                )
                min_slack = min(min_slack, *slacks)
                draws += 1
    ok = min_slack >= -1e-12
    verdict(
        "criterion-05 pair-statistic inequalities (10^4 draws)",
        ok,
        f"min slack {min_slack:.2e}",
    )


# -- criterion 6 ------------------------------------------------------------


def test_criterion_06_operator_norm_vs_pair_bound():
    rng = np.random.default_rng(106)
    worst = 0.0
    for _ in range(200):
        op = random_operator(rng, int(rng.integers(3, 7)), int(rng.integers(2, 6)))
        rep = boundedness_report(op)
        br = operator_norm(op)
        worst = max(worst, abs(br.hi - max(rep.a_max, rep.b_max)))
    ok = worst <= 1e-9
    complex_ok = True
    for _ in range(60):
        op = random_operator(
            rng, int(rng.integers(3, 5)), int(rng.integers(2, 5)), complex_weights=True
        )
        rep = boundedness_report(op)
        br = operator_norm(op, k=64)
        bound = max(rep.a_max, rep.b_max)
        complex_ok &= br.lo >= bound / SQRT2 - 1e-6 and br.hi <= bound * SQRT2 + 1e-6
    ok &= complex_ok
    verdict(
        "criterion-06 molecule norm = pair bound (real), in sandwich (complex)",
        ok,
        f"max real gap {worst:.2e}",
    )


# -- criterion 7 ------------------------------------------------------------


def _template_space(n: int, variant: int) -> PointedMetricSpace:
    if n == 2:
        d = [[0.0, 1.3 + 0.4 * variant], [1.3 + 0.4 * variant, 0.0]]
    else:
        a, b, c = (1.0, 1.4, 2.1) if variant == 0 else (0.6, 0.9, 1.2)
        d = [[0.0, a, b], [a, 0.0, c], [b, c, 0.0]]
    return PointedMetricSpace(points=tuple(map(str, range(n))), base=0, dist=np.array(d))


def _function_space_norm(op: WeightedMap, g: np.ndarray, col_pos: dict) -> float:
    dom = op.domain
    h = [
        (op.w[x].real * g[col_pos[op.f[x]]] if op.f[x] in col_pos else 0.0)
        for x in range(len(dom))
    ]
    best = 0.0
    for x in range(len(dom)):
        for y in range(x + 1, len(dom)):
            best = max(best, abs(h[x] - h[y]) / dom.d(x, y))
    return best


def test_criterion_07_exhaustive_vertex_oracle():
    t0 = time.perf_counter()
    weights = (0.0, 1.0, -1.0, 2.0, -2.0)
    worst = 0.0
    count = 0
    for n_dom, n_cod, variant in itertools.product((2, 3), (2, 3), (0, 1)):
        dom = _template_space(n_dom, variant)
        cod = _template_space(n_cod, 1 - variant)
        verts = lip0_ball_vertices(cod)
        cols = cod.non_base_indices()
        col_pos = {z: c for c, z in enumerate(cols)}
        for f in itertools.product(range(n_cod), repeat=n_dom):
            w_base_choices = weights if f[0] == 0 else (0.0,)
            for w_rest in itertools.product(weights, repeat=n_dom - 1):
                for w_base in w_base_choices:
                    op = WeightedMap(
                        domain=dom, codomain=cod, f=f, w=(w_base,) + w_rest
                    )
                    got = operator_norm(op).hi
                    want = max(
                        (_function_space_norm(op, g, col_pos) for g in verts),
                        default=0.0,
                    )
                    worst = max(worst, abs(got - want))
                    count += 1
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and elapsed < 60.0
    verdict(
        "criterion-07 exhaustive norm vs unit-ball vertex oracle",
        ok,
        f"{count} instances, max gap {worst:.2e}, {elapsed:.1f}s",
    )


# -- criterion 8 ------------------------------------------------------------


def test_criterion_08_injectivity_surjectivity_vs_rank_oracle():
    weights = (0j, 1 + 0j, 1j)
    mismatches = 0
    count = 0
    for n_dom, n_cod in itertools.product((2, 3, 4), repeat=2):
        dom = random_metric_space(np.random.default_rng(n_dom), n_dom)
        cod = random_metric_space(np.random.default_rng(10 + n_cod), n_cod)
        for f in itertools.product(range(n_cod), repeat=n_dom):
            for w in itertools.product(weights, repeat=n_dom):
                if f[0] != 0 and w[0] != 0:
                    continue  # base condition cannot hold
                op = WeightedMap(domain=dom, codomain=cod, f=f, w=w)
                mat = composition_matrix(op)
                rank = np.linalg.matrix_rank(mat) if mat.size else 0
                inj = is_injective_criterion(op)
                surj = is_surjective_criterion(op).surjective
                if inj != (rank == mat.shape[1]) or surj != (rank == mat.shape[0]):
                    mismatches += 1
                count += 1
    ok = mismatches == 0
    verdict(
        "criterion-08 injectivity/surjectivity vs matrix rank (exhaustive)",
        ok,
        f"{count} instances, {mismatches} discrepancies",
    )


# -- criterion 9 ------------------------------------------------------------


def test_criterion_09_square_map_truncation_bounds():
    n = 200
    op = asy.remark_square_truncation(n)
    rep = boundedness_report(op)
    extremal = pair_stats(op, 1, n).n1_x
    ok = rep.sigma_max <= 2.0 and rep.tau_max <= 1.0 and extremal == float(n + 1)
    verdict(
        "criterion-09 square-map truncation: sigma<=2, tau<=1, peak term n+1",
        ok,
        f"sigma {rep.sigma_max:.4f}, tau {rep.tau_max:.4f}, peak {extremal}",
    )


# -- criterion 10 -----------------------------------------------------------


def test_criterion_10_sequential_case_analysis_reproduces_examples():
    ladder = tuple(2**k for k in range(4, 31))
    t0 = time.perf_counter()
    n16 = np.array([2**16])
    configs = [
        # (alpha, beta, xn, yn, expected case, checks at n = 2^16)
        (1.0, 1.0, "n", "n-1", "1", {"a": 0.5, "b": 0.5}),
        (1.0, 1.0, "n", "n^2", "2", {"a": 1.0, "b": 0.0}),
        (3.0, 1.5, "n^2", "n", "2'", {"a": 1.0}),
        (1.0, 2.0, "n", "n-1", "3", {"a": 0.0, "b": 0.0}),
        (3.5, 1.0, "n", "n-1", "4'", {}),
        (2.0, 1.0, "n", "n-1", "5", {"diff": -0.5}),
    ]
    ok = True
    details = []
    for alpha, beta, xn, yn, want_case, checks in configs:
        ex = asy.ShiftExample(alpha=alpha, beta=beta)
        fam = ex.family(asy.sequence_from_expr(xn), asy.sequence_from_expr(yn))
        rep = asy.classify_appendix_case(fam, ladder)
        good = rep.case == want_case and rep.overall == asy.PASS
        a16 = complex(fam.a_seq(n16)[0])
        b16 = complex(fam.b_seq(n16)[0])
        for key, target in checks.items():
            value = {"a": a16, "b": b16, "diff": a16 - b16}[key]
            if target == 0.0:
                good &= abs(value) <= 1e-3
            else:
                good &= abs(value - target) <= 1e-3 * abs(target)
        details.append(f"{want_case}:{'ok' if good else 'BAD'}")
        ok &= good
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 5.0
    verdict(
        "criterion-10 six worked pair-family configurations classified",
        ok,
        f"{' '.join(details)}, {elapsed:.2f}s",
    )


# -- criterion 11 -----------------------------------------------------------


def test_criterion_11_backward_shift_matrix_and_isometry():
    T, v = asy.shift_operator_matrix(asy.ShiftExample(1.0, 1.0), 8)
    ok = T[0, 1] == 1.0
    for alpha in (0.5, 1.0, 2.0):
        for beta in (0.0, 0.5, 1.0, 2.0):
            _, vv = asy.shift_operator_matrix(asy.ShiftExample(alpha, beta), 16)
            ok &= vv["compact"] == (beta > 0)
    psi_err = asy.shift_psi_column_check(asy.ShiftExample(1.0, 1.0), 64)
    ok &= psi_err <= 1e-9
    # independent route on a small truncation: the image of the normalized
    # single-point element has free-space norm equal to the matrix column norm
    ex = asy.ShiftExample(1.0, 1.0)
    op = ex.weighted_map(16)
    worst = 0.0
    for n in (2, 5, 11, 16):
        mu = apply(op, (1.0 / op.domain.d0(n)) * delta(op.domain, n))
        column = float(ex.shift_weight(np.asarray(float(n))))
        worst = max(worst, abs(real_norm_lp(mu) - column))
    ok &= worst <= 1e-9
    verdict(
        "criterion-11 backward shift: exact entry, compactness grid, column isometry",
        ok,
        f"psi err {psi_err:.2e}, lp gap {worst:.2e}",
    )


# -- criterion 12 -----------------------------------------------------------


def test_criterion_12_lifted_problems_match_function_space_oracle():
    weights = (0.0, 1.0, -1.0, 2.0, -2.0)
    worst = 0.0
    sigma_err = 0.0
    count = 0
    for n_dom, n_cod in itertools.product((2, 3), repeat=2):
        dom = _template_space(n_dom, 0)
        cod = _template_space(n_cod, 1)
        for f in itertools.product(range(n_cod), repeat=n_dom):
            for w in itertools.product(weights, repeat=n_dom):
                prob = LipProblem(domain=dom, codomain=cod, f=f, w=w)
                lifted = to_lip0(prob)
                got = operator_norm(lifted).hi
                want = lip_operator_norm_vertices(prob)
                worst = max(worst, abs(got - want))
                base = lifted.domain.base
                for x in lifted.domain.non_base_indices():
                    st = pair_stats(lifted, x, base)
                    sigma_err = max(sigma_err, abs(st.sigma - abs(lifted.w[x])))
                count += 1
    ok = worst <= 1e-9 and sigma_err <= 1e-12
    verdict(
        "criterion-12 lifted problems: vertex oracle match and base-pair identity",
        ok,
        f"{count} instances, max norm gap {worst:.2e}, identity err {sigma_err:.2e}",
    )


# -- criterion 13 -----------------------------------------------------------


def test_criterion_13_sufficiency_only_discipline():
    from lipfree.cli import jsonable

    two_point = PointedMetricSpace(
        points=("0", "1"), base=0, dist=np.array([[0.0, 1.0], [1.0, 0.0]])
    )
    fam = asy.PhiFamily(
        codomain=two_point,
        f=lambda x: 1,
        w=lambda x: x,
        d_dom=lambda x, y: np.abs(np.asarray(x) - np.asarray(y)),
        sample=lambda m, rng: rng.uniform(1, 40, m),
        close_pairs=lambda d, m, rng: (
            (lambda xs: (xs, xs + rng.uniform(0, d, m)))(rng.uniform(1, 40, m))
        ),
    )
    rep = asy.check_phi_sufficient(fam)
    report_text = str(jsonable(rep))
    final = rep.entries[-1]["verdict"]
    ok = final == "sufficient condition not met" and "not compact" not in report_text
    # the same operator is nonetheless compact: its truncations are rank one
    rank_ok = True
    for m in (8, 32, 128):
        xs = np.linspace(1.0, 40.0, m)
        pts = ("0",) + tuple(f"x{i}" for i in range(m))
        coords = np.concatenate([[0.0], xs])
        dom = PointedMetricSpace(
            points=pts, base=0, dist=np.abs(coords[:, None] - coords[None, :])
        )
        op = WeightedMap(
            domain=dom,
            codomain=two_point,
            f=(0,) + (1,) * m,
            w=(0.0,) + tuple(xs),
        )
        rank_ok &= np.linalg.matrix_rank(composition_matrix(op)) == 1
        rank_ok &= math.isfinite(operator_norm(op).hi)
    ok &= rank_ok
    verdict(
        "criterion-13 sufficient-only checker never claims non-compactness",
        ok,
        f"verdict {final!r}, truncations rank one {rank_ok}",
    )
