"""Command-line front end: JSON problems in, machine-readable reports out.

Reports are deterministic: sorted keys, floats rendered with 12 significant
digits, and every numeric field tagged with the id of the criterion that
produced it.  ``--pretty`` only changes whitespace.  Exit code 0 covers all
computed verdicts (including failing ones — they are results); exit code 2
signals input errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Any

import numpy as np

from . import asymptotics, lip_adapter, weighted_operator
from .free_element import FreeElement
from .metric_space import PointedMetricSpace, validate
from .norm_oracle import norm_bracket, real_norm_lp
from .weighted_operator import WeightedMap

EXIT_OK = 0
EXIT_INPUT_ERROR = 2


class InputError(ValueError):
    """Malformed or schema-violating input."""


# ---------------------------------------------------------------------------
# deterministic JSON rendering
# ---------------------------------------------------------------------------


def _round12(x: float) -> float:
    if x != x or x in (float("inf"), float("-inf")):
        return x
    return float(format(x, ".12g"))


def jsonable(obj: Any) -> Any:
    """Recursively convert report objects to JSON-serializable data with
    12-significant-digit floats."""
    if obj is None or isinstance(obj, (bool, str, int)):
        return obj
    if isinstance(obj, float):
        return _round12(obj)
    if isinstance(obj, complex):
        if obj.imag == 0:
            return _round12(obj.real)
        return [_round12(obj.real), _round12(obj.imag)]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return _round12(float(obj))
    if isinstance(obj, np.complexfloating):
        return jsonable(complex(obj))
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        seq = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(v) for v in seq]
    if isinstance(obj, asymptotics.LimitVerdict):
        return {
            "tag": obj.tag,
            "value": jsonable(obj.value),
            "evidence": [[int(n), jsonable(v)] for n, v in obj.evidence],
        }
    if dataclasses.is_dataclass(obj):
        return {
            f.name: jsonable(getattr(obj, f.name))
            for f in dataclasses.fields(obj)
            if f.name not in ("space", "domain", "codomain", "free_report")
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def emit(report: dict, pretty: bool) -> None:
    text = json.dumps(
        jsonable(report),
        sort_keys=True,
        indent=2 if pretty else None,
        separators=None if pretty else (",", ":"),
        allow_nan=True,
    )
    sys.stdout.write(text + "\n")


# ---------------------------------------------------------------------------
# input loading
# ---------------------------------------------------------------------------


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _space_from(obj: dict) -> PointedMetricSpace:
    try:
        space = PointedMetricSpace.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad space: {exc}") from exc
    report = validate(space)
    if not report.ok:
        raise InputError(f"metric violations: {report}")
    return space


def _operator_from(obj: dict) -> WeightedMap:
    try:
        op = WeightedMap.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad operator: {exc}") from exc
    for name, space in (("domain", op.domain), ("codomain", op.codomain)):
        report = validate(space)
        if not report.ok:
            raise InputError(f"metric violations in {name}: {report}")
    return op


def _lip_problem_from(obj: dict) -> lip_adapter.LipProblem:
    op = _operator_from(obj)
    return lip_adapter.LipProblem(
        domain=op.domain, codomain=op.codomain, f=op.f, w=op.w
    )


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------


def cmd_validate(args) -> dict:
    obj = _load_json(args.input)
    try:
        space = PointedMetricSpace.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad space: {exc}") from exc
    report = validate(space)
    return {
        "verb": "validate",
        "ok": report.ok,
        "violations": [
            {"kind": kind, "witness": list(witness)}
            for kind, witness in report.violations
        ],
        "criteria": {"ok": "MetricAxioms"},
    }


def cmd_norm(args) -> dict:
    obj = _load_json(args.input)
    try:
        space = _space_from(obj["space"])
        gamma = FreeElement.from_json(space, obj["element"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad element problem: {exc}") from exc
    br = norm_bracket(gamma, k=args.k)
    report: dict = {"verb": "norm", "method": br.method}
    if br.is_exact:
        report["norm"] = br.hi
        report["criteria"] = {"norm": "KR-duality"}
    else:
        report["norm_lo"] = br.lo
        report["norm_hi"] = br.hi
        report["criteria"] = {"norm_lo": "RemarkValueRC", "norm_hi": "RemarkValueRC"}
    return report


def cmd_opnorm(args) -> dict:
    obj = _load_json(args.input)
    if args.lip:
        prob = _lip_problem_from(obj)
        op = lip_adapter.to_lip0(prob)
    else:
        op = _operator_from(obj)
    br = weighted_operator.operator_norm(op, k=args.k, jobs=args.jobs)
    rep = weighted_operator.boundedness_report(op)
    report = {
        "verb": "opnorm",
        "lifted": bool(args.lip),
        "method": br.method,
        "norm_lo": br.lo,
        "norm_hi": br.hi,
        "pair_bound_lo": rep.norm_lo,
        "pair_bound_hi": rep.norm_hi,
        "criteria": {
            "norm_lo": "Poids-v",
            "norm_hi": "Poids-v",
            "pair_bound_lo": "Poids-v",
            "pair_bound_hi": "Poids-v",
        },
    }
    if br.is_exact:
        report["norm"] = br.hi
        report["criteria"]["norm"] = "Poids-v"
    return report


def cmd_bounded(args) -> dict:
    obj = _load_json(args.input)
    if args.lip:
        prob = _lip_problem_from(obj)
        rep = lip_adapter.lip_boundedness_report(prob)
        inner = dataclasses.asdict(rep.free_report)
        report = {
            "verb": "bounded",
            "lifted": True,
            "w_sup": rep.w_sup,
            "w_lip": rep.w_lip,
            "n1_max": rep.n1_max,
            "norm_lo": rep.norm_lo,
            "norm_hi": rep.norm_hi,
            "norm_exact": rep.norm_exact,
            "sigma_base_identity_err": rep.sigma_base_identity_err,
            "lifted_report": inner,
            "criteria": {
                "w_sup": "CNSLip-i",
                "w_lip": "CNSLip-ii",
                "n1_max": "CNSLip-iii",
                "norm_lo": "Poids-v",
                "norm_hi": "Poids-v",
                "norm_exact": "Poids-v",
                "sigma_base_identity_err": "Lip0toLip",
            },
        }
        return report
    op = _operator_from(obj)
    rep = weighted_operator.boundedness_report(op)
    report = dataclasses.asdict(rep)
    report.update(
        {
            "verb": "bounded",
            "lifted": False,
            "criteria": {
                "a_max": "Poids-i",
                "b_max": "Poids-i",
                "sigma_max": "Poids-ii",
                "tau_max": "Poids-ii",
                "n1_max": "Poids-iii",
                "n2_max": "Poids-iii",
                "norm_lo": "Poids-v",
                "norm_hi": "Poids-v",
                "norm_exact": "Poids-v",
            },
        }
    )
    return report


def cmd_inject(args) -> dict:
    op = _operator_from(_load_json(args.input))
    return {
        "verb": "inject",
        "injective": weighted_operator.is_injective_criterion(op),
        "criteria": {"injective": "injectivity"},
    }


def cmd_surject(args) -> dict:
    op = _operator_from(_load_json(args.input))
    rep = weighted_operator.is_surjective_criterion(op)
    report = dataclasses.asdict(rep)
    report.update(
        {
            "verb": "surject",
            "criteria": {
                "w_nonvanishing": "surjectivity-i",
                "f_injective": "surjectivity-ii",
                "f_avoids_base": "surjectivity-ii",
                "sup_inverse_a": "surjectivity-iii",
                "sup_inverse_b": "surjectivity-iii",
                "surjective": "surjectivity",
            },
        }
    )
    return report


def _ladder(args) -> tuple[int, ...]:
    return tuple(int(2**k) for k in range(4, args.ladder_depth + 1))


def cmd_compact_family(args) -> dict:
    obj = _load_json(args.input)
    try:
        fam = asymptotics.family_from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad family: {exc}") from exc
    ladder = _ladder(args)
    report: dict = {"verb": "compact-family", "family": fam.label, "heuristic": True}
    if "regime" in obj:
        crit = asymptotics.check_caraccompact(
            [asymptotics.RegimeFamily(family=fam, regime=obj["regime"])], ladder
        )
        report.update(
            {
                "criterion": crit.criterion,
                "entries": list(crit.entries),
                "overall": crit.overall,
                "criteria": {"overall": "CaracCompact"},
            }
        )
        return report
    try:
        case = asymptotics.classify_appendix_case(fam, ladder)
    except asymptotics.ClassificationRefused as exc:
        report.update({"classification": "refused", "reason": str(exc)})
        report["criteria"] = {"classification": "CaracCompactgeneral"}
        return report
    case_id = f"Appendix-case-{case.case}"
    report.update(
        {
            "case": case.case,
            "a": case.a_verdict,
            "b": case.b_verdict,
            "a_minus_b": case.diff_verdict,
            "conditions": case.conditions,
            "overall": case.overall,
            "criteria": {
                "case": case_id,
                "overall": case_id,
                "a": case_id,
                "b": case_id,
                "a_minus_b": case_id,
            },
        }
    )
    return report


def cmd_shift_demo(args) -> dict:
    try:
        ex = asymptotics.ShiftExample(alpha=args.alpha, beta=args.beta)
        T, verdict = asymptotics.shift_operator_matrix(ex, args.nmax)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    psi_err = asymptotics.shift_psi_column_check(ex, min(args.nmax, 64))
    return {
        "verb": "shift-demo",
        "alpha": args.alpha,
        "beta": args.beta,
        "nmax": args.nmax,
        "entry_n2": float(T[0, 1]),
        "column_weights": verdict["column_weights"],
        "verdict": "compact" if verdict["compact"] else "not compact",
        "tail_sup": verdict["tail_sup"],
        "truncation_errors": verdict["truncation_errors"],
        "psi_column_max_err": psi_err,
        "criteria": {
            "entry_n2": "Appendix-example",
            "column_weights": "Appendix-example",
            "verdict": "Appendix-example",
            "tail_sup": "Appendix-example",
            "truncation_errors": "Appendix-example",
            "psi_column_max_err": "Appendix-example",
        },
    }


def cmd_lip_bounded(args) -> dict:
    prob = _lip_problem_from(_load_json(args.input))
    rep = lip_adapter.lip_boundedness_report(prob)
    return {
        "verb": "lip-bounded",
        "w_sup": rep.w_sup,
        "w_lip": rep.w_lip,
        "n1_max": rep.n1_max,
        "norm_lo": rep.norm_lo,
        "norm_hi": rep.norm_hi,
        "norm_exact": rep.norm_exact,
        "is_real": rep.is_real,
        "sigma_base_identity_err": rep.sigma_base_identity_err,
        "criteria": {
            "w_sup": "CNSLip-i",
            "w_lip": "CNSLip-ii",
            "n1_max": "CNSLip-iii",
            "norm_lo": "Lip0toLip",
            "norm_hi": "Lip0toLip",
            "norm_exact": "Lip0toLip",
            "sigma_base_identity_err": "Lip0toLip",
        },
    }


# ---------------------------------------------------------------------------
# dispatcher
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lipfree",
        description="Norms and operator criteria on Lipschitz free spaces",
    )
    parser.add_argument("--pretty", action="store_true", help="indented output")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, help="check metric axioms on a space")
    p.add_argument("input")

    p = add("norm", cmd_norm, help="free-space norm of an element")
    p.add_argument("input")
    p.add_argument("-k", type=int, default=64, help="polygon order for complex norms")

    p = add("opnorm", cmd_opnorm, help="operator norm by molecule enumeration")
    p.add_argument("input")
    p.add_argument("-k", type=int, default=64)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--lip", action="store_true", help="treat input as a bounded-Lipschitz problem")

    p = add("bounded", cmd_bounded, help="pair-statistic boundedness report")
    p.add_argument("input")
    p.add_argument("--lip", action="store_true")

    p = add("inject", cmd_inject, help="injectivity of the composition operator")
    p.add_argument("input")

    p = add("surject", cmd_surject, help="surjectivity of the composition operator")
    p.add_argument("input")

    p = add("compact-family", cmd_compact_family, help="asymptotic case analysis of a pair family")
    p.add_argument("input")
    p.add_argument("--ladder-depth", type=int, default=20, help="top ladder exponent (n up to 2^depth)")

    p = add("shift-demo", cmd_shift_demo, help="weighted backward shift worked example")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--nmax", type=int, default=64)

    p = add("lip-bounded", cmd_lip_bounded, help="boundedness on bounded Lipschitz functions")
    p.add_argument("input")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except InputError as exc:
        emit({"error": str(exc), "verb": args.verb}, pretty=args.pretty)
        return EXIT_INPUT_ERROR
    emit(report, pretty=args.pretty)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
