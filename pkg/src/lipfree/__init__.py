"""Norms in Lipschitz free spaces over finite pointed metric spaces and
criteria (boundedness, norm, injectivity, surjectivity, compactness on
parametrized families) for weighted Lipschitz / weighted composition
operators."""

from .asymptotics import (
    CaseReport,
    ClassificationRefused,
    CriterionReport,
    LimitVerdict,
    PairSequenceFamily,
    ShiftExample,
    check_caraccompact,
    check_phi_sufficient,
    check_udb,
    check_w1_compact,
    classify_appendix_case,
    detect_limit,
    family_from_json,
    shift_operator_matrix,
)
from .free_element import (
    FreeElement,
    Molecule,
    NormBracket,
    delta,
    two_point_norm_complex_bracket,
    two_point_norm_real,
)
from .lip_adapter import (
    LipBoundednessReport,
    LipProblem,
    lip0_extends_to_lip,
    lip_boundedness_report,
    to_lip0,
)
from .metric_space import (
    PointedMetricSpace,
    PointRef,
    ValidationReport,
    adjoin_basepoint,
    truncate_diameter,
    validate,
)
from .norm_oracle import (
    complex_norm_bracket,
    norm_bracket,
    real_norm_flow,
    real_norm_lp,
)
from .simplex import BACKEND
from .weighted_operator import (
    BoundednessReport,
    PairStats,
    SurjectivityReport,
    WeightedMap,
    apply,
    boundedness_report,
    composition_matrix,
    is_injective_criterion,
    is_surjective_criterion,
    operator_norm,
    pair_stats,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundednessReport",
    "CaseReport",
    "ClassificationRefused",
    "CriterionReport",
    "FreeElement",
    "LimitVerdict",
    "LipBoundednessReport",
    "LipProblem",
    "Molecule",
    "NormBracket",
    "PairSequenceFamily",
    "PairStats",
    "PointRef",
    "PointedMetricSpace",
    "ShiftExample",
    "SurjectivityReport",
    "ValidationReport",
    "WeightedMap",
    "adjoin_basepoint",
    "apply",
    "boundedness_report",
    "check_caraccompact",
    "check_phi_sufficient",
    "check_udb",
    "check_w1_compact",
    "classify_appendix_case",
    "complex_norm_bracket",
    "composition_matrix",
    "delta",
    "detect_limit",
    "family_from_json",
    "is_injective_criterion",
    "is_surjective_criterion",
    "lip0_extends_to_lip",
    "lip_boundedness_report",
    "norm_bracket",
    "operator_norm",
    "pair_stats",
    "real_norm_flow",
    "real_norm_lp",
    "shift_operator_matrix",
    "to_lip0",
    "truncate_diameter",
    "two_point_norm_complex_bracket",
    "two_point_norm_real",
    "validate",
]
