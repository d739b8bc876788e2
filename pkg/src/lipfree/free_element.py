"""Finitely supported elements of the free space over a pointed metric space.

An element is a formal combination sum_i a_i delta(x_i) with complex
coefficients, stored in canonical form: no zero coefficients and no term at
the base point (delta(base) = 0, so base terms are dropped silently on
construction).  The zero-coefficient threshold is exact 0; callers round
explicitly if they want rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .metric_space import PointedMetricSpace

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class FreeElement:
    space: PointedMetricSpace
    terms: Mapping[int, complex]

    def __post_init__(self) -> None:
        canon: dict[int, complex] = {}
        for idx, coeff in self.terms.items():
            idx = int(idx)
            if not (0 <= idx < len(self.space)):
                raise ValueError(f"point index {idx} out of range")
            if idx == self.space.base:
                continue
            z = complex(coeff)
            if z != 0:
                canon[idx] = canon.get(idx, 0) + z
        canon = {i: z for i, z in canon.items() if z != 0}
        object.__setattr__(self, "terms", MappingProxyType(dict(sorted(canon.items()))))

    # -- algebra ----------------------------------------------------------

    def _require_same_space(self, other: "FreeElement") -> None:
        if self.space != other.space:
            raise ValueError("elements live over different spaces")

    def __add__(self, other: "FreeElement") -> "FreeElement":
        self._require_same_space(other)
        merged = dict(self.terms)
        for i, z in other.terms.items():
            merged[i] = merged.get(i, 0) + z
        return FreeElement(self.space, merged)

    def __sub__(self, other: "FreeElement") -> "FreeElement":
        return self + (-1) * other

    def __rmul__(self, scalar: complex) -> "FreeElement":
        z = complex(scalar)
        return FreeElement(self.space, {i: z * a for i, a in self.terms.items()})

    __mul__ = __rmul__

    def __neg__(self) -> "FreeElement":
        return (-1) * self

    def conjugate(self) -> "FreeElement":
        return FreeElement(self.space, {i: a.conjugate() for i, a in self.terms.items()})

    def real_part(self) -> "FreeElement":
        return FreeElement(self.space, {i: complex(a.real) for i, a in self.terms.items()})

    def imag_part(self) -> "FreeElement":
        return FreeElement(self.space, {i: complex(a.imag) for i, a in self.terms.items()})

    def support(self) -> frozenset[int]:
        """Point indices carrying a nonzero coefficient."""
        return frozenset(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_real(self) -> bool:
        return all(a.imag == 0 for a in self.terms.values())

    def coefficient(self, idx: int) -> complex:
        return self.terms.get(idx, 0j)

    # -- JSON -------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "terms": {
                self.space.points[i]: [a.real, a.imag] for i, a in self.terms.items()
            }
        }

    @classmethod
    def from_json(cls, space: PointedMetricSpace, obj: dict) -> "FreeElement":
        terms = {}
        for name, (re, im) in obj["terms"].items():
            terms[space.index(name)] = complex(re, im)
        return cls(space, terms)


def delta(space: PointedMetricSpace, idx: int) -> FreeElement:
    """The evaluation element of a single point (zero for the base point)."""
    return FreeElement(space, {idx: 1.0})


@dataclass(frozen=True)
class Molecule:
    """(delta(x) - delta(y)) / d(x, y); always of norm at most 1."""

    space: PointedMetricSpace
    x: int
    y: int

    def __post_init__(self) -> None:
        if self.x == self.y:
            raise ValueError("a molecule needs two distinct points")

    def element(self) -> FreeElement:
        d = self.space.d(self.x, self.y)
        return FreeElement(self.space, {self.x: 1.0 / d, self.y: -1.0 / d})


@dataclass(frozen=True)
class NormBracket:
    """Certified interval [lo, hi] around a norm value."""

    lo: float
    hi: float
    method: str = ""

    def __post_init__(self) -> None:
        if self.lo > self.hi + 1e-12:
            raise ValueError(f"empty bracket [{self.lo}, {self.hi}]")

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, value: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= value <= self.hi + tol


def two_point_norm_real(
    space: PointedMetricSpace, a: float, b: float, x: int, y: int
) -> float:
    """Exact norm of a*delta(x) + b*delta(y) for real coefficients.

    Closed form: the maximum of three affine expressions in the distances
    d(x,0), d(y,0), d(x,y).  Requires x != y and both distinct from the
    base point; callers merge coincident terms first.
    """
    if x == y:
        raise ValueError("x and y must be distinct (merge terms first)")
    base = space.base
    if x == base or y == base:
        raise ValueError("two-point formula needs points distinct from the base")
    dx0 = space.d0(x)
    dy0 = space.d0(y)
    dxy = space.d(x, y)
    return max(
        abs(a * dx0 + b * dy0),
        abs(a * dx0 + b * (dx0 - dxy)),
        abs(b * dy0 + a * (dy0 - dxy)),
    )


def two_point_norm_complex_bracket(
    space: PointedMetricSpace, l1: complex, l2: complex, x: int, y: int
) -> NormBracket:
    """Bracket [M/sqrt(2), sqrt(2)*M] around the complex two-point norm.

    M is hypot(r, s) where r and s are the exact real two-point norms of the
    real and imaginary parts of the coefficients.  The bracket follows from
    max(r, s) <= norm <= r + s together with the l1/l2/l-inf comparisons in
    the plane.  Note the three-term maximum taken directly with complex
    moduli does NOT bracket the norm within sqrt(2): splitting into real and
    imaginary parts first is essential (counterexamples reach ratio > 1.68).
    """
    r = two_point_norm_real(space, l1.real, l2.real, x, y)
    s = two_point_norm_real(space, l1.imag, l2.imag, x, y)
    m = math.hypot(r, s)
    return NormBracket(lo=m / SQRT2, hi=m * SQRT2, method="two-point-sandwich")
