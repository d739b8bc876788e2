"""Finite pointed metric spaces.

A pointed metric space is a finite point set with a symmetric distance
matrix and a distinguished base point.  Instances are immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

#: absolute tolerance on the triangle inequality during validation
TRIANGLE_TOL = 1e-12


@dataclass(frozen=True)
class PointedMetricSpace:
    """Finite point set, symmetric distance matrix, distinguished base point.

    ``points`` are opaque string identifiers (stable for JSON round trips);
    internally everything is indexed by position.  The distance matrix is
    stored as float64 and frozen after construction.  Construction checks
    shapes only; metric axioms are checked by :func:`validate`, which is
    report-style and never raises.
    """

    points: tuple[str, ...]
    base: int
    dist: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        pts = tuple(str(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        n = len(pts)
        if n == 0:
            raise ValueError("a pointed metric space needs at least the base point")
        if len(set(pts)) != n:
            raise ValueError("duplicate point identifiers")
        if not (0 <= self.base < n):
            raise ValueError(f"base index {self.base} out of range for {n} points")
        d = np.array(self.dist, dtype=np.float64)
        if d.shape != (n, n):
            raise ValueError(f"distance matrix must be {n}x{n}, got {d.shape}")
        d.flags.writeable = False
        object.__setattr__(self, "dist", d)

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointedMetricSpace):
            return NotImplemented
        return (
            self.points == other.points
            and self.base == other.base
            and np.array_equal(self.dist, other.dist)
        )

    def __hash__(self) -> int:
        return hash((self.points, self.base, self.dist.tobytes()))

    def index(self, name: str) -> int:
        return self.points.index(name)

    def d(self, i: int, j: int) -> float:
        return float(self.dist[i, j])

    def d0(self, i: int) -> float:
        """Distance to the base point."""
        return float(self.dist[i, self.base])

    def diameter(self) -> float:
        return float(self.dist.max()) if len(self) > 1 else 0.0

    def non_base_indices(self) -> list[int]:
        return [i for i in range(len(self)) if i != self.base]

    # -- JSON -------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "points": list(self.points),
            "base": self.points[self.base],
            "dist": [[float(x) for x in row] for row in self.dist],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PointedMetricSpace":
        points = tuple(obj["points"])
        base_name = obj["base"]
        if base_name not in points:
            raise ValueError(f"base point {base_name!r} not in point list")
        return cls(points=points, base=points.index(base_name), dist=obj["dist"])


@dataclass(frozen=True)
class PointRef:
    """A point of a specific space, by index."""

    space: PointedMetricSpace
    index: int

    def __post_init__(self) -> None:
        if not (0 <= self.index < len(self.space)):
            raise ValueError(f"point index {self.index} out of range")

    @property
    def name(self) -> str:
        return self.space.points[self.index]


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of metric-axiom validation; lists every violation found."""

    violations: tuple[tuple[str, tuple[int, ...]], ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "; ".join(f"{kind} at {witness}" for kind, witness in self.violations)


def validate(space: PointedMetricSpace) -> ValidationReport:
    """Check metric axioms, reporting every violation with a witness.

    Checks d[i][i] = 0, symmetry, positivity off the diagonal, and the
    triangle inequality (with absolute tolerance ``TRIANGLE_TOL``).
    """
    d = space.dist
    n = len(space)
    violations: list[tuple[str, tuple[int, ...]]] = []
    for i in range(n):
        if d[i, i] != 0.0:
            violations.append(("nonzero-diagonal", (i,)))
    for i in range(n):
        for j in range(i + 1, n):
            if d[i, j] != d[j, i]:
                violations.append(("asymmetry", (i, j)))
            if d[i, j] <= 0.0:
                violations.append(("nonpositive-distance", (i, j)))
            if not math.isfinite(d[i, j]):
                violations.append(("nonfinite-distance", (i, j)))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if d[i, k] > d[i, j] + d[j, k] + TRIANGLE_TOL:
                    violations.append(("triangle", (i, j, k)))
    return ValidationReport(violations=tuple(violations))


def truncate_diameter(space: PointedMetricSpace, cap: float = 2.0) -> PointedMetricSpace:
    """Replace the metric d by min(d, cap).

    Taking the pointwise minimum with a constant preserves the triangle
    inequality, so valid input yields valid output.  ``cap=inf`` is the
    identity.
    """
    if not cap > 0:
        raise ValueError(f"cap must be positive, got {cap}")
    if math.isinf(cap):
        return space
    return PointedMetricSpace(
        points=space.points, base=space.base, dist=np.minimum(space.dist, cap)
    )


def adjoin_basepoint(space: PointedMetricSpace, name: str = "e") -> PointedMetricSpace:
    """Add an extra point at distance 1 from everything and make it the base.

    Requires diameter <= 2, otherwise the unit sphere around the new point
    would break the triangle inequality; callers truncate first.
    """
    if space.diameter() > 2.0 + TRIANGLE_TOL:
        raise ValueError(
            f"diameter {space.diameter()} > 2; truncate before adjoining a base point"
        )
    if name in space.points:
        name = name + "'"
        while name in space.points:
            name += "'"
    n = len(space)
    d = np.ones((n + 1, n + 1))
    d[:n, :n] = space.dist
    d[n, n] = 0.0
    return PointedMetricSpace(points=space.points + (name,), base=n, dist=d)
