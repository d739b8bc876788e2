"""Shared fixtures and random-instance generators for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from lipfree.metric_space import PointedMetricSpace
from lipfree.weighted_operator import WeightedMap


def random_metric_space(
    rng: np.random.Generator,
    n: int,
    low: float = 0.1,
    high: float = 10.0,
    base: int = 0,
) -> PointedMetricSpace:
    """Random symmetric distances repaired to a metric by shortest paths."""
    d = rng.uniform(low, high, size=(n, n))
    d = (d + d.T) / 2
    np.fill_diagonal(d, 0.0)
    for k in range(n):
        d = np.minimum(d, d[:, k, None] + d[None, k, :])
    return PointedMetricSpace(points=tuple(map(str, range(n))), base=base, dist=d)


def random_operator(
    rng: np.random.Generator,
    n_dom: int,
    n_cod: int,
    complex_weights: bool = False,
) -> WeightedMap:
    """Random weighted map with w(base) = 0 (base condition always holds)."""
    dom = random_metric_space(rng, n_dom)
    cod = random_metric_space(rng, n_cod)
    f = tuple(int(v) for v in rng.integers(0, n_cod, size=n_dom))
    if complex_weights:
        w = rng.uniform(-3, 3, size=n_dom) + 1j * rng.uniform(-3, 3, size=n_dom)
    else:
        w = rng.uniform(-3, 3, size=n_dom) + 0j
    w = list(w)
    w[dom.base] = 0j
    return WeightedMap(domain=dom, codomain=cod, f=f, w=tuple(w))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def tiny_space() -> PointedMetricSpace:
    dist = np.array(
        [
            [0.0, 1.5, 2.0, 1.0],
            [1.5, 0.0, 1.0, 2.0],
            [2.0, 1.0, 0.0, 1.5],
            [1.0, 2.0, 1.5, 0.0],
        ]
    )
    return PointedMetricSpace(points=("0", "p", "q", "r"), base=0, dist=dist)
