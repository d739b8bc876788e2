"""Backend selection for the dense simplex kernel.

The compiled Cython kernel is preferred when present; the pure numpy
fallback is functionally identical.  Set ``LIPFREE_PURE_PYTHON=1`` to force
the fallback (used by the benchmark to compare both).
"""

from __future__ import annotations

import os

from . import _simplex_py

SimplexError = _simplex_py.SimplexError
FEAS_TOL = _simplex_py.FEAS_TOL

if os.environ.get("LIPFREE_PURE_PYTHON") == "1":
    _impl = _simplex_py
    BACKEND = "python"
else:
    try:
        from . import _simplex_cy as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _simplex_py
        BACKEND = "python"


def solve_lp_max(A, b, c, max_iter: int = 0):
    """Maximize c.x over {A x <= b, x >= 0} with b >= 0; returns (value, x)."""
    try:
        return _impl.solve_lp_max(A, b, c, max_iter)
    except _impl.SimplexError as exc:  # normalize backend exception type
        raise SimplexError(str(exc)) from None


def backends() -> dict[str, object]:
    """All importable backends, keyed by name (for benchmarks and tests)."""
    found: dict[str, object] = {"python": _simplex_py}
    try:
        from . import _simplex_cy

        found["cython"] = _simplex_cy
    except ImportError:
        pass
    return found
