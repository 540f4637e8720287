"""Linear sum assignment: problem type, backend selection, infinity handling.

The compiled Cython kernel is preferred when it was built; otherwise the
pure-Python implementation of the same algorithm is used. Setting the
environment variable KGPROBE_PURE=1 forces the fallback (the benchmark
uses this to compare the two).

Infinite entries mark forbidden pairings. They are replaced by a finite
sentinel larger than any feasible total before solving; a solution that
still uses one means no finite perfect assignment exists, which is an
error.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

if os.environ.get("KGPROBE_PURE", "") not in ("", "0"):
    from . import _lsap_py as _impl
    BACKEND = "pure-python (forced)"
else:
    try:
        from . import _lsap_cy as _impl   # type: ignore[no-redef]
        BACKEND = "compiled"
    except ImportError:
        from . import _lsap_py as _impl   # type: ignore[no-redef]
        BACKEND = "pure-python"


@dataclass(frozen=True)
class AssignmentProblem:
    """A square cost matrix over the extended reals (np.inf = forbidden)."""

    cost_matrix: np.ndarray

    def __post_init__(self):
        matrix = np.asarray(self.cost_matrix, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"cost matrix must be square, got shape {matrix.shape}")
        if np.isnan(matrix).any():
            raise ValueError("cost matrix contains NaN")
        object.__setattr__(self, "cost_matrix", matrix)

    @property
    def size(self) -> int:
        return self.cost_matrix.shape[0]


def solve_assignment(problem: AssignmentProblem | np.ndarray) -> tuple[tuple[int, ...], float]:
    """Exact minimum-cost perfect assignment.

    Returns (assignment, total) where assignment[i] is the column matched
    to row i. Raises ValueError when every perfect assignment has infinite
    cost.
    """
    if not isinstance(problem, AssignmentProblem):
        problem = AssignmentProblem(np.asarray(problem))
    matrix = problem.cost_matrix
    n = problem.size
    if n == 0:
        return (), 0.0

    finite = np.isfinite(matrix)
    work = np.ascontiguousarray(matrix)
    if not finite.all():
        finite_values = np.abs(matrix[finite])
        scale = float(finite_values.max()) if finite_values.size else 1.0
        # any assignment using a sentinel must cost more than any without
        sentinel = (scale + 1.0) * (2 * n + 1)
        if not np.isfinite(sentinel):
            raise ValueError("finite costs too large to embed forbidden entries")
        work = np.where(finite, matrix, sentinel)
        work = np.ascontiguousarray(work)

    col4row, _ = _impl.solve(work)
    rows = np.arange(n)
    if not finite[rows, col4row].all():
        raise ValueError("no finite-cost perfect assignment exists")
    total = float(matrix[rows, col4row].sum())
    return tuple(int(c) for c in col4row), total
