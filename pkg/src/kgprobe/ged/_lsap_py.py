"""Pure-Python linear sum assignment solver (fallback backend).

Shortest-augmenting-path algorithm with dual potentials, O(n^3). The
compiled backend implements the same algorithm with the same column
selection rule (ties at the minimum reduced cost prefer the first
unassigned column, then the first column), so the two backends return
identical assignments, not merely equal totals.

The matrix must be finite; infinity handling lives in the caller.
"""

from __future__ import annotations

import numpy as np


def solve(cost: np.ndarray) -> tuple[np.ndarray, float]:
    """Minimum-cost perfect assignment of a square finite matrix.

    Returns (col4row, total): col4row[i] is the column assigned to row i.
    """
    n = cost.shape[0]
    col4row = np.full(n, -1, dtype=np.intp)
    row4col = np.full(n, -1, dtype=np.intp)
    u = np.zeros(n)
    v = np.zeros(n)

    for cur_row in range(n):
        shortest = np.full(n, np.inf)
        path = np.full(n, -1, dtype=np.intp)
        done_rows = np.zeros(n, dtype=bool)
        done_cols = np.zeros(n, dtype=bool)
        i = cur_row
        lowest = 0.0
        sink = -1
        while sink == -1:
            done_rows[i] = True
            open_cols = np.flatnonzero(~done_cols)
            reduced = lowest + cost[i, open_cols] - u[i] - v[open_cols]
            improved = reduced < shortest[open_cols]
            shortest[open_cols[improved]] = reduced[improved]
            path[open_cols[improved]] = i

            dist = shortest[open_cols]
            minimum = dist.min()
            if not np.isfinite(minimum):
                raise ValueError("no augmenting path: assignment infeasible")
            ties = open_cols[dist == minimum]
            unassigned = ties[row4col[ties] == -1]
            j = int(unassigned[0]) if unassigned.size else int(ties[0])
            lowest = minimum
            done_cols[j] = True
            if row4col[j] == -1:
                sink = j
            else:
                i = int(row4col[j])

        u[cur_row] += lowest
        other_rows = np.flatnonzero(done_rows)
        other_rows = other_rows[other_rows != cur_row]
        u[other_rows] += lowest - shortest[col4row[other_rows]]
        scanned_cols = np.flatnonzero(done_cols)
        v[scanned_cols] -= lowest - shortest[scanned_cols]

        j = sink
        while True:
            i = int(path[j])
            row4col[j] = i
            col4row[i], j = j, col4row[i]
            if i == cur_row:
                break

    total = float(cost[np.arange(n), col4row].sum())
    return col4row, total
