# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled linear sum assignment kernel.

Same shortest-augmenting-path algorithm and column selection rule as the
pure-Python backend in _lsap_py; the two must return identical
assignments on identical input.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, isfinite

cnp.import_array()


def solve(double[:, ::1] cost):
    """Minimum-cost perfect assignment of a square finite matrix.

    Returns (col4row, total): col4row[i] is the column assigned to row i.
    """
    cdef Py_ssize_t n = cost.shape[0]
    if cost.shape[1] != n:
        raise ValueError("cost matrix must be square")

    col4row_arr = np.full(n, -1, dtype=np.intp)
    row4col_arr = np.full(n, -1, dtype=np.intp)
    u_arr = np.zeros(n, dtype=np.float64)
    v_arr = np.zeros(n, dtype=np.float64)
    shortest_arr = np.empty(n, dtype=np.float64)
    path_arr = np.empty(n, dtype=np.intp)
    done_rows_arr = np.empty(n, dtype=np.uint8)
    done_cols_arr = np.empty(n, dtype=np.uint8)

    cdef Py_ssize_t[::1] col4row = col4row_arr
    cdef Py_ssize_t[::1] row4col = row4col_arr
    cdef double[::1] u = u_arr
    cdef double[::1] v = v_arr
    cdef double[::1] shortest = shortest_arr
    cdef Py_ssize_t[::1] path = path_arr
    cdef cnp.uint8_t[::1] done_rows = done_rows_arr
    cdef cnp.uint8_t[::1] done_cols = done_cols_arr

    cdef Py_ssize_t cur_row, i, j, sink, j_best, tmp
    cdef double lowest, reduced, minimum, total
    cdef bint best_unassigned

    for cur_row in range(n):
        for j in range(n):
            shortest[j] = INFINITY
            path[j] = -1
            done_rows[j] = 0
            done_cols[j] = 0
        i = cur_row
        lowest = 0.0
        sink = -1
        while sink == -1:
            done_rows[i] = 1
            minimum = INFINITY
            j_best = -1
            best_unassigned = False
            for j in range(n):
                if done_cols[j]:
                    continue
                reduced = lowest + cost[i, j] - u[i] - v[j]
                if reduced < shortest[j]:
                    shortest[j] = reduced
                    path[j] = i
                if shortest[j] < minimum:
                    minimum = shortest[j]
                    j_best = j
                    best_unassigned = row4col[j] == -1
                elif shortest[j] == minimum and not best_unassigned and row4col[j] == -1:
                    j_best = j
                    best_unassigned = True
            if j_best == -1 or not isfinite(minimum):
                raise ValueError("no augmenting path: assignment infeasible")
            j = j_best
            lowest = minimum
            done_cols[j] = 1
            if row4col[j] == -1:
                sink = j
            else:
                i = row4col[j]

        u[cur_row] += lowest
        for i in range(n):
            if done_rows[i] and i != cur_row:
                u[i] += lowest - shortest[col4row[i]]
        for j in range(n):
            if done_cols[j]:
                v[j] -= lowest - shortest[j]

        j = sink
        while True:
            i = path[j]
            row4col[j] = i
            tmp = col4row[i]
            col4row[i] = j
            j = tmp
            if i == cur_row:
                break

    total = 0.0
    for i in range(n):
        total += cost[i, col4row[i]]
    return col4row_arr, total
