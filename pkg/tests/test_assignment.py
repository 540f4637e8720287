import itertools
import random

import numpy as np
import pytest

from kgprobe.ged import _lsap_py
from kgprobe.ged.assignment import AssignmentProblem, BACKEND, solve_assignment

try:
    from kgprobe.ged import _lsap_cy
except ImportError:
    _lsap_cy = None


def brute_force_minimum(matrix: np.ndarray) -> float:
    n = matrix.shape[0]
    best = np.inf
    for perm in itertools.permutations(range(n)):
        best = min(best, sum(matrix[i, perm[i]] for i in range(n)))
    return float(best)


def test_dominant_diagonal():
    assignment, cost = solve_assignment(np.array([[1.0, 2.0], [2.0, 1.0]]))
    assert assignment == (0, 1)
    assert cost == 2.0


def test_single_cell():
    assignment, cost = solve_assignment(np.array([[0.0]]))
    assert assignment == (0,)
    assert cost == 0.0


def test_empty_matrix():
    assignment, cost = solve_assignment(np.zeros((0, 0)))
    assert assignment == () and cost == 0.0


def test_non_square_rejected():
    with pytest.raises(ValueError, match="square"):
        solve_assignment(np.zeros((2, 3)))


def test_nan_rejected():
    with pytest.raises(ValueError, match="NaN"):
        AssignmentProblem(np.array([[np.nan]]))


def test_matches_brute_force_on_random_matrices():
    rng = np.random.default_rng(11)
    for _ in range(120):
        n = int(rng.integers(1, 7))
        matrix = np.round(rng.uniform(0, 10, (n, n)), 3)
        _, cost = solve_assignment(matrix)
        assert cost == pytest.approx(brute_force_minimum(matrix), abs=1e-9)


def test_matches_brute_force_with_negatives():
    rng = np.random.default_rng(7)
    for _ in range(60):
        n = int(rng.integers(2, 6))
        matrix = np.round(rng.uniform(-5, 5, (n, n)), 3)
        _, cost = solve_assignment(matrix)
        assert cost == pytest.approx(brute_force_minimum(matrix), abs=1e-9)


def test_matches_scipy():
    scipy_optimize = pytest.importorskip("scipy.optimize")
    rng = np.random.default_rng(3)
    for _ in range(60):
        n = int(rng.integers(1, 30))
        matrix = rng.uniform(0, 100, (n, n))
        _, cost = solve_assignment(matrix)
        rows, cols = scipy_optimize.linear_sum_assignment(matrix)
        assert cost == pytest.approx(float(matrix[rows, cols].sum()), rel=1e-12)


def test_forbidden_entries_avoided():
    matrix = np.array([[np.inf, 1.0], [1.0, np.inf]])
    assignment, cost = solve_assignment(matrix)
    assert assignment == (1, 0)
    assert cost == 2.0


def test_infeasible_raises():
    matrix = np.array([[np.inf, np.inf], [1.0, 1.0]])
    with pytest.raises(ValueError, match="no finite-cost"):
        solve_assignment(matrix)


def test_forbidden_with_negative_entries():
    # the sentinel must not look attractive next to negative costs
    matrix = np.array([
        [-5.0, np.inf, -5.0],
        [np.inf, -5.0, -5.0],
        [-5.0, -5.0, np.inf],
    ])
    assignment, cost = solve_assignment(matrix)
    assert cost == -15.0
    assert all(np.isfinite(matrix[i, j]) for i, j in enumerate(assignment))


@pytest.mark.skipif(_lsap_cy is None, reason="compiled kernel not built")
def test_backends_identical():
    rng = np.random.default_rng(23)
    for _ in range(80):
        n = int(rng.integers(1, 25))
        matrix = np.ascontiguousarray(rng.uniform(0, 10, (n, n)))
        cols_py, total_py = _lsap_py.solve(matrix)
        cols_cy, total_cy = _lsap_cy.solve(matrix)
        assert list(cols_py) == list(cols_cy)
        assert total_py == pytest.approx(total_cy, rel=1e-12)


def test_backend_reported():
    assert BACKEND in ("compiled", "pure-python", "pure-python (forced)")


def test_duplicate_minima_still_optimal():
    # many ties: all-equal matrix
    matrix = np.ones((5, 5))
    assignment, cost = solve_assignment(matrix)
    assert sorted(assignment) == [0, 1, 2, 3, 4]
    assert cost == 5.0


def test_permutation_matrix_recovered():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(2, 8)
        perm = list(range(n))
        rng.shuffle(perm)
        matrix = np.full((n, n), 9.0)
        for i, j in enumerate(perm):
            matrix[i, j] = 0.0
        assignment, cost = solve_assignment(matrix)
        assert list(assignment) == perm
        assert cost == 0.0
