"""
Tests for exact integer linear algebra.
"""

import numpy as np
import pytest

from frobtwist.snf import invariant_factors, normalize_factors, solve_integer


def check_solution(rows, rhs, x):
    for row, b in zip(rows, rhs):
        assert sum(a * x[j] for j, a in row.items()) == b


@pytest.mark.parametrize(
    "matrix, expected",
    [
        ([[2, 0], [0, 3]], (1, 6)),
        ([[2, 4], [6, 8]], (2, 4)),
        ([[1, 2], [2, 4]], (1,)),
        ([[0, 0], [0, 0]], ()),
        ([[1, 0, 0], [0, 1, 0]], (1, 1)),
        ([[2]], (2,)),
    ],
)
def test_invariant_factors(matrix, expected):
    assert invariant_factors(np.array(matrix)) == expected


def test_invariant_factors_of_empty_matrix():
    assert invariant_factors(np.zeros((0, 3), dtype=np.int64)) == ()


def test_rank_is_number_of_factors():
    assert len(invariant_factors(np.array([[1, 2], [2, 4]]))) == 1
    assert len(invariant_factors(np.eye(4, dtype=np.int64))) == 4


def test_normalize_factors():
    assert normalize_factors([6, 4]) == (2, 12)
    assert normalize_factors([0, -3, 1]) == (1, 3)
    assert normalize_factors([2, 4, 8]) == (2, 4, 8)


def test_solve_unit_system():
    rows = [{0: 1, 1: 1}, {1: 1, 2: -1}]
    rhs = [5, 2]
    x = solve_integer(rows, rhs, 3)
    check_solution(rows, rhs, x)


def test_solve_needs_smith_form():
    rows = [{0: 2, 1: 3}]
    x = solve_integer(rows, [1], 2)
    check_solution(rows, [1], x)


def test_parity_obstruction():
    # rationally solvable, not over the integers
    assert solve_integer([{0: 2}], [3], 1) is None
    assert solve_integer([{0: 2, 1: 2}], [1], 2) is None
    assert solve_integer([{0: 2}], [4], 1) == [2]


def test_inconsistent_system():
    assert solve_integer([{0: 1, 1: 1}, {0: 1, 1: 1}], [1, 2], 2) is None
    assert solve_integer([{}], [1], 1) is None


def test_free_variables_default_to_zero():
    assert solve_integer([], [], 3) == [0, 0, 0]


def test_mismatched_lengths():
    with pytest.raises(ValueError):
        solve_integer([{0: 1}], [], 1)
