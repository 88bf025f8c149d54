from __future__ import annotations

from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from dfact.exactnum import (
    binomial,
    double_factorial,
    falling_factorial,
    rising_double_factorial,
    second_order_eulerian,
    stirling_cycle,
)


def test_double_factorial_conventions():
    assert double_factorial(-1) == 1
    assert double_factorial(-3) == -1
    assert double_factorial(0) == 1
    assert [double_factorial(2 * n - 1) for n in range(7)] == [1, 1, 3, 15, 105, 945, 10395]
    assert double_factorial(8) == 384


def test_binomial_minus_one_convention():
    assert binomial(-1, -1) == 0
    assert binomial(-1, -1, minus_one_convention=True) == 1
    assert binomial(5, 7) == 0


@given(st.integers(0, 30), st.integers(0, 30))
def test_binomial_matches_math_comb(n, k):
    assert binomial(n, k) == comb(n, k)


@given(st.integers(0, 15))
def test_double_factorial_splits_factorial(n):
    assert double_factorial(2 * n) * double_factorial(2 * n - 1) == factorial(2 * n)


def test_falling_and_rising():
    assert falling_factorial(5, 2) == 20
    assert falling_factorial(5, 0) == 1
    assert rising_double_factorial(3, 2) == 15


def test_stirling_cycle_rows_sum_to_factorial():
    for n in range(8):
        assert sum(stirling_cycle(n, k) for k in range(n + 1)) == factorial(n)
    assert stirling_cycle(4, 2) == 11


def test_second_order_eulerian_rows():
    assert [second_order_eulerian(3, k) for k in range(1, 4)] == [1, 8, 6]
    for n in range(1, 9):
        assert sum(second_order_eulerian(n, k) for k in range(1, n + 1)) == double_factorial(2 * n - 1)


def test_double_factorial_rejects_below_minus_three():
    with pytest.raises(ValueError):
        double_factorial(-5)
