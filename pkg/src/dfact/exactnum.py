"""Exact integer sequences used throughout the package.

Everything here returns Python ``int`` values (arbitrary precision), and
rational work elsewhere uses :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import comb, factorial

__all__ = [
    "Fraction",
    "binomial",
    "double_factorial",
    "factorial",
    "falling_factorial",
    "rising_double_factorial",
    "second_order_eulerian",
    "stirling_cycle",
]


@cache
def double_factorial(k: int) -> int:
    """Return k!! = k(k-2)(k-4)...

    Defined for k >= 0 and for the odd values -1 and -3, extended
    backwards through k!! = k (k-2)!!, so (-1)!! = 1 and (-3)!! = -1.
    """
    if k < -3 or (k < 0 and k % 2 == 0):
        raise ValueError(f"double factorial undefined for {k}")
    if k == -3:
        return -1
    if k <= 0:
        return 1
    out = 1
    for f in range(k, 0, -2):
        out *= f
    return out


@cache
def binomial(n: int, k: int, minus_one_convention: bool = False) -> int:
    """Binomial coefficient with the usual integer conventions.

    Zero for k < 0 and for k > n >= 0.  For negative n and k >= 0 the
    polynomial extension n(n-1)...(n-k+1)/k! is used.  With
    ``minus_one_convention`` set, binomial(-1, -1) is taken to be 1.
    """
    if k < 0:
        return 1 if (minus_one_convention and n == -1 and k == -1) else 0
    if n >= 0:
        return comb(n, k)
    return falling_factorial(n, k) // factorial(k)


def falling_factorial(x: int, r: int) -> int:
    """x(x-1)...(x-r+1); the empty product when r == 0."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    out = 1
    for i in range(r):
        out *= x - i
    return out


def rising_double_factorial(k: int, n: int) -> int:
    """k(k+2)(k+4)... with n factors."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = 1
    for i in range(n):
        out *= k + 2 * i
    return out


@cache
def stirling_cycle(n: int, k: int) -> int:
    """Unsigned Stirling number of the first kind c(n, k)."""
    if n < 0 or k < 0:
        return 0
    if n == 0:
        return 1 if k == 0 else 0
    if k == 0:
        return 0
    return (n - 1) * stirling_cycle(n - 1, k) + stirling_cycle(n - 1, k - 1)


@cache
def second_order_eulerian(n: int, k: int) -> int:
    """h(n, k) = k h(n-1, k) + (2n-k) h(n-1, k-1), with h(1, 1) = 1.

    Row n has support 1 <= k <= n and sums to (2n-1)!!.
    """
    if n < 1 or k < 1 or k > n:
        return 0
    if n == 1:
        return 1
    return k * second_order_eulerian(n - 1, k) + (2 * n - k) * second_order_eulerian(n - 1, k - 1)
