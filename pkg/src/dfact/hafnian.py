"""Hafnians and Pfaffians of upper triangular arrays.

An array of half-size n holds x[i][j] for 1 <= i < j <= 2n.  It is stored
as its upper-triangle rows: row i lists x[i][i+1], ..., x[i][2n].
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .families import dyck_words, perfect_matchings, upstep_top_heights


@dataclass(frozen=True)
class UpperTriangularArray:
    n: int
    rows: tuple[tuple, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("half-size must be nonnegative")
        want = [2 * self.n - i for i in range(1, 2 * self.n)]
        if [len(r) for r in self.rows] != want:
            raise ValueError(f"expected upper-triangle rows of lengths {want}")

    def __call__(self, i: int, j: int):
        """Entry x_ij for 1 <= i < j <= 2n."""
        if not 1 <= i < j <= 2 * self.n:
            raise IndexError((i, j))
        return self.rows[i - 1][j - i - 1]

    @classmethod
    def from_rows(cls, rows) -> "UpperTriangularArray":
        rows = tuple(tuple(r) for r in rows)
        m = len(rows) + 1 if rows else 0
        if m % 2:
            raise ValueError("an upper triangular array has 2n - 1 rows")
        return cls(m // 2, rows)

    @classmethod
    def from_json(cls, text: str) -> "UpperTriangularArray":
        return cls.from_rows(json.loads(text))

    @classmethod
    def from_function(cls, n: int, f) -> "UpperTriangularArray":
        return cls(n, tuple(tuple(f(i, j) for j in range(i + 1, 2 * n + 1)) for i in range(1, 2 * n)))

    @classmethod
    def constant_rows(cls, x: Sequence) -> "UpperTriangularArray":
        """x_ij = x_i; ``x`` has length 2n - 1."""
        if len(x) % 2 == 0:
            raise ValueError("constant-row input must have odd length 2n - 1")
        n = (len(x) + 1) // 2
        return cls.from_function(n, lambda i, j: x[i - 1])

    def skew_matrix(self) -> list[list]:
        """The 2n x 2n skew-symmetric matrix with x_ij above the diagonal."""
        m = 2 * self.n
        out = [[0] * m for _ in range(m)]
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                out[i - 1][j - 1] = self(i, j)
                out[j - 1][i - 1] = -self(i, j)
        return out


def matching_sign(pairs) -> int:
    """Sign of the permutation a(1) b(1) a(2) b(2) ... by counting inversions."""
    word = [x for p in pairs for x in p]
    inv = sum(1 for i, j in combinations(range(len(word)), 2) if word[i] > word[j])
    return -1 if inv % 2 else 1


def _product(T: UpperTriangularArray, pairs):
    out = 1
    for a, b in pairs:
        out *= T(a, b)
    return out


def hafnian_bruteforce(T: UpperTriangularArray):
    """Sum over all perfect matchings of the product of matched entries."""
    return sum((_product(T, m.pairs) for m in perfect_matchings(T.n)), 0)


def pfaffian_bruteforce(T: UpperTriangularArray):
    """Signed version of :func:`hafnian_bruteforce`."""
    return sum((matching_sign(m.pairs) * _product(T, m.pairs) for m in perfect_matchings(T.n)), 0)


def a_codes(n: int):
    """Increasing sequences with 1 <= a(i) <= 2i - 1."""

    def rec(prefix):
        i = len(prefix) + 1
        if i > n:
            yield tuple(prefix)
            return
        lo = prefix[-1] + 1 if prefix else 1
        for a in range(lo, 2 * i):
            yield from rec(prefix + [a])

    yield from rec([])


def _check_constant_rows(x) -> int:
    if len(x) % 2 == 0:
        raise ValueError("constant-row input must have odd length 2n - 1")
    return (len(x) + 1) // 2


def hafnian_constant_rows(x: Sequence):
    """Sum over codes a of prod (2i - a(i)) x_{a(i)}."""
    n = _check_constant_rows(x)
    total = 0
    for a in a_codes(n):
        term = 1
        for i, ai in enumerate(a, 1):
            term *= (2 * i - ai) * x[ai - 1]
        total += term
    return total


def pfaffian_constant_rows(x: Sequence):
    """x_1 x_3 ... x_{2n-1}: only the identity matching survives cancellation."""
    n = _check_constant_rows(x)
    out = 1
    for i in range(n):
        out *= x[2 * i]
    return out


def dyck_codes(steps: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Upstep positions (1-based) and upstep-top heights of a Dyck path."""
    a = tuple(i for i, s in enumerate(steps, 1) if s == "U")
    return a, tuple(upstep_top_heights(steps))


def b_codes(n: int):
    """Sequences with b(1) = 1 and 1 <= b(i+1) <= b(i) + 1."""

    def rec(prefix):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        top = prefix[-1] + 1 if prefix else 1
        for b in range(1, top + 1):
            yield from rec(prefix + [b])

    yield from rec([])


def all_dyck_codes(n: int):
    for w in dyck_words(n):
        yield dyck_codes(w)
