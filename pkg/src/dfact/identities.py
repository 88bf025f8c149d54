"""Registry of summation identities with three independent checks each.

* formula: exact summation of the closed-form summand against the right side;
* recurrence: the triangle rebuilt from a recurrence alone, compared with
  the summand;
* combinatorial: distributions of the linked statistics, by enumeration.

The layers share no tabulation.  Where no recurrence or interpretation is
known the layer is reported as ``n/a``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable

from .config import check_bound
from .exactnum import (
    binomial,
    double_factorial as df,
    falling_factorial,
    rising_double_factorial,
    second_order_eulerian,
)
from .families import udf_paths
from .statistics import distribution, joint_distribution


def _int(x) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise ArithmeticError(f"non-integral value {x}")
    return x.numerator


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def rising_poly_coeffs(n: int) -> list[int]:
    """Coefficients of x(x+1)...(x+n-1); entry k is the cycle number c(n, k)."""
    out = [1]
    for i in range(n):
        out = _poly_mul(out, [i, 1])
    return out


def elementary_symmetric(values: list[int]) -> list[int]:
    """e_0, e_1, ..., e_len of the given numbers, by expanding prod (1 + v t)."""
    out = [1]
    for v in values:
        out = _poly_mul(out, [1, v])
    return out


def stirling_subset(n: int, k: int) -> int:
    """Stirling numbers of the second kind from the explicit alternating sum."""
    if k < 0 or n < 0:
        return 0
    total = sum((-1) ** i * binomial(k, i) * (k - i) ** n for i in range(k + 1))
    return total // factorial(k)


def eulerian2_explicit(n: int, k: int) -> int:
    """Second-order Eulerian number (1 <= k <= n) from a closed alternating sum."""
    if n == 0:
        return 1 if k == 0 else 0
    m = k - 1
    if not 0 <= m < n:
        return 0
    return sum(
        (-1) ** j * binomial(2 * n + 1, j) * stirling_subset(n + m + 1 - j, m + 1 - j) for j in range(m + 1)
    )


# ---------------------------------------------------------------------------
# summands (index k may be a tuple for bivariate refinements)


def s_I1(n, k, p):
    return binomial(n, k + 1) * df(2 * k - 1) * df(2 * n - 2 * k - 3)


def s_I2(n, k, p):
    if n == 0:
        return 1 if k == 0 else 0
    c = binomial(2 * n - k - 1, k - 1, minus_one_convention=True)
    return _int(Fraction(c * (2 * n - 2 * k - 1) * (2 * n - k + 1), k + 1) * df(2 * n - 2 * k - 3))


def s_I2_compact(n, k):
    """Separate even/odd forms of the I2 summand (k >= 1)."""
    if k % 2 == 0:
        j = k // 2
        return _int(Fraction(binomial(n - j - 1, j - 1, minus_one_convention=True) * df(2 * n - 2 * j + 1), df(2 * j + 1)))
    j = (k + 1) // 2
    return _int(Fraction(binomial(n - j + 1, j) * df(2 * n - 2 * j - 1), df(2 * j - 3)))


def s_I3(n, k, p):
    return factorial(n - 1) // factorial(k - 1) * k * df(2 * k - 3)


def s_I5(n, k, p):
    r = p.get("r", 0)
    top = binomial(n, 2 * k - r) * binomial(2 * k - r, k) * falling_factorial(n + r, r) * factorial(n - r)
    return _int(Fraction(top, 2 ** (2 * k - r)))


def s_I6(n, k, p):
    r = p.get("r", 0)
    return binomial(n, 2 * k - r) * binomial(2 * k - r, k) * 2 ** (n - 2 * k + r)


def s_I7(n, k, p):
    return _int(Fraction(df(2 * n - 2) * df(2 * k - 3), df(2 * k - 2)))


def s_I8(n, k, p):
    if k == 1:
        return df(2 * n - 2)
    return _int(Fraction(df(2 * n - 1) * df(2 * k - 4), df(2 * k - 1)))


def s_I9(n, k, p):
    if k == 0:
        return df(2 * n - 3)
    return _int(Fraction(2 * df(2 * n - 1), (2 * k + 1) * (2 * k - 1)))


def s_I10(n, k, p):
    if n == 0:
        return 1 if k == 0 else 0
    return factorial(k) * binomial(2 * n - k - 1, k - 1) * df(2 * n - 2 * k - 1)


def s_I11(n, k, p):
    if k == n:
        return factorial(n)
    return df(k - 1) * df(2 * n - k) - df(k) * df(2 * n - k - 1)


def s_I12(n, k, p):
    return eulerian2_explicit(n, k)


def s_I13(n, k, p):
    return rising_poly_coeffs(n)[k] * 2 ** (n - k)


def s_I14(n, j, p):
    k = p["k"]
    return falling_factorial(j, k) * falling_factorial(2 * n - k - j, j - k) * df(2 * n - 2 * j - 1)


def s_I15(n, j, p):
    m = p.get("m", 0)
    return binomial(j + 2 * m, j) * 2**j * binomial(2 * n - j, n - j)


def s_I16(n, j, p):
    m = p.get("m", 0)
    return binomial(j + 2 * m + 1, j) * 2 ** (j + 1) * binomial(2 * n - j, n - j)


def s_rtm(n, k, p):
    """Unrolled form: leave column 1 at size m, then pick the k-2 later growth steps."""
    if k == 1:
        return n * df(2 * n - 3)
    total = 0
    for m in range(1, n - k + 2):
        e = elementary_symmetric([2 * t - 3 for t in range(m + 2, n + 1)])
        idx = n - m - k + 1
        if 0 <= idx < len(e):
            total += m * df(2 * m - 3) * e[idx]
    return total


def s_ref_minpath(n, jk, p):
    j, k = jk
    return 2 ** (n - j) * rising_poly_coeffs(k - 1)[j - 1] * falling_factorial(n - 1, n - k)


def s_ref_ascent_ones(n, jk, p):
    j, k = jk
    return rising_poly_coeffs(k)[j] * binomial(2 * n - k - 1, k - 1) * df(2 * n - 2 * k - 1)


def s_ref_ascdesc(n, jk, p):
    j, k = jk
    return factorial(k - 1) * binomial(2 * n - k - 1, k - 1) * df(2 * n - 2 * k - 1)


# ---------------------------------------------------------------------------
# recurrences: each returns {n: {index: value}} without touching the summands


def _table(n_max, fill) -> dict[int, dict]:
    u: dict[int, dict] = {}
    for n in range(n_max + 1):
        u[n] = {}
        fill(u, n)
    return u


def _g(u, n, k):
    return u.get(n, {}).get(k, 0)


def r_I1(n_max, p):
    # leaf insertion: 2k+1 slots grow the leftmost subtree, one slot makes n
    # the new leftmost child of the root, the rest leave it alone
    def fill(u, n):
        if n == 1:
            u[1][0] = 1
        elif n >= 2:
            for k in range(n):
                v = (2 * n - 2 * k - 3) * _g(u, n - 1, k) + (2 * k - 1) * _g(u, n - 1, k - 1)
                if k == 0:
                    v += df(2 * n - 3)
                u[n][k] = v

    return _table(n_max, fill)


def r_I2(n_max, p):
    def fill(u, n):
        if n == 0:
            u[0][0] = 1
            return
        u[n][0] = 0
        u[n][1] = n * df(2 * n - 3)
        for k in range(2, n + 1):
            u[n][k] = sum(_g(u, n - 1, j) for j in range(k - 1, n)) + (2 * n - k - 2) * _g(u, n - 1, k)

    return _table(n_max, fill)


def r_I3(n_max, p):
    def fill(u, n):
        if n == 0:
            return
        u[n][n] = n * df(2 * n - 3)
        for k in range(1, n):
            u[n][k] = (n - 1) * _g(u, n - 1, k)

    return _table(n_max, fill)


def _udf_transfer(n_max: int) -> dict[tuple[int, int, int], int]:
    """f[n, k, h]: bicolored UDF paths of length n, k upsteps, ending at height h."""
    f = {(0, 0, 0): 1}
    for n in range(1, n_max + 1):
        for k in range(n + 1):
            for h in range(-n, n + 1):
                v = f.get((n - 1, k - 1, h - 1), 0) + 2 * f.get((n - 1, k, h), 0) + f.get((n - 1, k, h + 1), 0)
                if v:
                    f[(n, k, h)] = v
    return f


def r_I5(n_max, p):
    """UDF transfer counts rescaled by (n+r)_r (n-r)! / 2^n."""
    r = p.get("r", 0)
    f = _udf_transfer(n_max)
    out: dict[int, dict] = {}
    for n in range(r, n_max + 1):
        scale = Fraction(falling_factorial(n + r, r) * factorial(n - r), 2**n)
        out[n] = {k: _int(f.get((n, k, r), 0) * scale) for k in range(r, (n + r) // 2 + 1)}
    return out


def r_I5_young(n_max, p):
    """Young-leaf recurrence for the r = 1 case."""

    def fill(u, n):
        if n == 1:
            u[1][1] = 1
        elif n >= 2:
            for k in range(1, (n + 1) // 2 + 1):
                u[n][k] = (n + 2 * k - 1) * _g(u, n - 1, k) + (n - 2 * k + 2) * _g(u, n - 1, k - 1)

    return _table(n_max, fill)


def r_I6(n_max, p):
    r = p.get("r", 0)
    f = _udf_transfer(n_max)
    return {n: {k: f.get((n, k, r), 0) for k in range(r, (n + r) // 2 + 1)} for n in range(r, n_max + 1)}


def r_I7(n_max, p):
    # plateau insertion: only the front gap changes the first entry (to n)
    def fill(u, n):
        if n == 0:
            return
        u[n][n] = df(2 * n - 3)
        for k in range(1, n):
            u[n][k] = (2 * n - 2) * _g(u, n - 1, k)

    return _table(n_max, fill)


def r_I8(n_max, p):
    def fill(u, n):
        if n == 0:
            return
        u[n][1] = df(2 * n - 2)
        for k in range(2, n):
            u[n][k] = (2 * n - 1) * _g(u, n - 1, k)
        if n >= 2:
            u[n][n] = df(2 * n - 4)

    return _table(n_max, fill)


def r_maxrec(n_max, p):
    """v(n, k) for 2 <= k <= n + 1, re-indexed to u(n, n + 2 - k)."""

    def fill(v, n):
        if n == 0:
            return
        v[n][n + 1] = df(2 * n - 2)
        if n >= 2:
            v[n][2] = df(2 * n - 4)
        for k in range(3, n + 1):
            v[n][k] = (2 * n - 1) * _g(v, n - 1, k - 1)

    v = _table(n_max, fill)
    return {n: {n + 2 - k: c for k, c in row.items()} for n, row in v.items()}


def r_I9(n_max, p):
    def fill(u, n):
        if n == 0:
            return
        u[n][0] = df(2 * n - 3)
        for k in range(1, n - 1):
            u[n][k] = (2 * n - 1) * _g(u, n - 1, k)
        if n >= 2:
            u[n][n - 1] = 2 * df(2 * n - 5)

    return _table(n_max, fill)


def r_I10(n_max, p):
    # leaf insertion: a root with k children offers k + 1 slots among them
    def fill(u, n):
        if n == 0:
            u[0][0] = 1
            return
        for k in range(1, n + 1):
            u[n][k] = (2 * n - 2 - k) * _g(u, n - 1, k) + k * _g(u, n - 1, k - 1)

    return _table(n_max, fill)


def r_I11(n_max, p):
    """Counts with first descent >= k by U(n,k) = (2n-k) U(n-1,k), U(k,k) = k!."""
    at_least: dict[tuple[int, int], int] = {}
    for k in range(1, n_max + 1):
        at_least[(k, k)] = factorial(k)
        for n in range(k + 1, n_max + 1):
            at_least[(n, k)] = (2 * n - k) * at_least[(n - 1, k)]
    out = {}
    for n in range(1, n_max + 1):
        out[n] = {k: at_least[(n, k)] - at_least.get((n, k + 1), 0) for k in range(1, n + 1)}
    return out


def r_I11_closed(n_max, p):
    """k!(k+2)(k+4)... with n-k factors, the solved form of the same recurrence."""
    out = {}
    for n in range(1, n_max + 1):
        ge = {k: factorial(k) * rising_double_factorial(k + 2, n - k) for k in range(1, n + 1)}
        out[n] = {k: ge[k] - ge.get(k + 1, 0) for k in range(1, n + 1)}
    return out


def r_I12(n_max, p):
    return {n: {k: second_order_eulerian(n, k) for k in range(1, n + 1)} for n in range(1, n_max + 1)}


def r_I13(n_max, p):
    def fill(u, n):
        if n == 0:
            u[0][0] = 1
            return
        for k in range(n + 1):
            u[n][k] = (2 * n - 2) * _g(u, n - 1, k) + _g(u, n - 1, k - 1)

    return _table(n_max, fill)


def r_I14(n_max, p):
    """u(n,k,j) = j u(n-1,k-1,j-1), seeded at k = 1 by the root-outdegree recurrence."""
    k = p["k"]
    base = r_I10(n_max, {})
    out = {}
    for n in range(k, n_max + 1):
        row = {}
        for j in range(k, n + 1):
            v = base.get(n - k + 1, {}).get(j - k + 1, 0)
            for t in range(k - 1):
                v *= j - t
            row[j] = v
        out[n] = row
    return out


def r_rtm(n_max, p):
    def fill(u, n):
        if n == 0:
            return
        u[n][1] = n * df(2 * n - 3)
        for k in range(2, n + 1):
            u[n][k] = (2 * n - 3) * _g(u, n - 1, k) + _g(u, n - 1, k - 1)

    return _table(n_max, fill)


def r_ref_minpath(n_max, p):
    """Indexed by (j, k): path length j, terminal leaf k."""

    def fill(u, n):
        if n == 0:
            return
        u[n][(1, 1)] = df(2 * n - 2)
        for j in range(2, n + 1):
            for k in range(j, n):
                u[n][(j, k)] = (2 * n - 2) * _g(u, n - 1, (j, k))
            u[n][(j, n)] = sum(_g(u, n - 1, (j - 1, i)) for i in range(j - 1, n))

    return _table(n_max, fill)


# ---------------------------------------------------------------------------
# combinatorial interpretations


@dataclass(frozen=True)
class Interpretation:
    label: str
    counts: Callable[[int, dict], dict]
    remark: bool = False  # stated in the source without proof
    min_n: int = 1


def _by(stat: str, key: Callable[[int, int], object] = lambda n, v: v):
    def counts(n, p):
        c: Counter = Counter()
        for v, num in distribution(stat, n).counts.items():
            c[key(n, v)] += num
        return dict(c)

    return counts


def _by_pair(s1: str, s2: str, key: Callable[[int, tuple], object] = lambda n, v: v):
    def counts(n, p):
        c: Counter = Counter()
        for v, num in joint_distribution([s1, s2], n).counts.items():
            c[key(n, v)] += num
        return dict(c)

    return counts


def _udf_counts(n, p):
    check_bound(n)
    r = p.get("r", 0)
    return dict(Counter(path.steps.count("U") for path in udf_paths(n, r)))


def _first_ascent_descent(n, p):
    k = p["k"]
    c: Counter = Counter()
    for (j, d), num in joint_distribution(["first-ascent-length", "first-descent-length"], n).counts.items():
        if d >= k:
            c[j] += num
    return dict(c)


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class IdentityDescriptor:
    id: str
    description: str
    summand: Callable
    indices: Callable[[int, dict], Iterable]
    rhs: Callable[[int, dict], int]
    stats: tuple[str, ...] = ()
    interpretations: tuple[Interpretation, ...] = ()
    recurrences: tuple[tuple[str, Callable], ...] = ()
    table: dict | None = None
    params: Callable[[int], list[dict]] = lambda n: [{}]
    n_min: int = 1


def _range(a, b):
    return lambda n, p: range(a(n, p), b(n, p) + 1)


def _pairs(n, p):
    return [(j, k) for k in range(1, n + 1) for j in range(1, k + 1)]


def _pairs0(n, p):
    return [(j, k) for k in range(1, n + 1) for j in range(0, k + 1)]


ODD = lambda n, p: df(2 * n - 1)  # noqa: E731

# printed triangles, row n -> (first index, values)
TABLES = {
    "I1": {1: (0, [1]), 2: (0, [2, 1]), 3: (0, [9, 3, 3]), 4: (0, [60, 18, 12, 15]), 5: (0, [525, 150, 90, 75, 105])},
    "I2": {
        0: (0, [1]),
        1: (0, [0, 1]),
        2: (0, [0, 2, 1]),
        3: (0, [0, 9, 5, 1]),
        4: (0, [0, 60, 35, 9, 1]),
        5: (0, [0, 525, 315, 90, 14, 1]),
    },
    "I3": {1: (1, [1]), 2: (1, [1, 2]), 3: (1, [2, 4, 9]), 4: (1, [6, 12, 27, 60]), 5: (1, [24, 48, 108, 240, 525])},
    "I4": {
        0: (0, [1]),
        1: (0, [1]),
        2: (0, [2, 1]),
        3: (0, [6, 9]),
        4: (0, [24, 72, 9]),
        5: (0, [120, 600, 225]),
        6: (0, [720, 5400, 4050, 225]),
    },
    "I5:1": {
        1: (1, [1]),
        2: (1, [3]),
        3: (1, [12, 3]),
        4: (1, [60, 45]),
        5: (1, [360, 540, 45]),
        6: (1, [2520, 6300, 1575]),
    },
    "I7": {1: (1, [1]), 2: (1, [2, 1]), 3: (1, [8, 4, 3]), 4: (1, [48, 24, 18, 15]), 5: (1, [384, 192, 144, 120, 105])},
    "I8": {1: (1, [1]), 2: (1, [2, 1]), 3: (1, [8, 5, 2]), 4: (1, [48, 35, 14, 8]), 5: (1, [384, 315, 126, 72, 48])},
    "I9": {1: (0, [1]), 2: (0, [1, 2]), 3: (0, [3, 10, 2]), 4: (0, [15, 70, 14, 6]), 5: (0, [105, 630, 126, 54, 30])},
    "I10": {1: (1, [1]), 2: (1, [1, 2]), 3: (1, [3, 6, 6]), 4: (1, [15, 30, 36, 24]), 5: (1, [105, 210, 270, 240, 120])},
    "I11": {1: (1, [1]), 2: (1, [1, 2]), 3: (1, [7, 2, 6]), 4: (1, [57, 18, 6, 24]), 5: (1, [561, 174, 66, 24, 120])},
    "I-rtm": {1: (1, [1]), 2: (1, [2, 1]), 3: (1, [9, 5, 1]), 4: (1, [60, 34, 10, 1]), 5: (1, [525, 298, 104, 17, 1])},
}


def table_rows(key: str) -> dict[int, dict]:
    """A printed triangle as {n: {k: value}}."""
    return {n: {k0 + i: v for i, v in enumerate(vals)} for n, (k0, vals) in TABLES[key].items()}


IDENTITIES: dict[str, IdentityDescriptor] = {}


def _reg(d: IdentityDescriptor):
    IDENTITIES[d.id] = d


_reg(
    IdentityDescriptor(
        "I1",
        "increasing ordered trees by size of the leftmost subtree of the root",
        s_I1,
        _range(lambda n, p: 0, lambda n, p: n - 1),
        ODD,
        ("leftmost-subtree-size",),
        (Interpretation("trees by leftmost subtree size", _by("leftmost-subtree-size")),),
        (("leaf insertion (derived)", r_I1),),
        TABLES["I1"],
    )
)
_reg(
    IdentityDescriptor(
        "I2",
        "increasing ordered trees by rightmost path length",
        s_I2,
        _range(lambda n, p: 0, lambda n, p: n),
        ODD,
        ("rightmost-path-length",),
        (Interpretation("trees by rightmost path length", _by("rightmost-path-length"), min_n=0),),
        (("rightmost path insertion", r_I2),),
        TABLES["I2"],
        n_min=0,
    )
)
_reg(
    IdentityDescriptor(
        "I3",
        "increasing ordered trees by maximum young leaf",
        s_I3,
        _range(lambda n, p: 1, lambda n, p: n),
        ODD,
        ("max-young-leaf",),
        (Interpretation("trees by maximum young leaf", _by("max-young-leaf")),),
        (("u(n,k) = (n-1) u(n-1,k)", r_I3),),
        TABLES["I3"],
    )
)
_reg(
    IdentityDescriptor(
        "I4",
        "perfect matchings by matches with both entries at most n",
        s_I5,
        _range(lambda n, p: 0, lambda n, p: n // 2),
        ODD,
        ("low-match-count:0",),
        (Interpretation("matchings by low matches", _by("low-match-count:0"), min_n=0),),
        (("UDF transfer, rescaled (derived)", r_I5),),
        TABLES["I4"],
        n_min=0,
    )
)
_reg(
    IdentityDescriptor(
        "I5",
        "perfect matchings by matches with both entries at most n + r",
        s_I5,
        _range(lambda n, p: p["r"], lambda n, p: (n + p["r"]) // 2),
        ODD,
        ("low-match-count:r", "young-leaf-count"),
        (
            Interpretation("matchings by matches <= n + r", lambda n, p: _by(f"low-match-count:{p['r']}")(n, p)),
            Interpretation(
                "trees by young leaves (r = 1)",
                lambda n, p: _by("young-leaf-count")(n, p) if p["r"] == 1 else None,
            ),
        ),
        (("UDF transfer, rescaled (derived)", r_I5), ("young leaves (r = 1)", r_I5_young)),
        TABLES["I5:1"],
        params=lambda n: [{"r": r} for r in range(0, min(n, 3) + 1)],
    )
)
_reg(
    IdentityDescriptor(
        "I6",
        "bicolored UDF paths ending at height r by upsteps",
        s_I6,
        _range(lambda n, p: p["r"], lambda n, p: (n + p["r"]) // 2),
        lambda n, p: binomial(2 * n, n - p["r"]),
        ("upstep-count",),
        (Interpretation("UDF paths by upsteps", _udf_counts),),
        (("UDF transfer", r_I6),),
        params=lambda n: [{"r": r} for r in range(0, min(n, 3) + 1)],
    )
)
_reg(
    IdentityDescriptor(
        "I7",
        "Stirling permutations by first entry, and three equivalents",
        s_I7,
        _range(lambda n, p: 1, lambda n, p: n),
        ODD,
        ("first-entry", "first-one-position", "parent-of-n", "minimal-path-leaf"),
        (
            Interpretation("Stirling permutations by first entry", _by("first-entry")),
            Interpretation("Stirling permutations by first 1 at 2k-1", _by("first-one-position", lambda n, v: (v + 1) // 2)),
            Interpretation("trees by parent k-1 of n", _by("parent-of-n", lambda n, v: v + 1)),
            Interpretation("trees by minimal path leaf", _by("minimal-path-leaf")),
            Interpretation(
                "reversed: HL paths by last label-1 upstep",
                _by("last-one-upstep-position", lambda n, v: n + 1 - v),
                remark=True,
            ),
            Interpretation(
                "reversed: trees by maximum child of 1",
                _by("max-child-of-1", lambda n, v: n + 2 - v),
                remark=True,
            ),
        ),
        (("plateau insertion (derived)", r_I7),),
        TABLES["I7"],
    )
)
_reg(
    IdentityDescriptor(
        "I8",
        "increasing ordered trees by smallest child of 1",
        s_I8,
        _range(lambda n, p: 1, lambda n, p: n),
        ODD,
        ("smallest-child-of-1", "max-before-first-one", "max-descendant-of-1"),
        (
            Interpretation("trees by smallest child of 1", _by("smallest-child-of-1")),
            Interpretation(
                "Stirling permutations by max before first 1 (v(n,k) = u(n,n+2-k))",
                _by("max-before-first-one", lambda n, v: n + 2 - v),
            ),
            Interpretation(
                "trees by max descendant of 1 (v(n,k) = u(n,n+2-k))",
                _by("max-descendant-of-1", lambda n, v: n + 2 - v),
            ),
        ),
        (("u(n,k) = (2n-1) u(n-1,k)", r_I8), ("v(n,k) = (2n-1) v(n-1,k-1)", r_maxrec)),
        TABLES["I8"],
    )
)
_reg(
    IdentityDescriptor(
        "I9",
        "Stirling permutations by smallest entry after the last n",
        s_I9,
        _range(lambda n, p: 0, lambda n, p: n - 1),
        ODD,
        ("smallest-after-last-n",),
        (Interpretation("Stirling permutations by smallest entry after last n", _by("smallest-after-last-n")),),
        (("u(n,k) = (2n-1) u(n-1,k)", r_I9),),
        TABLES["I9"],
    )
)
_reg(
    IdentityDescriptor(
        "I10",
        "increasing ordered trees by root outdegree",
        s_I10,
        _range(lambda n, p: 1 if n else 0, lambda n, p: n),
        ODD,
        ("root-outdegree", "first-ascent-length", "leaf-one-depth"),
        (
            Interpretation("trees by root outdegree", _by("root-outdegree")),
            Interpretation("HL paths by first ascent length", _by("first-ascent-length")),
            Interpretation("0-2 trees by depth of leaf 1", _by("leaf-one-depth"), remark=True),
        ),
        (("leaf insertion (derived)", r_I10),),
        TABLES["I10"],
    )
)
_reg(
    IdentityDescriptor(
        "I11",
        "HL Dyck paths by length of the first descent",
        s_I11,
        _range(lambda n, p: 1, lambda n, p: n),
        ODD,
        ("first-descent-length",),
        (Interpretation("HL paths by first descent", _by("first-descent-length")),),
        (("U(n,k) = (2n-k) U(n-1,k)", r_I11), ("k!(k+2)(k+4)...", r_I11_closed)),
        TABLES["I11"],
    )
)
_reg(
    IdentityDescriptor(
        "I12",
        "second-order Eulerian numbers, seven interpretations",
        s_I12,
        _range(lambda n, p: 1, lambda n, p: n),
        ODD,
        (
            "descent-count",
            "plateau-count",
            "leaf-count",
            "upstep-free-vertex-count",
            "distinct-entry-count",
            "tree-descent-count",
            "peak-count",
        ),
        (
            Interpretation("Stirling permutations by descents", _by("descent-count")),
            Interpretation("Stirling permutations by plateaus", _by("plateau-count")),
            Interpretation("trees by leaves", _by("leaf-count")),
            Interpretation("HL paths by upstep-free vertices", _by("upstep-free-vertex-count")),
            Interpretation("trapezoidal words by distinct entries", _by("distinct-entry-count")),
            Interpretation("reversed: trees by sibling descents", _by("tree-descent-count", lambda n, v: n - v)),
            Interpretation("reversed: HL paths by peaks", _by("peak-count", lambda n, v: n + 1 - v)),
        ),
        (("h(n,k) = k h(n-1,k) + (2n-k) h(n-1,k-1)", r_I12),),
    )
)
_reg(
    IdentityDescriptor(
        "I13",
        "Stirling cycle numbers weighted by 2^(n-k)",
        s_I13,
        _range(lambda n, p: 0, lambda n, p: n),
        ODD,
        ("lr-minima-count", "minimal-path-length", "first-ascent-ones-count"),
        (
            Interpretation("Stirling permutations by LR minima", _by("lr-minima-count")),
            Interpretation("trees by minimal path length", _by("minimal-path-length")),
            Interpretation("HL paths by 1s on the first ascent", _by("first-ascent-ones-count")),
        ),
        (("u(n,k) = (2n-2) u(n-1,k) + u(n-1,k-1)", r_I13),),
        n_min=0,
    )
)
_reg(
    IdentityDescriptor(
        "I14",
        "HL paths with first ascent j and first descent >= k, summed over j",
        s_I14,
        _range(lambda n, p: p["k"], lambda n, p: n),
        lambda n, p: df(p["k"] - 1) * df(2 * n - p["k"]),
        ("first-ascent-length", "first-descent-length"),
        (Interpretation("HL paths by first ascent, first descent >= k", _first_ascent_descent),),
        (("u(n,k,j) = j u(n-1,k-1,j-1)", r_I14),),
        params=lambda n: [{"k": k} for k in range(1, n + 1)],
    )
)
_reg(
    IdentityDescriptor(
        "I15",
        "sum of C(j+2m, j) 2^j C(2n-j, n-j) equals C(n+m, n) 4^n",
        s_I15,
        _range(lambda n, p: 0, lambda n, p: n),
        lambda n, p: binomial(n + p["m"], n) * 4**n,
        ("ground-returns",),
        (
            Interpretation(
                "UD paths by returns to ground level (m = 0)",
                lambda n, p: _by("ground-returns")(n, p) if p["m"] == 0 else None,
            ),
        ),
        params=lambda n: [{"m": m} for m in range(0, 6)],
        n_min=0,
    )
)
_reg(
    IdentityDescriptor(
        "I16",
        "the odd companion of I15",
        s_I16,
        _range(lambda n, p: 0, lambda n, p: n),
        lambda n, p: _int(
            Fraction(
                factorial(p["m"]) * factorial(2 * n + 2 * p["m"] + 2),
                factorial(n) * factorial(2 * p["m"] + 1) * factorial(n + p["m"] + 1),
            )
        ),
        params=lambda n: [{"m": m} for m in range(0, 6)],
        n_min=0,
    )
)
_reg(
    IdentityDescriptor(
        "I-rtm",
        "increasing ordered trees by right-then-minimal path length",
        s_rtm,
        _range(lambda n, p: 1, lambda n, p: n),
        ODD,
        ("right-then-minimal-path-length",),
        (Interpretation("trees by right-then-minimal path", _by("right-then-minimal-path-length")),),
        (("u(n,k) = (2n-3) u(n-1,k) + u(n-1,k-1)", r_rtm),),
        TABLES["I-rtm"],
    )
)
_reg(
    IdentityDescriptor(
        "I-ref-minpath",
        "trees by minimal path length j and terminal leaf k",
        s_ref_minpath,
        _pairs,
        ODD,
        ("minimal-path-length", "minimal-path-leaf"),
        (Interpretation("trees by (length, leaf) of the minimal path", _by_pair("minimal-path-length", "minimal-path-leaf")),),
        (("minimal path refinement", r_ref_minpath),),
    )
)
_reg(
    IdentityDescriptor(
        "I-ref-ascent-ones",
        "HL paths by first ascent length k holding j labels equal to 1",
        s_ref_ascent_ones,
        _pairs0,
        ODD,
        ("first-ascent-ones-count", "first-ascent-length"),
        (Interpretation("HL paths by (1s, length) of first ascent", _by_pair("first-ascent-ones-count", "first-ascent-length")),),
    )
)
_reg(
    IdentityDescriptor(
        "I-ref-ascdesc",
        "HL paths by first peak label j and first ascent length k",
        s_ref_ascdesc,
        _pairs,
        ODD,
        ("first-peak-label", "first-ascent-length"),
        (
            Interpretation("HL paths by (first peak label, first ascent)", _by_pair("first-peak-label", "first-ascent-length")),
            Interpretation("trees by (position of 1, root outdegree)", _by_pair("root-position-of-1", "root-outdegree")),
        ),
    )
)


def get(identity_id: str) -> IdentityDescriptor:
    try:
        return IDENTITIES[identity_id]
    except KeyError:
        raise KeyError(f"unknown identity {identity_id!r}") from None


def identity_ids() -> list[str]:
    return list(IDENTITIES)


# ---------------------------------------------------------------------------
# reports


@dataclass
class LayerResult:
    status: str = "n/a"  # "pass", "fail" or "n/a"
    checked: int = 0
    witness: dict | None = None
    notes: list[str] = field(default_factory=list)

    def fail(self, **witness) -> None:
        if self.status != "fail":
            self.status = "fail"
            self.witness = witness

    def to_json(self) -> dict:
        out = {"status": self.status, "checked": self.checked}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.notes:
            out["notes"] = self.notes
        return out


@dataclass
class VerificationReport:
    identity: str
    n_max: int
    layers: dict[str, LayerResult] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.layers.values())

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "n_max": self.n_max,
            "ok": self.ok,
            "layers": {k: v.to_json() for k, v in self.layers.items()},
        }

    def to_text(self) -> str:
        lines = [f"{self.identity} (n <= {self.n_max}): {'PASS' if self.ok else 'FAIL'}"]
        for name, r in self.layers.items():
            line = f"  {name}: {r.status} ({r.checked} checks)"
            if r.witness:
                line += " witness " + json.dumps(r.witness, default=str)
            lines.append(line)
            lines.extend(f"    {note}" for note in r.notes)
        return "\n".join(lines)


def _jsonable(x):
    return list(x) if isinstance(x, tuple) else x


def _check_n_max(n_max: int, least: int = 1) -> None:
    if n_max < least:
        raise ValueError(f"n_max must be at least {least}")


def verify_formula(identity_id: str, n_max: int = 20) -> VerificationReport:
    """Exact summation of the summand against the right side, plus extra forms."""
    d = get(identity_id)
    _check_n_max(n_max)
    res = LayerResult("pass")
    for n in range(d.n_min, n_max + 1):
        for p in d.params(n):
            try:
                total = sum(d.summand(n, k, p) for k in d.indices(n, p))
                want = d.rhs(n, p)
            except ArithmeticError as exc:
                res.fail(n=n, params=p, error=str(exc))
                continue
            res.checked += 1
            if total != want:
                res.fail(n=n, params=p, sum=total, rhs=want)
    if d.table:
        for n, row in table_rows(_table_key(d)).items():
            p = {"r": 1} if d.id == "I5" else {}
            for k, v in row.items():
                res.checked += 1
                got = d.summand(n, k, p)
                if got != v:
                    res.fail(n=n, k=k, printed=v, summand=got)
    for note, check in _EXTRA_FORMULA.get(d.id, ()):
        bad = check(n_max)
        res.checked += 1
        res.notes.append(note)
        if bad:
            res.fail(**bad)
    return VerificationReport(d.id, n_max, {"formula": res})


def _table_key(d: IdentityDescriptor) -> str:
    return "I5:1" if d.id == "I5" else d.id


def verify_recurrence(identity_id: str, n_max: int = 12) -> VerificationReport:
    """Rebuild the triangle from each recurrence and compare with the summand."""
    d = get(identity_id)
    _check_n_max(n_max, 2)
    res = LayerResult()
    for name, rec in d.recurrences:
        res.status = "pass" if res.status == "n/a" else res.status
        res.notes.append(name)
        grids = d.params(n_max)
        if rec is r_I5_young:
            grids = [{"r": 1}]
        for p in grids:
            tab = rec(n_max, p)
            for n in range(max(d.n_min, 0), n_max + 1):
                if d.id in ("I5", "I6") and n < p.get("r", 0):
                    continue
                if d.id == "I14" and n < p["k"]:
                    continue
                row = tab.get(n, {})
                idx = set(d.indices(n, p)) | set(row)
                for k in idx:
                    res.checked += 1
                    want = d.summand(n, k, p) if k in set(d.indices(n, p)) else 0
                    if row.get(k, 0) != want:
                        res.fail(recurrence=name, n=n, k=_jsonable(k), params=p, recurrence_value=row.get(k, 0), summand=want)
    return VerificationReport(d.id, n_max, {"recurrence": res})


def verify_combinatorial(identity_id: str, n_max: int = 6) -> VerificationReport:
    """Compare the summand with enumeration distributions.

    Interpretations flagged as remarks are checked and reported, but a
    mismatch there is recorded as a note rather than failing the layer.
    """
    d = get(identity_id)
    _check_n_max(n_max)
    check_bound(n_max)
    res = LayerResult()
    for it in d.interpretations:
        res.status = "pass" if res.status == "n/a" else res.status
        first_bad = None
        for n in range(max(d.n_min, it.min_n), n_max + 1):
            for p in d.params(n):
                got = it.counts(n, p)
                if got is None:
                    continue
                want = {k: d.summand(n, k, p) for k in d.indices(n, p)}
                for k in set(want) | set(got):
                    res.checked += 1
                    if want.get(k, 0) != got.get(k, 0) and first_bad is None:
                        first_bad = dict(
                            interpretation=it.label,
                            n=n,
                            k=_jsonable(k),
                            params=p,
                            summand=want.get(k, 0),
                            enumerated=got.get(k, 0),
                        )
        if first_bad is None:
            res.notes.append(f"{it.label}: ok")
        elif it.remark:
            res.notes.append(f"{it.label}: MISMATCH (unproven remark) {json.dumps(first_bad, default=str)}")
        else:
            res.notes.append(f"{it.label}: FAIL")
            res.fail(**first_bad)
    return VerificationReport(d.id, n_max, {"combinatorial": res})


def verify(identity_id: str, n_formula: int = 20, n_recurrence: int = 12, n_enum: int = 6) -> VerificationReport:
    """All three layers in one report."""
    out = VerificationReport(identity_id, max(n_formula, n_recurrence, n_enum))
    out.layers.update(verify_formula(identity_id, n_formula).layers)
    out.layers.update(verify_recurrence(identity_id, n_recurrence).layers)
    out.layers.update(verify_combinatorial(identity_id, n_enum).layers)
    return out


def remark_mismatches(identity_id: str, n_max: int = 6) -> list[str]:
    """Notes for remark-level interpretations that do not match."""
    rep = verify_combinatorial(identity_id, n_max)
    return [note for note in rep.layers["combinatorial"].notes if "MISMATCH" in note]


TABLE_SOURCES = {
    "I1": ("I1", {}),
    "I2": ("I2", {}),
    "I3": ("I3", {}),
    "I4": ("I4", {}),
    "I5:1": ("I5", {"r": 1}),
    "I7": ("I7", {}),
    "I8": ("I8", {}),
    "I9": ("I9", {}),
    "I10": ("I10", {}),
    "I11": ("I11", {}),
    "I-rtm": ("I-rtm", {}),
}


def verify_table(key: str) -> VerificationReport:
    """A printed triangle against summand, every recurrence and every
    non-remark interpretation, row by row."""
    identity_id, p = TABLE_SOURCES[key]
    d = get(identity_id)
    rows = table_rows(key)
    n_top = max(rows)
    rep = VerificationReport(key, n_top)
    formula = LayerResult("pass")
    for n, row in rows.items():
        for k, v in row.items():
            formula.checked += 1
            if d.summand(n, k, p) != v:
                formula.fail(n=n, k=k, printed=v, summand=d.summand(n, k, p))
    rec_layer = LayerResult("pass")
    for name, rec in d.recurrences:
        if rec is r_I5_young and p.get("r") != 1:
            continue
        tab = rec(n_top, p)
        rec_layer.notes.append(name)
        for n, row in rows.items():
            got = {k: v for k, v in tab.get(n, {}).items() if v}
            rec_layer.checked += 1
            if got != {k: v for k, v in row.items() if v}:
                rec_layer.fail(recurrence=name, n=n, printed=row, recurrence_row=got)
    enum_layer = LayerResult("pass")
    for it in d.interpretations:
        if it.remark:
            continue
        enum_layer.notes.append(it.label)
        for n, row in rows.items():
            if n < it.min_n:
                continue
            got = it.counts(n, p)
            if got is None:
                continue
            enum_layer.checked += 1
            if {k: v for k, v in got.items() if v} != {k: v for k, v in row.items() if v}:
                enum_layer.fail(interpretation=it.label, n=n, printed=row, enumerated=got)
    rep.layers = {"formula": formula, "recurrence": rec_layer, "combinatorial": enum_layer}
    return rep


# ---------------------------------------------------------------------------
# extra formula-layer checks


def _check_I2_compact(n_max):
    for n in range(1, min(n_max, 15) + 1):
        for k in range(1, n + 1):
            if s_I2_compact(n, k) != s_I2(n, k, {}):
                return {"n": n, "k": k, "compact": s_I2_compact(n, k), "main": s_I2(n, k, {})}
    return None


def _check_transposition(n_max):
    for r in range(0, 4):
        for n in range(r, min(n_max, 12) + 1):
            scale = Fraction(falling_factorial(n + r, r) * factorial(n - r), 2**n)
            for k in range(r, (n + r) // 2 + 1):
                if s_I6(n, k, {"r": r}) * scale != s_I5(n, k, {"r": r}):
                    return {"n": n, "k": k, "r": r}
    return None


def _suffix_check(summand, closed, lo, hi):
    def check(n_max):
        for n in range(1, n_max + 1):
            for K in range(lo(n), hi(n) + 1):
                tail = sum(summand(n, k, {}) for k in range(K, hi(n) + 1))
                if tail != closed(n, K):
                    return {"n": n, "from_k": K, "partial_sum": tail, "closed": closed(n, K)}
        return None

    return check


_EXTRA_FORMULA = {
    "I2": (("even/odd compact summands agree (n <= 15)", _check_I2_compact),),
    "I5": (("transposed form matches I6 term by term (r <= 3, n <= 12)", _check_transposition),),
    "I8": (
        (
            "suffix sums telescope to (2n-1)!!(2K-4)!!/(2K-3)!! - (2n-2)!!",
            _suffix_check(
                s_I8,
                lambda n, K: _int(Fraction(df(2 * n - 1) * df(2 * K - 4), df(2 * K - 3))) - df(2 * n - 2),
                lambda n: 2,
                lambda n: n,
            ),
        ),
    ),
    "I9": (
        (
            "suffix sums telescope to (2n-1)!!(1/(2K-1) - 1/(2n-1))",
            _suffix_check(
                s_I9,
                lambda n, K: _int(df(2 * n - 1) * (Fraction(1, 2 * K - 1) - Fraction(1, 2 * n - 1))),
                lambda n: 1,
                lambda n: n - 1,
            ),
        ),
    ),
    "I11": (
        (
            "middle terms collapse to (2n-1)!! - (n-1)!! n!!",
            lambda n_max: next(
                (
                    {"n": n}
                    for n in range(1, n_max + 1)
                    if sum(s_I11(n, k, {}) for k in range(1, n)) != df(2 * n - 1) - df(n - 1) * df(n)
                ),
                None,
            ),
        ),
    ),
}


# ---------------------------------------------------------------------------
# Gessel's integrality problem


def gessel_integer_check(m: int, n: int) -> int:
    """Sum_j C(j+2m-1, j) 2^j C(2n-j, n-j), checked against m!(2n+2m)!/(n!(2m)!(n+m)!).

    Returns the common value; raises ArithmeticError if the two sides differ
    or the closed form is not an integer.
    """
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")
    lhs = sum(binomial(j + 2 * m - 1, j) * 2**j * binomial(2 * n - j, n - j) for j in range(n + 1))
    rhs = Fraction(factorial(m) * factorial(2 * n + 2 * m), factorial(n) * factorial(2 * m) * factorial(n + m))
    if rhs.denominator != 1:
        raise ArithmeticError(f"closed form is not an integer at m={m}, n={n}")
    if lhs != rhs:
        raise ArithmeticError(f"sum {lhs} differs from closed form {rhs} at m={m}, n={n}")
    return lhs
