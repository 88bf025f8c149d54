"""Truncated multivariate power series over the rationals, and a registry of
closed-form generating functions checked against their integer triangles.

A series in variables (x, y[, z]) keeps only monomials whose exponent in
each variable is below that variable's order.  Those monomials span an
ideal, so arithmetic in the quotient is exact.  Unary functions are computed
by recurrences on total degree (the Euler operator sum v d/dv), which hold in
any graded quotient.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable

from . import identities as ids
from .exactnum import double_factorial

DEFAULT_ORDERS = (16, 16, 8)


class SeriesError(ArithmeticError):
    pass


def _shape_check(orders: tuple[int, ...]) -> None:
    if any(o < 1 for o in orders):
        raise ValueError("truncation orders must be at least 1")


@dataclass(frozen=True)
class TruncatedSeries:
    variables: tuple[str, ...]
    orders: tuple[int, ...]
    coeffs: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        _shape_check(self.orders)
        if len(self.variables) != len(self.orders):
            raise ValueError("one order per variable")
        clean = {}
        for e, c in self.coeffs.items():
            c = Fraction(c)
            if c and self._fits(e):
                clean[tuple(e)] = c
        object.__setattr__(self, "coeffs", clean)

    def _fits(self, e) -> bool:
        return all(0 <= a < o for a, o in zip(e, self.orders))

    # construction

    @classmethod
    def constant(cls, variables, orders, c) -> "TruncatedSeries":
        return cls(tuple(variables), tuple(orders), {(0,) * len(variables): c})

    @classmethod
    def variable(cls, variables, orders, name) -> "TruncatedSeries":
        e = tuple(1 if v == name else 0 for v in variables)
        return cls(tuple(variables), tuple(orders), {e: 1})

    def _new(self, coeffs) -> "TruncatedSeries":
        return TruncatedSeries(self.variables, self.orders, coeffs)

    # access

    def __getitem__(self, e) -> Fraction:
        return self.coeffs.get(tuple(e), Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self[(0,) * len(self.variables)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.variables == other.variables and self.orders == other.orders and self.coeffs == other.coeffs

    def truncate(self, orders) -> "TruncatedSeries":
        return TruncatedSeries(self.variables, tuple(orders), self.coeffs)

    # ring operations

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            if other.variables != self.variables or other.orders != self.orders:
                raise ValueError("series have different variables or orders")
            return other
        return TruncatedSeries.constant(self.variables, self.orders, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        orders = self.orders
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if all(a < o for a, o in zip(e, orders)):
                    out[e] = out.get(e, 0) + c1 * c2
        return self._new(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("use power() for non-integer exponents")
        if k < 0:
            return self.inverse() ** (-k)
        out = TruncatedSeries.constant(self.variables, self.orders, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # graded helpers

    def _graded(self) -> list[dict]:
        top = sum(o - 1 for o in self.orders)
        parts: list[dict] = [dict() for _ in range(top + 1)]
        for e, c in self.coeffs.items():
            parts[sum(e)][e] = c
        return parts

    def _graded_solve(self, f0: Fraction, step: Callable[[int, list[dict], list[dict]], dict]) -> "TruncatedSeries":
        """Build f degree by degree; ``step(d, g, f)`` returns the degree-d part."""
        g = self._graded()
        f: list[dict] = [{(0,) * len(self.variables): f0} if f0 else {}]
        for d in range(1, len(g)):
            f.append(step(d, g, f))
        out = {}
        for part in f:
            out.update(part)
        return self._new(out)

    def _conv(self, a: dict, b: dict, acc: dict, scale=1) -> None:
        orders = self.orders
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                if all(x < o for x, o in zip(e, orders)):
                    acc[e] = acc.get(e, 0) + scale * c1 * c2

    def inverse(self) -> "TruncatedSeries":
        c0 = self.constant_term
        if c0 == 0:
            raise SeriesError("division by a series with zero constant term")

        def step(d, g, f):
            acc: dict = {}
            for j in range(1, d + 1):
                self._conv(g[j], f[d - j], acc)
            return {e: -c / c0 for e, c in acc.items() if c}

        return self._graded_solve(1 / c0, step)

    def power(self, alpha) -> "TruncatedSeries":
        """(1 + u)^alpha for a rational constant alpha."""
        alpha = Fraction(alpha)
        if self.constant_term != 1:
            raise SeriesError("rational powers need constant term 1")

        def step(d, g, f):
            acc: dict = {}
            for j in range(1, d + 1):
                self._conv(g[j], f[d - j], acc, alpha * j - (d - j))
            return {e: c / d for e, c in acc.items() if c}

        return self._graded_solve(Fraction(1), step)

    def sqrt(self) -> "TruncatedSeries":
        return self.power(Fraction(1, 2))

    def exp(self) -> "TruncatedSeries":
        if self.constant_term != 0:
            raise SeriesError("exp needs an argument with zero constant term")

        def step(d, g, f):
            acc: dict = {}
            for j in range(1, d + 1):
                self._conv(g[j], f[d - j], acc, j)
            return {e: c / d for e, c in acc.items() if c}

        return self._graded_solve(Fraction(1), step)

    def log(self) -> "TruncatedSeries":
        """log of a series with constant term 1."""
        if self.constant_term != 1:
            raise SeriesError("log needs constant term 1")

        def step(d, g, f):
            acc: dict = {e: d * c for e, c in g[d].items()}
            for j in range(1, d):
                self._conv(f[j], g[d - j], acc, -j)
            return {e: c / d for e, c in acc.items() if c}

        return self._graded_solve(Fraction(0), step)

    def power_series_exponent(self, exponent: "TruncatedSeries") -> "TruncatedSeries":
        """self ** exponent computed as exp(exponent * log(self))."""
        return (self._coerce(exponent) * self.log()).exp()

    def divide_by_variable(self, name: str) -> "TruncatedSeries":
        """Exact division by a variable; the result loses one order there."""
        i = self.variables.index(name)
        out = {}
        for e, c in self.coeffs.items():
            if e[i] == 0:
                raise SeriesError(f"series is not divisible by {name}")
            out[e[:i] + (e[i] - 1,) + e[i + 1 :]] = c
        orders = self.orders[:i] + (self.orders[i] - 1,) + self.orders[i + 1 :]
        return TruncatedSeries(self.variables, orders, out)

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "orders": list(self.orders),
            "coefficients": [[list(e), str(c)] for e, c in sorted(self.coeffs.items())],
        }


# ---------------------------------------------------------------------------
# expression trees


class Expr:
    def evaluate(self, variables, orders) -> TruncatedSeries:
        raise NotImplementedError

    def __add__(self, o):
        return Op("+", (self, _lift(o)))

    def __radd__(self, o):
        return Op("+", (_lift(o), self))

    def __sub__(self, o):
        return Op("-", (self, _lift(o)))

    def __rsub__(self, o):
        return Op("-", (_lift(o), self))

    def __mul__(self, o):
        return Op("*", (self, _lift(o)))

    def __rmul__(self, o):
        return Op("*", (_lift(o), self))

    def __truediv__(self, o):
        return Op("/", (self, _lift(o)))

    def __rtruediv__(self, o):
        return Op("/", (_lift(o), self))

    def __neg__(self):
        return Op("-", (Const(0), self))


def _lift(o) -> Expr:
    return o if isinstance(o, Expr) else Const(Fraction(o))


@dataclass(frozen=True, eq=False)
class Const(Expr):
    value: Fraction

    def evaluate(self, variables, orders):
        return TruncatedSeries.constant(variables, orders, self.value)

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True, eq=False)
class Var(Expr):
    name: str

    def evaluate(self, variables, orders):
        return TruncatedSeries.variable(variables, orders, self.name)

    def __str__(self):
        return self.name


@dataclass(frozen=True, eq=False)
class Op(Expr):
    op: str
    args: tuple

    def evaluate(self, variables, orders):
        if self.op == "divvar":
            (inner, name) = self.args
            i = variables.index(name)
            bigger = tuple(o + 1 if j == i else o for j, o in enumerate(orders))
            return inner.evaluate(variables, bigger).divide_by_variable(name)
        vals = [a.evaluate(variables, orders) for a in self.args if isinstance(a, Expr)]
        if self.op == "+":
            return vals[0] + vals[1]
        if self.op == "-":
            return vals[0] - vals[1]
        if self.op == "*":
            return vals[0] * vals[1]
        if self.op == "/":
            return vals[0] / vals[1]
        if self.op == "sqrt":
            return vals[0].sqrt()
        if self.op == "exp":
            return vals[0].exp()
        if self.op == "log":
            return vals[0].log()
        if self.op == "powq":
            return vals[0].power(self.args[1])
        if self.op == "pow":
            return vals[0].power_series_exponent(vals[1])
        raise ValueError(self.op)

    def __str__(self):
        a = self.args
        if self.op in "+-*/":
            return f"({a[0]} {self.op} {a[1]})"
        if self.op == "divvar":
            return f"({a[0]}) / {a[1]}"
        if self.op == "powq":
            return f"({a[0]})^({a[1]})"
        if self.op == "pow":
            return f"({a[0]})^({a[1]})"
        return f"{self.op}({a[0]})"


def sqrt(e) -> Expr:
    return Op("sqrt", (_lift(e),))


def exp(e) -> Expr:
    return Op("exp", (_lift(e),))


def log(e) -> Expr:
    return Op("log", (_lift(e),))


def powq(e, alpha) -> Expr:
    return Op("powq", (_lift(e), Fraction(alpha)))


def pow_series(base, exponent) -> Expr:
    return Op("pow", (_lift(base), _lift(exponent)))


def div_var(e, name: str) -> Expr:
    return Op("divvar", (_lift(e), name))


X, Y, Z = Var("x"), Var("y"), Var("z")


# ---------------------------------------------------------------------------
# generating function registry


@dataclass(frozen=True)
class Normalization:
    """Coefficient of x^(n-a)/(n-a)! y^(i-b) [z^(j-c)] is triangle entry (n, i[, j])."""

    x_shift: int
    shifts: tuple[int, ...]

    def exponent(self, n: int, idx: tuple[int, ...]) -> tuple[int, ...]:
        return (n - self.x_shift,) + tuple(i - s for i, s in zip(idx, self.shifts))

    def index(self, e: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
        return e[0] + self.x_shift, tuple(a + s for a, s in zip(e[1:], self.shifts))

    def describe(self, variables) -> str:
        a = self.x_shift
        parts = [f"x^(n-{a})/(n-{a})!" if a else "x^n/n!"]
        for v, s in zip(variables[1:], self.shifts):
            parts.append(f"{v}^(k-{s})" if s else f"{v}^k")
        return " ".join(parts)


@dataclass(frozen=True)
class GFDescriptor:
    id: str
    description: str
    expr: Expr
    variables: tuple[str, ...]
    normalization: Normalization
    triangle: Callable[[int, tuple[int, ...]], int]
    n_min: int
    identity: str

    def formula(self) -> str:
        return str(self.expr)


@dataclass(frozen=True)
class ExcludedGF:
    id: str
    identity: str
    reason: str


def _summand(identity_id: str, params: dict | None = None, pair: bool = False):
    d = ids.get(identity_id)
    p = params or {}

    def entry(n, idx):
        k = idx if pair else idx[0]
        valid = set(d.indices(n, p))
        return d.summand(n, k, p) if k in valid else 0

    return entry


def _swapped(entry):
    """The exponent of y carries the second triangle index, z the first."""
    return lambda n, idx: entry(n, (idx[1], idx[0]))


def _g5(r: int):
    base = (1 - X) * (1 - X) - X * X * Y
    return double_factorial(2 * r - 1) * powq(base, Fraction(-(2 * r + 1), 2))


_S = sqrt(1 - 2 * X)

GENERATING_FUNCTIONS: dict[str, GFDescriptor] = {}
EXCLUDED: dict[str, ExcludedGF] = {}


def _gf(*args) -> None:
    GENERATING_FUNCTIONS[args[0]] = GFDescriptor(*args)


_gf(
    "G1",
    "trees by leftmost subtree size",
    div_var(1 - sqrt(1 - 2 * X * Y), "y") / _S,
    ("x", "y"),
    Normalization(0, (0,)),
    _summand("I1"),
    1,
    "I1",
)
_gf(
    "G2",
    "trees by rightmost path length",
    div_var(1 - (1 - Y) * exp(Y * (1 - _S)), "y") / _S,
    ("x", "y"),
    Normalization(0, (0,)),
    _summand("I2"),
    0,
    "I2",
)
_gf(
    "G3",
    "trees by maximum young leaf",
    (1 - X * Y) / ((1 - X) * powq(1 - 2 * X * Y, Fraction(3, 2))),
    ("x", "y"),
    Normalization(1, (1,)),
    _summand("I3"),
    1,
    "I3",
)
for _r in range(0, 4):
    _gf(
        f"G5:{_r}",
        f"perfect matchings by matches with both entries <= n + {_r}",
        _g5(_r),
        ("x", "y"),
        Normalization(_r, (_r,)),
        _summand("I5", {"r": _r}),
        _r,
        "I5",
    )
_gf(
    "G7",
    "Stirling permutations by first entry",
    1 / ((1 - 2 * X) * sqrt(1 - 2 * X * Y)),
    ("x", "y"),
    Normalization(1, (1,)),
    _summand("I7"),
    1,
    "I7",
)
_gf(
    "G10a",
    "trees by root outdegree, empty tree included",
    (1 - Y - Y * _S) / (1 - 2 * Y + 2 * X * Y * Y),
    ("x", "y"),
    Normalization(0, (0,)),
    _summand("I10"),
    0,
    "I10",
)
_gf(
    "G10b",
    "trees by root outdegree, shifted",
    1 / (_S * (1 - Y + Y * _S) * (1 - Y + Y * _S)),
    ("x", "y"),
    Normalization(1, (1,)),
    _summand("I10"),
    1,
    "I10",
)
_gf(
    "G13",
    "Stirling cycle numbers weighted by 2^(n-k)",
    pow_series(1 - 2 * X, -Y / 2),
    ("x", "y"),
    Normalization(0, (0,)),
    _summand("I13"),
    0,
    "I13",
)
_gf(
    "G-rtm",
    "trees by right-then-minimal path length",
    Y * (1 - pow_series(1 - 2 * X, 1 - Y / 2)) / ((2 - Y) * _S),
    ("x", "y"),
    Normalization(0, (0,)),
    _summand("I-rtm"),
    1,
    "I-rtm",
)
_gf(
    "G-ref1",
    "trees by terminal leaf of the minimal path (y) and its length (z)",
    1 / ((1 - 2 * X) * pow_series(1 - 2 * X * Y, Z / 2)),
    ("x", "y", "z"),
    Normalization(1, (1, 1)),
    _swapped(_summand("I-ref-minpath", pair=True)),
    1,
    "I-ref-minpath",
)
_gf(
    "G-ref2",
    "HL paths by first ascent length (y) and the 1s on it (z)",
    pow_series((1 - Y - Y * _S) / (1 - 2 * Y + 2 * X * Y * Y), Z),
    ("x", "y", "z"),
    Normalization(0, (0, 0)),
    _swapped(lambda n, jk: int(jk == (0, 0)) if n == 0 else _summand("I-ref-ascent-ones", pair=True)(n, jk)),
    0,
    "I-ref-ascent-ones",
)
_gf(
    "G-ref3",
    "HL paths by first peak label (y) and first ascent length (z)",
    1 / (_S * (1 - Y * Z + Y * Z * _S) * (1 - Z + Z * _S)),
    ("x", "y", "z"),
    Normalization(1, (1, 1)),
    _summand("I-ref-ascdesc", pair=True),
    1,
    "I-ref-ascdesc",
)

for _id, _ident, _why in (
    (
        "G8",
        "I8",
        "both closed forms involve arctan with sqrt(y - y^2) or sqrt(y - 1), "
        "square roots of arguments without unit constant term",
    ),
    ("G9", "I9", "the closed form involves sqrt(y) and a log whose argument lacks unit constant term"),
):
    EXCLUDED[_id] = ExcludedGF(_id, _ident, _why)


def get(gf_id: str) -> GFDescriptor:
    if gf_id in EXCLUDED:
        raise KeyError(f"{gf_id} is excluded: {EXCLUDED[gf_id].reason}")
    try:
        return GENERATING_FUNCTIONS[gf_id]
    except KeyError:
        raise KeyError(f"unknown generating function {gf_id!r}") from None


def gf_ids() -> list[str]:
    return list(GENERATING_FUNCTIONS)


def _orders_for(gf: GFDescriptor, orders) -> tuple[int, ...]:
    if orders is None:
        orders = DEFAULT_ORDERS
    orders = tuple(orders)
    if len(orders) < len(gf.variables):
        raise ValueError(f"{gf.id} needs {len(gf.variables)} orders")
    orders = orders[: len(gf.variables)]
    _shape_check(orders)
    return orders


def series_eval(gf: GFDescriptor | str, orders=None) -> TruncatedSeries:
    """Exact truncated expansion of a registered generating function."""
    if isinstance(gf, str):
        gf = get(gf)
    orders = _orders_for(gf, orders)
    return gf.expr.evaluate(gf.variables, orders)


def normalized_triangle(gf: GFDescriptor | str, n_max: int, orders=None) -> dict[int, dict]:
    """{n: {index: entry}} read from the series, nonzero entries only."""
    if isinstance(gf, str):
        gf = get(gf)
    orders = orders or checking_orders(gf, n_max)
    s = series_eval(gf, orders)
    out: dict[int, dict] = {}
    for e, c in s.coeffs.items():
        n, idx = gf.normalization.index(e)
        if n > n_max:
            continue
        val = c * factorial(e[0])
        if val.denominator != 1:
            raise SeriesError(f"non-integral normalized coefficient {val} at {e}")
        out.setdefault(n, {})[idx if len(idx) > 1 else idx[0]] = val.numerator
    return {n: dict(sorted(out[n].items())) for n in sorted(out)}


def checking_orders(gf: GFDescriptor, n_max: int) -> tuple[int, ...]:
    """Orders big enough to see every entry with n <= n_max, plus one spare."""
    return (n_max - gf.normalization.x_shift + 1,) + (n_max + 2,) * (len(gf.variables) - 1)


def gf_check(gf: GFDescriptor | str, n_max: int = 8, orders=None) -> ids.VerificationReport:
    """Compare every normalized coefficient with n <= n_max against the triangle."""
    if isinstance(gf, str):
        gf = get(gf)
    need = checking_orders(gf, n_max)
    orders = tuple(orders) if orders is not None else need
    if orders[0] < need[0] or any(o < n_max + 1 for o in orders[1:]):
        raise ValueError(f"orders {orders} too small for n_max={n_max}; need at least {need}")
    s = series_eval(gf, orders)
    res = ids.LayerResult("pass")
    inner = [range(o) for o in orders[1:]]
    for n in range(gf.n_min, n_max + 1):
        a = n - gf.normalization.x_shift
        if a < 0:
            continue
        for rest in _product(inner):
            e = (a,) + rest
            _, idx = gf.normalization.index(e)
            if any(i < 0 for i in idx):
                continue
            got = s[e] * factorial(a)
            want = gf.triangle(n, idx)
            res.checked += 1
            if got != want:
                res.fail(n=n, index=list(idx), series=str(got), triangle=want)
    res.notes.append(f"orders {list(orders)}; normalization {gf.normalization.describe(gf.variables)}")
    return ids.VerificationReport(gf.id, n_max, {"series": res})


def _product(ranges: list[Iterable]) -> Iterable[tuple]:
    if not ranges:
        yield ()
        return
    for a in ranges[0]:
        for rest in _product(ranges[1:]):
            yield (a,) + rest


def row_polynomial_check(n_max: int = 8) -> ids.VerificationReport:
    """Row n of the weighted cycle-number triangle against prod_{i<n} (x + 2i)."""
    tri = normalized_triangle("G13", n_max)
    res = ids.LayerResult("pass")
    for n in range(n_max + 1):
        poly = TruncatedSeries.constant(("x",), (n + 1,), 1)
        xv = TruncatedSeries.variable(("x",), (n + 1,), "x")
        for i in range(n):
            poly = poly * (xv + 2 * i)
        want = {e[0]: int(c) for e, c in poly.coeffs.items()}
        res.checked += 1
        if tri.get(n, {}) != want:
            res.fail(n=n, series_row=tri.get(n, {}), product=want)
    return ids.VerificationReport("G13-rows", n_max, {"row-polynomial": res})


def triangle_csv(gf: GFDescriptor | str, n_max: int) -> str:
    """Normalized triangle as CSV rows n,index...,value."""
    if isinstance(gf, str):
        gf = get(gf)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for n, row in normalized_triangle(gf, n_max).items():
        for idx, v in row.items():
            w.writerow([n, *(idx if isinstance(idx, tuple) else (idx,)), v])
    return buf.getvalue()


def triangle_json(gf: GFDescriptor | str, n_max: int) -> str:
    if isinstance(gf, str):
        gf = get(gf)
    tri = normalized_triangle(gf, n_max)
    rows = {str(n): [[*(i if isinstance(i, tuple) else (i,)), v] for i, v in row.items()] for n, row in tri.items()}
    return json.dumps({"id": gf.id, "formula": gf.formula(), "rows": rows}, sort_keys=True)
