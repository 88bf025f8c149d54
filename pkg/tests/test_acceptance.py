"""Acceptance suite: one PASS/FAIL line per criterion.

Runs under pytest (lines are printed with capture disabled) or directly with
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time

import pytest

from dfact import bijections as bij
from dfact import families as fam
from dfact import hafnian as haf
from dfact import identities as ids
from dfact import series as ser
from dfact import statistics as st
from dfact.config import DEFAULT_SEED
from dfact.exactnum import binomial, double_factorial
from dfact.families import (
    CodingWord,
    HLDyckPath,
    IncreasingTree,
    StirlingPermutation,
    SymmetricTrapezoidalWord,
)

PLAIN = [d for d in bij.BIJECTIONS.values() if not d.needs_k and d.id not in ("maxrec-step", "pfaffian-involution")]


def _lr_splits(n):
    from itertools import combinations, permutations

    for tau in permutations(range(1, n + 1)):
        k = sum(1 for i, x in enumerate(tau) if x == min(tau[: i + 1]))
        for size in range(n - k + 1):
            for A in combinations(range(1, n - k + 1), size):
                yield bij.LRSplit(A, tau)


def _split_pairs(n, k):
    from itertools import combinations

    tags = [(v, "V") for v in range(1, n + 1)] + [(i, "E") for i in range(1, n - k + 1)]
    for X in combinations(tags, k):
        for t0 in fam.enumerate_family("tree", n - k):
            yield bij.SplitPair(frozenset(X), t0)


# ---------------------------------------------------------------------------
# criteria


def criterion_cardinality():
    start = time.perf_counter()
    core = [f.id for f in fam.FAMILIES.values() if f.core]
    for f in core:
        for n in range(7):
            got = fam.count_by_enumeration(f, n)
            if got != double_factorial(2 * n - 1):
                return False, f"{f} n={n}: {got}"
    elapsed = time.perf_counter() - start
    return elapsed < 60, f"{len(core)} families, n=0..6, {elapsed:.1f}s"


def criterion_tables():
    for key in sorted(ids.TABLES):
        rep = ids.verify_table(key)
        if not rep.ok:
            return False, rep.to_text()
    return True, f"{len(ids.TABLES)} printed triangles by formula, recurrence and enumeration"


def criterion_identities():
    for iid in ids.identity_ids():
        for rep in (ids.verify_formula(iid, 20), ids.verify_combinatorial(iid, 6)):
            if not rep.ok:
                return False, rep.to_text()
    return True, f"{len(ids.identity_ids())} identities, formula n<=20, enumeration n<=6"


def _worked_examples():
    m = bij.hldyck_to_matching(HLDyckPath("UUDDUUUDDUDUUDDD", (1, 2, 1, 1, 3, 1, 2, 2)))
    assert tuple(b for _, b in m.pairs) == (4, 3, 9, 11, 8, 16, 14, 15)
    fig1a = IncreasingTree.from_edges(
        [(0, 5), (0, 1), (0, 2), (2, 14), (2, 3), (2, 4), (4, 6), (5, 13), (6, 8), (6, 11), (6, 7), (7, 9), (7, 10), (8, 12)],
        14,
    )
    assert sorted(bij.rightpath_split(fig1a, 5).tags()) == sorted(["4V", "10V", "3E", "6E", "8E"])
    path = HLDyckPath("UUDUUUDDUDDDUD", (1, 2, 1, 3, 3, 2, 1))
    t = bij.firstascent_tree(path)
    assert t.kids[0] == (5, 1) and t.kids[1] == (4, 2, 3) and bij.firstascent_tree_inverse(t) == path
    assert bij.stirling_to_trapezoidal(StirlingPermutation((5, 5, 1, 2, 2, 3, 4, 4, 3, 1))).text() == "11442"
    path = HLDyckPath("UUUUDDUDUUUDDDDUUDDD", (1, 2, 1, 2, 3, 2, 1, 5, 1, 3))
    assert sorted(bij.fertility_tree(path).edges()) == sorted(
        [(0, 3), (0, 5), (0, 1), (0, 2), (2, 7), (3, 6), (3, 4), (3, 9), (7, 8), (7, 10)]
    )
    w = CodingWord(((1, "Y"), (1, "N"), (2, "Y"), (5, "N"), (2, "N"), (3, "Y")))
    assert bij.coding_to_symtrapezoidal(w) == SymmetricTrapezoidalWord((0, 0, -2, 3, 0, -4))


def criterion_bijections():
    checked = 0
    for d in PLAIN:
        for n in range(6):
            sources = list(fam.enumerate_family(d.source, n))
            images = [d.forward(x) for x in sources]
            targets = list(_lr_splits(n)) if d.target == "lr-split" else list(fam.enumerate_family(d.target, n))
            if set(images) != set(targets) or len(set(images)) != len(images):
                return False, f"{d.id} not onto at n={n}"
            for x, y in zip(sources, images):
                if d.inverse(y) != x:
                    return False, f"{d.id} inverse fails on {x}"
                if n >= 1:
                    for s, t in d.transports:
                        if st.evaluate(s, x) != st.evaluate(t, y):
                            return False, f"{d.id} does not carry {s} to {t} on {x}"
                checked += 1
    for n in range(5):
        for k in range(n + 1):
            domain = [t for t in fam.enumerate_family("tree", n) if st.rightmost_path_length(t) >= k]
            images = [bij.rightpath_split(t, k) for t in domain]
            if any(bij.rightpath_merge(p) != t for t, p in zip(domain, images)):
                return False, f"rightpath-split inverse fails n={n} k={k}"
            if set(images) != set(_split_pairs(n, k)) or len(domain) != binomial(2 * n - k, k) * double_factorial(
                2 * n - 2 * k - 1
            ):
                return False, f"rightpath-split not onto n={n} k={k}"
            for t in domain:
                if bij.rootchildren_to_rightpath(bij.rightpath_to_rootchildren(t, k)) != (t, k):
                    return False, f"rightpath-to-rootchildren fails n={n} k={k}"
            checked += len(domain)
    for n in range(2, 6):
        for q in fam.enumerate_family("stirling", n - 1):
            if 2 <= bij.max_before_first_1(q.entries) <= n - 1:
                for s in range(1, 2 * n):
                    if bij.maxrec_preimage(bij.maxrec_step(q, s)) != (q, s):
                        return False, f"maxrec-step fails on {q} slot {s}"
        for m in fam.enumerate_family("matching", n):
            img = bij.pfaffian_involution(m)
            if img is not None and bij.pfaffian_involution(img) != m:
                return False, f"pfaffian involution fails on {m}"
    try:
        _worked_examples()
    except AssertionError:
        return False, "a worked example regressed"
    return True, f"{len(bij.BIJECTIONS)} bijections, {checked} round trips, worked examples fixed"


def criterion_hafnian():
    for n in range(1, 5):
        rng = random.Random(DEFAULT_SEED + n)
        for _ in range(50):
            x = [rng.randint(-9, 9) for _ in range(2 * n - 1)]
            T = haf.UpperTriangularArray.constant_rows(x)
            if haf.hafnian_constant_rows(x) != haf.hafnian_bruteforce(T):
                return False, f"hafnian x={x}"
            if haf.pfaffian_constant_rows(x) != haf.pfaffian_bruteforce(T):
                return False, f"pfaffian x={x}"
    for n in range(1, 7):
        ones = haf.UpperTriangularArray.from_function(n, lambda i, j: 1)
        rows = haf.UpperTriangularArray.from_function(n, lambda i, j: i)
        if haf.hafnian_bruteforce(ones) != double_factorial(2 * n - 1):
            return False, f"all-ones hafnian n={n}"
        if haf.pfaffian_bruteforce(rows) != double_factorial(2 * n - 1):
            return False, f"row-index pfaffian n={n}"
    return True, f"200 seeded vectors (seed {DEFAULT_SEED}+n), closed cases n<=6"


def criterion_series():
    for gid in ser.gf_ids():
        rep = ser.gf_check(gid, 8)
        if not rep.ok:
            return False, rep.to_text()
    if not ser.row_polynomial_check(8).ok:
        return False, "row polynomial"
    return True, f"{len(ser.gf_ids())} generating functions to n=8, {len(ser.EXCLUDED)} excluded with reason"


def criterion_gessel():
    try:
        for m in range(11):
            for n in range(11):
                ids.gessel_integer_check(m, n)
    except ArithmeticError as exc:
        return False, str(exc)
    return True, "0<=m,n<=10"


def criterion_properties():
    for n in range(6):
        for p in fam.enumerate_family("stirling", n):
            q = bij.phi(p)
            if bij.phi(q) != p or st.descent_count(p) != st.plateau_count(q):
                return False, f"phi on {p}"
    for n in range(1, 7):
        for p in fam.enumerate_family("hl-dyck", n):
            if st.peak_count(p) + st.upstep_free_vertex_count(p) != n + 1:
                return False, f"peaks on {p}"
        for p in fam.enumerate_family("stirling", n):
            if st.strong_descent_count(p) + st.ascent_count(p) != n - 1:
                return False, f"ascents on {p}"
    for n in range(7):
        if fam.count_by_enumeration("coding-word", n) != double_factorial(2 * n - 1):
            return False, f"coding words n={n}"
    if ids.remark_mismatches("I10", 5):
        return False, "leaf-one depth remark"
    return True, "phi n<=5; peaks, ascents and coding words n<=6; leaf-one depth remark n<=5"


CRITERIA = [
    (1, "cardinality", criterion_cardinality),
    (2, "table reproduction", criterion_tables),
    (3, "identity verification", criterion_identities),
    (4, "bijection round trips", criterion_bijections),
    (5, "hafnian and pfaffian", criterion_hafnian),
    (6, "series", criterion_series),
    (7, "gessel integrality", criterion_gessel),
    (8, "property suites", criterion_properties),
]


def _line(num, name, ok, detail):
    return f"criterion {num} {name}: {'PASS' if ok else 'FAIL'} ({detail})"


@pytest.mark.parametrize("num,name,check", CRITERIA, ids=[c[1].replace(" ", "-") for c in CRITERIA])
def test_criterion(num, name, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(num, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = [(num, name, *check()) for num, name, check in CRITERIA]
    for r in results:
        print(_line(*r))
    sys.exit(0 if all(r[2] for r in results) else 1)
