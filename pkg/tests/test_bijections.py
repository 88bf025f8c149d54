from __future__ import annotations

from itertools import combinations, permutations

import pytest

from dfact import bijections as bij
from dfact import statistics as st
from dfact.exactnum import binomial, double_factorial
from dfact.families import (
    CodingWord,
    HLDyckPath,
    HLOrderedTree,
    IncreasingTree,
    OverhangPath,
    PerfectMatching,
    StirlingPermutation,
    SymmetricTrapezoidalWord,
    TrapezoidalWord,
    enumerate_family,
    validate,
)

PLAIN = [d for d in bij.BIJECTIONS.values() if not d.needs_k and d.id not in ("maxrec-step", "pfaffian-involution")]


def _lr_splits(n):
    for tau in permutations(range(1, n + 1)):
        k = sum(1 for i, x in enumerate(tau) if x == min(tau[: i + 1]))
        for size in range(n - k + 1):
            for A in combinations(range(1, n - k + 1), size):
                yield bij.LRSplit(A, tau)


def _targets(d, n):
    if d.target == "lr-split":
        return list(_lr_splits(n))
    return list(enumerate_family(d.target, n))


@pytest.mark.parametrize("d", PLAIN, ids=lambda d: d.id)
def test_round_trips_and_exhaustive(d):
    for n in range(6):
        sources = list(enumerate_family(d.source, n))
        images = [d.forward(x) for x in sources]
        for x, y in zip(sources, images):
            assert d.inverse(y) == x
        targets = _targets(d, n)
        assert set(images) == set(targets)
        assert len(set(images)) == len(images)
        for y in targets:
            assert d.forward(d.inverse(y)) == y


@pytest.mark.parametrize("d", [d for d in bij.BIJECTIONS.values() if d.transports], ids=lambda d: d.id)
def test_transports(d):
    for n in range(1, 6):
        for x in enumerate_family(d.source, n):
            y = d.forward(x)
            for s, t in d.transports:
                assert st.evaluate(s, x) == st.evaluate(t, y), (d.id, x, s, t)


# ---------------------------------------------------------------------------
# worked examples


def test_janson_small_cases():
    assert bij.janson(IncreasingTree(((1, 2), (), ()))).text() == "1122"
    assert bij.janson(IncreasingTree(((1,), (2,), ()))).text() == "1221"
    assert bij.janson(IncreasingTree(((2, 1), (), ()))).text() == "2211"


def test_accordion_small_cases():
    assert bij.accordion(HLOrderedTree((0, ((1, ()),)))) == HLDyckPath("UD", (1,))
    assert bij.accordion(HLOrderedTree((0, ((1, ((2, ()),)),)))) == HLDyckPath("UUDD", (1, 2))
    assert bij.accordion(HLOrderedTree((0, ((1, ()), (1, ()))))) == HLDyckPath("UDUD", (1, 1))


def test_overhang_small_cases():
    assert bij.overhang_to_trapezoidal(OverhangPath("UDUD")).text() == "11"
    assert bij.overhang_to_trapezoidal(OverhangPath("UUDD")).text() == "12"
    assert bij.overhang_to_trapezoidal(OverhangPath("ULUDDD")).text() == "13"


def test_hldyck_to_matching_worked_example():
    path = HLDyckPath("UUDDUUUDDUDUUDDD", (1, 2, 1, 1, 3, 1, 2, 2))
    m = bij.hldyck_to_matching(path)
    assert tuple(b for _, b in m.pairs) == (4, 3, 9, 11, 8, 16, 14, 15)
    assert m.text() == "1 4/2 3/5 9/6 11/7 8/10 16/12 14/13 15"
    # b(2) is the first of d = (4, 3), then b(1) = 3
    assert bij.hldyck_to_matching(HLDyckPath("UUDD", (1, 1))).text() == "13/24"
    assert bij.hldyck_to_matching(HLDyckPath("UUDD", (1, 2))).text() == "14/23"


FIG1A = IncreasingTree.from_edges(
    [(0, 5), (0, 1), (0, 2), (2, 14), (2, 3), (2, 4), (4, 6), (5, 13), (6, 8), (6, 11), (6, 7), (7, 9), (7, 10), (8, 12)],
    14,
)


def test_rightpath_split_worked_example():
    pair = bij.rightpath_split(FIG1A, 5)
    assert sorted(pair.tags()) == sorted(["4V", "10V", "3E", "6E", "8E"])
    assert pair.T0.edges() == [(0, 3), (0, 1), (1, 9), (1, 2), (3, 8), (3, 4), (3, 6), (3, 5), (4, 7)]
    assert bij.rightpath_merge(pair) == FIG1A


def test_rightpath_split_k_zero_is_trivial():
    for t in enumerate_family("tree", 3):
        pair = bij.rightpath_split(t, 0)
        assert pair.X == frozenset() and pair.T0 == t


def test_rightpath_split_rejects_short_path():
    with pytest.raises(bij.BijectionError):
        bij.rightpath_split(IncreasingTree(((1,), ())), 2)


def _all_split_pairs(n, k):
    tags = [(v, "V") for v in range(1, n + 1)] + [(i, "E") for i in range(1, n - k + 1)]
    for X in combinations(tags, k):
        for t0 in enumerate_family("tree", n - k):
            yield bij.SplitPair(frozenset(X), t0)


def test_rightpath_split_is_a_bijection_for_all_k():
    for n in range(5):
        for k in range(n + 1):
            domain = [t for t in enumerate_family("tree", n) if st.rightmost_path_length(t) >= k]
            assert len(domain) == binomial(2 * n - k, k) * double_factorial(2 * n - 2 * k - 1)
            images = [bij.rightpath_split(t, k) for t in domain]
            for t, pair in zip(domain, images):
                assert bij.rightpath_merge(pair) == t
            assert set(images) == set(_all_split_pairs(n, k))


def test_rightpath_to_rootchildren():
    out = bij.rightpath_to_rootchildren(IncreasingTree(((1,), ())), 1)
    assert out == IncreasingTree(((1, 2), (), ()))
    t = IncreasingTree(((1, 2), (), ()))
    assert bij.rightpath_to_rootchildren(t, 0) == IncreasingTree(((1,), (2, 3), (), ()))
    for n in range(5):
        for k in range(n + 1):
            domain = [t for t in enumerate_family("tree", n) if st.rightmost_path_length(t) >= k]
            images = {bij.rightpath_to_rootchildren(t, k) for t in domain}
            assert len(images) == len(domain)
            cls = {
                t
                for t in enumerate_family("tree", n + 1)
                if len(t.kids[0]) == k + 1 and list(t.kids[0]) == sorted(t.kids[0]) and t.kids[0][0] == 1
            }
            assert images == cls
            for t in domain:
                assert bij.rootchildren_to_rightpath(bij.rightpath_to_rootchildren(t, k)) == (t, k)


def test_firstascent_tree_worked_example():
    # a = (2,3,0,1,0,0,1) upsteps before each downstep; the i-th downstep's
    # matching upstep carries b(i) from b = (2,3,3,2,1,1,1)
    path = HLDyckPath("UUD" + "UUUD" + "D" + "UD" + "D" + "D" + "UD", (1, 2, 1, 3, 3, 2, 1))
    t = bij.firstascent_tree(path)
    assert t.kids[0] == (5, 1)
    assert t.kids[1] == (4, 2, 3)
    assert t.kids[3] == (6,) and t.kids[6] == (7,)
    assert bij.firstascent_tree_inverse(t) == path
    assert st.root_outdegree(t) == st.first_ascent_length(path) == 2
    assert bij.firstascent_tree(HLDyckPath("UD", (1,))) == IncreasingTree(((1,), ()))


def test_phi_examples_and_involution():
    assert bij.phi(StirlingPermutation(())) == StirlingPermutation(())
    assert bij.phi(StirlingPermutation((1, 1, 2, 2))).text() == "1221"
    for n in range(6):
        for p in enumerate_family("stirling", n):
            q = bij.phi(p)
            assert bij.phi(q) == p
            assert st.descent_count(p) == st.plateau_count(q)
            assert st.plateau_count(p) == st.descent_count(q)


def test_stirling_to_trapezoidal_worked_example():
    assert bij.stirling_to_trapezoidal(StirlingPermutation((5, 5, 1, 2, 2, 3, 4, 4, 3, 1))).text() == "11442"
    assert bij.stirling_to_trapezoidal(StirlingPermutation((1, 1))) == TrapezoidalWord((1,))


def test_coding_maps_examples():
    assert bij.hldyck_to_coding(HLDyckPath("UD", (1,))) == CodingWord(((1, "Y"),))
    assert bij.stirling_to_coding(StirlingPermutation((1, 1))) == CodingWord(((1, "Y"),))
    assert bij.coding_to_symtrapezoidal(CodingWord(((1, "Y"),))) == SymmetricTrapezoidalWord((0,))
    w = CodingWord(((1, "Y"), (1, "N"), (2, "Y"), (5, "N"), (2, "N"), (3, "Y")))
    assert validate(w).ok
    assert bij.coding_to_symtrapezoidal(w) == SymmetricTrapezoidalWord((0, 0, -2, 3, 0, -4))


def test_coding_counts_track_n_letters_not_y_letters():
    """Upstep-free vertices and descents both equal 1 + #N; the Y count is not preserved."""
    mismatch = 0
    for n in range(1, 6):
        for p in enumerate_family("hl-dyck", n):
            w = bij.hldyck_to_coding(p)
            assert st.upstep_free_vertex_count(p) == st.coding_n_count_plus_one(w)
            mismatch += st.upstep_free_vertex_count(p) != st.coding_y_count(w)
        for s in enumerate_family("stirling", n):
            assert st.descent_count(s) == st.coding_n_count_plus_one(bij.stirling_to_coding(s))
    assert mismatch > 0


def test_lr_minima_split_worked_example():
    sigma = (1, 2, 5, 5, 2, 1, 4, 4, 3, 3)
    codes = bij.lr_minima_codes(sigma)
    assert {j: i for j, (i, _) in codes.items()} == {2: 1, 3: 1, 4: 1, 5: 2}
    split = bij.lr_minima_split(StirlingPermutation(sigma))
    assert split.tau == (1, 4, 3, 2, 5)
    assert bij.lr_minima_merge(split) == StirlingPermutation(sigma)
    assert bij.lr_minima_split(StirlingPermutation((1, 1))) == bij.LRSplit((), (1,))


def test_fertility_tree_worked_example():
    path = HLDyckPath("UUUUDDUDUUUDDDDUUDDD", (1, 2, 1, 2, 3, 2, 1, 5, 1, 3))
    t = bij.fertility_tree(path)
    assert sorted(t.edges()) == sorted(
        [(0, 3), (0, 5), (0, 1), (0, 2), (2, 7), (3, 6), (3, 4), (3, 9), (7, 8), (7, 10)]
    )
    assert bij.fertility_tree_inverse(t) == path


def test_maxrec_step_fills_each_class_injectively():
    table4 = {5: 48, 4: 35, 3: 14, 2: 8}
    for n in range(3, 6):
        for k in range(3, n + 1):
            images = []
            for q in enumerate_family("stirling", n - 1):
                if bij.max_before_first_1(q.entries) == k - 1:
                    images += [bij.maxrec_step(q, s) for s in range(1, 2 * n)]
            assert len(set(images)) == len(images)
            cls = {p for p in enumerate_family("stirling", n) if bij.max_before_first_1(p.entries) == k}
            assert set(images) == cls
            if n == 4:
                assert len(cls) == table4[k]


def test_maxrec_preimage_inverts_step():
    for q in enumerate_family("stirling", 3):
        if bij.max_before_first_1(q.entries) == 2:
            for s in range(1, 8):
                assert bij.maxrec_preimage(bij.maxrec_step(q, s)) == (q, s)


def test_pfaffian_involution():
    assert bij.pfaffian_involution(PerfectMatching(((1, 2), (3, 4)))) is None
    m = PerfectMatching(((1, 3), (2, 4)))
    assert bij.pfaffian_involution(m) == PerfectMatching(((1, 4), (2, 3)))
    for n in range(1, 6):
        fixed = 0
        for m in enumerate_family("matching", n):
            img = bij.pfaffian_involution(m)
            if img is None:
                fixed += 1
            else:
                assert bij.pfaffian_involution(img) == m
        assert fixed == 1


def test_standardize_relabels_in_order():
    kids = {0: [7], 7: [3, 9], 3: [], 9: []}
    # labels are relabeled by rank: 0->0, 3->1, 7->2, 9->3
    assert bij.standardize(kids) == IncreasingTree(((2,), (), (1, 3), ()))


def test_unknown_bijection():
    with pytest.raises(KeyError):
        bij.get("nope")
