from __future__ import annotations

import json

import pytest

from dfact import families as fam
from dfact.config import BoundExceeded
from dfact.exactnum import double_factorial

CORE = [f.id for f in fam.FAMILIES.values() if f.core]


@pytest.mark.parametrize("family", CORE)
def test_core_counts_are_odd_double_factorials(family):
    for n in range(6):
        assert fam.count_by_enumeration(family, n) == double_factorial(2 * n - 1)


@pytest.mark.parametrize("family", CORE)
def test_objects_validate_and_roundtrip_json(family):
    for obj in fam.enumerate_family(family, 3):
        assert fam.validate(obj).ok
        again = fam.from_json(json.dumps(obj.to_json()))
        assert again == obj


@pytest.mark.parametrize("family", CORE)
def test_enumeration_is_sorted_and_distinct(family):
    objs = list(fam.enumerate_family(family, 4))
    keys = [fam.sort_key(o) for o in objs]
    assert keys == sorted(keys)
    assert len(set(objs)) == len(objs)


def test_independent_generators_agree():
    for n in range(5):
        assert set(fam.stirling_by_insertion(n)) == set(fam.stirling_by_backtracking(n))
        assert set(fam.trees_by_insertion(n)) == set(fam.trees_by_labeling(n))
        assert set(fam.trees02_by_insertion(n)) == set(fam.trees02_by_splitting(n))
        assert set(fam.hl_dyck_by_labeling(n)) == set(fam.hl_dyck_by_insertion(n))


def test_stirling_size_two_listing():
    assert [p.text() for p in fam.enumerate_family("stirling", 2)] == ["1122", "1221", "2211"]


def test_small_family_counts():
    assert fam.count_by_enumeration("dyck-path", 4) == 14
    assert fam.count_by_enumeration("ud-path", 3) == 64
    assert fam.count_by_enumeration("udf", 3) == 64
    assert fam.count_by_enumeration("udf", 2, r=0) == 6
    assert fam.count_by_enumeration("overhang", 2) == 3
    assert fam.count_by_enumeration("udf", 4, r=1) == fam.expected_count("udf", 4, r=1) == 56


def test_validation_rejects_bad_objects():
    assert not fam.validate(fam.StirlingPermutation((1, 2, 1, 2))).ok
    assert not fam.validate(fam.TrapezoidalWord((1, 4))).ok
    assert not fam.validate(fam.HLDyckPath("UUDD", (2, 1))).ok
    assert not fam.validate(fam.OverhangPath("UL")).ok


def test_hl_insertion_and_removal_invert():
    for p in fam.enumerate_family("hl-dyck", 3):
        for v in range(2 * p.size + 1):
            q = fam.hl_dyck_insert(p, v)
            assert fam.validate(q).ok
            assert fam.hl_dyck_remove(q) == (p, v)


def test_text_and_json_parsing():
    assert fam.parse_object("stirling", "5512234431").size == 5
    assert fam.parse_object("hl-dyck", "UUDD;1,2") == fam.HLDyckPath("UUDD", (1, 2))
    assert fam.parse_object("matching", "14/23") == fam.PerfectMatching(((1, 4), (2, 3)))
    assert fam.parse_object("tree", "[[1,2],[],[]]") == fam.IncreasingTree(((1, 2), (), ()))


def test_walkaround_is_preorder():
    t = fam.IncreasingTree(((1, 3), (2,), (), ()))
    assert t.walkaround() == [1, 2, 3]


def test_bound_is_enforced():
    with pytest.raises(BoundExceeded):
        list(fam.enumerate_family("stirling", 7))
    with pytest.raises(BoundExceeded):
        list(fam.enumerate_family("stirling", 9, bound=9))
