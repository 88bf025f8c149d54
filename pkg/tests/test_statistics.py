from __future__ import annotations

import pytest

from dfact import statistics as st
from dfact.families import CodingWord, HLDyckPath, IncreasingTree, StirlingPermutation, enumerate_family


def test_every_registered_statistic_evaluates():
    for sid in st.statistic_ids():
        if sid == "low-match-count:r":
            sid = "low-match-count:1"
        d = st.get(sid)
        table = st.distribution(sid, 3)
        assert table.total == sum(1 for _ in enumerate_family(d.family, 3, r=None))


def test_first_entry_table_row_four():
    assert st.distribution("first-entry", 4).to_csv() == "1,48\n2,24\n3,18\n4,15"


def test_descent_row_four():
    assert st.distribution("descent-count", 4).row() == [1, 22, 58, 24]


def test_peak_plus_upstep_free_is_n_plus_one():
    for n in range(1, 7):
        for p in enumerate_family("hl-dyck", n):
            assert st.peak_count(p) + st.upstep_free_vertex_count(p) == n + 1


def test_strong_descents_plus_ascents_is_n_minus_one():
    for n in range(1, 7):
        for p in enumerate_family("stirling", n):
            assert st.strong_descent_count(p) + st.ascent_count(p) == n - 1


def test_statistics_on_small_objects():
    p = StirlingPermutation((1, 2, 2, 3, 3, 1))
    assert st.first_entry(p) == 1
    assert st.plateau_count(p) == 2
    assert st.descent_count(p) == 2
    t = IncreasingTree(((1, 2), (3,), (), ()))
    assert st.root_outdegree(t) == 2
    assert st.leaf_count(t) == 2
    assert st.leftmost_subtree_size(t) == 1
    assert st.smallest_child_of_1(t) == 3
    path = HLDyckPath("UUDUDD", (1, 2, 1))
    assert st.first_ascent_length(path) == 2
    assert st.first_descent_length(path) == 1
    assert st.peak_count(path) == 2


def test_coding_word_statistics():
    w = CodingWord(((1, "Y"), (1, "N"), (2, "N")))
    assert st.coding_y_count(w) == 1
    assert st.coding_n_count_plus_one(w) == 3
    assert st.coding_n_count_plus_one(CodingWord(())) == 0


def test_joint_distribution_marginals():
    joint = st.joint_distribution(["first-ascent-length", "first-descent-length"], 4)
    assert joint.total == 105
    assert joint.marginal(0) == st.distribution("first-ascent-length", 4).counts


def test_joint_statistics_must_share_a_family():
    with pytest.raises(TypeError):
        st.joint_distribution(["first-entry", "leaf-count"], 3)


def test_evaluate_checks_family():
    with pytest.raises(TypeError):
        st.evaluate("leaf-count", StirlingPermutation((1, 1)))


def test_unknown_statistic():
    with pytest.raises(KeyError):
        st.get("no-such-statistic")


def test_distribution_json_shape():
    data = st.distribution("leaf-count", 2).to_json()
    assert data == {"stats": ["leaf-count"], "n": 2, "total": 3, "rows": [{"value": 1, "count": 1}, {"value": 2, "count": 2}]}
