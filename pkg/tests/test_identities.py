from __future__ import annotations

from math import factorial

import pytest

from dfact import identities as ids
from dfact.exactnum import double_factorial


@pytest.mark.parametrize("identity_id", ids.identity_ids())
def test_formula_layer_to_twenty(identity_id):
    rep = ids.verify_formula(identity_id, 20)
    assert rep.ok, rep.to_text()


@pytest.mark.parametrize("identity_id", ids.identity_ids())
def test_recurrence_layer(identity_id):
    rep = ids.verify_recurrence(identity_id, 12)
    assert rep.ok, rep.to_text()


@pytest.mark.parametrize("identity_id", ids.identity_ids())
def test_enumeration_layer_to_six(identity_id):
    rep = ids.verify_combinatorial(identity_id, 6)
    assert rep.ok, rep.to_text()


@pytest.mark.parametrize("key", sorted(ids.TABLES))
def test_printed_tables_three_ways(key):
    rep = ids.verify_table(key)
    assert rep.ok, rep.to_text()
    assert all(layer.checked for layer in rep.layers.values())


def test_spot_values():
    assert sum(ids.s_I1(5, k, {}) for k in range(5)) == 945
    assert [ids.s_I5(4, k, {}) for k in range(3)] == [24, 72, 9]
    assert sum(ids.s_I15(1, j, {"m": 0}) for j in range(2)) == 4
    # direct substitution into the odd companion at m = n = 1
    assert sum(ids.s_I16(1, j, {"m": 1}) for j in range(2)) == 20
    assert ids.IDENTITIES["I16"].rhs(1, {"m": 1}) == 20


def test_first_descent_suffix_sum():
    # number of paths whose first descent is at least 2, n = 4
    assert 18 + 6 + 24 == 48 == sum(ids.s_I11(4, k, {}) for k in range(2, 5))


def test_rightmost_path_table_includes_empty_tree():
    assert ids.s_I2(0, 0, {}) == 1
    rec = ids.r_I2(5, {})
    assert [rec[5][k] for k in range(1, 6)] == [525, 315, 90, 14, 1]


def test_min_child_table_row_four():
    assert [ids.s_I8(4, k, {}) for k in range(1, 5)] == [48, 35, 14, 8]


def test_i12_row_four_all_interpretations():
    rep = ids.verify_combinatorial("I12", 4)
    assert rep.ok
    assert [ids.s_I12(4, k, {}) for k in range(1, 5)] == [1, 22, 58, 24]


def test_young_leaf_table_rows():
    rows = ids.r_I5_young(4, {})
    assert rows[2] == {1: 3} and rows[3] == {1: 12, 2: 3} and rows[4] == {1: 60, 2: 45}


def test_reversed_first_entry_remarks():
    """The last label-1 upstep reading holds; the maximum child of 1 reading
    first breaks at n = 5 and is reported, not hidden."""
    notes = ids.remark_mismatches("I7", 6)
    assert len(notes) == 1
    assert "maximum child of 1" in notes[0]
    assert '"n": 5' in notes[0]
    rep = ids.verify_combinatorial("I7", 4)
    assert not ids.remark_mismatches("I7", 4) and rep.ok


def test_leaf_one_depth_remark_holds():
    assert not ids.remark_mismatches("I10", 5)


@pytest.mark.parametrize("m", range(11))
def test_gessel_integer_check(m):
    for n in range(11):
        assert ids.gessel_integer_check(m, n) > 0


def test_gessel_values():
    assert ids.gessel_integer_check(1, 1) == 6
    assert ids.gessel_integer_check(0, 1) == 2
    f = factorial
    assert ids.gessel_integer_check(3, 4) == f(3) * f(14) // (f(4) * f(6) * f(7)) == 6006


def test_gessel_rejects_negative():
    with pytest.raises(ValueError):
        ids.gessel_integer_check(-1, 2)


def test_eulerian_explicit_matches_recurrence():
    from dfact.exactnum import second_order_eulerian

    for n in range(1, 10):
        for k in range(1, n + 1):
            assert ids.eulerian2_explicit(n, k) == second_order_eulerian(n, k)


def test_unknown_identity_and_bad_range():
    with pytest.raises(KeyError):
        ids.verify_formula("I99")
    with pytest.raises(ValueError):
        ids.verify_formula("I1", 0)
    with pytest.raises(ValueError):
        ids.verify_recurrence("I1", 1)


def test_report_serialization():
    rep = ids.verify("I3", 8, 6, 4)
    data = rep.to_json()
    assert data["ok"] and set(data["layers"]) == {"formula", "recurrence", "combinatorial"}
    assert "I3" in rep.to_text()


def test_failure_carries_witness():
    bad = ids.IdentityDescriptor(
        "bad",
        "deliberately wrong right side",
        ids.s_I1,
        ids.IDENTITIES["I1"].indices,
        lambda n, p: double_factorial(2 * n - 1) + (n == 3),
    )
    ids.IDENTITIES["bad"] = bad
    try:
        rep = ids.verify_formula("bad", 5)
    finally:
        del ids.IDENTITIES["bad"]
    assert not rep.ok
    assert rep.layers["formula"].witness["n"] == 3
