"""Dimension formula, shift preorder, containments, and the rank-2 catalog."""

from itertools import product

import pytest

from convalg import (
    all_subspaces,
    catalog_rank_two,
    full_space,
    ideal_basis,
    ideal_dimension_formula,
    preorder_leq,
    span_of_strings,
    verify_containment,
    zero_subspace,
)
from convalg.errors import InvalidInputError

Z2 = zero_subspace(2)
E2 = full_space(2)
W1 = span_of_strings(["10"], 2)
W2 = span_of_strings(["01"], 2)


def test_dimension_formula_frozen_values():
    counts = {c: 1 for c in all_subspaces(2)}  # one orbit per stratum
    assert ideal_dimension_formula(Z2, Z2, counts) == 11
    assert ideal_dimension_formula(W1, W1, counts) == 10
    assert ideal_dimension_formula(E2, E2, counts) == 11
    assert ideal_dimension_formula(Z2, W1, counts) == 7
    assert ideal_dimension_formula(W1, Z2, counts) == 7
    assert ideal_dimension_formula(Z2, E2, counts) == 5
    assert ideal_dimension_formula(E2, Z2, counts) == 5


def test_dimension_formula_ignores_absent_strata():
    counts = {Z2: 1}
    assert ideal_dimension_formula(Z2, Z2, counts) == 4
    assert ideal_dimension_formula(Z2, W1, counts) == 2
    assert ideal_dimension_formula(Z2, E2, counts) == 1


def test_preorder_frozen_verdicts():
    v = preorder_leq(Z2, Z2, E2)
    assert not v.holds and not v.sum_condition and v.meet_condition

    v = preorder_leq(Z2, E2, Z2)
    assert v.holds

    v = preorder_leq(W1, Z2, W1)
    assert v.holds

    # relative to A = W1 the two conditions pull apart for W2 vs E
    v = preorder_leq(W1, W2, E2)
    assert v.sum_condition and v.meet_condition and v.holds
    v = preorder_leq(W1, E2, W2)
    assert v.sum_condition and not v.meet_condition and not v.holds


def test_preorder_is_reflexive_and_transitive():
    subs = all_subspaces(2)
    for a, b in product(subs, repeat=2):
        assert preorder_leq(a, b, b).holds
    for a, b1, b2, b3 in product(subs, repeat=4):
        if preorder_leq(a, b1, b2).holds and preorder_leq(a, b2, b3).holds:
            assert preorder_leq(a, b1, b3).holds


def test_preorder_count_in_rank_two():
    subs = all_subspaces(2)
    holding = sum(
        preorder_leq(a, bs, bb).holds for a, bs, bb in product(subs, repeat=3)
    )
    assert holding == 69
    assert len(subs) ** 3 == 125


def test_containment_report_frozen(alg_i3):
    orbit = alg_i3.eset.orbits(Z2)[0]
    report = verify_containment(alg_i3, orbit, E2, Z2)
    assert report.ok and report.zero_one and report.refinement
    assert report.elements_checked == 5
    assert report.witness is None


def test_containment_tracks_preorder(alg_i3):
    eset = alg_i3.eset
    for a in eset.present_stabilizers():
        orbit = eset.orbits(a)[0]
        for b_small, b_big in product(alg_i3.subspaces, repeat=2):
            if not preorder_leq(a, b_small, b_big).holds:
                continue
            small = ideal_basis(alg_i3, orbit, b_small)
            big = ideal_basis(alg_i3, orbit, b_big)
            assert small.dim <= big.dim
            assert verify_containment(alg_i3, orbit, b_small, b_big).ok


def test_catalog_rank_two_full(alg_i3):
    result = catalog_rank_two(alg_i3)
    assert [line.index for line in result.lines] == list(range(1, 11))
    assert [line.dim for line in result.lines] == [2, 2, 2, 2, 2, 2, 1, 1, 1, 5]
    assert all(line.ok for line in result.lines)
    assert all(line.simple for line in result.lines)
    assert result.lines[0].presentations[0].name == "I(0,W1)/I(0,E)"
    assert result.lines[0].presentations[1].name == "I(W1,0)/I(W1,W2)"
    assert result.lines[9].presentations[0].name == "I(0,E)"
    assert [(l, r) for l, r, _ in result.equalities] == [
        ("I(W1,W2)", "I(W1,W3)"),
        ("I(W2,W1)", "I(W2,W3)"),
        ("I(W3,W1)", "I(W3,W2)"),
    ]
    assert all(eq for _, _, eq in result.equalities)
    assert dict(result.distinguished) == {
        "I(0,0)": 11,
        "I(W1,W1)": 10,
        "I(W2,W2)": 10,
        "I(W3,W3)": 10,
        "I(E,E)": 11,
        "I(0,W1)": 7,
        "I(0,W2)": 7,
        "I(W1,E)": 7,
        "I(W2,E)": 7,
        "I(0,E)": 5,
    }
    assert result.sum_of_squares == 52 == result.dim_f
    assert result.complete
    assert result.ok


def test_catalog_with_single_free_orbit(alg_i4):
    result = catalog_rank_two(alg_i4)
    assert [line.dim for line in result.lines] == [1, 1, 1, None, None, None, None, None, None, 1]
    assert [line.expected_dim for line in result.lines] == [1, 1, 1, 0, 0, 0, 0, 0, 0, 1]
    assert all(line.ok for line in result.lines)
    assert result.equalities == []
    assert dict(result.distinguished) == {
        "I(0,0)": 4,
        "I(0,W1)": 2,
        "I(0,W2)": 2,
        "I(0,E)": 1,
    }
    assert result.sum_of_squares == 4 == result.dim_f
    assert result.complete and result.ok


def test_catalog_needs_rank_two(alg_i2):
    with pytest.raises(InvalidInputError):
        catalog_rank_two(alg_i2)
