"""Realized E-sets: strata, orbits, pair orbits, shifted pair orbits."""

import pytest

from convalg import (
    ESetSpec,
    OrbitSpec,
    full_space,
    realize,
    span_of_strings,
    zero_subspace,
    zero_sum_triple_count,
)
from convalg.errors import InvalidInputError, ResourceLimitError


def test_realize_free_plus_fixed_layout(alg_i2):
    eset = alg_i2.eset
    assert eset.num_points == 3
    assert eset.group_size == 2
    # points 0, 1 form the free orbit; point 2 is fixed
    assert eset.act(1, 0) == 1
    assert eset.act(1, 1) == 0
    assert eset.act(1, 2) == 2
    assert eset.act(0, 0) == 0
    assert eset.point_label(0) == "0:0"
    assert eset.point_label(2) == "1:0"


def test_strata_cover_and_sizes(alg_i3):
    eset = alg_i3.eset
    present = eset.present_stabilizers()
    assert len(present) == 5
    sizes = [len(eset.stratum(a)) for a in present]
    assert sizes == [4, 2, 2, 2, 1]
    assert sum(sizes) == eset.num_points == 11
    for a in present:
        for p in eset.stratum(a):
            assert eset.stabilizer_of(p) == a


def test_orbits_within_strata(alg_two_free):
    eset = alg_two_free.eset
    zero = zero_subspace(1)
    orbits = eset.orbits(zero)
    assert orbits == ((0, 1), (2, 3))
    assert eset.orbit_of_point(3) == (2, 3)


def test_pair_orbits_frozen_for_free_stratum(alg_i2):
    eset = alg_i2.eset
    zero = zero_subspace(1)
    members = [set(o.members) for o in eset.pair_orbits(zero, zero)]
    assert members == [{(0, 0), (1, 1)}, {(0, 1), (1, 0)}]


def test_pair_orbit_size_law(alg_i3):
    alg = alg_i3
    eset = alg.eset
    for a in eset.present_stabilizers():
        for b in eset.present_stabilizers():
            want = eset.group_size // alg.meet(a, b).size
            total = 0
            for orbit in eset.pair_orbits(a, b):
                assert len(orbit.members) == want
                assert orbit.rep == min(orbit.members)
                total += len(orbit.members)
            assert total == len(eset.stratum(a)) * len(eset.stratum(b))


def test_pair_orbit_lookup_is_consistent(alg_i3):
    eset = alg_i3.eset
    zero = zero_subspace(2)
    for orbit in eset.pair_orbits(zero, zero):
        for pair in orbit.members:
            assert eset.pair_orbit_of(zero, zero, pair) is orbit


def test_zero_sum_triple_counts_frozen():
    l1 = span_of_strings(["10"], 2)
    l2 = span_of_strings(["01"], 2)
    l3 = span_of_strings(["11"], 2)
    e = full_space(2)
    z = zero_subspace(2)
    assert zero_sum_triple_count(l1, l2, l3) == 2
    assert zero_sum_triple_count(z, e, z) == 1
    assert zero_sum_triple_count(e, e, e) == 16
    assert zero_sum_triple_count(z, z, z) == 1


def test_full_shift_glues_the_free_stratum_into_one_orbit(alg_i3):
    """Shifting by the whole group, the free-to-free square is one orbit."""
    eset = alg_i3.eset
    z = zero_subspace(2)
    e = full_space(2)
    orbits = eset.shifted_pair_orbits(z, e, z)
    assert len(orbits) == 1
    assert len(orbits[0].members) == 16
    assert orbits[0].firsts == frozenset(eset.stratum(z))


def test_shifted_orbit_size_law(alg_i3):
    alg = alg_i3
    eset = alg.eset
    subs = alg.subspaces
    for a in eset.present_stabilizers():
        for c in eset.present_stabilizers():
            for b in subs:
                want = eset.group_size * b.size // zero_sum_triple_count(a, b, c)
                total = 0
                for orbit in eset.shifted_pair_orbits(a, b, c):
                    assert len(orbit.members) == want
                    total += want
                assert total == len(eset.stratum(a)) * len(eset.stratum(c))


def test_zero_shift_recovers_pair_orbits(alg_i3):
    eset = alg_i3.eset
    z = zero_subspace(2)
    for a in eset.present_stabilizers():
        for c in eset.present_stabilizers():
            plain = {frozenset(o.members) for o in eset.pair_orbits(a, c)}
            shifted = {frozenset(o.members) for o in eset.shifted_pair_orbits(a, z, c)}
            assert plain == shifted


def test_spec_validation():
    with pytest.raises(InvalidInputError):
        OrbitSpec(zero_subspace(1), 0)
    with pytest.raises(InvalidInputError):
        ESetSpec(2, (OrbitSpec(zero_subspace(1), 1),))  # ambient mismatch


def test_point_budget_is_enforced():
    spec = ESetSpec(5, (OrbitSpec(zero_subspace(5), 129),), "too-big")
    assert spec.num_points == 129 * 32
    with pytest.raises(ResourceLimitError):
        realize(spec)
