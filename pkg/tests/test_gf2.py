"""Bit-level GF(2) primitives: vectors, subspaces, linear forms."""

import pytest

from convalg.errors import InvalidInputError
from convalg.gf2 import (
    LinearForm,
    all_subspaces,
    complement,
    fiber,
    forms_on,
    format_vector,
    full_space,
    intersect,
    parse_vector,
    span,
    span_of_strings,
    subspace_sum,
    zero_form,
    zero_subspace,
)


def test_parse_and_format_round_trip():
    # coordinate 0 is the leftmost character
    assert parse_vector("10", 2) == 1
    assert parse_vector("01", 2) == 2
    assert format_vector(3, 2) == "11"
    for n in range(5):
        for v in range(1 << n):
            assert parse_vector(format_vector(v, n), n) == v


def test_parse_vector_rejects_bad_strings():
    with pytest.raises(InvalidInputError):
        parse_vector("2", 1)
    with pytest.raises(InvalidInputError):
        parse_vector("101", 2)
    with pytest.raises(InvalidInputError):
        parse_vector("", 1)


def test_span_canonicalizes_to_reduced_echelon():
    s = span_of_strings(["11", "10"], 2)
    assert [format_vector(r, 2) for r in s.basis] == ["10", "01"]
    assert s.dim == 2
    assert s.size == 4

    t = span_of_strings(["11", "11", "00"], 2)
    assert [format_vector(r, 2) for r in t.basis] == ["11"]
    assert t.dim == 1


def test_all_subspaces_counts_match_galois_numbers():
    for n, count in enumerate([1, 2, 5, 16, 67]):
        assert len(all_subspaces(n)) == count


def test_all_subspaces_are_distinct_and_canonical():
    for n in range(4):
        subs = all_subspaces(n)
        assert len(set(subs)) == len(subs)
        for s in subs:
            assert span(s.basis, n) == s


def test_membership_and_coset_reduction():
    l1 = span_of_strings(["10"], 2)
    assert l1.contains_vector(parse_vector("10", 2))
    assert not l1.contains_vector(parse_vector("01", 2))
    # reducing 11 by the pivot at coordinate 0 lands on 01
    assert format_vector(l1.reduce(parse_vector("11", 2)), 2) == "01"
    assert l1.reduce(parse_vector("10", 2)) == 0


def test_vectors_are_listed_in_coefficient_order():
    e = span_of_strings(["10", "01"], 2)
    assert [format_vector(v, 2) for v in e.vectors()] == ["00", "10", "01", "11"]
    assert list(zero_subspace(3).vectors()) == [0]


def test_coordinates_invert_the_span():
    s = span_of_strings(["110", "001"], 3)
    for v in s.vectors():
        mask = s.coordinates(v)
        rebuilt = 0
        for i, row in enumerate(s.basis):
            if (mask >> i) & 1:
                rebuilt ^= row
        assert rebuilt == v
    with pytest.raises(InvalidInputError):
        s.coordinates(parse_vector("010", 3))


def test_intersect_sum_and_lattice_bounds():
    l1 = span_of_strings(["10"], 2)
    l2 = span_of_strings(["01"], 2)
    assert intersect(l1, l2) == zero_subspace(2)
    assert subspace_sum(l1, l2) == full_space(2)
    assert intersect(full_space(2), l1) == l1
    assert subspace_sum(zero_subspace(2), l2) == l2


def test_complement_is_an_orthogonal_involution():
    # the standard GF(2) dot product admits self-orthogonal vectors, so this
    # is not a direct-sum complement: only dim, orthogonality, and double
    # complementation are guaranteed
    for n in range(4):
        for s in all_subspaces(n):
            c = complement(s)
            assert c.dim == n - s.dim
            assert complement(c) == s
            for v in s.vectors():
                for w in c.vectors():
                    assert bin(v & w).count("1") % 2 == 0
    self_orth = span_of_strings(["11"], 2)
    assert complement(self_orth) == self_orth


def test_subspace_containment_order():
    subs = all_subspaces(2)
    zero, full = zero_subspace(2), full_space(2)
    for s in subs:
        assert full.contains(s)
        assert s.contains(zero)
    l1 = span_of_strings(["10"], 2)
    assert not l1.contains(span_of_strings(["01"], 2))


def test_linear_form_evaluation():
    l1 = span_of_strings(["10"], 2)
    beta = LinearForm(l1, 1)
    assert beta(parse_vector("10", 2)) == 1
    assert beta(0) == 0
    gamma = LinearForm(full_space(2), 0b11)
    assert gamma(parse_vector("11", 2)) == 0  # 1 + 1 over GF(2)
    assert gamma(parse_vector("01", 2)) == 1


def test_form_restriction_and_addition():
    e = full_space(2)
    f = LinearForm(e, 0b01)  # value 1 on basis vector 10, 0 on 01
    l1 = span_of_strings(["10"], 2)
    assert f.restrict(l1).values == 1
    g = LinearForm(e, 0b11)
    assert (f + g).values == 0b10
    with pytest.raises(InvalidInputError):
        f.restrict(span_of_strings(["1"], 1))


def test_forms_on_lists_zero_form_first():
    l1 = span_of_strings(["10"], 2)
    assert [str(f) for f in forms_on(l1)] == ["0", "1"]
    assert forms_on(l1)[0] == zero_form(l1)
    assert len(forms_on(full_space(2))) == 4
    assert [str(f) for f in forms_on(zero_subspace(2))] == ["()"]


def test_fiber_collects_exactly_the_extensions():
    e = full_space(2)
    l1 = span_of_strings(["10"], 2)
    beta = LinearForm(l1, 1)
    lifted = fiber(e, beta)
    assert [str(f) for f in lifted] == ["10", "11"]
    for f in lifted:
        assert f.restrict(l1) == beta
    # everything lies over the unique form on the zero space
    assert len(fiber(l1, zero_form(zero_subspace(2)))) == 2
