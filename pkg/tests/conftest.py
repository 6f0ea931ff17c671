"""Shared fixtures: the small reference instances used across the suite.

I1: trivial group acting on two fixed points.
I2: one free orbit plus one fixed point for a group of order 2.
I3: one orbit for each of the five subgroups of a rank-2 group (11 points).
I4: a single free orbit of a rank-2 group.
two-free / two-free-2d: two free orbits, used for shift isomorphisms.
"""

from __future__ import annotations

import pytest

from convalg import (
    ConvolutionAlgebra,
    ESetSpec,
    OrbitSpec,
    realize,
    span_of_strings,
    zero_subspace,
)


def _spec_i3() -> ESetSpec:
    subs = [
        zero_subspace(2),
        span_of_strings(["10"], 2),
        span_of_strings(["01"], 2),
        span_of_strings(["11"], 2),
        span_of_strings(["10", "01"], 2),
    ]
    return ESetSpec(2, tuple(OrbitSpec(s, 1) for s in subs), "I3")


SPECS: dict[str, ESetSpec] = {
    "I1": ESetSpec(0, (OrbitSpec(zero_subspace(0), 2),), "I1"),
    "I2": ESetSpec(
        1,
        (OrbitSpec(zero_subspace(1), 1), OrbitSpec(span_of_strings(["1"], 1), 1)),
        "I2",
    ),
    "I3": _spec_i3(),
    "I4": ESetSpec(2, (OrbitSpec(zero_subspace(2), 1),), "I4"),
    "two-free": ESetSpec(1, (OrbitSpec(zero_subspace(1), 2),), "two-free"),
    "two-free-2d": ESetSpec(2, (OrbitSpec(zero_subspace(2), 2),), "two-free-2d"),
}


@pytest.fixture(scope="session")
def algebras() -> dict[str, ConvolutionAlgebra]:
    return {name: ConvolutionAlgebra(realize(spec)) for name, spec in SPECS.items()}


@pytest.fixture(scope="session")
def alg_i1(algebras):
    return algebras["I1"]


@pytest.fixture(scope="session")
def alg_i2(algebras):
    return algebras["I2"]


@pytest.fixture(scope="session")
def alg_i3(algebras):
    return algebras["I3"]


@pytest.fixture(scope="session")
def alg_i4(algebras):
    return algebras["I4"]


@pytest.fixture(scope="session")
def alg_two_free(algebras):
    return algebras["two-free"]


@pytest.fixture(scope="session")
def alg_two_free_2d(algebras):
    return algebras["two-free-2d"]
