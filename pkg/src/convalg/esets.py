"""Finite sets with an action of an elementary abelian 2-group.

The acting group is E = GF(2)^n, written additively (addition is XOR).
A finite E-set is specified up to isomorphism by listing, for each orbit,
the common stabilizer A of its points (stabilizers are constant on orbits
because E is abelian) together with a multiplicity.  :func:`realize` turns
such a specification into a concrete point set with a tabulated action.

Derived objects used by the convolution algebra:

* the stratum of A: all points with stabilizer exactly A;
* E-orbits inside a stratum;
* pair orbits: orbits of the diagonal action of E on X_A x X_B, each of
  size |E| / |A meet B|;
* shifted pair orbits: orbits on X_A x X_C of the product group E x B
  acting by (e, b) . (x, y) = (e + b + x, e + y).  Writing U(A, B, C) for
  the group of triples (a, b, c) in A x B x C with a + b + c = 0, every
  such orbit has size |E| |B| / |U(A, B, C)| and is a union of pair
  orbits, and its first projection is a single E-orbit in X_A.

Orbits are always represented by their sorted member tuple; the canonical
representative is the least member.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import InternalCheckError, InvalidInputError, ResourceLimitError
from .gf2 import Subspace, all_subspaces, format_vector, zero_subspace

#: Hard bound on the number of points of a realized E-set.
MAX_POINTS = 4096


@dataclass(frozen=True)
class OrbitSpec:
    """One orbit type: its stabilizer subgroup and how often it occurs."""

    stabilizer: Subspace
    multiplicity: int

    def __post_init__(self) -> None:
        if self.multiplicity < 1:
            raise InvalidInputError("orbit multiplicity must be at least 1")


@dataclass(frozen=True)
class ESetSpec:
    """Isomorphism type of a finite E-set for E = GF(2)^e_dim."""

    e_dim: int
    orbits: tuple[OrbitSpec, ...]
    name: str = ""

    def __post_init__(self) -> None:
        if self.e_dim < 0:
            raise InvalidInputError("e_dim must be nonnegative")
        if not self.orbits:
            raise InvalidInputError("an E-set needs at least one orbit")
        for o in self.orbits:
            if o.stabilizer.ambient_dim != self.e_dim:
                raise InvalidInputError(
                    f"stabilizer {o.stabilizer} does not live in GF(2)^{self.e_dim}"
                )

    @property
    def num_points(self) -> int:
        return sum((1 << (self.e_dim - o.stabilizer.dim)) * o.multiplicity for o in self.orbits)


@dataclass(frozen=True)
class PairOrbit:
    """An orbit of the diagonal E-action on X_A x X_B."""

    stab_a: Subspace
    stab_b: Subspace
    members: tuple[tuple[int, int], ...]

    @property
    def rep(self) -> tuple[int, int]:
        return self.members[0]

    @property
    def firsts(self) -> frozenset[int]:
        return frozenset(x for x, _ in self.members)

    @property
    def seconds(self) -> frozenset[int]:
        return frozenset(y for _, y in self.members)


@dataclass(frozen=True)
class ShiftedPairOrbit:
    """An orbit of E x B on X_A x X_C, with B shifting the first factor.

    The action is (e, b) . (x, y) = (e + b + x, e + y); for B = 0 these are
    exactly the pair orbits.
    """

    stab_a: Subspace
    shift: Subspace
    stab_c: Subspace
    members: tuple[tuple[int, int], ...]

    @property
    def rep(self) -> tuple[int, int]:
        return self.members[0]

    @property
    def firsts(self) -> frozenset[int]:
        return frozenset(x for x, _ in self.members)


def zero_sum_triple_count(a: Subspace, b: Subspace, c: Subspace) -> int:
    """Order of the group {(x, y, z) in A x B x C : x + y + z = 0}."""
    if not (a.ambient_dim == b.ambient_dim == c.ambient_dim):
        raise InvalidInputError("subspaces live in different ambient spaces")
    return sum(1 for x in a.vectors() for y in b.vectors() if c.contains_vector(x ^ y))


class ESet:
    """A realized finite E-set with tabulated action.

    Points are integers 0..num_points-1, grouped by orbit in specification
    order; inside an orbit they are ordered by their canonical coset
    representative.  Build instances via :func:`realize`.
    """

    def __init__(self, spec: ESetSpec) -> None:
        if spec.num_points > MAX_POINTS:
            raise ResourceLimitError(
                f"E-set would have {spec.num_points} points (bound {MAX_POINTS})"
            )
        self.spec = spec
        self.e_dim = spec.e_dim
        self.group_size = 1 << spec.e_dim
        self._stabilizers: list[Subspace] = []  # per point
        self._reps: list[tuple[int, int]] = []  # per point: (orbit_id, coset rep)
        index: dict[tuple[int, int], int] = {}
        oid = 0
        for ospec in spec.orbits:
            stab = ospec.stabilizer
            reps = sorted({stab.reduce(v) for v in range(self.group_size)})
            for _ in range(ospec.multiplicity):
                for r in reps:
                    index[(oid, r)] = len(self._reps)
                    self._reps.append((oid, r))
                    self._stabilizers.append(stab)
                oid += 1
        self.num_points = len(self._reps)
        self._act = [
            [
                index[(o, self._stabilizers[p].reduce(e ^ r))]
                for p, (o, r) in enumerate(self._reps)
            ]
            for e in range(self.group_size)
        ]
        self._strata: dict[Subspace, tuple[int, ...]] = {}
        for p, stab in enumerate(self._stabilizers):
            self._strata.setdefault(stab, ())
        for p, stab in enumerate(self._stabilizers):
            self._strata[stab] += (p,)
        self._check_stabilizers()
        self._orbit_cache: dict[Subspace, tuple[tuple[int, ...], ...]] = {}
        self._pair_cache: dict[tuple[Subspace, Subspace], tuple[PairOrbit, ...]] = {}
        self._pair_lookup: dict[tuple[Subspace, Subspace], dict[tuple[int, int], PairOrbit]] = {}
        self._shift_cache: dict[
            tuple[Subspace, Subspace, Subspace], tuple[ShiftedPairOrbit, ...]
        ] = {}

    def _check_stabilizers(self) -> None:
        for p in range(self.num_points):
            actual = [e for e in range(self.group_size) if self._act[e][p] == p]
            declared = self._stabilizers[p]
            if sorted(declared.vectors()) != actual:
                raise InternalCheckError(f"stabilizer mismatch at point {p}")

    # -- points ----------------------------------------------------------

    def act(self, e: int, p: int) -> int:
        return self._act[e][p]

    def stabilizer_of(self, p: int) -> Subspace:
        return self._stabilizers[p]

    def point_label(self, p: int) -> str:
        oid, rep = self._reps[p]
        return f"{oid}:{format_vector(rep, self.e_dim)}" if self.e_dim else f"{oid}:"

    # -- strata and orbits -------------------------------------------------

    def stratum(self, a: Subspace) -> tuple[int, ...]:
        """Points whose stabilizer is exactly ``a`` (may be empty)."""
        if a.ambient_dim != self.e_dim:
            raise InvalidInputError("subspace has the wrong ambient dimension")
        return self._strata.get(a, ())

    def present_stabilizers(self) -> list[Subspace]:
        """Stabilizers with nonempty stratum, canonically ordered."""
        return sorted(self._strata, key=Subspace.sort_key)

    def orbits(self, a: Subspace) -> tuple[tuple[int, ...], ...]:
        """E-orbits inside the stratum of ``a``, by closure from least points."""
        if a not in self._orbit_cache:
            remaining = set(self.stratum(a))
            out = []
            while remaining:
                seed = min(remaining)
                orbit = tuple(sorted({self._act[e][seed] for e in range(self.group_size)}))
                remaining.difference_update(orbit)
                out.append(orbit)
            self._orbit_cache[a] = tuple(sorted(out))
        return self._orbit_cache[a]

    def orbit_of_point(self, p: int) -> tuple[int, ...]:
        return tuple(sorted({self._act[e][p] for e in range(self.group_size)}))

    # -- pair orbits --------------------------------------------------------

    def pair_orbits(self, a: Subspace, b: Subspace) -> tuple[PairOrbit, ...]:
        """Orbits of the diagonal E-action on X_a x X_b."""
        key = (a, b)
        if key not in self._pair_cache:
            seen: set[tuple[int, int]] = set()
            out = []
            for x in self.stratum(a):
                for y in self.stratum(b):
                    if (x, y) in seen:
                        continue
                    members = tuple(
                        sorted({(self._act[e][x], self._act[e][y]) for e in range(self.group_size)})
                    )
                    seen.update(members)
                    out.append(PairOrbit(a, b, members))
            orbits = tuple(sorted(out, key=lambda o: o.rep))
            self._pair_cache[key] = orbits
            self._pair_lookup[key] = {m: o for o in orbits for m in o.members}
        return self._pair_cache[key]

    def pair_orbit_of(self, a: Subspace, b: Subspace, pair: tuple[int, int]) -> PairOrbit:
        self.pair_orbits(a, b)
        try:
            return self._pair_lookup[(a, b)][pair]
        except KeyError:
            raise InvalidInputError(f"pair {pair} is not in X_{a} x X_{b}") from None

    def shifted_pair_orbits(
        self, a: Subspace, b: Subspace, c: Subspace
    ) -> tuple[ShiftedPairOrbit, ...]:
        """Orbits of E x b on X_a x X_c under (e, s) . (x, y) = (e+s+x, e+y)."""
        key = (a, b, c)
        if key not in self._shift_cache:
            shifts = list(b.vectors())
            seen: set[tuple[int, int]] = set()
            out = []
            for x in self.stratum(a):
                for y in self.stratum(c):
                    if (x, y) in seen:
                        continue
                    members = tuple(
                        sorted(
                            {
                                (self._act[e ^ s][x], self._act[e][y])
                                for e in range(self.group_size)
                                for s in shifts
                            }
                        )
                    )
                    seen.update(members)
                    out.append(ShiftedPairOrbit(a, b, c, members))
            self._shift_cache[key] = tuple(sorted(out, key=lambda o: o.rep))
        return self._shift_cache[key]

    def shifted_orbit_of(
        self, a: Subspace, b: Subspace, c: Subspace, pair: tuple[int, int]
    ) -> ShiftedPairOrbit:
        for orbit in self.shifted_pair_orbits(a, b, c):
            if pair in orbit.members:
                return orbit
        raise InvalidInputError(f"pair {pair} is not in X_{a} x X_{c}")


def realize(spec: ESetSpec) -> ESet:
    """Build the concrete E-set for a specification."""
    return ESet(spec)
