"""Distinguished right ideals of the convolution algebra.

For an E-orbit o inside the stratum X_A and a subgroup B of E, the algebra
carries a right ideal spanned by the following elements, one for every
subgroup C, every shifted pair orbit M on X_A x X_C (for the group E x B)
whose first projection is o, and every linear form alpha on A^B^C:

    f(M, alpha) = sum of [M]^eps over the forms eps on A^C
                  whose restriction to A^B^C equals alpha,

where [M]^eps abbreviates the sum of [O]^eps over the pair orbits O
contained in M.  These elements are linearly independent, so they form a
basis of the ideal; the basis is canonical up to the orbit and form
orderings fixed in :mod:`convalg.gf2` and :mod:`convalg.esets`.

Two structural facts about these ideals are exposed as checkable
operations:

* :func:`verify_right_ideal`: the span is stable under right
  multiplication by every basis label of the algebra;
* :func:`action_matrix`: with the module structure g . m = m * transpose(g),
  the matrix of every basis label in the basis above has nonnegative
  integer entries.

The supporting combinatorial statement (see :func:`partition_structure`)
is that the supports of the basis elements partition the full label set
sitting over o, with all coefficients equal to one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import BasisLabel, ConvolutionAlgebra, Element
from .errors import (
    InternalCheckError,
    InvalidInputError,
    PositivityError,
)
from .esets import PairOrbit, ShiftedPairOrbit
from .gf2 import LinearForm, Subspace, fiber, forms_on
from .linalg import SpanSolver

ZERO = Fraction(0)


@dataclass(frozen=True)
class IdealBasisEntry:
    """Index of one basis element: the target subgroup, orbit, and form."""

    stab_c: Subspace
    orbit: ShiftedPairOrbit
    alpha: LinearForm


class IdealBasis:
    """The canonical basis of the right ideal attached to (o, B)."""

    def __init__(
        self,
        algebra: ConvolutionAlgebra,
        source_orbit: tuple[int, ...],
        shift: Subspace,
        entries: Sequence[IdealBasisEntry],
        elements: Sequence[Element],
    ) -> None:
        self.algebra = algebra
        self.source_orbit = source_orbit
        self.stab_a = algebra.eset.stabilizer_of(source_orbit[0])
        self.shift = shift
        self.entries = tuple(entries)
        self.elements = tuple(elements)
        self._solver: SpanSolver | None = None

    @property
    def dim(self) -> int:
        return len(self.elements)

    def solver(self) -> SpanSolver:
        if self._solver is None:
            self._solver = SpanSolver(f.to_vector() for f in self.elements)
            if self._solver.rank != len(self.elements):
                raise InternalCheckError("ideal basis elements are not independent")
        return self._solver

    def contains(self, f: Element) -> bool:
        return self.solver().contains(f.to_vector())

    def coordinates(self, f: Element) -> list[Fraction] | None:
        """Coefficients of ``f`` over the basis elements, or None."""
        return self.solver().coordinates(f.to_vector())

    def span_rows(self):
        """Canonical row echelon of the span, for span equality tests."""
        return self.solver().canonical_rows()

    def describe(self) -> str:
        a = self.stab_a
        return f"ideal(o={self.source_orbit}, A={a}, B={self.shift})"


def ideal_basis(
    algebra: ConvolutionAlgebra, source_orbit: Iterable[int], shift: Subspace
) -> IdealBasis:
    """Construct the canonical basis of the right ideal attached to (o, B)."""
    o = tuple(sorted(source_orbit))
    if not o:
        raise InvalidInputError("source orbit is empty")
    eset = algebra.eset
    stabs = {eset.stabilizer_of(p) for p in o}
    if len(stabs) != 1:
        raise InvalidInputError("source points have mixed stabilizers")
    a = stabs.pop()
    if eset.orbit_of_point(o[0]) != o:
        raise InvalidInputError(f"{o} is not a single E-orbit")
    if shift.ambient_dim != eset.e_dim:
        raise InvalidInputError("shift subgroup has the wrong ambient dimension")
    o_set = frozenset(o)
    entries: list[IdealBasisEntry] = []
    elements: list[Element] = []
    for c in algebra.subspaces:
        if not eset.stratum(c):
            continue
        d = algebra.meet(a, c)
        w = algebra.meet(algebra.meet(a, shift), c)
        for orbit in eset.shifted_pair_orbits(a, shift, c):
            if orbit.firsts != o_set:
                continue
            for alpha in forms_on(w):
                f = algebra.zero()
                for eps in fiber(d, alpha):
                    f = f + algebra.indicator(a, c, orbit.members, eps)
                entries.append(IdealBasisEntry(c, orbit, alpha))
                elements.append(f)
    order = sorted(
        range(len(entries)),
        key=lambda i: (
            entries[i].stab_c.sort_key(),
            entries[i].orbit.rep,
            entries[i].alpha.sort_key(),
        ),
    )
    ib = IdealBasis(
        algebra,
        o,
        shift,
        [entries[i] for i in order],
        [elements[i] for i in order],
    )
    ib.solver()  # verifies linear independence eagerly
    return ib


@dataclass
class RightIdealReport:
    ok: bool
    products_checked: int
    witness: tuple[int, BasisLabel] | None = None


def verify_right_ideal(ib: IdealBasis) -> RightIdealReport:
    """Check that the span is stable under right multiplication by every label."""
    checked = 0
    for i, f in enumerate(ib.elements):
        for label in ib.algebra.labels:
            product = ib.algebra.product(f, ib.algebra.basis_element(label))
            checked += 1
            if not ib.contains(product):
                return RightIdealReport(False, checked, (i, label))
    return RightIdealReport(True, checked)


def action_matrix(ib: IdealBasis, label: BasisLabel) -> list[list[Fraction]]:
    """Matrix of the module action g . m = m * transpose(g) in the ideal basis.

    Row convention: row i holds the coordinates of the image of the i-th
    basis element, so matrix(g1 * g2) = matrix(g2) @ matrix(g1).  Entries
    are guaranteed nonnegative integers; a violation raises
    :class:`PositivityError`.
    """
    g = ib.algebra.basis_element(ib.algebra.transpose_label(label))
    rows = []
    for i, f in enumerate(ib.elements):
        image = ib.algebra.product(f, g)
        coords = ib.coordinates(image)
        if coords is None:
            raise InternalCheckError(
                f"action image leaves the ideal: element {i}, label {label}"
            )
        for j, c in enumerate(coords):
            if c.denominator != 1 or c < 0:
                raise PositivityError(
                    f"entry ({i}, {j}) of the action of {label} on "
                    f"{ib.describe()} is {c}, not a nonnegative integer"
                )
        rows.append(coords)
    return rows


def action_matrices(ib: IdealBasis) -> dict[BasisLabel, list[list[Fraction]]]:
    return {label: action_matrix(ib, label) for label in ib.algebra.labels}


@dataclass
class PartitionReport:
    ok: bool
    blocks: tuple[frozenset[BasisLabel], ...]
    universe_size: int
    failure: str | None = None


def partition_structure(ib: IdealBasis) -> PartitionReport:
    """Supports of the basis elements partition the label set over o.

    The universe is every label [O]^eps with O a pair orbit on X_A x X_C
    whose first projection is o (over all C) and eps any form on A^C.  Each
    basis element must be the plain sum (all coefficients one) of the
    labels in its block.
    """
    algebra = ib.algebra
    eset = algebra.eset
    a = ib.stab_a
    o_set = frozenset(ib.source_orbit)
    universe: set[BasisLabel] = set()
    for c in algebra.subspaces:
        if not eset.stratum(c):
            continue
        d = algebra.meet(a, c)
        for orbit in eset.pair_orbits(a, c):
            if orbit.firsts == o_set:
                for eps in forms_on(d):
                    universe.add(BasisLabel(orbit, eps))
    blocks: list[frozenset[BasisLabel]] = []
    covered: set[BasisLabel] = set()
    for i, f in enumerate(ib.elements):
        for label, coeff in f.terms.items():
            if coeff != 1:
                return PartitionReport(
                    False, tuple(blocks), len(universe), f"element {i} has coefficient {coeff}"
                )
        support = frozenset(f.terms)
        if support & covered:
            return PartitionReport(
                False, tuple(blocks), len(universe), f"element {i} overlaps an earlier block"
            )
        covered |= support
        blocks.append(support)
    if covered != universe:
        return PartitionReport(
            False, tuple(blocks), len(universe), "blocks do not cover the label set"
        )
    return PartitionReport(True, tuple(blocks), len(universe))


@dataclass
class GeneratorSpanReport:
    ok: bool
    span_matches: bool
    orbits_match: bool
    generator: BasisLabel
    products_checked: int


def generator_span(
    algebra: ConvolutionAlgebra, orbit: PairOrbit, form: LinearForm
) -> tuple[SpanSolver, set[ShiftedPairOrbit]]:
    """Span of [orbit]^form * F and the composed shifted orbits it reaches.

    Returns the row space of all products with basis labels, together with
    the set of shifted pair orbits arising as compositions orbit . O'.
    """
    gen = algebra.basis_element(BasisLabel(orbit, form))
    solver = SpanSolver()
    reached: set[ShiftedPairOrbit] = set()
    b = orbit.stab_b
    for label in algebra.labels:
        product = algebra.product(gen, algebra.basis_element(label))
        solver.add_row(product.to_vector())
    for c in algebra.subspaces:
        if not algebra.eset.stratum(c):
            continue
        for other in algebra.eset.pair_orbits(b, c):
            if other.firsts == orbit.seconds:
                composed, _ = algebra.compose_orbits(orbit, other)
                reached.add(composed)
    return solver, reached


def check_generator_span(
    algebra: ConvolutionAlgebra, ib: IdealBasis, orbit: PairOrbit, form: LinearForm
) -> GeneratorSpanReport:
    """Verify that [orbit]^form generates exactly the ideal span of (o, B).

    Also verifies the orbit-level statement behind it: the composed orbits
    orbit . O' are exactly the shifted pair orbits over o.
    """
    if orbit.firsts != frozenset(ib.source_orbit) or orbit.stab_b != ib.shift:
        raise InvalidInputError("generator does not match the ideal's (o, B)")
    solver, reached = generator_span(algebra, orbit, form)
    span_ok = solver.canonical_rows() == ib.span_rows()
    expected: set[ShiftedPairOrbit] = set()
    o_set = frozenset(ib.source_orbit)
    for c in algebra.subspaces:
        if not algebra.eset.stratum(c):
            continue
        for m in algebra.eset.shifted_pair_orbits(ib.stab_a, ib.shift, c):
            if m.firsts == o_set:
                expected.add(m)
    orbits_ok = reached == expected
    return GeneratorSpanReport(
        span_ok and orbits_ok,
        span_ok,
        orbits_ok,
        BasisLabel(orbit, form),
        algebra.dim,
    )
