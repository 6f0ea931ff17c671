"""Classification of the distinguished ideal modules.

This module gathers the statements that compare the ideals attached to
pairs (o, B) across different B, and, for a two-dimensional acting group,
assembles the full catalog of simple modules.

Dimension formula.  The ideal of (o, B) with stabilizer A has dimension

    sum over subgroups C of  n_C * |E| * |U(A,B,C)| * |A^B^C| / (|A| |B| |C|)

where n_C is the number of E-orbits in the stratum X_C and U(A,B,C) is the
zero-sum triple group.  :func:`ideal_dimension_formula` evaluates this
closed form; it is checked elsewhere against the constructed bases.

Preorder.  For a fixed A, define  B_small <= B_big  when

    A + B_big  is contained in  A + B_small   and
    A ^ B_small is contained in  A ^ B_big.

When this holds the (o, B_small) ideal is contained in the (o, B_big)
ideal, every basis element of the smaller decomposing as a sum of basis
elements of the bigger with coefficients 0 or 1, and every shifted orbit
for B_small is a union of shifted orbits for B_big.
:func:`verify_containment` checks all three statements.

Catalog (two-dimensional E).  The subgroup lattice is 0, three lines
named W1 = span("10"), W2 = span("01"), W3 = span("11"), and E.  Writing
I(A,B) for the ideal module of the least orbit with stabilizer A, and n_A
for the number of orbits in the stratum of A, the catalog consists of ten
lines of simple modules:

    lines 1-3:  I(0,Wi)/I(0,E)   ~  I(Wi,0)/I(Wi,Wj),   dim n_Wi + n_0
    lines 4-6:  I(Wi,E)/I(Wi,Wj) ~  I(E,Wi)/I(E,0),     dim n_Wi + n_E
    lines 7-9:  I(Wi,Wi)/(I(Wi,0) + I(Wi,E)),           dim n_Wi
    line 10:    I(0,E) ~ I(W1,W2) ~ I(W2,W1) ~ I(W3,W1) ~ I(E,0),
                dim n_0 + n_W1 + n_W2 + n_W3 + n_E

together with the subspace equalities I(Wi,Wj) = I(Wi,Wk) for j, k the two
other lines.  A presentation is absent when its stabilizer stratum is
empty; absent presentations are skipped and a line without any existing
presentation contributes the zero module.  The simple modules of the
distinct lines exhaust all simple modules: the sum of the squares of their
dimensions equals the dimension of the whole algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import ConvolutionAlgebra, Element
from .errors import InvalidInputError
from .esets import zero_sum_triple_count
from .gf2 import Subspace, full_space, intersect, span_of_strings, subspace_sum, zero_subspace
from .ideals import IdealBasis, ideal_basis
from .modules import (
    ModuleLike,
    QuotientModule,
    SpannedModule,
    character,
    characters_additive,
    intertwiner,
    is_simple,
    module_sum,
    quotient_module,
)


def ideal_dimension_formula(
    a: Subspace, b: Subspace, orbit_counts: Mapping[Subspace, int]
) -> int:
    """Closed form for the dimension of the (o, B) ideal, o of stabilizer A.

    ``orbit_counts`` maps each subgroup C to the number of E-orbits in its
    stratum (absent strata may be omitted).  The value does not depend on
    the choice of o.
    """
    n = a.ambient_dim
    e_size = 1 << n
    total = Fraction(0)
    for c, count in orbit_counts.items():
        if not count:
            continue
        u = zero_sum_triple_count(a, b, c)
        abc = intersect(intersect(a, b), c)
        total += Fraction(count * e_size * u * abc.size, a.size * b.size * c.size)
    if total.denominator != 1:
        raise InvalidInputError(f"dimension formula gave non-integer {total}")
    return total.numerator


@dataclass(frozen=True)
class PreorderVerdict:
    stab_a: Subspace
    b_small: Subspace
    b_big: Subspace
    sum_condition: bool  # A + B_big contained in A + B_small
    meet_condition: bool  # A ^ B_small contained in A ^ B_big

    @property
    def holds(self) -> bool:
        return self.sum_condition and self.meet_condition


def preorder_leq(a: Subspace, b_small: Subspace, b_big: Subspace) -> PreorderVerdict:
    """The containment preorder on shift subgroups, relative to A."""
    return PreorderVerdict(
        a,
        b_small,
        b_big,
        subspace_sum(a, b_small).contains(subspace_sum(a, b_big)),
        intersect(a, b_big).contains(intersect(a, b_small)),
    )


@dataclass
class ContainmentReport:
    ok: bool
    zero_one: bool
    refinement: bool
    elements_checked: int
    witness: str | None = None


def verify_containment(
    algebra: ConvolutionAlgebra,
    source_orbit: tuple[int, ...],
    b_small: Subspace,
    b_big: Subspace,
) -> ContainmentReport:
    """Check the 0/1 decomposition and orbit refinement for b_small <= b_big."""
    ib_small = ideal_basis(algebra, source_orbit, b_small)
    ib_big = ideal_basis(algebra, source_orbit, b_big)
    a = ib_small.stab_a
    checked = 0
    for i, f in enumerate(ib_small.elements):
        coords = ib_big.coordinates(f)
        checked += 1
        if coords is None:
            return ContainmentReport(False, False, False, checked, f"element {i} not contained")
        if any(c not in (0, 1) for c in coords):
            return ContainmentReport(
                False, False, False, checked, f"element {i} has non-0/1 coefficient"
            )
    o_set = frozenset(ib_small.source_orbit)
    for c in algebra.subspaces:
        if not algebra.eset.stratum(c):
            continue
        fine = [
            m
            for m in algebra.eset.shifted_pair_orbits(a, b_big, c)
            if m.firsts == o_set
        ]
        for coarse in algebra.eset.shifted_pair_orbits(a, b_small, c):
            if coarse.firsts != o_set:
                continue
            covered: set[tuple[int, int]] = set()
            target = set(coarse.members)
            for m in fine:
                if set(m.members) <= target:
                    covered |= set(m.members)
            if covered != target:
                return ContainmentReport(
                    True, True, False, checked, f"orbit refinement fails at C={c}"
                )
    return ContainmentReport(True, True, True, checked)


# --------------------------------------------------------------------------
# The catalog for a two-dimensional acting group.
# --------------------------------------------------------------------------


@dataclass
class Presentation:
    """One written form of a line's module, e.g. I(0,W1)/I(0,E)."""

    name: str
    module: ModuleLike | None  # None when the stabilizer stratum is empty

    @property
    def exists(self) -> bool:
        return self.module is not None


@dataclass
class CatalogLine:
    index: int
    presentations: list[Presentation]
    expected_dim: int
    dim: int | None = None  # dimension of the existing presentations
    dims_agree: bool = True
    isomorphic: bool = True
    additive: bool = True
    simple: bool | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        dim = self.dim if self.dim is not None else 0
        if dim != self.expected_dim:
            return False
        if not (self.dims_agree and self.isomorphic and self.additive):
            return False
        if dim > 0 and self.simple is not True:
            return False
        return True


@dataclass
class CatalogResult:
    lines: list[CatalogLine]
    equalities: list[tuple[str, str, bool]]
    distinguished: list[tuple[str, int]]
    sum_of_squares: int
    dim_f: int
    complete: bool

    @property
    def ok(self) -> bool:
        return (
            all(line.ok for line in self.lines)
            and all(eq for _, _, eq in self.equalities)
            and self.complete
        )


class _CatalogBuilder:
    def __init__(self, algebra: ConvolutionAlgebra, seed: int = 0):
        if algebra.eset.e_dim != 2:
            raise InvalidInputError("the catalog is defined for a 2-dimensional group")
        self.algebra = algebra
        self.seed = seed
        self.zero = zero_subspace(2)
        self.full = full_space(2)
        self.lines_subs = [
            span_of_strings(["10"], 2),
            span_of_strings(["01"], 2),
            span_of_strings(["11"], 2),
        ]
        self.names: dict[Subspace, str] = {self.zero: "0", self.full: "E"}
        for i, w in enumerate(self.lines_subs, start=1):
            self.names[w] = f"W{i}"
        self.counts = {
            s: len(algebra.eset.orbits(s)) for s in algebra.subspaces
        }
        self._ideals: dict[tuple[Subspace, Subspace], IdealBasis | None] = {}
        self._modules: dict[tuple[Subspace, Subspace], SpannedModule | None] = {}

    def ideal(self, a: Subspace, b: Subspace) -> IdealBasis | None:
        key = (a, b)
        if key not in self._ideals:
            orbits = self.algebra.eset.orbits(a)
            if not orbits:
                self._ideals[key] = None
            else:
                self._ideals[key] = ideal_basis(self.algebra, orbits[0], b)
        return self._ideals[key]

    def ideal_module(self, a: Subspace, b: Subspace) -> SpannedModule | None:
        key = (a, b)
        if key not in self._modules:
            ib = self.ideal(a, b)
            self._modules[key] = (
                SpannedModule.from_ideal(ib, self.ideal_name(a, b)) if ib else None
            )
        return self._modules[key]

    def ideal_name(self, a: Subspace, b: Subspace) -> str:
        return f"I({self.names[a]},{self.names[b]})"

    def quotient(
        self, a: Subspace, b: Subspace, subs: Sequence[tuple[Subspace, Subspace]]
    ) -> Presentation:
        parent = self.ideal_module(a, b)
        name = self.ideal_name(a, b)
        if subs:
            name += "/" + "+".join(self.ideal_name(*s) for s in subs)
        if parent is None:
            return Presentation(name, None)
        sub_modules = [self.ideal_module(*s) for s in subs]
        if any(m is None for m in sub_modules):
            # Same stabilizer as the parent, so this cannot happen.
            return Presentation(name, None)
        if not sub_modules:
            return Presentation(name, parent)
        denom = sub_modules[0]
        for extra in sub_modules[1:]:
            denom = module_sum(denom, extra, denom.name + "+" + extra.name)
        return Presentation(name, quotient_module(parent, denom, name))

    def build(self) -> CatalogResult:
        lines: list[CatalogLine] = []
        counts = self.counts
        w = self.lines_subs
        zero, full = self.zero, self.full

        def others(i: int) -> tuple[Subspace, Subspace]:
            rest = [w[j] for j in range(3) if j != i]
            return rest[0], rest[1]

        for i in range(3):
            wj, _ = others(i)
            lines.append(
                self._line(
                    index=i + 1,
                    pres=[
                        self.quotient(zero, w[i], [(zero, full)]),
                        self.quotient(w[i], zero, [(w[i], wj)]),
                    ],
                    expected=counts[w[i]] + counts[zero],
                )
            )
        for i in range(3):
            wj, _ = others(i)
            lines.append(
                self._line(
                    index=i + 4,
                    pres=[
                        self.quotient(w[i], full, [(w[i], wj)]),
                        self.quotient(full, w[i], [(full, zero)]),
                    ],
                    expected=counts[w[i]] + counts[full],
                )
            )
        for i in range(3):
            lines.append(
                self._line(
                    index=i + 7,
                    pres=[
                        self.quotient(w[i], w[i], [(w[i], zero), (w[i], full)]),
                    ],
                    expected=counts[w[i]],
                )
            )
        chain = [
            (zero, full),
            (w[0], w[1]),
            (w[1], w[0]),
            (w[2], w[0]),
            (full, zero),
        ]
        lines.append(
            self._line(
                index=10,
                pres=[self.quotient(a, b, []) for a, b in chain],
                expected=sum(counts[s] for s in [zero, *w, full]),
            )
        )

        equalities: list[tuple[str, str, bool]] = []
        for i in range(3):
            wj, wk = others(i)
            lhs = self.ideal(w[i], wj)
            rhs = self.ideal(w[i], wk)
            if lhs is not None and rhs is not None:
                equalities.append(
                    (
                        self.ideal_name(w[i], wj),
                        self.ideal_name(w[i], wk),
                        lhs.span_rows() == rhs.span_rows(),
                    )
                )

        distinguished_pairs = [
            (zero, zero),
            (w[0], w[0]),
            (w[1], w[1]),
            (w[2], w[2]),
            (full, full),
            (zero, w[0]),
            (zero, w[1]),
            (w[0], full),
            (w[1], full),
            (zero, full),
        ]
        distinguished = [
            (self.ideal_name(a, b), ib.dim)
            for a, b in distinguished_pairs
            if (ib := self.ideal(a, b)) is not None
        ]

        seen_characters: set[tuple[Fraction, ...]] = set()
        sum_sq = 0
        for line in lines:
            module = next((p.module for p in line.presentations if p.exists), None)
            if module is None or module.dim == 0:
                continue
            chi = character(module)
            if chi in seen_characters:
                line.notes.append("duplicate character; counted once")
                continue
            seen_characters.add(chi)
            sum_sq += module.dim ** 2
        complete = sum_sq == self.algebra.dim
        return CatalogResult(lines, equalities, distinguished, sum_sq, self.algebra.dim, complete)

    def _line(self, index: int, pres: list[Presentation], expected: int) -> CatalogLine:
        line = CatalogLine(index, pres, expected)
        existing = [p for p in pres if p.exists]
        if not existing:
            line.dim = None
            return line
        dims = {p.module.dim for p in existing}
        line.dims_agree = len(dims) == 1
        line.dim = existing[0].module.dim
        if not line.dims_agree:
            line.notes.append(f"presentation dims differ: {sorted(dims)}")
            return line
        first = existing[0].module
        for other in existing[1:]:
            if line.dim == 0:
                continue
            if character(first) != character(other.module) or (
                intertwiner(first, other.module, self.seed) is None
            ):
                line.isomorphic = False
                line.notes.append(f"{existing[0].name} and {other.name} not isomorphic")
        for p in existing:
            if isinstance(p.module, QuotientModule):
                if not characters_additive(p.module.parent, p.module, p.module.sub):
                    line.additive = False
                    line.notes.append(f"characters not additive for {p.name}")
        if line.dim and line.isomorphic:
            line.simple = is_simple(first)
        return line


def catalog_rank_two(algebra: ConvolutionAlgebra, seed: int = 0) -> CatalogResult:
    """Build and verify the ten-line catalog for a 2-dimensional group."""
    return _CatalogBuilder(algebra, seed).build()
