"""Finite dimensional modules over the convolution algebra.

Every right ideal J of the algebra F becomes a left F-module through the
antiautomorphism: g acts on m by m * transpose(g).  This module structure
is what the classification below works with.

Modules are presented by action matrices in a chosen basis, stored in row
convention (row i = coordinates of the image of the i-th basis vector), so
the representation law reads  matrix(g1 * g2) = matrix(g2) @ matrix(g1).

Three presentations are provided:

* :class:`SpannedModule`: a submodule of F spanned by explicit elements
  (the canonical ideal bases, or sums and spans derived from them);
* :class:`QuotientModule`: the quotient of a spanned module by a spanned
  submodule, presented in the images of the parent basis;
* characters, simplicity certificates and explicit intertwiners to compare
  any two presentations.

Characters determine modules up to isomorphism here because the algebra is
semisimple over the rationals; the intertwiner solver makes that
identification explicit and checkable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Protocol, Sequence

from . import linalg
from .algebra import BasisLabel, ConvolutionAlgebra, Element
from .errors import InternalCheckError, InvalidInputError
from .gf2 import Subspace, zero_form
from .ideals import IdealBasis, ideal_basis
from .linalg import ONE, ZERO, SpanSolver

Matrix = list[list[Fraction]]


class ModuleLike(Protocol):
    algebra: ConvolutionAlgebra
    name: str

    @property
    def dim(self) -> int: ...

    def action_rows(self, label: BasisLabel) -> Matrix: ...


class SpannedModule:
    """A submodule of the algebra spanned by explicit elements."""

    def __init__(self, algebra: ConvolutionAlgebra, basis: Sequence[Element], name: str):
        self.algebra = algebra
        self.name = name
        self.basis = tuple(basis)
        self._solver = SpanSolver(f.to_vector() for f in self.basis)
        if self._solver.rank != len(self.basis):
            raise InvalidInputError(f"basis of {name} is not independent")
        self._rows_cache: dict[BasisLabel, Matrix] = {}

    @classmethod
    def from_ideal(cls, ib: IdealBasis, name: str | None = None) -> "SpannedModule":
        return cls(ib.algebra, ib.elements, name or ib.describe())

    @classmethod
    def from_span(
        cls, algebra: ConvolutionAlgebra, elements: Iterable[Element], name: str
    ) -> "SpannedModule":
        """Span of arbitrary elements; an independent subset becomes the basis."""
        basis: list[Element] = []
        probe = SpanSolver()
        for f in elements:
            if probe.add_row(f.to_vector()):
                basis.append(f)
        return cls(algebra, basis, name)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, f: Element) -> bool:
        return self._solver.contains(f.to_vector())

    def coordinates(self, f: Element) -> list[Fraction] | None:
        return self._solver.coordinates(f.to_vector())

    def span_rows(self):
        return self._solver.canonical_rows()

    def action_rows(self, label: BasisLabel) -> Matrix:
        if label not in self._rows_cache:
            g = self.algebra.basis_element(self.algebra.transpose_label(label))
            rows = []
            for f in self.basis:
                coords = self.coordinates(self.algebra.product(f, g))
                if coords is None:
                    raise InternalCheckError(
                        f"{self.name} is not stable under the action of {label}"
                    )
                rows.append(coords)
            self._rows_cache[label] = rows
        return self._rows_cache[label]


def module_sum(m1: SpannedModule, m2: SpannedModule, name: str) -> SpannedModule:
    return SpannedModule.from_span(m1.algebra, list(m1.basis) + list(m2.basis), name)


class QuotientModule:
    """Quotient of a spanned module by a spanned submodule.

    The quotient basis consists of the images of the parent basis vectors
    at the non-pivot positions of the submodule's echelon form inside the
    parent coordinates.  Construction verifies containment of the submodule
    and its stability under every label action.
    """

    def __init__(self, parent: SpannedModule, sub: SpannedModule, name: str):
        if parent.algebra is not sub.algebra:
            raise InvalidInputError("modules belong to different algebras")
        self.algebra = parent.algebra
        self.parent = parent
        self.sub = sub
        self.name = name
        sub_in_parent: list[linalg.SparseVec] = []
        for f in sub.basis:
            coords = parent.coordinates(f)
            if coords is None:
                raise InvalidInputError(f"{sub.name} is not contained in {parent.name}")
            sub_in_parent.append(linalg.dense_to_sparse(coords))
        self._sub_solver = SpanSolver(sub_in_parent)
        pivots = set(self._sub_solver.pivots)
        self._kept = [i for i in range(parent.dim) if i not in pivots]
        self._verify_stability()
        self._rows_cache: dict[BasisLabel, Matrix] = {}

    @property
    def dim(self) -> int:
        return len(self._kept)

    def _fold(self, vec: linalg.SparseVec) -> list[Fraction]:
        """Parent coordinates -> quotient coordinates (reduce, keep non-pivots)."""
        rem = self._sub_solver.reduce(vec)
        return [rem.get(i, ZERO) for i in self._kept]

    def _verify_stability(self) -> None:
        for label in self.algebra.labels:
            parent_rows = self.parent.action_rows(label)
            for row in self._sub_solver.canonical_rows():
                image: linalg.SparseVec = {}
                for i, c in row:
                    image = linalg.sparse_add(
                        image, linalg.dense_to_sparse(parent_rows[i]), c
                    )
                if any(self._fold(image)):
                    raise InvalidInputError(
                        f"{self.sub.name} is not action-stable inside {self.parent.name}"
                    )

    def action_rows(self, label: BasisLabel) -> Matrix:
        if label not in self._rows_cache:
            parent_rows = self.parent.action_rows(label)
            self._rows_cache[label] = [
                self._fold(linalg.dense_to_sparse(parent_rows[i])) for i in self._kept
            ]
        return self._rows_cache[label]


def quotient_module(parent: SpannedModule, sub: SpannedModule, name: str) -> QuotientModule:
    return QuotientModule(parent, sub, name)


def character(module: ModuleLike) -> tuple[Fraction, ...]:
    """Traces of all basis label actions, in the algebra's label order."""
    values = []
    for label in module.algebra.labels:
        rows = module.action_rows(label)
        values.append(sum((rows[i][i] for i in range(module.dim)), ZERO))
    return tuple(values)


def characters_additive(
    parent: ModuleLike, quotient: ModuleLike, sub: ModuleLike
) -> bool:
    cp, cq, cs = character(parent), character(quotient), character(sub)
    return all(p == q + s for p, q, s in zip(cp, cq, cs))


def is_simple(module: ModuleLike) -> bool:
    """True when the label actions span the full matrix algebra of the module.

    For a semisimple algebra over the rationals this certifies that the
    module is simple with endomorphism field the rationals themselves.
    """
    d = module.dim
    if d == 0:
        return False
    flat = []
    for label in module.algebra.labels:
        rows = module.action_rows(label)
        flat.append({i * d + j: rows[i][j] for i in range(d) for j in range(d) if rows[i][j]})
    return linalg.sparse_rank(flat) == d * d


def intertwiner(m1: ModuleLike, m2: ModuleLike, seed: int = 0) -> Matrix | None:
    """An invertible map T with rows1(g) @ T = T @ rows2(g) for all labels g.

    Returns None when the modules are not isomorphic (or when no invertible
    combination was found, which for equal-character semisimple modules
    does not happen).  The search is deterministic given the seed.
    """
    if m1.algebra is not m2.algebra:
        raise InvalidInputError("modules belong to different algebras")
    d1, d2 = m1.dim, m2.dim
    if d1 != d2:
        return None
    if d1 == 0:
        return []
    nvars = d1 * d2
    equations: list[list[Fraction]] = []
    for label in m1.algebra.labels:
        r1 = m1.action_rows(label)
        r2 = m2.action_rows(label)
        for i in range(d1):
            for j in range(d2):
                row = [ZERO] * nvars
                for k in range(d1):
                    if r1[i][k]:
                        row[k * d2 + j] += r1[i][k]
                for k in range(d2):
                    if r2[k][j]:
                        row[i * d2 + k] -= r2[k][j]
                if any(row):
                    equations.append(row)
    solutions = linalg.nullspace(equations, nvars) if equations else linalg.identity(nvars)
    candidates = []
    for sol in solutions:
        candidates.append(sol)
    rng = random.Random(seed)
    for attempt in range(len(candidates) + 60):
        if attempt < len(candidates):
            flat = candidates[attempt]
        elif candidates:
            flat = [ZERO] * nvars
            for sol in candidates:
                c = Fraction(rng.randint(-3, 3))
                flat = [a + c * b for a, b in zip(flat, sol)]
        else:
            break
        t = [[flat[i * d2 + j] for j in range(d2)] for i in range(d1)]
        if linalg.is_invertible(t):
            return t
    return None


def isomorphic(m1: ModuleLike, m2: ModuleLike, seed: int = 0) -> bool:
    """Equal characters certified by an explicit invertible intertwiner."""
    if m1.dim != m2.dim:
        return False
    if m1.dim == 0:
        return True
    if character(m1) != character(m2):
        return False
    return intertwiner(m1, m2, seed) is not None


@dataclass
class ShiftIsomorphismReport:
    ok: bool
    index_map: tuple[int, ...]
    matrices_match: bool
    basis_maps_to_basis: bool


def shift_isomorphism(
    algebra: ConvolutionAlgebra,
    orbit_from: tuple[int, ...],
    orbit_to: tuple[int, ...],
    shift: Subspace,
) -> ShiftIsomorphismReport:
    """Left multiplication carrying the ideal of (o, B) onto that of (o', B).

    For two E-orbits o, o' with the same stabilizer A there is an
    E-equivariant bijection gamma from o to o'; the graph of gamma is a
    single pair orbit G on X_A x X_A, and left multiplication by [G]^0
    maps each canonical basis element of the (o, B) ideal to exactly one
    canonical basis element of the (o', B) ideal.  The induced index
    bijection commutes with all action matrices.
    """
    o_from = tuple(sorted(orbit_from))
    o_to = tuple(sorted(orbit_to))
    a_from = algebra.eset.stabilizer_of(o_from[0])
    a_to = algebra.eset.stabilizer_of(o_to[0])
    if a_from != a_to:
        raise InvalidInputError("orbits have different stabilizers")
    ib_from = ideal_basis(algebra, o_from, shift)
    ib_to = ideal_basis(algebra, o_to, shift)
    graph = algebra.eset.pair_orbit_of(a_from, a_from, (o_to[0], o_from[0]))
    carrier = algebra.basis_element(BasisLabel(graph, zero_form(algebra.meet(a_from, a_from))))
    index_map: list[int] = []
    clean = True
    for f in ib_from.elements:
        image = algebra.product(carrier, f)
        try:
            j = ib_to.elements.index(image)
        except ValueError:
            clean = False
            j = -1
        index_map.append(j)
    bijection = clean and sorted(index_map) == list(range(ib_to.dim))
    matrices_match = False
    if bijection:
        matrices_match = True
        from .ideals import action_matrix

        for label in algebra.labels:
            rows_from = action_matrix(ib_from, label)
            rows_to = action_matrix(ib_to, label)
            for i in range(ib_from.dim):
                for j in range(ib_from.dim):
                    if rows_from[i][j] != rows_to[index_map[i]][index_map[j]]:
                        matrices_match = False
                        break
                if not matrices_match:
                    break
            if not matrices_match:
                break
    return ShiftIsomorphismReport(
        bijection and matrices_match, tuple(index_map), matrices_match, bijection
    )
