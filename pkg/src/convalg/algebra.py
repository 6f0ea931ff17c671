"""The convolution algebra of a finite E-set, over the rationals.

Let X be a finite E-set for E = GF(2)^n and write X_A for the stratum of a
subgroup A.  The algebra F(X) has one basis element for every pair orbit O
on X_A x X_B together with a linear form eps on A meet B; we write such a
label as [O]^eps.  The product of f in the (A, B) block and g in the
(B', C) block is zero unless B = B'; within matching blocks it is the
convolution

    (f * g)((x, z), eps) =
        sum over y in X_B and forms eps1 on A^B, eps2 on B^C
        with eps1 + eps2 + eps vanishing on A^B^C
        of f((x, y), eps1) g((y, z), eps2) * |A^B^C| / |A^C|

(^ denoting intersection).  Two independent evaluation routes are
implemented:

* :meth:`ConvolutionAlgebra.product_labels_definitional` evaluates the sum
  above pointwise and converts the resulting function back to basis form,
  checking that it is constant on pair orbits;
* :meth:`ConvolutionAlgebra.product_labels` uses the closed orbit-level
  rule: [O]^e1 * [O']^e2 = N(A,B,C) * sum of [O . O']^eps over the forms
  eps on A^C restricting to e1 + e2 on A^B^C, where O . O' is the single
  shifted pair orbit through the composable pairs and

      N(A, B, C) = |U(A,B,C)| |A^B^C| / (|A^B| |B^C| |A^C|),

  a power of two, with U(A,B,C) the zero-sum triple group.

The fast orbit-level route is the default for all products; the
definitional route is retained as an oracle for differential testing.

The algebra is associative and unital (the unit is the sum of the diagonal
orbit labels with zero form) and carries an antiautomorphism transposing
the underlying pair orbits.  It is semisimple; :meth:`radical_dimension`
verifies this by computing the radical of the trace form of the right
regular representation, which is zero exactly for semisimple algebras over
a field of characteristic zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from . import linalg
from .errors import (
    InternalCheckError,
    InvalidInputError,
    PreconditionError,
)
from .esets import ESet, PairOrbit, ShiftedPairOrbit, zero_sum_triple_count
from .gf2 import (
    LinearForm,
    Subspace,
    all_subspaces,
    fiber,
    forms_on,
    intersect,
    zero_form,
)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class BasisLabel:
    """A canonical basis element [orbit]^form of the convolution algebra.

    ``form`` is a linear form on the intersection of the two stabilizers of
    the orbit's strata.
    """

    orbit: PairOrbit
    form: LinearForm

    @property
    def stab_a(self) -> Subspace:
        return self.orbit.stab_a

    @property
    def stab_b(self) -> Subspace:
        return self.orbit.stab_b

    def sort_key(self) -> tuple:
        return (
            self.orbit.stab_a.sort_key(),
            self.orbit.stab_b.sort_key(),
            self.orbit.rep,
            self.form.sort_key(),
        )

    def __str__(self) -> str:
        return f"[{self.orbit.rep}|{self.orbit.stab_a}/{self.orbit.stab_b}]^{self.form}"


def product_multiplicity(a: Subspace, b: Subspace, c: Subspace) -> int:
    """The structure constant N(A, B, C); always a power of two."""
    ab = intersect(a, b)
    bc = intersect(b, c)
    ac = intersect(a, c)
    abc = intersect(ab, c)
    n = Fraction(zero_sum_triple_count(a, b, c) * abc.size, ab.size * bc.size * ac.size)
    if n.denominator != 1 or n.numerator & (n.numerator - 1):
        raise InternalCheckError(f"multiplicity {n} for ({a};{b};{c}) is not a power of two")
    return n.numerator


class Element:
    """An element of a convolution algebra: a rational combination of labels."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "ConvolutionAlgebra", terms: Mapping[BasisLabel, Fraction]):
        self.algebra = algebra
        self.terms = {l: Fraction(c) for l, c in terms.items() if c}
        for label in self.terms:
            if label not in algebra.index:
                raise InvalidInputError(f"label {label} does not belong to this algebra")

    def coefficient(self, label: BasisLabel) -> Fraction:
        return self.terms.get(label, ZERO)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[BasisLabel]:
        return sorted(self.terms, key=BasisLabel.sort_key)

    def _check_mate(self, other: "Element") -> None:
        if self.algebra is not other.algebra:
            raise InvalidInputError("elements belong to different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._check_mate(other)
        terms = dict(self.terms)
        for l, c in other.terms.items():
            terms[l] = terms.get(l, ZERO) + c
        return Element(self.algebra, terms)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "Element":
        s = Fraction(scalar)
        return Element(self.algebra, {l: s * c for l, c in self.terms.items()})

    def __mul__(self, other: "Element") -> "Element":
        self._check_mate(other)
        return self.algebra.product(self, other)

    def transpose(self) -> "Element":
        return Element(
            self.algebra,
            {self.algebra.transpose_label(l): c for l, c in self.terms.items()},
        )

    def to_vector(self) -> linalg.SparseVec:
        """Sparse coordinate vector over the algebra's label order."""
        return {self.algebra.index[l]: c for l, c in self.terms.items()}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Element)
            and self.algebra is other.algebra
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = [f"{c}*{l}" for l, c in sorted(self.terms.items(), key=lambda t: t[0].sort_key())]
        return " + ".join(bits)


class ConvolutionAlgebra:
    """The convolution algebra F(X) of a realized E-set."""

    def __init__(self, eset: ESet) -> None:
        self.eset = eset
        self.subspaces = all_subspaces(eset.e_dim)
        self._meet: dict[tuple[Subspace, Subspace], Subspace] = {}
        labels = []
        for a in self.subspaces:
            if not eset.stratum(a):
                continue
            for b in self.subspaces:
                if not eset.stratum(b):
                    continue
                d = self.meet(a, b)
                for orbit in eset.pair_orbits(a, b):
                    for form in forms_on(d):
                        labels.append(BasisLabel(orbit, form))
        labels.sort(key=BasisLabel.sort_key)
        self.labels: tuple[BasisLabel, ...] = tuple(labels)
        self.index: dict[BasisLabel, int] = {l: i for i, l in enumerate(labels)}
        self.dim = len(labels)
        self._products: dict[tuple[BasisLabel, BasisLabel], Element] = {}
        self._unit: Element | None = None

    # -- small helpers -----------------------------------------------------

    def meet(self, a: Subspace, b: Subspace) -> Subspace:
        key = (a, b)
        if key not in self._meet:
            self._meet[key] = intersect(a, b)
        return self._meet[key]

    def zero(self) -> Element:
        return Element(self, {})

    def basis_element(self, label: BasisLabel) -> Element:
        return Element(self, {label: ONE})

    def element_from_vector(self, vec: linalg.SparseVec) -> Element:
        return Element(self, {self.labels[i]: c for i, c in vec.items()})

    def label(self, a: Subspace, b: Subspace, pair: tuple[int, int], values: int = 0) -> BasisLabel:
        """Convenience constructor: the label of the orbit through ``pair``."""
        orbit = self.eset.pair_orbit_of(a, b, pair)
        return BasisLabel(orbit, LinearForm(self.meet(a, b), values))

    def blocks(self) -> dict[tuple[Subspace, Subspace], list[BasisLabel]]:
        """Labels grouped by their (A, B) stabilizer pair, in basis order."""
        out: dict[tuple[Subspace, Subspace], list[BasisLabel]] = {}
        for l in self.labels:
            out.setdefault((l.stab_a, l.stab_b), []).append(l)
        return out

    def indicator(self, a: Subspace, b: Subspace, pairs: Iterable[tuple[int, int]], form: LinearForm) -> Element:
        """The sum of [O]^form over the pair orbits O partitioning ``pairs``.

        ``pairs`` must be E-stable, i.e. a union of pair orbits.
        """
        remaining = set(pairs)
        terms: dict[BasisLabel, Fraction] = {}
        while remaining:
            orbit = self.eset.pair_orbit_of(a, b, min(remaining))
            if not remaining.issuperset(orbit.members):
                raise InternalCheckError("pair set is not a union of pair orbits")
            remaining.difference_update(orbit.members)
            terms[BasisLabel(orbit, form)] = ONE
        return Element(self, terms)

    # -- the product ---------------------------------------------------------

    def compose_orbits(self, o1: PairOrbit, o2: PairOrbit) -> tuple[ShiftedPairOrbit, int]:
        """The composed orbit O . O' and the multiplicity N(A, B, C).

        Requires the middle strata to match: the second projection of ``o1``
        must equal the first projection of ``o2`` as E-orbits in X_B.
        """
        if o1.stab_b != o2.stab_a:
            raise PreconditionError("middle stabilizers differ")
        if o1.seconds != o2.firsts:
            raise PreconditionError("middle E-orbits differ")
        a, b, c = o1.stab_a, o1.stab_b, o2.stab_b
        x, y = o1.rep
        z = next(q for (p, q) in o2.members if p == y)
        shifted = self.eset.shifted_orbit_of(a, b, c, (x, z))
        return shifted, product_multiplicity(a, b, c)

    def product_labels(self, l1: BasisLabel, l2: BasisLabel) -> Element:
        """Product of two basis labels via the closed orbit-level rule."""
        key = (l1, l2)
        cached = self._products.get(key)
        if cached is not None:
            return cached
        a, b = l1.stab_a, l1.stab_b
        c = l2.stab_b
        if b != l2.stab_a or l1.orbit.seconds != l2.orbit.firsts:
            result = self.zero()
        else:
            shifted, n = self.compose_orbits(l1.orbit, l2.orbit)
            w = self.meet(self.meet(a, b), c)
            target = l1.form.restrict(w) + l2.form.restrict(w)
            result = self.zero()
            for eps in fiber(self.meet(a, c), target):
                result = result + self.indicator(a, c, shifted.members, eps)
            result = n * result
        self._products[key] = result
        return result

    def product_labels_definitional(self, l1: BasisLabel, l2: BasisLabel) -> Element:
        """Product of two basis labels straight from the convolution sum.

        Independent of :meth:`product_labels`: no shifted orbits, no
        multiplicity formula.  Used as the oracle in differential tests.
        """
        a, b = l1.stab_a, l1.stab_b
        c = l2.stab_b
        if b != l2.stab_a:
            return self.zero()
        succ: dict[int, list[int]] = {}
        for (y, z) in l2.orbit.members:
            succ.setdefault(y, []).append(z)
        counts: dict[tuple[int, int], int] = {}
        for (x, y) in l1.orbit.members:
            for z in succ.get(y, ()):
                counts[(x, z)] = counts.get((x, z), 0) + 1
        d = self.meet(a, c)
        w = self.meet(self.meet(a, b), c)
        weight = Fraction(w.size, d.size)
        target = l1.form.restrict(w) + l2.form.restrict(w)
        terms: dict[BasisLabel, Fraction] = {}
        for orbit in self.eset.pair_orbits(a, c):
            values = {counts.get(m, 0) for m in orbit.members}
            if len(values) != 1:
                raise InternalCheckError("convolution is not constant on a pair orbit")
            count = values.pop()
            if not count:
                continue
            for eps in forms_on(d):
                if eps.restrict(w) == target:
                    terms[BasisLabel(orbit, eps)] = count * weight
        return Element(self, terms)

    def product(self, f: Element, g: Element, definitional: bool = False) -> Element:
        """Bilinear extension of the label product (orbit-level by default)."""
        rule = self.product_labels_definitional if definitional else self.product_labels
        terms: dict[BasisLabel, Fraction] = {}
        for l1, c1 in f.terms.items():
            for l2, c2 in g.terms.items():
                for l, c in rule(l1, l2).terms.items():
                    s = terms.get(l, ZERO) + c1 * c2 * c
                    if s:
                        terms[l] = s
                    else:
                        del terms[l]
        return Element(self, terms)

    # -- unit and antiautomorphism -------------------------------------------

    def unit(self) -> Element:
        """Sum of the diagonal orbit labels [diag X_A]^0 over present strata."""
        if self._unit is None:
            terms: dict[BasisLabel, Fraction] = {}
            for a in self.eset.present_stabilizers():
                for orbit_pts in self.eset.orbits(a):
                    x = orbit_pts[0]
                    orbit = self.eset.pair_orbit_of(a, a, (x, x))
                    terms[BasisLabel(orbit, zero_form(a))] = ONE
            self._unit = Element(self, terms)
        return self._unit

    def transpose_label(self, label: BasisLabel) -> BasisLabel:
        """The antiautomorphism on labels: reverse the pair orbit, keep the form."""
        a, b = label.stab_a, label.stab_b
        x, y = label.orbit.rep
        flipped = self.eset.pair_orbit_of(b, a, (y, x))
        return BasisLabel(flipped, label.form)

    # -- regular representation and semisimplicity -----------------------------

    def right_multiplication_matrix(self, label: BasisLabel) -> list[list[Fraction]]:
        """Matrix of m -> m * label on column coordinate vectors.

        Entry [j][i] is the coefficient of labels[j] in labels[i] * label,
        so right multiplication composes as M(a * b) = M(b) @ M(a).
        """
        mat = [[ZERO] * self.dim for _ in range(self.dim)]
        for i, l in enumerate(self.labels):
            for out_label, c in self.product_labels(l, label).terms.items():
                mat[self.index[out_label]][i] = c
        return mat

    def regular_representation(self) -> list[list[list[Fraction]]]:
        return [self.right_multiplication_matrix(l) for l in self.labels]

    def structure_table(self) -> dict[tuple[BasisLabel, BasisLabel], Element]:
        """All pairwise label products (memoized)."""
        return {
            (l1, l2): self.product_labels(l1, l2)
            for l1 in self.labels
            for l2 in self.labels
        }

    def _right_trace(self, label: BasisLabel) -> Fraction:
        """Trace of right multiplication by a label, without the full matrix."""
        if label.stab_a != label.stab_b:
            return ZERO
        total = ZERO
        for l in self.labels:
            if l.stab_b == label.stab_a:
                total += self.product_labels(l, label).coefficient(l)
        return total

    def trace_form(self, f: Element, g: Element) -> Fraction:
        """The symmetric form (f, g) -> trace of right multiplication by f * g."""
        total = ZERO
        for label, c in self.product(f, g).terms.items():
            if c:
                t = self._right_trace(label)
                if t:
                    total += c * t
        return total

    def radical_dimension(self) -> int:
        """Dimension of the radical of the trace form.

        Zero if and only if the algebra is semisimple.  The Gram matrix is
        block diagonal over stabilizer pairs: the form can only pair the
        (A, B) block with the (B, A) block, so the rank is accumulated per
        unordered pair of blocks.
        """
        blocks = self.blocks()
        seen: set[tuple[Subspace, Subspace]] = set()
        total_rank = 0
        for (a, b), rows_labels in blocks.items():
            if (a, b) in seen:
                continue
            seen.add((a, b))
            if a == b:
                gram = self._gram(rows_labels, rows_labels)
                total_rank += linalg.rank(gram)
            else:
                cols_labels = blocks.get((b, a), [])
                seen.add((b, a))
                if cols_labels:
                    gram = self._gram(rows_labels, cols_labels)
                    total_rank += 2 * linalg.rank(gram)
        return self.dim - total_rank

    def _gram(self, rows: list[BasisLabel], cols: list[BasisLabel]) -> list[list[Fraction]]:
        traces: dict[BasisLabel, Fraction] = {}
        out = []
        for li in rows:
            row = []
            for lj in cols:
                entry = ZERO
                for label, c in self.product_labels(li, lj).terms.items():
                    if label not in traces:
                        traces[label] = self._right_trace(label)
                    entry += c * traces[label]
                row.append(entry)
            out.append(row)
        return out
