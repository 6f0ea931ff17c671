"""Linear algebra over the two-element field.

Vectors in GF(2)^n are stored as Python ints: bit ``i`` of the int is
coordinate ``i`` of the vector.  In the textual form used throughout
(instance files, reports, tests) coordinate 0 is the *leftmost* character,
so ``parse_vector("10") == 1`` and ``parse_vector("01") == 2``.

A :class:`Subspace` keeps its basis in reduced row echelon form with pivot
coordinates strictly increasing, which makes equality of subspaces plain
structural equality and gives every vector of the ambient space a unique
canonical representative modulo the subspace.

A :class:`LinearForm` on a subspace is stored by its values on the canonical
echelon basis of its domain.  Forms on different subspaces are never equal,
even when one extends the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator

from .errors import InvalidInputError, ResourceLimitError

#: Structural bound on the ambient dimension.  The command line tool applies
#: a much smaller bound; this one only guards against nonsensical input.
MAX_AMBIENT_DIM = 16


def _check_dim(n: int) -> None:
    if not 0 <= n <= MAX_AMBIENT_DIM:
        raise ResourceLimitError(f"ambient dimension {n} outside [0, {MAX_AMBIENT_DIM}]")


def parse_vector(text: str, ambient_dim: int) -> int:
    """Parse a bitstring such as ``"101"`` into a vector (coordinate 0 leftmost)."""
    if len(text) != ambient_dim:
        raise InvalidInputError(
            f"bitstring {text!r} has length {len(text)}, expected {ambient_dim}"
        )
    value = 0
    for i, ch in enumerate(text):
        if ch == "1":
            value |= 1 << i
        elif ch != "0":
            raise InvalidInputError(f"bitstring {text!r} contains {ch!r}")
    return value


def format_vector(v: int, ambient_dim: int) -> str:
    """Inverse of :func:`parse_vector`."""
    return "".join("1" if v >> i & 1 else "0" for i in range(ambient_dim))


def vector_bits(v: int, ambient_dim: int) -> tuple[int, ...]:
    """Coordinates of ``v`` as a tuple, used for textual-lexicographic sorting."""
    return tuple(v >> i & 1 for i in range(ambient_dim))


def _pivot(v: int) -> int:
    """Index of the lowest set coordinate of a nonzero vector."""
    return (v & -v).bit_length() - 1


def _echelonize(vectors: Iterable[int]) -> tuple[int, ...]:
    """Reduced row echelon basis of the span of ``vectors``."""
    by_pivot: dict[int, int] = {}
    for v in vectors:
        while v:
            p = _pivot(v)
            if p in by_pivot:
                v ^= by_pivot[p]
            else:
                by_pivot[p] = v
                break
    pivots = sorted(by_pivot)
    # Clear every pivot coordinate from the other rows.
    for p in pivots:
        for q in pivots:
            if q > p and by_pivot[p] >> q & 1:
                by_pivot[p] ^= by_pivot[q]
    return tuple(by_pivot[p] for p in pivots)


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(2)^n with canonical (reduced row echelon) basis."""

    ambient_dim: int
    basis: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_dim(self.ambient_dim)
        if self.basis != _echelonize(self.basis):
            raise InvalidInputError("basis is not in reduced row echelon form")
        for row in self.basis:
            if row >> self.ambient_dim:
                raise InvalidInputError("basis vector outside the ambient space")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        """Number of elements, 2**dim."""
        return 1 << len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(_pivot(row) for row in self.basis)

    def reduce(self, v: int) -> int:
        """Canonical representative of ``v`` modulo this subspace."""
        for row in self.basis:
            if v >> _pivot(row) & 1:
                v ^= row
        return v

    def contains_vector(self, v: int) -> bool:
        return self.reduce(v) == 0

    def contains(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise InvalidInputError("subspaces live in different ambient spaces")
        return all(self.contains_vector(row) for row in other.basis)

    def coordinates(self, v: int) -> int:
        """Coefficient mask of ``v`` in the canonical basis.

        Bit ``i`` of the result is the coefficient of ``basis[i]``.  Raises
        if ``v`` does not lie in the subspace.
        """
        mask = 0
        rest = v
        for i, row in enumerate(self.basis):
            if rest >> _pivot(row) & 1:
                mask |= 1 << i
                rest ^= row
        if rest:
            raise InvalidInputError(
                f"vector {format_vector(v, self.ambient_dim)} not in subspace {self}"
            )
        return mask

    def vectors(self) -> Iterator[int]:
        """All elements, enumerated in a fixed order (coefficient mask order)."""
        for mask in range(self.size):
            v = 0
            m = mask
            while m:
                i = _pivot(m)
                v ^= self.basis[i]
                m &= m - 1
            yield v

    def sort_key(self) -> tuple:
        return (
            self.dim,
            tuple(vector_bits(row, self.ambient_dim) for row in self.basis),
        )

    def __str__(self) -> str:
        if not self.basis:
            return "0"
        return ",".join(format_vector(row, self.ambient_dim) for row in self.basis)


def span(vectors: Iterable[int], ambient_dim: int) -> Subspace:
    """Subspace spanned by arbitrary vectors (canonicalized)."""
    _check_dim(ambient_dim)
    rows = list(vectors)
    for v in rows:
        if v >> ambient_dim:
            raise InvalidInputError("vector outside the ambient space")
    return Subspace(ambient_dim, _echelonize(rows))


def span_of_strings(texts: Iterable[str], ambient_dim: int) -> Subspace:
    return span((parse_vector(t, ambient_dim) for t in texts), ambient_dim)


def zero_subspace(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, ())


def full_space(ambient_dim: int) -> Subspace:
    return span((1 << i for i in range(ambient_dim)), ambient_dim)


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    if u.ambient_dim != v.ambient_dim:
        raise InvalidInputError("subspaces live in different ambient spaces")
    return span(u.basis + v.basis, u.ambient_dim)


def complement(u: Subspace) -> Subspace:
    """Orthogonal complement for the standard dot product on GF(2)^n.

    The standard bilinear form is nondegenerate, so dim drops to
    n - dim(u) and taking the complement twice gives back ``u``.
    """
    n = u.ambient_dim
    pivots = set(u.pivots)
    kernel = []
    for f in range(n):
        if f in pivots:
            continue
        w = 1 << f
        for row in u.basis:
            if row >> f & 1:
                w |= 1 << _pivot(row)
        kernel.append(w)
    return span(kernel, n)


def intersect(u: Subspace, v: Subspace) -> Subspace:
    """Intersection, via complements: (u^perp + v^perp)^perp."""
    if u.ambient_dim != v.ambient_dim:
        raise InvalidInputError("subspaces live in different ambient spaces")
    return complement(subspace_sum(complement(u), complement(v)))


def all_subspaces(ambient_dim: int) -> list[Subspace]:
    """Every subspace of GF(2)^n, ordered by (dim, textual basis).

    Enumerates reduced row echelon bases directly: choose pivot columns,
    then fill the free entries.  The count is the Galois number
    (1, 2, 5, 16, 67, 374, ... for n = 0, 1, 2, 3, 4, 5).
    """
    _check_dim(ambient_dim)
    out = [zero_subspace(ambient_dim)]
    for k in range(1, ambient_dim + 1):
        for pivots in combinations(range(ambient_dim), k):
            # Free cells of row i: coordinates after pivots[i] that are not pivots.
            free: list[tuple[int, int]] = []
            for i, p in enumerate(pivots):
                for c in range(p + 1, ambient_dim):
                    if c not in pivots:
                        free.append((i, c))
            for bits in product((0, 1), repeat=len(free)):
                rows = [1 << p for p in pivots]
                for (i, c), b in zip(free, bits):
                    if b:
                        rows[i] |= 1 << c
                out.append(Subspace(ambient_dim, tuple(rows)))
    out.sort(key=Subspace.sort_key)
    return out


@dataclass(frozen=True)
class LinearForm:
    """A GF(2)-valued linear form on a subspace.

    ``values`` is a bitmask: bit ``i`` is the value on ``domain.basis[i]``.
    """

    domain: Subspace
    values: int

    def __post_init__(self) -> None:
        if self.values >> self.domain.dim:
            raise InvalidInputError("form has values beyond the domain dimension")

    def __call__(self, v: int) -> int:
        mask = self.domain.coordinates(v)
        return (mask & self.values).bit_count() & 1

    def restrict(self, sub: Subspace) -> "LinearForm":
        """Restriction to a subspace of the domain."""
        if not self.domain.contains(sub):
            raise InvalidInputError(f"{sub} is not contained in the domain {self.domain}")
        values = 0
        for i, row in enumerate(sub.basis):
            if self(row):
                values |= 1 << i
        return LinearForm(sub, values)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        if self.domain != other.domain:
            raise InvalidInputError("cannot add forms on different domains")
        return LinearForm(self.domain, self.values ^ other.values)

    @property
    def is_zero(self) -> bool:
        return self.values == 0

    def sort_key(self) -> tuple[int, ...]:
        return vector_bits(self.values, self.domain.dim)

    def __str__(self) -> str:
        return format_vector(self.values, self.domain.dim) if self.domain.dim else "()"


def zero_form(domain: Subspace) -> LinearForm:
    return LinearForm(domain, 0)


def forms_on(domain: Subspace) -> list[LinearForm]:
    """All 2**dim linear forms on the subspace; the zero form comes first."""
    return [LinearForm(domain, m) for m in range(domain.size)]


def fiber(sup: Subspace, alpha: LinearForm) -> list[LinearForm]:
    """All forms on ``sup`` restricting to ``alpha`` on ``alpha.domain``.

    The restriction map from forms on ``sup`` to forms on the smaller space
    is surjective, so the fiber has exactly 2**(dim sup - dim domain)
    elements; they partition the forms on ``sup`` as ``alpha`` varies.
    """
    if not sup.contains(alpha.domain):
        raise InvalidInputError(f"{alpha.domain} is not contained in {sup}")
    return [phi for phi in forms_on(sup) if phi.restrict(alpha.domain) == alpha]
