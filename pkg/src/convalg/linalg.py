"""Exact linear algebra over the rationals.

Everything here works with ``fractions.Fraction`` so that ranks, membership
tests and solved coefficients are exact.  Row vectors come in two flavours:

* sparse: ``dict[int, Fraction]`` mapping column index to a nonzero entry,
  used for elements of the big convolution algebra (supports are small);
* dense: ``list[Fraction]``, used for small matrices (action matrices,
  intertwiner systems).

The workhorse is :class:`SpanSolver`, an incremental reduced row echelon
form that remembers how each echelon row was obtained, so membership in a
row space comes with the coefficients of the expressing combination.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)

SparseVec = dict[int, Fraction]


def sparse_add(u: SparseVec, v: SparseVec, scale: Fraction = ONE) -> SparseVec:
    """u + scale*v with zero entries stripped."""
    out = dict(u)
    for j, c in v.items():
        s = out.get(j, ZERO) + scale * c
        if s:
            out[j] = s
        else:
            out.pop(j, None)
    return out


def sparse_scale(u: SparseVec, scale: Fraction) -> SparseVec:
    if not scale:
        return {}
    return {j: scale * c for j, c in u.items()}


class SpanSolver:
    """Incremental exact row space with coefficient recovery.

    Rows are added one at a time; the solver maintains a fully reduced
    echelon form together with, for every echelon row, the combination of
    original rows that produced it.  ``coordinates`` then expresses an
    arbitrary vector in terms of the original rows whenever possible.
    """

    def __init__(self, rows: Iterable[SparseVec] = ()) -> None:
        # Parallel lists sorted by pivot column:
        self._pivots: list[int] = []
        self._rows: list[SparseVec] = []
        self._combos: list[SparseVec] = []  # row -> combination of inputs
        self._n_inputs = 0
        for row in rows:
            self.add_row(row)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(self._pivots)

    @property
    def n_inputs(self) -> int:
        return self._n_inputs

    def _reduce(self, vec: SparseVec) -> tuple[SparseVec, SparseVec]:
        """Reduce against the echelon rows; return (remainder, combo used)."""
        combo: SparseVec = {}
        vec = dict(vec)
        for p, row, rcombo in zip(self._pivots, self._rows, self._combos):
            c = vec.get(p)
            if c:
                vec = sparse_add(vec, row, -c)
                combo = sparse_add(combo, rcombo, c)
        return vec, combo

    def add_row(self, vec: SparseVec) -> bool:
        """Add an input row.  Returns True when it enlarged the span."""
        idx = self._n_inputs
        self._n_inputs += 1
        rem, combo = self._reduce(vec)
        if not rem:
            return False
        p = min(rem)
        inv = ONE / rem[p]
        rem = sparse_scale(rem, inv)
        combo = sparse_add(sparse_scale(combo, -inv), {idx: inv})
        # Back-eliminate the new pivot from existing rows to keep full RREF.
        for i, row in enumerate(self._rows):
            c = row.get(p)
            if c:
                self._rows[i] = sparse_add(row, rem, -c)
                self._combos[i] = sparse_add(self._combos[i], combo, -c)
        at = 0
        while at < len(self._pivots) and self._pivots[at] < p:
            at += 1
        self._pivots.insert(at, p)
        self._rows.insert(at, rem)
        self._combos.insert(at, combo)
        return True

    def reduce(self, vec: SparseVec) -> SparseVec:
        """Remainder of ``vec`` after reduction modulo the row space."""
        rem, _ = self._reduce(vec)
        return rem

    def contains(self, vec: SparseVec) -> bool:
        return not self.reduce(vec)

    def coordinates(self, vec: SparseVec) -> list[Fraction] | None:
        """Coefficients over the *original* rows, or None if not in the span.

        When the original rows were dependent the answer is one valid
        choice; for independent rows it is the unique one.
        """
        rem, combo = self._reduce(vec)
        if rem:
            return None
        return [combo.get(i, ZERO) for i in range(self._n_inputs)]

    def canonical_rows(self) -> tuple[tuple[tuple[int, Fraction], ...], ...]:
        """The reduced row echelon form as a hashable canonical object.

        Two row spaces are equal iff their canonical rows are equal.
        """
        return tuple(tuple(sorted(row.items())) for row in self._rows)


def span_equal(rows_a: Iterable[SparseVec], rows_b: Iterable[SparseVec]) -> bool:
    return SpanSolver(rows_a).canonical_rows() == SpanSolver(rows_b).canonical_rows()


def sparse_rank(rows: Iterable[SparseVec]) -> int:
    return SpanSolver(rows).rank


def dense_to_sparse(row: Sequence[Fraction]) -> SparseVec:
    return {j: Fraction(c) for j, c in enumerate(row) if c}


def rank(rows: Iterable[Sequence[Fraction]]) -> int:
    """Rank of a dense matrix."""
    return sparse_rank(dense_to_sparse(r) for r in rows)


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right kernel {x : rows @ x = 0} of a dense matrix."""
    # Reduce the rows, tracking pivot columns.
    work = [[Fraction(c) for c in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        sel = next((i for i in range(r, len(work)) if work[i][col]), None)
        if sel is None:
            continue
        work[r], work[sel] = work[sel], work[r]
        inv = ONE / work[r][col]
        work[r] = [c * inv for c in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col]:
                c = work[i][col]
                work[i] = [a - c * b for a, b in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [ZERO] * ncols
        vec[f] = ONE
        for i, p in enumerate(pivots):
            vec[p] = -work[i][f]
        basis.append(vec)
    return basis


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    nb = len(b[0]) if b else 0
    out = [[ZERO] * nb for _ in range(len(a))]
    for i, arow in enumerate(a):
        orow = out[i]
        for k, c in enumerate(arow):
            if c:
                brow = b[k]
                for j in range(nb):
                    if brow[j]:
                        orow[j] += c * brow[j]
    return out


def identity(n: int) -> list[list[Fraction]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def is_invertible(square: Sequence[Sequence[Fraction]]) -> bool:
    n = len(square)
    return all(len(r) == n for r in square) and rank(square) == n
