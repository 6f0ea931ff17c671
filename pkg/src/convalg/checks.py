"""Named structural checks for a convolution algebra instance.

Every check has a stable identifier, returns deterministic integer counts,
and on failure carries a small human-readable witness.  `run_checks` drives
a selection of checks in canonical order; random phases are seeded per
check from (seed, check id), so repeated runs produce identical results.

Exhaustive phases are capped by dimension: small algebras are verified on
every label pair/triple, larger ones on every in-block combination plus a
seeded random sample.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .algebra import BasisLabel, ConvolutionAlgebra
from .catalog import ideal_dimension_formula, preorder_leq, verify_containment
from .errors import ConvalgError, InvalidInputError
from .esets import zero_sum_triple_count
from .gf2 import Subspace, subspace_sum
from .ideals import (
    IdealBasis,
    action_matrices,
    check_generator_span,
    ideal_basis,
    partition_structure,
    verify_right_ideal,
)
from .instances import algebra_dimension
from .modules import shift_isomorphism

EXHAUSTIVE_TRIPLE_DIM = 12
BLOCK_TRIPLE_DIM = 64
EXHAUSTIVE_PAIR_DIM = 64
MAX_SAMPLED_IDEALS = 16
MAX_SAMPLED_GENERATORS = 16
MAX_SAMPLED_CONTAINMENTS = 16
MAX_SAMPLED_SHIFTS = 8


@dataclass
class CheckResult:
    check_id: str
    status: str  # "pass" or "fail"
    counts: dict[str, int] = field(default_factory=dict)
    witness: dict[str, str] | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _ok(check_id: str, **counts: int) -> CheckResult:
    return CheckResult(check_id, "pass", counts)


def _fail(check_id: str, witness: dict, **counts: int) -> CheckResult:
    return CheckResult(check_id, "fail", counts, {k: str(v) for k, v in witness.items()})


def _sample_keep_order(items: list, k: int, rng: random.Random) -> list:
    """A seeded k-element subsample preserving the original order."""
    if len(items) <= k:
        return items
    picked = sorted(rng.sample(range(len(items)), k))
    return [items[i] for i in picked]


class _Context:
    """Shared state for one run: the algebra, sampling budget, ideal cache.

    Algebras up to EXHAUSTIVE_PAIR_DIM dimensions are swept exhaustively;
    beyond that the heavy checks work on seeded subsamples so a `verify`
    stays tractable at the --max-dim ceiling.
    """

    def __init__(self, algebra: ConvolutionAlgebra, random_budget: int, seed: int):
        self.algebra = algebra
        self.random_budget = random_budget
        self.seed = seed
        self._ideals: dict[tuple[tuple[int, ...], Subspace], IdealBasis] = {}
        self._ideal_keys: list | None = None

    @property
    def exhaustive(self) -> bool:
        return self.algebra.dim <= EXHAUSTIVE_PAIR_DIM

    def ideal(self, source_orbit: tuple[int, ...], shift: Subspace) -> IdealBasis:
        key = (source_orbit, shift)
        if key not in self._ideals:
            self._ideals[key] = ideal_basis(self.algebra, source_orbit, shift)
        return self._ideals[key]

    def ideal_keys(self) -> list[tuple[Subspace, tuple[int, ...], Subspace]]:
        """(stabilizer, source orbit, shift) triples, sampled when large."""
        if self._ideal_keys is None:
            keys = list(_iter_ideal_keys(self.algebra))
            if not self.exhaustive:
                rng = random.Random(f"{self.seed}:ideal-keys")
                keys = _sample_keep_order(keys, MAX_SAMPLED_IDEALS, rng)
            self._ideal_keys = keys
        return self._ideal_keys

    def label_pairs(self, rng: random.Random) -> list[tuple[BasisLabel, BasisLabel]]:
        """All label pairs when small, otherwise a seeded sample."""
        labels = self.algebra.labels
        if self.exhaustive:
            return [(l1, l2) for l1 in labels for l2 in labels]
        n = len(labels)
        return [
            (labels[rng.randrange(n)], labels[rng.randrange(n)])
            for _ in range(self.random_budget)
        ]


# -- individual checks ------------------------------------------------------


def check_strata_partition(ctx: _Context, rng: random.Random) -> CheckResult:
    """Strata are exact fixed-point sets and partition the whole E-set."""
    eset = ctx.algebra.eset
    seen: list[int] = []
    for a in eset.present_stabilizers():
        stratum = eset.stratum(a)
        expected = sorted(a.vectors())
        for p in stratum:
            fix = [e for e in range(eset.group_size) if eset.act(e, p) == p]
            if fix != expected:
                return _fail(
                    "strata_partition",
                    {"point": eset.point_label(p), "stabilizer": a},
                )
        orbit_union: list[int] = []
        for orbit in eset.orbits(a):
            if len(orbit) != eset.group_size // a.size:
                return _fail("strata_partition", {"orbit": orbit, "stabilizer": a})
            orbit_union.extend(orbit)
        if sorted(orbit_union) != sorted(stratum):
            return _fail("strata_partition", {"stabilizer": a, "reason": "orbits do not tile stratum"})
        seen.extend(stratum)
    if sorted(seen) != list(range(eset.num_points)):
        return _fail("strata_partition", {"reason": "strata do not tile the E-set"})
    return _ok("strata_partition", points=eset.num_points, strata=len(eset.present_stabilizers()))


def check_orbit_sizes(ctx: _Context, rng: random.Random) -> CheckResult:
    """Size laws |E|/|A^B| and |E||B|/|U|, plus the partition properties."""
    alg = ctx.algebra
    eset = alg.eset
    present = eset.present_stabilizers()
    n_pair = n_shift = 0
    for a, c in product(present, repeat=2):
        full = set(product(eset.stratum(a), eset.stratum(c)))
        want = eset.group_size // alg.meet(a, c).size
        covered: set[tuple[int, int]] = set()
        for orbit in eset.pair_orbits(a, c):
            if len(orbit.members) != want or covered & set(orbit.members):
                return _fail("orbit_sizes", {"pair_orbit": orbit.rep, "a": a, "b": c})
            covered.update(orbit.members)
            n_pair += 1
        if covered != full:
            return _fail("orbit_sizes", {"a": a, "b": c, "reason": "pair orbits do not tile"})
        for b in alg.subspaces:
            want_s = eset.group_size * b.size // zero_sum_triple_count(a, b, c)
            covered = set()
            a_orbits = {frozenset(o) for o in eset.orbits(a)}
            for sorbit in eset.shifted_pair_orbits(a, b, c):
                if len(sorbit.members) != want_s or covered & set(sorbit.members):
                    return _fail(
                        "orbit_sizes",
                        {"shifted_orbit": sorbit.rep, "a": a, "shift": b, "c": c},
                    )
                covered.update(sorbit.members)
                if sorbit.firsts not in a_orbits:
                    return _fail(
                        "orbit_sizes",
                        {"shifted_orbit": sorbit.rep, "reason": "first projection is not one E-orbit"},
                    )
                remaining = set(sorbit.members)
                while remaining:
                    fine = eset.pair_orbit_of(a, c, min(remaining))
                    if not remaining.issuperset(fine.members):
                        return _fail(
                            "orbit_sizes",
                            {"shifted_orbit": sorbit.rep, "reason": "not a union of pair orbits"},
                        )
                    remaining.difference_update(fine.members)
                n_shift += 1
            if covered != full:
                return _fail(
                    "orbit_sizes",
                    {"a": a, "shift": b, "c": c, "reason": "shifted orbits do not tile"},
                )
    return _ok("orbit_sizes", pair_orbits=n_pair, shifted_orbits=n_shift)


def check_composition(ctx: _Context, rng: random.Random) -> CheckResult:
    """Composable orbit pairs land on a single shifted orbit, with 2-power N."""
    alg = ctx.algebra
    eset = alg.eset
    present = eset.present_stabilizers()
    tasks = [
        (o1, o2)
        for a, b, c in product(present, repeat=3)
        for o1 in eset.pair_orbits(a, b)
        for o2 in eset.pair_orbits(b, c)
        if o1.seconds == o2.firsts
    ]
    if not ctx.exhaustive:
        tasks = _sample_keep_order(tasks, ctx.random_budget, rng)
    for o1, o2 in tasks:
        shifted, n = alg.compose_orbits(o1, o2)
        image = {
            (x, z) for (x, y) in o1.members for (y2, z) in o2.members if y2 == y
        }
        if image != set(shifted.members):
            return _fail(
                "composition",
                {"o1": o1.rep, "o2": o2.rep, "reason": "image is not the composed orbit"},
            )
        if n < 1 or n & (n - 1):
            return _fail("composition", {"o1": o1.rep, "o2": o2.rep, "multiplicity": n})
    return _ok("composition", composable_pairs=len(tasks))


def check_basis_counts(ctx: _Context, rng: random.Random) -> CheckResult:
    """Dimension of the algebra agrees with the stratum-size arithmetic."""
    alg = ctx.algebra
    eset = alg.eset
    if alg.dim != algebra_dimension(eset.spec):
        return _fail("basis_counts", {"dim": alg.dim, "expected": algebra_dimension(eset.spec)})
    for (a, b), labels in alg.blocks().items():
        want = len(eset.pair_orbits(a, b)) * alg.meet(a, b).size
        if len(labels) != want:
            return _fail("basis_counts", {"a": a, "b": b, "block": len(labels), "expected": want})
    return _ok("basis_counts", dim=alg.dim, blocks=len(alg.blocks()))


def check_unit(ctx: _Context, rng: random.Random) -> CheckResult:
    """The diagonal element is a two-sided unit and is transpose-fixed."""
    alg = ctx.algebra
    u = alg.unit()
    if u.transpose() != u:
        return _fail("unit", {"reason": "unit is not transpose-fixed"})
    for label in alg.labels:
        e = alg.basis_element(label)
        if u * e != e or e * u != e:
            return _fail("unit", {"label": label})
    return _ok("unit", labels=alg.dim)


def check_associativity(ctx: _Context, rng: random.Random) -> CheckResult:
    """(f g) h = f (g h), exhaustively when small, else blockwise + sampled."""
    alg = ctx.algebra
    labels = alg.labels
    triples = 0

    def probe(l1: BasisLabel, l2: BasisLabel, l3: BasisLabel) -> bool:
        e1, e2, e3 = map(alg.basis_element, (l1, l2, l3))
        return (e1 * e2) * e3 == e1 * (e2 * e3)

    if alg.dim <= EXHAUSTIVE_TRIPLE_DIM:
        for l1, l2, l3 in product(labels, repeat=3):
            if not probe(l1, l2, l3):
                return _fail("associativity", {"l1": l1, "l2": l2, "l3": l3})
            triples += 1
    elif alg.dim <= BLOCK_TRIPLE_DIM:
        blocks = alg.blocks()
        for (a, b), ls1 in blocks.items():
            for (b2, c), ls2 in blocks.items():
                if b2 != b:
                    continue
                for (c2, d), ls3 in blocks.items():
                    if c2 != c:
                        continue
                    for l1, l2, l3 in product(ls1, ls2, ls3):
                        if not probe(l1, l2, l3):
                            return _fail("associativity", {"l1": l1, "l2": l2, "l3": l3})
                        triples += 1
    n = len(labels)
    for _ in range(ctx.random_budget):
        l1, l2, l3 = (labels[rng.randrange(n)] for _ in range(3))
        if not probe(l1, l2, l3):
            return _fail("associativity", {"l1": l1, "l2": l2, "l3": l3})
        triples += 1
    return _ok("associativity", triples=triples)


def check_antiautomorphism(ctx: _Context, rng: random.Random) -> CheckResult:
    """Transpose is an involutive antiautomorphism fixing the unit."""
    alg = ctx.algebra
    if alg.unit().transpose() != alg.unit():
        return _fail("antiautomorphism", {"reason": "unit not fixed"})
    for label in alg.labels:
        if alg.transpose_label(alg.transpose_label(label)) != label:
            return _fail("antiautomorphism", {"label": label, "reason": "not involutive"})
    pairs = 0
    for l1, l2 in ctx.label_pairs(rng):
        e1, e2 = alg.basis_element(l1), alg.basis_element(l2)
        if (e1 * e2).transpose() != e2.transpose() * e1.transpose():
            return _fail("antiautomorphism", {"l1": l1, "l2": l2})
        pairs += 1
    return _ok("antiautomorphism", pairs=pairs)


def check_integrality(ctx: _Context, rng: random.Random) -> CheckResult:
    """Structure constants on the orbit-label basis are natural numbers."""
    alg = ctx.algebra
    pairs = 0
    for l1, l2 in ctx.label_pairs(rng):
        for label, c in alg.product_labels(l1, l2).terms.items():
            if c.denominator != 1 or c < 0:
                return _fail("integrality", {"l1": l1, "l2": l2, "label": label, "coefficient": c})
        pairs += 1
    return _ok("integrality", pairs=pairs)


def check_differential_product(ctx: _Context, rng: random.Random) -> CheckResult:
    """Orbit-level product rule agrees with the raw convolution sum."""
    alg = ctx.algebra
    pairs = 0
    for l1, l2 in ctx.label_pairs(rng):
        if alg.product_labels(l1, l2) != alg.product_labels_definitional(l1, l2):
            return _fail("differential_product", {"l1": l1, "l2": l2})
        pairs += 1
    return _ok("differential_product", pairs=pairs)


def check_semisimplicity(ctx: _Context, rng: random.Random) -> CheckResult:
    """The trace-form radical of the regular representation vanishes."""
    alg = ctx.algebra
    rad = alg.radical_dimension()
    if rad:
        return _fail("semisimplicity", {"radical_dim": rad}, dim=alg.dim)
    return _ok("semisimplicity", dim=alg.dim, radical_dim=0)


def _iter_ideal_keys(alg: ConvolutionAlgebra):
    eset = alg.eset
    for a in eset.present_stabilizers():
        for orbit in eset.orbits(a):
            for b in alg.subspaces:
                yield a, orbit, b


def check_ideal_positivity(ctx: _Context, rng: random.Random) -> CheckResult:
    """Each basis spans a right ideal acted on by natural-number matrices."""
    ideals = entries = 0
    for a, orbit, b in ctx.ideal_keys():
        ib = ctx.ideal(orbit, b)
        report = verify_right_ideal(ib)
        if not report.ok:
            return _fail("ideal_positivity", {"ideal": ib.describe(), "witness": report.witness})
        action_matrices(ib)  # raises PositivityError on a non-natural entry
        part = partition_structure(ib)
        if not part.ok:
            return _fail("ideal_positivity", {"ideal": ib.describe(), "reason": part.failure})
        ideals += 1
        entries += ib.dim
    return _ok("ideal_positivity", ideals=ideals, basis_elements=entries)


def check_generator_spans(ctx: _Context, rng: random.Random) -> CheckResult:
    """Every basis label generates, as a right ideal, the full shifted basis."""
    alg = ctx.algebra
    if ctx.exhaustive:
        labels = list(alg.labels)
    else:
        labels = _sample_keep_order(list(alg.labels), MAX_SAMPLED_GENERATORS, rng)
    generators = 0
    for label in labels:
        source = tuple(sorted(label.orbit.firsts))
        ib = ctx.ideal(source, label.stab_b)
        report = check_generator_span(alg, ib, label.orbit, label.form)
        if not report.ok:
            return _fail(
                "generator_spans",
                {
                    "generator": label,
                    "span_matches": report.span_matches,
                    "orbits_match": report.orbits_match,
                },
            )
        generators += 1
    return _ok("generator_spans", generators=generators)


def check_dimension_formula(ctx: _Context, rng: random.Random) -> CheckResult:
    """Constructed ideal bases have the closed-form dimension.

    Also pins the two specializations: a complementary shift group gives one
    dimension per E-orbit of the whole set, and shifting by the stabilizer
    itself counts the plain labels out of the source orbit.
    """
    alg = ctx.algebra
    eset = alg.eset
    orbit_counts = {c: len(eset.orbits(c)) for c in eset.present_stabilizers()}
    total_orbits = sum(orbit_counts.values())
    checked = 0
    for a, orbit, b in ctx.ideal_keys():
        ib = ctx.ideal(orbit, b)
        expected = ideal_dimension_formula(a, b, orbit_counts)
        if ib.dim != expected:
            return _fail(
                "dimension_formula",
                {"ideal": ib.describe(), "dim": ib.dim, "expected": expected},
            )
        if alg.meet(a, b).dim == 0 and subspace_sum(a, b).dim == eset.e_dim:
            if ib.dim != total_orbits:
                return _fail(
                    "dimension_formula",
                    {"ideal": ib.describe(), "reason": "complement specialization"},
                )
        if a == b:
            firsts = set(orbit)
            plain = sum(
                1
                for label in alg.labels
                if label.stab_a == a and label.orbit.firsts <= firsts
            )
            if ib.dim != plain:
                return _fail(
                    "dimension_formula",
                    {"ideal": ib.describe(), "reason": "diagonal specialization"},
                )
        checked += 1
    return _ok("dimension_formula", ideals=checked)


def check_preorder_containment(ctx: _Context, rng: random.Random) -> CheckResult:
    """Shift-group comparability gives 0/1 containment of ideal bases."""
    alg = ctx.algebra
    eset = alg.eset
    comparable = 0
    tasks = []
    for a in eset.present_stabilizers():
        for b_small, b_big in product(alg.subspaces, repeat=2):
            if not preorder_leq(a, b_small, b_big).holds:
                continue
            comparable += 1
            tasks.extend((a, orbit, b_small, b_big) for orbit in eset.orbits(a))
    if not ctx.exhaustive:
        tasks = _sample_keep_order(tasks, MAX_SAMPLED_CONTAINMENTS, rng)
    for a, orbit, b_small, b_big in tasks:
        report = verify_containment(alg, orbit, b_small, b_big)
        if not report.ok:
            return _fail(
                "preorder_containment",
                {
                    "stabilizer": a,
                    "b_small": b_small,
                    "b_big": b_big,
                    "witness": report.witness,
                },
            )
    return _ok("preorder_containment", comparable=comparable, containments=len(tasks))


def check_shift_isomorphism(ctx: _Context, rng: random.Random) -> CheckResult:
    """Ideals on different source orbits of one stratum are isomorphic."""
    alg = ctx.algebra
    eset = alg.eset
    tasks = [
        (a, orbits[0], other, b)
        for a in eset.present_stabilizers()
        for orbits in (eset.orbits(a),)
        for other in orbits[1:]
        for b in alg.subspaces
    ]
    if not ctx.exhaustive:
        tasks = _sample_keep_order(tasks, MAX_SAMPLED_SHIFTS, rng)
    for a, first, other, b in tasks:
        report = shift_isomorphism(alg, first, other, b)
        if not report.ok:
            return _fail(
                "shift_isomorphism",
                {
                    "stabilizer": a,
                    "orbit_from": first,
                    "orbit_to": other,
                    "shift": b,
                },
            )
    return _ok("shift_isomorphism", isomorphisms=len(tasks))


# -- the runner --------------------------------------------------------------

_CHECKS = {
    "strata_partition": check_strata_partition,
    "orbit_sizes": check_orbit_sizes,
    "composition": check_composition,
    "basis_counts": check_basis_counts,
    "unit": check_unit,
    "associativity": check_associativity,
    "antiautomorphism": check_antiautomorphism,
    "integrality": check_integrality,
    "differential_product": check_differential_product,
    "semisimplicity": check_semisimplicity,
    "ideal_positivity": check_ideal_positivity,
    "generator_spans": check_generator_spans,
    "dimension_formula": check_dimension_formula,
    "preorder_containment": check_preorder_containment,
    "shift_isomorphism": check_shift_isomorphism,
}

ALL_CHECK_IDS: tuple[str, ...] = tuple(_CHECKS)


def run_checks(
    algebra: ConvolutionAlgebra,
    seed: int = 0,
    check_ids: list[str] | None = None,
    random_budget: int = 2000,
) -> list[CheckResult]:
    """Run the selected checks (all by default) in canonical order."""
    if check_ids is None:
        selected = ALL_CHECK_IDS
    else:
        unknown = [c for c in check_ids if c not in _CHECKS]
        if unknown:
            raise InvalidInputError(f"unknown checks: {', '.join(sorted(unknown))}")
        wanted = set(check_ids)
        selected = tuple(c for c in ALL_CHECK_IDS if c in wanted)
    ctx = _Context(algebra, random_budget, seed)
    results = []
    for check_id in selected:
        rng = random.Random(f"{seed}:{check_id}")
        try:
            result = _CHECKS[check_id](ctx, rng)
        except ConvalgError as exc:
            result = _fail(check_id, {"error": exc})
        results.append(result)
    return results
