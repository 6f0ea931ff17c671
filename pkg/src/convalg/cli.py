"""Command line interface.

    convalg describe --instance instances/i3.json
    convalg verify   --instance instances/i3.json --seed 0 --format json
    convalg ideal    --instance instances/i3.json --stabilizer 10 --shift 01
    convalg catalog  --instance instances/i3.json

Reports are deterministic byte for byte for a fixed instance, seed, and
format; wall-clock timing is only included behind ``--timings``.  Exit code
0 means every requested verification passed, 1 means a verification failed,
2 means the input could not be parsed or was refused (usage errors, limits).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .algebra import ConvolutionAlgebra
from .catalog import catalog_rank_two
from .checks import ALL_CHECK_IDS, run_checks
from .errors import (
    InternalCheckError,
    InvalidInputError,
    ParseError,
    PositivityError,
    ResourceLimitError,
)
from .esets import realize
from .gf2 import Subspace, format_vector, span_of_strings, zero_subspace
from .ideals import action_matrices, ideal_basis
from .instances import ParsedInstance, algebra_dimension, load_instance

DEFAULT_MAX_DIM = 512


def _frac(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _basis_strings(s: Subspace) -> list[str]:
    return [format_vector(row, s.ambient_dim) for row in s.basis]


def _parse_subspace(text: str, e_dim: int) -> Subspace:
    text = text.strip()
    if text in ("", "0"):
        return zero_subspace(e_dim)
    return span_of_strings([part.strip() for part in text.split(",")], e_dim)


def _load(args) -> tuple[ParsedInstance, ConvolutionAlgebra]:
    parsed = load_instance(args.instance)
    dim = algebra_dimension(parsed.spec)
    if dim > args.max_dim:
        raise ResourceLimitError(
            f"algebra dimension {dim} exceeds --max-dim {args.max_dim}"
        )
    for note in parsed.notes:
        print(f"note: {note}", file=sys.stderr)
    return parsed, ConvolutionAlgebra(realize(parsed.spec))


def _emit(args, obj: dict, text: str) -> None:
    payload = json.dumps(obj, indent=2) + "\n" if args.format == "json" else text
    if args.out:
        Path(args.out).write_text(payload)
    else:
        sys.stdout.write(payload)


# -- describe -----------------------------------------------------------------


def cmd_describe(args) -> int:
    parsed, alg = _load(args)
    eset = alg.eset
    strata = [
        {
            "stabilizer": _basis_strings(a),
            "dim": a.dim,
            "size": len(eset.stratum(a)),
            "orbits": len(eset.orbits(a)),
        }
        for a in eset.present_stabilizers()
    ]
    blocks = [
        {
            "row": _basis_strings(a),
            "col": _basis_strings(b),
            "pair_orbits": len(eset.pair_orbits(a, b)),
            "labels": len(labels),
        }
        for (a, b), labels in alg.blocks().items()
    ]
    obj = {
        "name": parsed.spec.name,
        "e_dim": eset.e_dim,
        "num_points": eset.num_points,
        "dim_F": alg.dim,
        "strata": strata,
        "blocks": blocks,
    }
    lines = [
        f"instance {parsed.spec.name or '(unnamed)'}",
        f"  group: GF(2)^{eset.e_dim} ({eset.group_size} elements)",
        f"  points: {eset.num_points} in {len(strata)} strata",
        f"  algebra dimension: {alg.dim}",
        "  strata:",
    ]
    for a in eset.present_stabilizers():
        lines.append(
            f"    <{a}>  size {len(eset.stratum(a))}  orbits {len(eset.orbits(a))}"
        )
    lines.append("  blocks (row stabilizer x column stabilizer):")
    for (a, b), labels in alg.blocks().items():
        lines.append(
            f"    <{a}> x <{b}>: {len(eset.pair_orbits(a, b))} pair orbits, {len(labels)} labels"
        )
    _emit(args, obj, "\n".join(lines) + "\n")
    return 0


# -- verify -------------------------------------------------------------------


def cmd_verify(args) -> int:
    parsed, alg = _load(args)
    check_ids = [c.strip() for c in args.checks.split(",")] if args.checks else None
    start = time.monotonic()
    results = run_checks(
        alg, seed=args.seed, check_ids=check_ids, random_budget=args.random_budget
    )
    elapsed_ms = int((time.monotonic() - start) * 1000)
    checks_json = []
    for r in results:
        entry: dict = {"id": r.check_id, "status": r.status, "counts": r.counts}
        if r.witness:
            entry["witness"] = r.witness
        checks_json.append(entry)
    obj = {
        "name": parsed.spec.name,
        "dim_F": alg.dim,
        "checks": checks_json,
        "seed": args.seed,
    }
    if args.timings:
        obj["elapsed_ms"] = elapsed_ms
    passed = sum(1 for r in results if r.passed)
    lines = [f"instance {parsed.spec.name or '(unnamed)'}: dim F = {alg.dim}, seed {args.seed}"]
    for r in results:
        counts = " ".join(f"{k}={v}" for k, v in r.counts.items())
        line = f"  {'PASS' if r.passed else 'FAIL'} {r.check_id:22s} {counts}"
        if r.witness:
            line += "  [" + " ".join(f"{k}={v}" for k, v in r.witness.items()) + "]"
        lines.append(line)
    lines.append(f"checks passed: {passed}/{len(results)}")
    if args.timings:
        lines.append(f"elapsed: {elapsed_ms} ms")
    _emit(args, obj, "\n".join(lines) + "\n")
    return 0 if passed == len(results) else 1


# -- ideal --------------------------------------------------------------------


def cmd_ideal(args) -> int:
    parsed, alg = _load(args)
    eset = alg.eset
    a = _parse_subspace(args.stabilizer, eset.e_dim)
    shift = _parse_subspace(args.shift, eset.e_dim)
    orbits = eset.orbits(a)
    if not orbits:
        raise InvalidInputError(f"no points have stabilizer exactly <{a}>")
    if not 0 <= args.orbit_index < len(orbits):
        raise InvalidInputError(
            f"orbit index {args.orbit_index} out of range (stratum has {len(orbits)} orbits)"
        )
    ib = ideal_basis(alg, orbits[args.orbit_index], shift)
    matrices = action_matrices(ib)
    basis_json = []
    for entry, element in zip(ib.entries, ib.elements):
        terms = sorted(element.terms.items(), key=lambda kv: alg.index[kv[0]])
        basis_json.append(
            {
                "target": _basis_strings(entry.stab_c),
                "orbit_rep": [eset.point_label(p) for p in entry.orbit.rep],
                "orbit_size": len(entry.orbit.members),
                "alpha": str(entry.alpha),
                "element": {str(l): _frac(c) for l, c in terms},
            }
        )
    action_json = [
        {
            "label": str(label),
            "matrix": [[int(c) for c in row] for row in matrices[label]],
        }
        for label in alg.labels
    ]
    obj = {
        "name": parsed.spec.name,
        "stabilizer": _basis_strings(a),
        "orbit_index": args.orbit_index,
        "source_orbit": [eset.point_label(p) for p in ib.source_orbit],
        "shift": _basis_strings(shift),
        "dim": ib.dim,
        "basis": basis_json,
        "action": action_json,
    }
    lines = [
        f"right ideal over orbit {args.orbit_index} of stratum <{a}>, shift <{shift}>"
        f" in F({parsed.spec.name or '(unnamed)'})",
        f"  dimension: {ib.dim}",
        "  basis elements:",
    ]
    for i, (entry, element) in enumerate(zip(ib.entries, ib.elements)):
        terms = sorted(element.terms.items(), key=lambda kv: alg.index[kv[0]])
        support = " + ".join(
            str(l) if c == 1 else f"{_frac(c)}*{l}" for l, c in terms
        )
        lines.append(
            f"    {i}: target <{entry.stab_c}>, alpha {entry.alpha}: {support}"
        )
    lines.append("  action matrices (row i = image of basis element i):")
    for label in alg.labels:
        mat = matrices[label]
        lines.append(f"    {label}:")
        for row in mat:
            lines.append("      [" + " ".join(str(int(c)) for c in row) + "]")
    _emit(args, obj, "\n".join(lines) + "\n")
    return 0


# -- catalog ------------------------------------------------------------------


def cmd_catalog(args) -> int:
    parsed, alg = _load(args)
    result = catalog_rank_two(alg, seed=args.seed)
    lines_json = []
    for line in result.lines:
        lines_json.append(
            {
                "index": line.index,
                "presentations": [
                    {"name": p.name, "present": p.exists} for p in line.presentations
                ],
                "expected_dim": line.expected_dim,
                "dim": line.dim,
                "dims_agree": line.dims_agree,
                "isomorphic": line.isomorphic,
                "additive": line.additive,
                "simple": line.simple,
                "ok": line.ok,
                "notes": line.notes,
            }
        )
    obj = {
        "name": parsed.spec.name,
        "dim_F": result.dim_f,
        "seed": args.seed,
        "lines": lines_json,
        "equalities": [
            {"left": l, "right": r, "equal": eq} for l, r, eq in result.equalities
        ],
        "distinguished": [{"ideal": name, "dim": d} for name, d in result.distinguished],
        "sum_of_squares": result.sum_of_squares,
        "complete": result.complete,
        "ok": result.ok,
    }
    text = [
        f"module catalog for {parsed.spec.name or '(unnamed)'} (dim F = {result.dim_f}, seed {args.seed})"
    ]
    for line in result.lines:
        shown = " ~ ".join(
            p.name + ("" if p.exists else " (absent)") for p in line.presentations
        )
        dim = "-" if line.dim is None else str(line.dim)
        text.append(
            f"  line {line.index:2d} [{'ok' if line.ok else 'FAIL'}]"
            f" dim {dim} (expected {line.expected_dim})  {shown}"
        )
        for note in line.notes:
            text.append(f"           note: {note}")
    if result.equalities:
        text.append("  equalities:")
        for l, r, eq in result.equalities:
            text.append(f"    {l} == {r}: {'yes' if eq else 'NO'}")
    if result.distinguished:
        text.append(
            "  distinguished ideals: "
            + ", ".join(f"{name} (dim {d})" for name, d in result.distinguished)
        )
    text.append(
        f"  sum of squared dims = {result.sum_of_squares}, dim F = {result.dim_f}"
        f" -> {'complete' if result.complete else 'INCOMPLETE'}"
    )
    text.append(f"catalog: {'ok' if result.ok else 'FAILED'}")
    _emit(args, obj, "\n".join(text) + "\n")
    return 0 if result.ok else 1


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--instance", required=True, help="path to an instance JSON file")
    common.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument(
        "--max-dim",
        type=int,
        default=DEFAULT_MAX_DIM,
        help=f"refuse algebras above this dimension (default {DEFAULT_MAX_DIM})",
    )
    common.add_argument("--seed", type=int, default=0, help="seed for randomized phases")

    parser = argparse.ArgumentParser(
        prog="convalg",
        description="Exact convolution algebras of finite GF(2)-vector-group actions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("describe", parents=[common], help="summarize an instance")
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("verify", parents=[common], help="run the structural check suite")
    p.add_argument(
        "--checks",
        help="comma-separated check ids (default: all); known ids: " + ", ".join(ALL_CHECK_IDS),
    )
    p.add_argument(
        "--random-budget",
        type=int,
        default=2000,
        help="number of random samples in randomized phases (default 2000)",
    )
    p.add_argument(
        "--timings", action="store_true", help="include wall-clock timing in the report"
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser(
        "ideal", parents=[common], help="print a right ideal basis and its action matrices"
    )
    p.add_argument(
        "--stabilizer",
        required=True,
        help="stabilizer subgroup as comma-separated bitstrings ('0' for trivial)",
    )
    p.add_argument(
        "--orbit-index", type=int, default=0, help="which orbit of the stratum (default 0)"
    )
    p.add_argument(
        "--shift",
        required=True,
        help="shift subgroup as comma-separated bitstrings ('0' for trivial)",
    )
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser(
        "catalog", parents=[common], help="build and verify the rank-two module catalog"
    )
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, InvalidInputError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PositivityError, InternalCheckError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
