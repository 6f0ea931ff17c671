"""Reading and writing E-set instance files.

An instance file is a JSON object:

    {
      "name": "I2",
      "e_dim": 1,
      "orbits": [
        {"stabilizer": [], "multiplicity": 1},
        {"stabilizer": ["1"], "multiplicity": 1}
      ]
    }

``e_dim`` is the dimension n of the acting group E = GF(2)^n and each
orbit entry gives a stabilizer subgroup (a list of basis bitstrings,
coordinate 0 leftmost; the empty list is the trivial subgroup) plus a
multiplicity.  Stabilizer generators are canonicalized on input; when the
written generators were not already the canonical echelon basis a note is
recorded.  ``multiplicity`` may be omitted and defaults to 1.

The command line tool rejects instances with e_dim above
:data:`MAX_CLI_E_DIM`; the in-memory model accepts somewhat larger groups.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .errors import ParseError, ResourceLimitError
from .esets import ESetSpec, OrbitSpec
from .gf2 import Subspace, all_subspaces, format_vector, intersect, span_of_strings

MAX_CLI_E_DIM = 5


@dataclass
class ParsedInstance:
    spec: ESetSpec
    notes: list[str] = field(default_factory=list)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ParseError(message)


def spec_from_dict(data: Any, source: str = "<instance>") -> ParsedInstance:
    """Validate and convert a decoded JSON object into an E-set spec."""
    _require(isinstance(data, dict), f"{source}: top level must be an object")
    allowed = {"name", "e_dim", "orbits"}
    extra = set(data) - allowed
    _require(not extra, f"{source}: unknown keys {sorted(extra)}")
    name = data.get("name", "")
    _require(isinstance(name, str), f"{source}: name must be a string")
    _require("e_dim" in data, f"{source}: missing e_dim")
    e_dim = data["e_dim"]
    _require(isinstance(e_dim, int) and not isinstance(e_dim, bool), f"{source}: e_dim must be an integer")
    _require(e_dim >= 0, f"{source}: e_dim must be nonnegative")
    if e_dim > MAX_CLI_E_DIM:
        raise ResourceLimitError(f"{source}: e_dim {e_dim} exceeds the bound {MAX_CLI_E_DIM}")
    _require("orbits" in data, f"{source}: missing orbits")
    orbits_data = data["orbits"]
    _require(isinstance(orbits_data, list) and orbits_data, f"{source}: orbits must be a nonempty list")
    notes: list[str] = []
    orbit_specs = []
    for i, entry in enumerate(orbits_data):
        ctx = f"{source}: orbits[{i}]"
        _require(isinstance(entry, dict), f"{ctx} must be an object")
        extra = set(entry) - {"stabilizer", "multiplicity"}
        _require(not extra, f"{ctx}: unknown keys {sorted(extra)}")
        _require("stabilizer" in entry, f"{ctx}: missing stabilizer")
        gens = entry["stabilizer"]
        _require(isinstance(gens, list), f"{ctx}: stabilizer must be a list of bitstrings")
        for j, g in enumerate(gens):
            _require(isinstance(g, str), f"{ctx}.stabilizer[{j}] must be a string")
        try:
            stab = span_of_strings(gens, e_dim)
        except Exception as exc:
            raise ParseError(f"{ctx}.stabilizer: {exc}") from None
        canonical = [format_vector(row, e_dim) for row in stab.basis]
        if gens != canonical:
            notes.append(f"{ctx}.stabilizer {gens} canonicalized to {canonical}")
        mult = entry.get("multiplicity", 1)
        _require(
            isinstance(mult, int) and not isinstance(mult, bool) and mult >= 1,
            f"{ctx}: multiplicity must be a positive integer",
        )
        orbit_specs.append(OrbitSpec(stab, mult))
    return ParsedInstance(ESetSpec(e_dim, tuple(orbit_specs), name), notes)


def load_instance(path: str | Path) -> ParsedInstance:
    """Load an instance file; raises ParseError with file context on failure."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return spec_from_dict(data, str(path))


def spec_to_dict(spec: ESetSpec) -> dict:
    """Canonical JSON-ready form of a spec (inverse of spec_from_dict)."""
    return {
        "name": spec.name,
        "e_dim": spec.e_dim,
        "orbits": [
            {
                "stabilizer": [format_vector(row, spec.e_dim) for row in o.stabilizer.basis],
                "multiplicity": o.multiplicity,
            }
            for o in spec.orbits
        ],
    }


def algebra_dimension(spec: ESetSpec) -> int:
    """Dimension of the convolution algebra, without realizing the E-set.

    Strata sizes determine it:  sum over stabilizer pairs (A, B) of
    |X_A| |X_B| |A^B|^2 / |E|.
    """
    e_size = 1 << spec.e_dim
    sizes: dict[Subspace, int] = {}
    for o in spec.orbits:
        sizes[o.stabilizer] = sizes.get(o.stabilizer, 0) + o.multiplicity * (
            e_size // o.stabilizer.size
        )
    total = 0
    for a, na in sizes.items():
        for b, nb in sizes.items():
            d = intersect(a, b)
            total += na * nb * d.size * d.size // e_size
    return total


def random_spec(
    rng: random.Random,
    name: str,
    max_e_dim: int = 2,
    max_points: int = 12,
    max_algebra_dim: int = 160,
) -> ESetSpec:
    """A random small instance, deterministic in the generator state.

    Resamples until both the point bound and the algebra dimension bound
    hold; the dimension bound keeps exact rank computations fast.
    """
    while True:
        e_dim = rng.randint(0, max_e_dim)
        subs = all_subspaces(e_dim)
        orbit_specs = tuple(
            OrbitSpec(rng.choice(subs), rng.randint(1, 3))
            for _ in range(rng.randint(1, 4))
        )
        spec = ESetSpec(e_dim, orbit_specs, name)
        if spec.num_points <= max_points and algebra_dimension(spec) <= max_algebra_dim:
            return spec
