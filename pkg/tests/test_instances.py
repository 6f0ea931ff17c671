"""Instance file parsing, serialization, and the random sampler."""

import json
import random
from pathlib import Path

import pytest

from convalg import (
    ConvolutionAlgebra,
    algebra_dimension,
    load_instance,
    random_spec,
    realize,
    spec_from_dict,
    spec_to_dict,
)
from convalg.errors import ParseError, ResourceLimitError

INSTANCES = Path(__file__).resolve().parents[1] / "instances"


def test_bundled_instances_load(algebras):
    expected = {
        "i1.json": ("I1", 0, 2),
        "i2.json": ("I2", 1, 3),
        "i3.json": ("I3", 2, 11),
        "i4.json": ("I4", 2, 4),
        "two_free_orbits.json": ("two-free-orbits", 1, 4),
    }
    for filename, (name, e_dim, points) in expected.items():
        parsed = load_instance(INSTANCES / filename)
        assert parsed.spec.name == name
        assert parsed.spec.e_dim == e_dim
        assert parsed.spec.num_points == points
        assert parsed.notes == []


def test_round_trip_through_dict():
    parsed = load_instance(INSTANCES / "i3.json")
    data = spec_to_dict(parsed.spec)
    again = spec_from_dict(data)
    assert spec_to_dict(again.spec) == data
    assert again.notes == []


def test_noncanonical_stabilizer_is_normalized_with_note():
    parsed = spec_from_dict(
        {
            "name": "x",
            "e_dim": 2,
            "orbits": [{"stabilizer": ["11", "10"], "multiplicity": 1}],
        }
    )
    (orbit,) = parsed.spec.orbits
    assert orbit.stabilizer.dim == 2
    assert len(parsed.notes) == 1
    assert "canonicalized" in parsed.notes[0]


def test_multiplicity_defaults_to_one():
    parsed = spec_from_dict({"name": "x", "e_dim": 1, "orbits": [{"stabilizer": []}]})
    assert parsed.spec.orbits[0].multiplicity == 1


@pytest.mark.parametrize(
    "data, message",
    [
        ([], "top level"),
        ({"e_dim": 1}, "missing orbits"),
        ({"orbits": [{"stabilizer": []}]}, "missing e_dim"),
        ({"name": 7, "e_dim": 1, "orbits": [{"stabilizer": []}]}, "name"),
        ({"e_dim": "1", "orbits": [{"stabilizer": []}]}, "e_dim"),
        ({"e_dim": -1, "orbits": [{"stabilizer": []}]}, "nonnegative"),
        ({"e_dim": 1, "orbits": []}, "nonempty"),
        ({"e_dim": 1, "orbits": [{}]}, "missing stabilizer"),
        ({"e_dim": 1, "orbits": [{"stabilizer": "1"}]}, "list"),
        ({"e_dim": 1, "orbits": [{"stabilizer": [1]}]}, "string"),
        ({"e_dim": 1, "orbits": [{"stabilizer": ["2"]}]}, "stabilizer"),
        ({"e_dim": 1, "orbits": [{"stabilizer": [], "multiplicity": 0}]}, "positive"),
        ({"e_dim": 1, "orbits": [{"stabilizer": [], "weight": 2}]}, "unknown keys"),
        ({"e_dim": 1, "orbits": [{"stabilizer": []}], "extra": 1}, "unknown keys"),
    ],
)
def test_malformed_instances_are_rejected(data, message):
    with pytest.raises(ParseError) as err:
        spec_from_dict(data, "test")
    assert message in str(err.value)


def test_group_dimension_bound():
    data = {"name": "n6", "e_dim": 6, "orbits": [{"stabilizer": []}]}
    with pytest.raises(ResourceLimitError):
        spec_from_dict(data)


def test_load_reports_file_and_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{\n  oops\n}\n")
    with pytest.raises(ParseError) as err:
        load_instance(path)
    assert "broken.json:2:" in str(err.value)
    with pytest.raises(ParseError):
        load_instance(tmp_path / "does_not_exist.json")


def test_algebra_dimension_formula_matches_construction(algebras):
    for name, alg in algebras.items():
        assert algebra_dimension(alg.eset.spec) == alg.dim, name


def test_random_spec_is_deterministic_and_bounded():
    r1, r2 = random.Random(99), random.Random(99)
    a = [spec_to_dict(random_spec(r1, f"s{i}")) for i in range(8)]
    b = [spec_to_dict(random_spec(r2, f"s{i}")) for i in range(8)]
    assert a == b
    rng = random.Random(5)
    for i in range(30):
        spec = random_spec(rng, f"bound{i}")
        assert spec.e_dim <= 2
        assert spec.num_points <= 12
        assert algebra_dimension(spec) <= 160


def test_random_specs_realize_cleanly():
    rng = random.Random(1)
    for i in range(5):
        spec = random_spec(rng, f"r{i}")
        alg = ConvolutionAlgebra(realize(spec))
        assert alg.dim == algebra_dimension(spec)


def test_instance_files_are_canonical_json():
    # the bundled files use the exact serialization spec_to_dict produces
    for path in sorted(INSTANCES.glob("*.json")):
        data = json.loads(path.read_text())
        parsed = spec_from_dict(data, str(path))
        assert spec_to_dict(parsed.spec) == data
