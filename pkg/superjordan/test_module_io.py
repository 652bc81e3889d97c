"""Tests for module files, point expressions, recipes and the shipped fixtures."""
import json

import pytest
from sympy import QQ

from superjordan.algebra.linalg import SparseMatrix
from superjordan.config import settings
from superjordan.errors import ParseError, UnknownGenerator, ValidationError, ZeroPoint
from superjordan.models.algebra import AlgebraSpec
from superjordan.models.supermodule import Supermodule
from superjordan.services.constructions import dual, free_module, omega, random_module, trivial, w_module
from superjordan.services.module_io import (
    build_recipe,
    default_algebra_for,
    load_fixture,
    load_module,
    parse_module,
    parse_point,
    save_module,
    serialize_module,
)
from superjordan.services.superalgebra import validate

SL11 = AlgebraSpec.sl11()
EXT2 = AlgebraSpec.exterior(2)
FIXTURES = sorted(p.stem for p in settings.fixtures_dir.glob("*.json"))


def module_text(**overrides) -> str:
    data = {
        "format": "superjordan-module/1",
        "algebra": "sl11",
        "dim": 2,
        "parity": [0, 1],
        "actions": {"y1": [[1, 0, "1"]]},
    }
    data.update(overrides)
    return json.dumps(data)


# -- module files ----------------------------------------------------------------

def test_parse_explicit_module():
    m = parse_module(module_text(name="K(0)"))
    assert m.algebra == SL11
    assert m.parity == (0, 1)
    assert m.action("y1").to_dict() == {(1, 0): 1}
    assert m.name == "K(0)"


def test_parse_accepts_integers_fractions_and_parity_words():
    m = parse_module(module_text(parity=["ev", "odd"], actions={"y1": [[1, 0, "-3/6"]]}))
    assert m.parity == (0, 1)
    assert m.action("y1")[1, 0] == QQ(-1, 2)
    m = parse_module(module_text(actions={"y1": [[1, 0, 4]]}))
    assert m.action("y1")[1, 0] == 4


def test_parse_errors_report_positions():
    with pytest.raises(ParseError) as info:
        parse_module('{"format": ')
    assert info.value.position.startswith("line 1, column")

    with pytest.raises(ParseError) as info:
        parse_module(module_text(colour="red"))
    assert info.value.position == "field colour"

    with pytest.raises(ParseError) as info:
        parse_module(module_text(algebra="gl(1|1)"))
    assert info.value.position == "field algebra"

    with pytest.raises(ParseError) as info:
        parse_module(module_text(format="other/2"))
    assert info.value.position == "field format"

    with pytest.raises(ParseError) as info:
        parse_module(module_text(actions={"y1": [[2, 0, "1"]]}))
    assert info.value.position == "field actions.y1[0]"
    assert info.value.expected == "indices in [0, 2)"


def test_parse_rejects_bad_entries():
    with pytest.raises(ParseError):
        parse_module(module_text(actions={"y1": [[1, 0, "1"], [1, 0, "2"]]}))
    with pytest.raises(ParseError):
        parse_module(module_text(actions={"y1": [[1, 0, "1.5"]]}))
    with pytest.raises(ParseError):
        parse_module(module_text(parity=[0, 1, 1]))
    with pytest.raises(ParseError):
        parse_module(module_text(parity=[0, "up"]))
    with pytest.raises(ParseError):
        parse_module(module_text(dim=None))
    with pytest.raises(UnknownGenerator) as info:
        parse_module(module_text(actions={"z1": [[1, 0, "1"]]}))
    assert info.value.position == "field actions.z1"


def test_parse_validates_relations():
    bad = module_text(dim=3, parity=[0, 1, 0], actions={"x1": [[1, 0, "1"], [2, 1, "1"]]})
    with pytest.raises(ValidationError) as info:
        parse_module(bad)
    assert "x1^2" in info.value.violations[0]
    m = parse_module(bad, check=False)
    assert validate(m)


def test_recipe_module_files():
    m = parse_module(json.dumps({"algebra": "exterior(2)", "recipe": "omega(trivial(ev), 2)", "dim": 5}))
    assert m.dim == 5
    assert m.name == "omega(trivial(ev), 2)"
    with pytest.raises(ParseError) as info:
        parse_module(json.dumps({"algebra": "exterior(2)", "recipe": "w(2)", "dim": 4}))
    assert info.value.position == "field dim"
    with pytest.raises(ParseError):
        parse_module(json.dumps({"algebra": "exterior(2)", "recipe": "w(2)", "parity": [0, 0, 1]}))


def test_serialize_is_canonical():
    m = Supermodule(SL11, (0, 1), {"y1": SparseMatrix(2, 2, {(1, 0): "2/4"})}, "half")
    text = serialize_module(m)
    assert text.endswith("\n")
    data = json.loads(text)
    assert list(data) == sorted(data)
    assert data["actions"] == {"y1": [[1, 0, "1/2"]]}
    assert data["name"] == "half"
    assert parse_module(text) == m


def test_save_and_load(tmp_path):
    path = save_module(w_module(3), tmp_path / "w3.json")
    assert load_module(path) == w_module(3)
    with pytest.raises(ParseError):
        load_module(tmp_path / "missing.json")


# -- point expressions ------------------------------------------------------------

def test_parse_point_grammar():
    p = parse_point("2/3*x1 - y2", AlgebraSpec.f(2))
    assert p.as_map() == {"x1": QQ(2, 3), "y2": QQ(-1)}
    assert str(p) == "2/3*x1 - y2"
    assert parse_point("-z2", EXT2).as_map() == {"z2": -1}
    assert parse_point("x + 2*y", SL11).as_map() == {"x1": 1, "y1": 2}
    assert parse_point("z1 + z1", EXT2).as_map() == {"z1": 2}


def test_parse_point_errors():
    with pytest.raises(UnknownGenerator):
        parse_point("t1", SL11)
    with pytest.raises(UnknownGenerator):
        parse_point("w1", EXT2)
    with pytest.raises(ZeroPoint):
        parse_point("z1 - z1", EXT2)
    assert parse_point("z1 - z1", EXT2, require_nonzero=False).is_zero()
    with pytest.raises(ParseError) as info:
        parse_point("3 z1", EXT2)
    assert info.value.position == "column 3"
    for bad in ("", "2*", "z1 z2", "1/0*z1", "z1 + $"):
        with pytest.raises(ParseError):
            parse_point(bad, EXT2)


# -- recipes ----------------------------------------------------------------------

def test_recipes_build_constructions():
    assert build_recipe("omega(trivial(ev), 2)") == omega(trivial(EXT2), 2)
    assert build_recipe("trivial(od)").parity == (1,)
    assert build_recipe("free(2, od)", AlgebraSpec.exterior(4)) == free_module(AlgebraSpec.exterior(4), 2, "od")
    assert build_recipe("random(5, 3)") == random_module(EXT2, 5, 3)
    assert build_recipe("sum(kac0, dual_kac0)") == load_fixture("k0_plus_dualk0")
    assert build_recipe("hom(w(2), w(3))").dim == 15


def test_recipe_algebra_context():
    assert default_algebra_for("pi(kac0)") == SL11
    assert default_algebra_for("w(3)") == EXT2
    assert build_recipe("trivial", SL11).algebra == SL11
    assert build_recipe("tensor(kac0, trivial(od))").algebra == SL11


def test_recipe_reads_quoted_files():
    m = build_recipe('dual("w3.json")', base_dir=settings.fixtures_dir)
    assert m == dual(w_module(3))


@pytest.mark.parametrize("text", ["frobnicate(1)", "tensor(w(2))", "w(2) w(3)", "w(2", "sum()", "w(ev)"])
def test_recipe_errors(text):
    with pytest.raises(ParseError):
        build_recipe(text)


# -- fixtures -----------------------------------------------------------------------

@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_loads_and_matches_metadata(name):
    data = json.loads((settings.fixtures_dir / f"{name}.json").read_text())
    m = load_fixture(name, check=False)
    assert m.dim == data["dim"]
    assert (validate(m) == []) == data.get("valid", True)


def test_fixtures_agree_with_constructions():
    assert load_fixture("w3") == w_module(3)
    assert load_fixture("free_ext2") == free_module(EXT2)
    assert load_fixture("omega_ext2_m1") == omega(trivial(EXT2), -1)
