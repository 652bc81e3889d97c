"""Tests for algebra descriptors, odd points, validation and restriction."""
import pytest

from superjordan.algebra.linalg import SparseMatrix
from superjordan.errors import ConeViolation, NotSubalgebra, UnknownGenerator
from superjordan.models.algebra import AlgebraKind, AlgebraSpec, OddPoint, SuperDim
from superjordan.models.supermodule import Supermodule
from superjordan.services.constructions import kac0
from superjordan.services.superalgebra import (
    as_exterior,
    as_exterior_point,
    point_operator,
    principal_block_check,
    restrict_to_subalgebra,
    strong_chart,
    superdim,
    validate,
    weak_strata,
)


def kac_one() -> Supermodule:
    """Kac module with t1 acting by 1."""
    return Supermodule(
        AlgebraSpec.sl11(), (0, 1),
        {"t1": SparseMatrix.identity(2),
         "y1": SparseMatrix(2, 2, {(1, 0): 1}),
         "x1": SparseMatrix(2, 2, {(0, 1): 1})},
    )


def test_algebra_descriptors():
    assert AlgebraSpec.parse("sl11") == AlgebraSpec.sl11()
    assert AlgebraSpec.parse(" f(2) ").kind == AlgebraKind.F
    assert str(AlgebraSpec.parse("exterior(3)")) == "exterior(3)"
    for bad in ("f", "sl11(2)", "gl(1|1)"):
        with pytest.raises(ValueError):
            AlgebraSpec.parse(bad)


def test_generator_tables():
    assert AlgebraSpec.sl11().generator_names == ["t1", "x1", "y1"]
    assert AlgebraSpec.f(2).odd_generators == ["x1", "x2", "y1", "y2"]
    assert AlgebraSpec.exterior(2).even_generators == []
    assert AlgebraSpec.f(2).bracket("y2", "x2") == "t2"
    assert AlgebraSpec.f(2).bracket("x1", "y2") is None
    with pytest.raises(UnknownGenerator):
        AlgebraSpec.sl11().parity_of("z1")


def test_subalgebra_identification():
    sub, rename = AlgebraSpec.f(2).subalgebra(["t2", "x2", "y2"])
    assert sub == AlgebraSpec.sl11()
    assert rename == {"t2": "t1", "x2": "x1", "y2": "y1"}
    sub, rename = AlgebraSpec.f(2).subalgebra(["x1", "y2"])
    assert sub == AlgebraSpec.exterior(2)
    assert rename == {"x1": "z1", "y2": "z2"}
    with pytest.raises(NotSubalgebra):
        AlgebraSpec.sl11().subalgebra(["x1", "y1"])
    with pytest.raises(NotSubalgebra):
        AlgebraSpec.sl11().subalgebra([])


def test_odd_point_text_and_cone():
    p = OddPoint.from_map(AlgebraSpec.f(2), {"x1": "2/3", "y2": -1})
    assert str(p) == "2/3*x1 - y2"
    assert p.in_weak_cone()
    q = OddPoint.from_map(AlgebraSpec.sl11(), {"x1": 1, "y1": 1})
    assert not q.in_weak_cone()
    assert str(q.scaled(-2)) == "-2*x1 - 2*y1"
    assert OddPoint.from_coords(AlgebraSpec.exterior(2), [0, 0]).is_zero()
    with pytest.raises(UnknownGenerator):
        OddPoint.from_map(AlgebraSpec.sl11(), {"t1": 1})


def test_superdim():
    sd = SuperDim(even=3, odd=1)
    assert (sd.sdim, sd.dim, str(sd)) == (2, 4, "(3|1)")
    assert superdim(kac0()) == SuperDim(even=1, odd=1)


def test_supermodule_fills_missing_actions():
    m = kac0()
    assert m.action("x1").is_zero()
    assert m.even_indices == [0]
    assert m.odd_indices == [1]
    with pytest.raises(UnknownGenerator):
        Supermodule(AlgebraSpec.sl11(), (0,), {"z1": SparseMatrix.zero(1)})
    with pytest.raises(ValueError):
        Supermodule(AlgebraSpec.sl11(), (0, 2))
    with pytest.raises(ValueError):
        Supermodule(AlgebraSpec.sl11(), (0, 1), {"x1": SparseMatrix.zero(3)})


def test_validate_accepts_kac_modules():
    assert validate(kac0()) == []
    assert validate(kac_one()) == []
    assert principal_block_check(kac0())
    assert not principal_block_check(kac_one())


def test_validate_reports_square_relation():
    x = SparseMatrix(3, 3, {(1, 0): 1, (2, 1): 1})
    m = Supermodule(AlgebraSpec.sl11(), (0, 1, 0), {"x1": x})
    violations = validate(m)
    assert len(violations) == 1
    assert "x1^2" in violations[0]
    assert "(2, 0)" in violations[0]


def test_validate_reports_parity_and_bracket():
    x = SparseMatrix(2, 2, {(1, 0): 1})
    m = Supermodule(AlgebraSpec.sl11(), (0, 0), {"x1": x})
    assert any(v.startswith("parity: odd generator x1") for v in validate(m))
    y = SparseMatrix(2, 2, {(0, 1): 1})
    m = Supermodule(AlgebraSpec.sl11(), (0, 1), {"x1": x, "y1": y})
    assert any("[x1,y1] = t1" in v for v in validate(m))


def test_point_operator():
    m = kac_one()
    p = OddPoint.from_map(AlgebraSpec.sl11(), {"x1": 2, "y1": 3})
    assert point_operator(m, p).to_dict() == {(0, 1): 2, (1, 0): 3}
    with pytest.raises(ValueError):
        point_operator(m, OddPoint.unit(AlgebraSpec.exterior(2), "z1"))


def test_charts():
    assert strong_chart(AlgebraSpec.sl11()).variables == ("a1", "b1")
    assert strong_chart(AlgebraSpec.exterior(3)).variables == ("c1", "c2", "c3")
    labels = [c.label for c in weak_strata(AlgebraSpec.f(2))]
    assert labels == ["weak[x1,x2]", "weak[x1,y2]", "weak[y1,x2]", "weak[y1,y2]"]


def test_restriction_renames_generators():
    r = restrict_to_subalgebra(kac_one(), ["x1"])
    assert r.algebra == AlgebraSpec.exterior(1)
    assert r.action("z1") == kac_one().action("x1")
    assert validate(r) == []


def test_principal_block_reads_over_exterior():
    e = as_exterior(kac0())
    assert e.algebra == AlgebraSpec.exterior(2)
    assert e.action("z1").is_zero()
    assert e.action("z2") == kac0().action("y1")
    p = as_exterior_point(OddPoint.unit(AlgebraSpec.sl11(), "y1"))
    assert p.as_map() == {"z2": 1}
    with pytest.raises(ConeViolation):
        as_exterior(kac_one())
