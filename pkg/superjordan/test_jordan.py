"""Tests for Jordan types, CJT verdicts, projectivity, endotriviality and indecomposability."""
import numpy as np
import pytest

from superjordan.config import settings
from superjordan.errors import AlgebraMismatch, ConeViolation, ProjectivityUndecided, ZeroPoint
from superjordan.models.algebra import AlgebraSpec, OddPoint, SuperDim
from superjordan.models.reports import JordanType, stable_equivalent
from superjordan.services.constructions import (
    direct_sum,
    free_module,
    kac0,
    omega,
    parity_shift,
    quotient_by_socle,
    random_module,
    trivial,
    w_dual_module,
    w_module,
    zero_module,
)
from superjordan.services.indecomposability import (
    classify_f1,
    decompose,
    even_endomorphisms,
    indecomposability,
)
from superjordan.services.jordan_analysis import (
    associated_variety,
    check_cjt,
    fiber_at,
    is_endotrivial,
    is_projective,
    jordan_type_at,
    jordan_type_table,
    projectivity_report,
    tensor_type_prediction,
)
from superjordan.services.module_io import load_fixture
from superjordan.test_supermodule import kac_one

SL11 = AlgebraSpec.sl11()
EXT2 = AlgebraSpec.exterior(2)
EXT4 = AlgebraSpec.exterior(4)


def jt(a_ev, a_od, a2):
    return JordanType(a_ev=a_ev, a_od=a_od, a2=a2)


def pt(algebra, **coeffs):
    return OddPoint.from_map(algebra, coeffs)


# -- pointwise ---------------------------------------------------------------

def test_jordan_type_of_kac_module():
    m = kac0()
    assert jordan_type_at(m, pt(SL11, y1=1)) == jt(0, 0, 1)
    assert jordan_type_at(m, pt(SL11, x1=1)) == jt(1, 1, 0)
    assert fiber_at(m, pt(SL11, x1=2)) == SuperDim(even=1, odd=1)


def test_jordan_types_off_the_weak_cone():
    p = pt(SL11, x1=1, y1=1)
    assert jordan_type_at(load_fixture("k0_plus_dualk0"), p) == jt(0, 0, 2)
    assert jordan_type_at(load_fixture("ex2_sum"), p) == jt(2, 0, 2)
    assert jordan_type_at(load_fixture("ex3_sum"), p) == jt(0, 0, 4)
    with pytest.raises(ConeViolation):
        jordan_type_at(kac_one(), p)


def test_point_errors():
    with pytest.raises(ZeroPoint):
        jordan_type_at(kac0(), OddPoint.from_coords(SL11, [0, 0]))
    with pytest.raises(ValueError):
        jordan_type_at(kac0(), pt(EXT2, z1=1))


def test_jordan_type_table():
    df = jordan_type_table(w_module(3), [pt(EXT2, z1=1), pt(EXT2, z1=1, z2=1)])
    assert list(df.columns) == ["point", "a_ev", "a_od", "a2", "type"]
    assert list(df["point"]) == ["z1", "z1 + z2"]
    assert list(df["type"]) == ["(1|0)[1] + 2[2]"] * 2


def test_jordan_type_text_and_stable_part():
    t = jt(1, 0, 2)
    assert str(t) == "(1|0)[1] + 2[2]"
    assert (t.a1, t.dim, t.sdim) == (1, 5, 1)
    assert stable_equivalent(t, jt(1, 0, 7))
    assert not stable_equivalent(t, jt(0, 1, 2))


# -- constant Jordan type ------------------------------------------------------

def test_sum_of_kac_modules_is_weak_but_not_strong_cjt():
    m = load_fixture("k0_plus_dualk0")
    weak = check_cjt(m, "weak", "certified")
    assert weak.verdict == "constant"
    assert weak.jordan_type == jt(1, 1, 1)
    strong = check_cjt(m, "strong", "certified")
    assert strong.verdict == "not_constant"
    assert [w.point for w in strong.witnesses] == ["x1 + y1", "x1"]
    assert [w.jordan_type for w in strong.witnesses] == [jt(0, 0, 2), jt(1, 1, 1)]


def test_kac_module_is_not_weak_cjt():
    report = check_cjt(kac0(), "weak", "certified")
    assert report.verdict == "not_constant"
    assert {w.point for w in report.witnesses} == {"x1", "y1"}
    assert report.reason == "strata have different generic ranks"


def test_weak_types_of_sl11_examples():
    assert check_cjt(load_fixture("ex2_sum"), "weak").jordan_type == jt(3, 1, 1)
    report = check_cjt(load_fixture("ex3_sum"), "weak")
    assert report.jordan_type == jt(1, 1, 3)
    assert report.jordan_type.fiber == SuperDim(even=1, odd=1)


def test_zigzag_certificate():
    report = check_cjt(w_module(3), "strong", "certified")
    assert report.verdict == "constant"
    assert report.jordan_type == jt(1, 0, 2)
    (chart,) = report.charts
    assert chart.variables == ["c1", "c2"]
    (block,) = chart.blocks
    assert (block.generators, block.outcome) == (3, "certified")


def test_sampled_method_agrees():
    report = check_cjt(w_module(3), "strong", "sampled", samples=20, seed=3)
    assert report.method == "sampled"
    assert report.verdict == "constant"
    assert report.jordan_type == jt(1, 0, 2)
    assert check_cjt(kac0(), "weak", "sampled", samples=5).verdict == "not_constant"


@pytest.mark.parametrize("m", [kac0(), zero_module(EXT2)], ids=["kac0", "zero"])
@pytest.mark.parametrize("samples", [0, -1])
def test_sampled_method_needs_samples(m, samples):
    with pytest.raises(ValueError, match="at least one sample"):
        check_cjt(m, "weak" if m.algebra == SL11 else "strong", "sampled", samples=samples)


CERTIFIED_CONSTANT = [
    ("w3", lambda: w_module(3), "strong"),
    ("free_ext2", lambda: free_module(EXT2), "strong"),
    ("omega_1", lambda: omega(trivial(EXT2), 1), "strong"),
    ("omega_-1", lambda: omega(trivial(EXT2), -1), "strong"),
    ("k0_plus_dualk0", lambda: load_fixture("k0_plus_dualk0"), "weak"),
    ("ex2_sum", lambda: load_fixture("ex2_sum"), "weak"),
    ("ex3_sum", lambda: load_fixture("ex3_sum"), "weak"),
]


@pytest.mark.parametrize("name,build,cone", CERTIFIED_CONSTANT, ids=[c[0] for c in CERTIFIED_CONSTANT])
@pytest.mark.parametrize("seed", [0, 7, 19, 101])
def test_certified_constant_survives_sampling(name, build, cone, seed):
    m = build()
    certified = check_cjt(m, cone, "certified")
    assert certified.verdict == "constant"
    sampled = check_cjt(m, cone, "sampled", samples=250, seed=seed)
    assert sampled.verdict == "constant", sampled.witnesses
    assert sampled.jordan_type == certified.jordan_type


@pytest.mark.parametrize("seed", range(12))
def test_sampled_ranks_never_exceed_generic_rank(seed):
    rng = np.random.default_rng(seed)
    m = random_module(EXT2, int(rng.integers(2, 9)), seed)
    report = check_cjt(m, "strong", "certified")
    if report.verdict == "inconclusive" or report.generic_rank is None:
        pytest.skip("certificate did not settle a generic rank")
    for _ in range(25):
        coords = rng.integers(-4, 5, size=2)
        if not coords.any():
            continue
        t = jordan_type_at(m, OddPoint.from_coords(EXT2, [int(c) for c in coords]))
        assert t.a2 <= report.generic_rank


def test_resource_limit_falls_back_to_sampling(monkeypatch):
    monkeypatch.setattr(settings.sampling, "fallback_samples", 40)
    report = check_cjt(w_module(3), "strong", "certified", max_minors=1)
    assert report.verdict == "inconclusive"
    assert report.reason == "resource-limit"
    assert report.probabilistic
    assert report.sampled_type == jt(1, 0, 2)
    assert report.charts[0].blocks[0].outcome == "resource_limit"


def test_strong_cone_needs_principal_block():
    with pytest.raises(ConeViolation):
        check_cjt(kac_one(), "strong")
    with pytest.raises(ValueError):
        check_cjt(kac0(), "diagonal")


def test_zero_module_is_constant():
    report = check_cjt(zero_module(EXT2), "strong")
    assert report.verdict == "constant"
    assert report.jordan_type == jt(0, 0, 0)


# -- projectivity, endotriviality, varieties ------------------------------------

def test_projectivity():
    assert is_projective(free_module(EXT2))
    assert is_projective(zero_module(EXT2))
    assert not is_projective(trivial(EXT2))
    assert not is_projective(kac0())
    ok, report = projectivity_report(free_module(EXT2))
    assert ok and report.jordan_type == jt(0, 0, 2)


def test_projectivity_undecided(monkeypatch):
    monkeypatch.setattr(settings.sampling, "fallback_samples", 10)
    monkeypatch.setattr(settings.certificate, "max_minors", 1)
    with pytest.raises(ProjectivityUndecided):
        projectivity_report(w_module(3))


def test_endotrivial_modules():
    for m in (trivial(EXT2), omega(trivial(EXT2), 1), w_module(3)):
        report = is_endotrivial(m)
        assert report.verdict
        assert report.routes_agree
        assert report.direct_certified is True
        assert report.hom_sdim_check
    report = is_endotrivial(kac0())
    assert not report.verdict
    assert report.direct_route is False
    assert not is_endotrivial(free_module(EXT2)).verdict


def test_endotrivial_direct_route_falls_back_to_sampling(monkeypatch):
    monkeypatch.setattr(settings.certificate, "max_minors", 1)
    monkeypatch.setattr(settings.sampling, "fallback_samples", 20)
    with pytest.raises(ProjectivityUndecided):
        is_endotrivial(w_module(3))
    report = is_endotrivial(w_module(3), allow_probabilistic=True)
    assert report.verdict and report.probabilistic
    assert report.direct_certified is False
    assert report.routes_agree
    assert any("fallback samples of hom" in note for note in report.notes)


def test_endotrivial_direct_route_covers_second_syzygies():
    assert settings.analysis.endotrivial_direct_max_dim >= omega(trivial(EXT4), 2).dim ** 2


def test_endotrivial_direct_route_skipped(monkeypatch):
    monkeypatch.setattr(settings.analysis, "endotrivial_direct_max_dim", 4)
    report = is_endotrivial(w_module(2))
    assert report.verdict
    assert report.direct_route is None
    assert report.routes_agree is None
    assert report.notes[0].startswith("direct route skipped")


def test_associated_variety():
    assert associated_variety(free_module(EXT2), "strong") == [
        {"stratum": "strong", "generic_fiber_dim": 0, "kind": "origin"}
    ]
    assert associated_variety(trivial(EXT2), "strong")[0]["kind"] == "full"
    kinds = {r["stratum"]: r["kind"] for r in associated_variety(kac0(), "weak")}
    assert kinds == {"weak[x1]": "full", "weak[y1]": "origin"}


def test_tensor_type_prediction():
    predicted, note = tensor_type_prediction(jt(1, 0, 1), jt(0, 1, 1))
    assert predicted == jt(0, 1, 4)
    assert predicted.dim == 9
    assert "a1*b2 + a2*b1 + 2*a2*b2" in note


# -- indecomposability -----------------------------------------------------------

def test_even_endomorphisms_of_trivial_and_free():
    assert len(even_endomorphisms(trivial(EXT2))) == 1
    # right multiplications by even elements of the exterior algebra
    assert len(even_endomorphisms(free_module(EXT2))) == 2


def test_indecomposability_verdicts():
    assert indecomposability(w_module(3)).verdict == "indecomposable"
    assert indecomposability(free_module(EXT2)).verdict == "indecomposable"
    report = indecomposability(load_fixture("k0_plus_dualk0"))
    assert report.verdict == "decomposable"
    assert report.idempotent_rank == 2
    assert indecomposability(zero_module(EXT2)).verdict == "decomposable"
    with pytest.raises(AlgebraMismatch):
        indecomposability(kac_one())


def test_decompose_splits_into_pieces():
    pieces = decompose(direct_sum(w_module(2), trivial(EXT2), w_module(3)))
    assert sorted(p.dim for p in pieces) == [1, 3, 5]
    assert decompose(zero_module(EXT2)) == []


def test_quotient_by_socle_of_first_syzygy():
    q4 = quotient_by_socle(omega(trivial(EXT4), 1))
    assert indecomposability(q4).verdict == "indecomposable"
    for coords in ({"z1": 1}, {"z1": 1, "z3": -2, "z4": 5}):
        assert jordan_type_at(q4, OddPoint.from_map(EXT4, coords)) == jt(0, 2, 6)
    assert check_cjt(q4, "strong", "sampled", samples=10).verdict == "constant"

    q2 = quotient_by_socle(omega(trivial(EXT2), 1))
    assert jordan_type_at(q2, pt(EXT2, z1=1)) == jt(0, 2, 0)
    assert indecomposability(q2).verdict == "decomposable"


def test_classify_f1_zigzags():
    assert classify_f1(w_module(3)) == {
        "family": "w", "n": 3, "parity_shift": False, "jordan_type": "(1|0)[1] + 2[2]",
    }
    dual = classify_f1(w_dual_module(3))
    assert (dual["family"], dual["n"], dual["parity_shift"]) == ("wdual", 3, False)
    shifted = classify_f1(parity_shift(w_module(2)))
    assert (shifted["family"], shifted["parity_shift"]) == ("w", True)
    assert classify_f1(trivial(EXT2))["family"] == "trivial"


def test_classify_f1_rejections():
    with pytest.raises(ValueError):
        classify_f1(free_module(EXT2))
    with pytest.raises(ValueError):
        classify_f1(kac0())
    with pytest.raises(ValueError):
        classify_f1(direct_sum(w_module(2), w_module(2)))
