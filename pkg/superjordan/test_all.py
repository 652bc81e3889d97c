"""
Smoke test runner for the super Jordan type toolkit.
Walks every layer once (config, logging, exact algebra, models, constructions,
analysis, bundles, file I/O, property suites) and prints a PASS/FAIL summary.
"""
import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

def print_section(title: str):
    print(f"\n{'='*60}")
    print(f"  {title}")
    print('='*60)

def print_pass(msg: str):
    print(f"  [PASS] {msg}")

def print_fail(msg: str):
    print(f"  [FAIL] {msg}")

def test_config():
    """Test configuration loading."""
    print_section("1. CONFIGURATION")
    try:
        from superjordan.config import settings

        assert settings.app_name == "superjordan"
        print_pass(f"App name: {settings.app_name} {settings.version}")

        assert settings.fixtures_dir.exists()
        print_pass(f"Fixtures dir exists: {settings.fixtures_dir}")

        assert settings.certificate.max_minors == 20000
        print_pass(f"Minors cap: {settings.certificate.max_minors}")

        assert settings.sampling.generic_rank_samples == 50
        print_pass(f"Generic rank samples: {settings.sampling.generic_rank_samples}")

        return True
    except Exception as e:
        print_fail(f"Config error: {e}")
        return False

def test_logging():
    """Test logging system."""
    print_section("2. LOGGING")
    try:
        from superjordan.utils.logging_config import get_logger, get_certificate_logger

        logger = get_logger("test")
        logger.info("Test log message")
        print_pass("Standard logger working")

        cert_logger = get_certificate_logger("test-certificate")
        cert_logger.debug("Test certificate decision")
        print_pass("Certificate logger working")

        return True
    except Exception as e:
        print_fail(f"Logging error: {e}")
        return False

def test_exact_algebra():
    """Test sparse rational matrices and the Groebner layer."""
    print_section("3. EXACT ALGEBRA")
    try:
        from superjordan.algebra.linalg import SparseMatrix, rank
        from superjordan.algebra.polys import Ideal, make_ring, vanishes_only_at_origin

        m = SparseMatrix(2, 2, {(0, 1): 1, (1, 0): "1/2"})
        assert rank(m) == 2
        print_pass(f"Rank of 2x2 permutation-like matrix: {rank(m)}")

        ring = make_ring(["a", "b"])
        a, b = ring.gens
        assert vanishes_only_at_origin(Ideal(ring, [a**2, b**3]))
        print_pass("<a^2, b^3> vanishes only at the origin")

        return True
    except Exception as e:
        print_fail(f"Algebra error: {e}")
        return False

def test_models():
    """Test algebras, points and supermodules."""
    print_section("4. MODELS")
    try:
        from superjordan.models.algebra import AlgebraSpec, OddPoint
        from superjordan.services.constructions import kac0
        from superjordan.services.superalgebra import superdim, validate

        sl11 = AlgebraSpec.parse("sl11")
        print_pass(f"Parsed {sl11}: odd generators {', '.join(sl11.odd_generators)}")

        p = OddPoint.from_map(sl11, {"x1": 1, "y1": 1})
        print_pass(f"Point {p} in weak cone: {p.in_weak_cone()}")

        m = kac0()
        assert validate(m) == []
        print_pass(f"K(0) valid, superdimension {superdim(m)}")

        return True
    except Exception as e:
        print_fail(f"Models error: {e}")
        return False

def test_constructions():
    """Test module constructions."""
    print_section("5. CONSTRUCTIONS")
    try:
        from superjordan.models.algebra import AlgebraSpec
        from superjordan.services.constructions import dual, free_module, omega, tensor, trivial, w_module

        ext2 = AlgebraSpec.exterior(2)
        for n in (-2, -1, 1, 2):
            print_pass(f"omega^{n}(k) over exterior(2): dim {omega(trivial(ext2), n).dim}")

        print_pass(f"W(3) dim {w_module(3).dim}, dual dim {dual(w_module(3)).dim}")
        print_pass(f"W(2) x W(3) dim {tensor(w_module(2), w_module(3)).dim}")
        print_pass(f"Free exterior(2) module dim {free_module(ext2).dim}")

        return True
    except Exception as e:
        print_fail(f"Constructions error: {e}")
        return False

def test_analysis():
    """Test Jordan types, CJT certificates and indecomposability."""
    print_section("6. JORDAN TYPE ANALYSIS")
    try:
        from superjordan.services.constructions import kac0, w_module
        from superjordan.services.indecomposability import indecomposability
        from superjordan.services.jordan_analysis import check_cjt, is_endotrivial
        from superjordan.services.module_io import load_fixture

        report = check_cjt(load_fixture("k0_plus_dualk0"), "weak", "certified")
        assert report.verdict == "constant"
        print_pass(f"K(0) + K-(0): {report.verdict} {report.jordan_type}")

        report = check_cjt(kac0(), "weak", "certified")
        assert report.verdict == "not_constant"
        print_pass(f"K(0): {report.verdict}, witnesses {[w.point for w in report.witnesses]}")

        report = check_cjt(w_module(3), "strong", "certified")
        print_pass(f"W(3): {report.verdict} {report.jordan_type}")

        print_pass(f"W(3) endotrivial: {is_endotrivial(w_module(3)).verdict}")
        print_pass(f"W(3) indecomposable: {indecomposability(w_module(3)).verdict}")

        return True
    except Exception as e:
        import traceback
        print_fail(f"Analysis error: {e}")
        traceback.print_exc()
        return False

def test_bundle():
    """Test theta, fiber functors and the graded window."""
    print_section("7. BUNDLES")
    try:
        from superjordan.services.bundle import certify_bundle, graded_window_dims
        from superjordan.services.constructions import w_module

        report = certify_bundle(w_module(3), fibers=4)
        print_pass(f"W(3): {report.verdict}, F1 {report.f1}, F2 {report.f2}")

        df = graded_window_dims(w_module(3), range(0, 3))
        print_pass(f"Graded window rows: {len(df)}")
        print(df.to_string())

        return True
    except Exception as e:
        print_fail(f"Bundle error: {e}")
        return False

def test_module_io():
    """Test fixtures, point parsing and recipes."""
    print_section("8. MODULE FILES")
    try:
        from superjordan.config import settings
        from superjordan.models.algebra import AlgebraSpec
        from superjordan.services.module_io import build_recipe, load_fixture, parse_point

        names = sorted(p.stem for p in settings.fixtures_dir.glob("*.json"))
        for name in names:
            load_fixture(name, check=False)
        print_pass(f"Fixtures loaded: {len(names)}")

        print_pass(f"Point: {parse_point('2/3*x1 - y2', AlgebraSpec.f(2))}")
        print_pass(f"Recipe omega(trivial(ev), 2): dim {build_recipe('omega(trivial(ev), 2)').dim}")

        return True
    except Exception as e:
        print_fail(f"Module I/O error: {e}")
        return False

def test_property_suites():
    """Run each property suite on a handful of cases."""
    print_section("9. PROPERTY SUITES")
    try:
        from superjordan.evaluation.property_suite import PropertySuiteEvaluator

        evaluator = PropertySuiteEvaluator(seed=0)
        for suite, count in (("closure", 3), ("summands", 2), ("classification", 10), ("duflo_serganova", 2)):
            results = evaluator.run(suite, count=count)
            assert results.counterexamples == 0, results.failures
            print_pass(f"{suite}: {results.checked} checks, stats {results.stats}")

        return True
    except Exception as e:
        print_fail(f"Suite error: {e}")
        return False

def main():
    """Run all tests."""
    print("\n" + "="*60)
    print("  SUPERJORDAN - SMOKE TEST SUITE")
    print("="*60)

    results = {}

    results['config'] = test_config()
    results['logging'] = test_logging()
    results['algebra'] = test_exact_algebra()
    results['models'] = test_models()
    results['constructions'] = test_constructions()
    results['analysis'] = test_analysis()
    results['bundle'] = test_bundle()
    results['module_io'] = test_module_io()
    results['suites'] = test_property_suites()

    # Summary
    print_section("TEST SUMMARY")
    passed = sum(1 for v in results.values() if v)
    total = len(results)

    for name, result in results.items():
        status = "[PASS]" if result else "[FAIL]"
        print(f"  {status}: {name}")

    print(f"\n  {'='*40}")
    print(f"  TOTAL: {passed}/{total} tests passed")
    print(f"  {'='*40}\n")

    return passed == total

if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
