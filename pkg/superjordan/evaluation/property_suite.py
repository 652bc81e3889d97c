"""
Property Suite Evaluation Module.
Seeded property checks of constant Jordan type closure, summands,
endotriviality, the f1 classification and the Duflo-Serganova fiber facts.
Results are collected as EvaluationResults and can be saved as JSON.
"""
from dataclasses import dataclass, field
from datetime import datetime
from itertools import combinations
from pathlib import Path
from typing import Callable, Dict, List, Optional
import json

import numpy as np

from superjordan.config import settings
from superjordan.errors import ProjectivityUndecided
from superjordan.models.algebra import AlgebraSpec, OddPoint
from superjordan.models.reports import JordanType
from superjordan.models.supermodule import Supermodule
from superjordan.services import constructions as C
from superjordan.services.indecomposability import classify_f1, indecomposability
from superjordan.services.jordan_analysis import (
    associated_variety,
    check_cjt,
    fiber_at,
    is_endotrivial,
    is_projective,
    jordan_type_at,
    tensor_type_prediction,
)
from superjordan.services.module_io import load_fixture
from superjordan.services.superalgebra import superdim
from superjordan.utils.logging_config import get_logger

logger = get_logger(__name__)

SUITES = ("closure", "summands", "endotrivial", "classification", "duflo_serganova")

DEFAULT_COUNTS = {"closure": 200, "summands": 100, "classification": 500, "duflo_serganova": 200}

SL11_CORPUS = ["k_ev", "k_od", "kac0", "dual_kac0", "k0_plus_dualk0",
               "ex2_m", "ex2_n", "ex2_sum", "ex3_m", "ex3_n", "ex3_sum"]
EXT2_CORPUS = ["trivial_ext2", "w2", "w3", "free_ext2", "omega_ext2_1", "omega_ext2_m1"]
SL11_PAIRS = ["k_ev", "kac0", "dual_kac0", "ex3_m", "ex3_n"]


@dataclass
class EvaluationResults:
    """Outcome of one property suite run."""
    suite: str
    seed: int
    count: int = 0
    timestamp: str = field(default_factory=lambda: datetime.now().isoformat())

    checked: int = 0
    counterexamples: int = 0
    skipped: int = 0
    failures: List[str] = field(default_factory=list)
    stats: Dict[str, int] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def check(self, ok: bool, description: str):
        self.checked += 1
        if not ok:
            self.counterexamples += 1
            self.failures.append(description)
            logger.warning(f"[{self.suite}] counterexample: {description}")

    def tally(self, key: str, amount: int = 1):
        self.stats[key] = self.stats.get(key, 0) + amount

    def to_dict(self) -> Dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "count": self.count,
            "timestamp": self.timestamp,
            "summary": {
                "checked": self.checked,
                "counterexamples": self.counterexamples,
                "skipped": self.skipped,
            },
            "failures": self.failures,
            "stats": dict(sorted(self.stats.items())),
            "notes": self.notes,
        }


def _random_point(rng: np.random.Generator, algebra: AlgebraSpec, bound: int = 3) -> OddPoint:
    n = len(algebra.odd_generators)
    while True:
        coords = rng.integers(-bound, bound + 1, size=n)
        if coords.any():
            return OddPoint.from_coords(algebra, [int(c) for c in coords])


def _weak_point(rng: np.random.Generator, algebra: AlgebraSpec) -> OddPoint:
    """Nonzero point on a random weak stratum (one of x_i, y_i per factor)."""
    bound = settings.sampling.coord_range
    coeffs = {}
    for i in range(1, algebra.rank + 1):
        gen = f"{'xy'[int(rng.integers(0, 2))]}{i}"
        coeffs[gen] = int(rng.integers(-bound, bound + 1))
    if not any(coeffs.values()):
        coeffs[next(iter(coeffs))] = 1
    return OddPoint.from_map(algebra, coeffs)


class PropertySuiteEvaluator:
    """
    Runs the seeded property suites.

    Every suite draws from numpy default_rng(seed), so a run is reproducible
    from (suite, count, seed).
    """

    def __init__(self, seed: Optional[int] = None):
        self.seed = settings.sampling.seed if seed is None else seed
        self.results_path = settings.results_dir
        self.results_path.mkdir(parents=True, exist_ok=True)
        self._ext2 = AlgebraSpec.exterior(2)
        self._ext4 = AlgebraSpec.exterior(4)
        self._pieces: Dict[str, Supermodule] = {}
        logger.info(f"PropertySuiteEvaluator initialized (seed {self.seed})")

    def run(self, suite: str, count: Optional[int] = None) -> EvaluationResults:
        runners: Dict[str, Callable[[int], EvaluationResults]] = {
            "closure": self.closure,
            "summands": self.summands,
            "endotrivial": lambda _: self.endotrivial(),
            "classification": self.classification,
            "duflo_serganova": self.duflo_serganova,
        }
        if suite not in runners:
            raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
        count = DEFAULT_COUNTS.get(suite, 0) if count is None else count
        results = runners[suite](count)
        logger.info(f"suite {suite}: {results.checked} checks, {results.counterexamples} counterexamples")
        return results

    def save(self, results: EvaluationResults) -> Path:
        path = self.results_path / f"{results.suite}_{datetime.now().strftime('%Y%m%d_%H%M%S')}.json"
        with open(path, "w") as f:
            json.dump(results.to_dict(), f, indent=2)
        logger.info(f"Saved suite results: {path}")
        return path

    # -- corpus -------------------------------------------------------------------

    def _piece(self, key: str) -> Supermodule:
        """Cached strong-CJT building blocks."""
        if key not in self._pieces:
            builders = {
                "w1": lambda: C.w_module(1), "w2": lambda: C.w_module(2), "w3": lambda: C.w_module(3),
                "wdual2": lambda: C.w_dual_module(2), "wdual3": lambda: C.w_dual_module(3),
                "free2": lambda: C.free_module(self._ext2),
                "omega2+": lambda: C.omega(C.trivial(self._ext2), 1),
                "omega2-": lambda: C.omega(C.trivial(self._ext2), -1),
                "k4": lambda: C.trivial(self._ext4),
                "omega4+": lambda: C.omega(C.trivial(self._ext4), 1),
                "omega4-": lambda: C.omega(C.trivial(self._ext4), -1),
            }
            self._pieces[key] = builders[key]()
        return self._pieces[key]

    def cjt_module(self, rng: np.random.Generator, algebra: AlgebraSpec) -> Supermodule:
        """Random strong-CJT module: a sum of zigzags, syzygies and frees, parity shifted at random."""
        if algebra.rank == 2:
            keys = ["w1", "w2", "w3", "wdual2", "wdual3", "free2", "omega2+", "omega2-"]
            parts = int(rng.integers(1, 4))
        else:
            keys = ["k4", "omega4+", "omega4-"]
            parts = 1
        pieces = []
        for _ in range(parts):
            m = self._piece(keys[int(rng.integers(0, len(keys)))])
            if rng.random() < 0.5:
                m = C.parity_shift(m)
            pieces.append(m)
        if algebra.rank == 4 and rng.random() < 0.5:
            pieces.append(C.trivial(self._ext4, int(rng.integers(0, 2))))
        return C.direct_sum(*pieces)

    # -- suites -----------------------------------------------------------------

    def closure(self, count: int) -> EvaluationResults:
        """Sum, dual, tensor, hom and omega(+-1) act on Jordan types as predicted."""
        results = EvaluationResults("closure", self.seed, count)
        rng = np.random.default_rng(self.seed)
        _, note = tensor_type_prediction(JordanType(a_ev=1, a_od=0, a2=0), JordanType(a_ev=1, a_od=0, a2=0))
        results.notes.append(note)
        for case in range(count):
            algebra = self._ext4 if rng.random() < 0.25 else self._ext2
            m, n = self.cjt_module(rng, algebra), self.cjt_module(rng, algebra)
            p = _random_point(rng, algebra)
            tag = f"case {case} over {algebra} at {p}"
            tm, tn = jordan_type_at(m, p), jordan_type_at(n, p)
            results.tally(str(algebra))

            t_sum = jordan_type_at(C.direct_sum(m, n), p)
            results.check(t_sum == JordanType(a_ev=tm.a_ev + tn.a_ev, a_od=tm.a_od + tn.a_od, a2=tm.a2 + tn.a2),
                          f"{tag}: sum {t_sum} != {tm} + {tn}")

            t_dual = jordan_type_at(C.dual(m), p)
            results.check(t_dual == tm, f"{tag}: dual {t_dual} != {tm}")

            predicted, _ = tensor_type_prediction(tm, tn)
            t_tensor = jordan_type_at(C.tensor(m, n), p)
            results.check(t_tensor == predicted, f"{tag}: tensor {t_tensor} != {predicted}")
            results.check(t_tensor.a1 == tm.a1 * tn.a1, f"{tag}: tensor stable part {t_tensor.a1} != {tm.a1 * tn.a1}")

            t_hom = jordan_type_at(C.hom(m, n), p)
            predicted_hom, _ = tensor_type_prediction(tn, t_dual)
            results.check(t_hom == predicted_hom, f"{tag}: hom {t_hom} != {predicted_hom}")

            for k in (1, -1):
                t_om = jordan_type_at(C.omega(m, k), p)
                results.check(
                    (t_om.a_ev, t_om.a_od) == (tm.a_od, tm.a_ev) and t_om.sdim == -tm.sdim,
                    f"{tag}: omega^{k} {t_om} does not swap {tm}",
                )

            if algebra.rank == 2:
                report = check_cjt(m, "strong", "certified")
                results.check(report.verdict == "constant" and report.jordan_type == tm,
                              f"{tag}: corpus module not certified constant ({report.verdict})")
        return results

    def summands(self, count: int) -> EvaluationResults:
        """Sums of strong-CJT modules stay strong-CJT; Kac-pair sums are caught."""
        results = EvaluationResults("summands", self.seed, count)
        rng = np.random.default_rng(self.seed)
        for case in range(count):
            m, n = self.cjt_module(rng, self._ext2), self.cjt_module(rng, self._ext2)
            tm = check_cjt(m, "strong").jordan_type
            tn = check_cjt(n, "strong").jordan_type
            report = check_cjt(C.direct_sum(m, n), "strong")
            expected = JordanType(a_ev=tm.a_ev + tn.a_ev, a_od=tm.a_od + tn.a_od, a2=tm.a2 + tn.a2)
            results.check(report.verdict == "constant" and report.jordan_type == expected,
                          f"pair {case}: sum verdict {report.verdict} {report.jordan_type}")

        for case in range(count):
            copies = int(rng.integers(1, 3))
            extra = [C.trivial(AlgebraSpec.sl11(), int(rng.integers(0, 2))) for _ in range(int(rng.integers(0, 3)))]
            kac = [C.parity_shift(C.kac0()) if rng.random() < 0.5 else C.kac0() for _ in range(copies)]
            dual_kac = [C.parity_shift(C.dual_kac0()) if rng.random() < 0.5 else C.dual_kac0() for _ in range(copies)]
            m = C.direct_sum(*(kac + extra))
            n = C.direct_sum(*(dual_kac + extra))
            total = C.direct_sum(m, n)
            tag = f"pattern {case} ({copies} Kac pairs, {len(extra)} trivials)"
            results.check(check_cjt(total, "weak").verdict == "constant", f"{tag}: sum not weak-constant")
            for label, mod in (("m", m), ("n", n)):
                results.check(check_cjt(mod, "weak").verdict == "not_constant", f"{tag}: {label} weak-constant")
                results.check(check_cjt(mod, "strong").verdict == "not_constant", f"{tag}: {label} strong-constant")
            results.check(check_cjt(total, "strong").verdict == "not_constant", f"{tag}: sum strong-constant")
        return results

    def endotrivial(self) -> EvaluationResults:
        """Both endotriviality routes agree on zigzags, their duals and syzygies of k."""
        results = EvaluationResults("endotrivial", self.seed)
        corpus: List[tuple] = []
        for n in range(1, 6):
            corpus.append((f"w({n})", C.w_module(n), True))
            corpus.append((f"wdual({n})", C.w_dual_module(n), True))
        for algebra, top in ((self._ext2, 3), (self._ext4, 2)):
            for n in range(-top, top + 1):
                corpus.append((f"omega(k, {n}) over {algebra}", C.omega(C.trivial(algebra), n), True))
        corpus.append(("K(0) + K-(0)", C.direct_sum(C.kac0(), C.dual_kac0()), False))
        corpus.append(("free over exterior(2)", C.free_module(self._ext2), False))
        corpus.append(("free over exterior(4)", C.free_module(self._ext4), False))
        results.count = len(corpus)

        for label, m, expected in corpus:
            report = is_endotrivial(m, allow_probabilistic=True, seed=self.seed)
            results.check(report.verdict == expected, f"{label}: endotrivial={report.verdict}, expected {expected}")
            if report.routes_agree is None:
                results.skipped += 1
                results.notes.extend(f"{label}: {note}" for note in report.notes)
            else:
                results.check(report.routes_agree, f"{label}: routes disagree")
            if report.probabilistic:
                results.tally("probabilistic")
        return results

    def classification(self, count: int) -> EvaluationResults:
        """Indecomposable non-projective strong-CJT exterior(2) modules have a1 = 1, concentrated parity."""
        results = EvaluationResults("classification", self.seed, count)
        rng = np.random.default_rng(self.seed)
        for case in range(count):
            dim = int(rng.integers(1, 9))
            m = C.random_module(self._ext2, dim, int(rng.integers(0, 2 ** 31)))
            report = check_cjt(m, "strong")
            if report.verdict == "inconclusive":
                results.skipped += 1
                continue
            if report.verdict != "constant" or report.jordan_type.a1 == 0:
                results.tally("not_cjt" if report.verdict != "constant" else "projective")
                continue
            verdict = indecomposability(m, seed=self.seed).verdict
            if verdict != "indecomposable":
                results.tally(verdict)
                continue
            t = report.jordan_type
            results.tally("qualifying")
            results.check(t.a1 == 1 and t.a_ev * t.a_od == 0, f"{m.name}: type {t}")
            try:
                family = classify_f1(m)
                results.tally(f"family:{family['family']}")
            except ValueError as exc:
                results.tally("unclassified")
                results.notes.append(f"{m.name}: {exc}")
        return results

    def duflo_serganova(self, count: int) -> EvaluationResults:
        """Pointwise support facts on the fixture corpus, plus certified per-stratum unions."""
        results = EvaluationResults("duflo_serganova", self.seed, count)
        rng = np.random.default_rng(self.seed)
        sl11 = {name: load_fixture(name) for name in SL11_CORPUS}
        ext2 = {name: load_fixture(name) for name in EXT2_CORPUS}

        def point_for(m: Supermodule) -> OddPoint:
            return _random_point(rng, m.algebra) if m.algebra.is_exterior else _weak_point(rng, m.algebra)

        for name, m in {**sl11, **ext2}.items():
            sdim = superdim(m).sdim
            dm = C.dual(m)
            for _ in range(count):
                p = point_for(m)
                fiber = fiber_at(m, p)
                results.check(fiber.sdim == sdim, f"{name} at {p}: fiber sdim {fiber.sdim} != {sdim}")
                results.check(fiber_at(dm, p) == fiber, f"{name} at {p}: dual fiber differs")
                if name.startswith("trivial") or name.startswith("k_"):
                    results.check(fiber.dim > 0, f"{name} at {p}: trivial module has zero fiber")
                if name.startswith("free"):
                    results.check(fiber.dim == 0, f"{name} at {p}: free module has nonzero fiber")

        for name in ("free_ext2",):
            try:
                results.check(is_projective(ext2[name]), f"{name}: not projective")
            except ProjectivityUndecided:
                results.skipped += 1
        results.check(not is_projective(ext2["trivial_ext2"]), "trivial module reported projective")

        pair_points = max(1, count // 4)
        for a, b in combinations(SL11_PAIRS, 2):
            m, n = sl11[a], sl11[b]
            s, t = C.direct_sum(m, n), C.tensor(m, n)
            for _ in range(pair_points):
                p = _weak_point(rng, m.algebra)
                in_m, in_n = fiber_at(m, p).dim > 0, fiber_at(n, p).dim > 0
                results.check((fiber_at(s, p).dim > 0) == (in_m or in_n), f"{a}+{b} at {p}: sum support")
                results.check((fiber_at(t, p).dim > 0) == (in_m and in_n), f"{a}*{b} at {p}: tensor support")
            strata = zip(associated_variety(m), associated_variety(n),
                         associated_variety(s), associated_variety(t))
            for vm, vn, vs, vt in strata:
                full_m, full_n = vm["kind"] == "full", vn["kind"] == "full"
                results.check((vs["kind"] == "full") == (full_m or full_n), f"{a}+{b} on {vs['stratum']}: union")
                results.check((vt["kind"] == "full") == (full_m and full_n), f"{a}*{b} on {vt['stratum']}: intersection")
                results.tally("certified_strata")
        return results


# Singleton
_evaluator: Optional[PropertySuiteEvaluator] = None


def get_property_evaluator() -> PropertySuiteEvaluator:
    """Get or create the default-seeded PropertySuiteEvaluator."""
    global _evaluator
    if _evaluator is None:
        _evaluator = PropertySuiteEvaluator()
    return _evaluator
