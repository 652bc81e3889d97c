"""
Jordan Analysis Service.
Super Jordan types at odd points, fibers, constant Jordan type verdicts
(certified by minors ideals or sampled), projectivity, endotriviality and
associated varieties.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from superjordan.algebra.linalg import image, kernel, quotient_dims, rank
from superjordan.algebra.polys import (
    SymbolicOperator,
    evaluate,
    groebner_basis,
    minors_count,
    minors_ideal,
    vanishes_only_at_origin,
)
from superjordan.config import settings
from superjordan.errors import ConeViolation, ProjectivityUndecided, ResourceLimit, ZeroPoint
from superjordan.models.algebra import OddPoint, SuperDim
from superjordan.models.reports import (
    BlockCertificate,
    ChartCertificate,
    CjtReport,
    EndotrivialReport,
    JordanType,
    WitnessRecord,
)
from superjordan.models.supermodule import Supermodule
from superjordan.services.constructions import hom
from superjordan.services.superalgebra import (
    Chart,
    as_exterior,
    point_operator,
    principal_block_check,
    strong_chart,
    superdim,
    symbolic_operator,
    weak_strata,
)
from superjordan.utils.logging_config import get_certificate_logger, get_logger

logger = get_logger(__name__)
cert_logger = get_certificate_logger(__name__)


def _check_point(m: Supermodule, p: OddPoint):
    if p.algebra != m.algebra:
        raise ValueError(f"point over {p.algebra} used on a module over {m.algebra}")
    if p.is_zero():
        raise ZeroPoint("Jordan types are only defined at nonzero points")
    if m.algebra.is_exterior or p.in_weak_cone():
        return
    if principal_block_check(m):
        return
    raise ConeViolation(f"{p} is outside the self-commuting cone and the module is not principal-block")


def _type_for_rank(sd: SuperDim, a2: int) -> JordanType:
    return JordanType(a_ev=sd.even - a2, a_od=sd.odd - a2, a2=a2)


def fiber_at(m: Supermodule, p: OddPoint) -> SuperDim:
    """Graded dimensions of Ker(p)/Im(p)."""
    _check_point(m, p)
    op = point_operator(m, p)
    ker, im = kernel(op), image(op)
    total = quotient_dims(ker, im)
    ker_ev, _ = ker.graded_dims(m.parity)
    im_ev, _ = im.graded_dims(m.parity)
    even = ker_ev - im_ev
    return SuperDim(even=even, odd=total - even)


def jordan_type_at(m: Supermodule, p: OddPoint) -> JordanType:
    fiber = fiber_at(m, p)
    a2 = rank(point_operator(m, p))
    return JordanType.from_fiber(fiber, a2)


def jordan_type_table(m: Supermodule, points: Sequence[OddPoint]) -> pd.DataFrame:
    """One row per point: fiber parities, [2]-count and the printed type."""
    rows = []
    for p in points:
        t = jordan_type_at(m, p)
        rows.append({"point": str(p), "a_ev": t.a_ev, "a_od": t.a_od, "a2": t.a2, "type": str(t)})
    return pd.DataFrame(rows, columns=["point", "a_ev", "a_od", "a2", "type"])


# -- sampling -----------------------------------------------------------------

def _sample_coords(rng: np.random.Generator, n: int, bound: int) -> List[int]:
    while True:
        coords = rng.integers(-bound, bound + 1, size=n)
        if coords.any():
            return [int(c) for c in coords]


def _chart_rank(op: SymbolicOperator, coords: Sequence[int]) -> int:
    return rank(evaluate(op, coords))


def _sample_chart(op: SymbolicOperator, n: int, rng: np.random.Generator, bound: int) -> List[Tuple[List[int], int]]:
    coords = [_sample_coords(rng, op.ring.ngens, bound) for _ in range(n)]
    workers = max(1, settings.sampling.workers)
    if workers == 1:
        ranks = [_chart_rank(op, c) for c in coords]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            ranks = list(pool.map(lambda c: _chart_rank(op, c), coords))
    return list(zip(coords, ranks))


def _charts_for(m: Supermodule, cone: str) -> List[Chart]:
    if cone == "strong":
        if not m.algebra.is_exterior and not principal_block_check(m):
            raise ConeViolation("the strong cone needs a principal-block module (all t_i act by zero)")
        return [strong_chart(m.algebra)]
    if cone == "weak":
        return weak_strata(m.algebra)
    raise ValueError(f"unknown cone {cone!r}")


def _witness(m: Supermodule, chart: Chart, coords: Sequence[int], sd: SuperDim, a2: int):
    p = chart.point(m.algebra, coords)
    return p, WitnessRecord(point=str(p), jordan_type=_type_for_rank(sd, a2), chart=chart.label)


def _sampled_report(m, cone, charts, n, seed, bound) -> CjtReport:
    sd = superdim(m)
    rng = np.random.default_rng(seed)
    first = None
    for chart in charts:
        op = symbolic_operator(m, chart)
        for coords, r in _sample_chart(op, n, rng, bound):
            if first is None:
                first = (chart, coords, r)
            elif r != first[2]:
                p1, w1 = _witness(m, *first[:2], sd, first[2])
                p2, w2 = _witness(m, chart, coords, sd, r)
                return CjtReport(
                    verdict="not_constant", cone=cone, method="sampled", samples=n, seed=seed,
                    witnesses=[w1, w2], witness_points=[p1, p2],
                )
    return CjtReport(
        verdict="constant", cone=cone, method="sampled", samples=n, seed=seed,
        jordan_type=_type_for_rank(sd, first[2]), generic_rank=first[2],
    )


# -- certification -----------------------------------------------------------

@dataclass
class _ChartResult:
    chart: Chart
    op: SymbolicOperator
    generic_rank: int
    generic_coords: List[int]
    certificate: ChartCertificate
    resource_blocks: List[Tuple[SymbolicOperator, int]] = field(default_factory=list)


def _certify_block(block: SymbolicOperator, sampled_rank: int, max_minors: int, max_spairs: int) -> BlockCertificate:
    g = sampled_rank
    record = BlockCertificate(rows=block.rows, cols=block.cols, generic_rank=g)
    if g == 0:
        record.outcome = "trivial"
        return record
    count = minors_count(block, g)
    if count > max_minors:
        record.minors = count
        record.outcome = "resource_limit"
        return record
    if g < min(block.rows, block.cols):
        exact = block.symbolic_rank()
        if exact != g:
            cert_logger.warning(f"sampled rank {g} below symbolic rank {exact}; using {exact}")
            g = exact
            record.generic_rank = g
    try:
        ideal = minors_ideal(block, g, max_minors)
        groebner_basis(ideal, max_spairs=max_spairs)
        record.minors = minors_count(block, g)
        record.generators = len(ideal.generators)
        record.basis_size = len(ideal.basis)
        record.outcome = "certified" if vanishes_only_at_origin(ideal) else "rank_drops"
    except ResourceLimit as exc:
        cert_logger.info(f"block {block.rows}x{block.cols}: {exc}")
        record.outcome = "resource_limit"
    return record


def _certify_chart(m, chart, rng, n_generic, bound, max_minors, max_spairs) -> _ChartResult:
    op = symbolic_operator(m, chart)
    nvars = op.ring.ngens
    candidates = [[1] * nvars] + [_sample_coords(rng, nvars, bound) for _ in range(n_generic)]
    blocks = op.blocks()

    # per-block sampled ranks; the generic point is the first candidate attaining all of them
    block_ranks = [0] * len(blocks)
    evaluated = []
    for coords in candidates:
        ranks = [rank(evaluate(b, coords)) for _, _, b in blocks]
        evaluated.append((coords, ranks))
        block_ranks = [max(a, b) for a, b in zip(block_ranks, ranks)]

    certificates = []
    resource_blocks = []
    for (_, _, block), g in zip(blocks, block_ranks):
        record = _certify_block(block, g, max_minors, max_spairs)
        certificates.append(record)
        if record.outcome == "resource_limit":
            resource_blocks.append((block, record.generic_rank))
    generic_rank = sum(c.generic_rank for c in certificates)

    generic_coords = candidates[0]
    for coords, ranks in evaluated:
        if sum(ranks) == generic_rank:
            generic_coords = coords
            break

    outcomes = {c.outcome for c in certificates}
    if "rank_drops" in outcomes:
        outcome = "rank_drops"
    elif "resource_limit" in outcomes:
        outcome = "resource_limit"
    else:
        outcome = "constant"
    cert = ChartCertificate(
        label=chart.label, variables=list(chart.variables), generic_rank=generic_rank,
        blocks=certificates, outcome=outcome,
    )
    cert_logger.info(
        f"{chart.label}: generic rank {generic_rank}, {len(blocks)} blocks, outcome {outcome}"
    )
    return _ChartResult(chart, op, generic_rank, generic_coords, cert, resource_blocks)


def _drop_candidates(nvars: int, box: int):
    """Unit vectors, then sums and differences of pairs, then the integer box by size."""
    seen = set()
    for i in range(nvars):
        v = [0] * nvars
        v[i] = 1
        seen.add(tuple(v))
        yield v
    for i, j in combinations(range(nvars), 2):
        for s in (1, -1):
            v = [0] * nvars
            v[i], v[j] = 1, s
            seen.add(tuple(v))
            yield v
    box_points = [c for c in product(range(-box, box + 1), repeat=nvars) if any(c)]
    box_points.sort(key=lambda c: (max(abs(x) for x in c), c))
    for c in box_points:
        if c not in seen:
            yield list(c)


def _find_rank_drop(op: SymbolicOperator, generic_rank: int, box: int) -> Optional[List[int]]:
    for coords in _drop_candidates(op.ring.ngens, box):
        if _chart_rank(op, coords) < generic_rank:
            return coords
    return None


def check_cjt(
    m: Supermodule,
    cone: str = "weak",
    method: str = "certified",
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    max_minors: Optional[int] = None,
    max_spairs: Optional[int] = None,
) -> CjtReport:
    """
    Decide whether m has constant Jordan type on the weak or strong cone.

    Certified mode proves the generic rank on every chart with a minors
    ideal whose zero locus must be the origin; sampled mode compares types at
    seeded integer points.
    """
    cfg_s = settings.sampling
    seed = cfg_s.seed if seed is None else seed
    sampled = method in ("sampled", "sample")
    n = cfg_s.samples if samples is None else samples
    if sampled and n < 1:
        raise ValueError(f"sampled method needs at least one sample, got {n}")
    charts = _charts_for(m, cone)
    sd = superdim(m)

    if m.dim == 0:
        return CjtReport(verdict="constant", cone=cone, method="sampled" if sampled else "certified",
                         seed=seed, jordan_type=JordanType(a_ev=0, a_od=0, a2=0), generic_rank=0)

    if sampled:
        return _sampled_report(m, cone, charts, n, seed, cfg_s.coord_range)
    if method not in ("certified", "certify"):
        raise ValueError(f"unknown method {method!r}")

    max_minors = settings.certificate.max_minors if max_minors is None else max_minors
    max_spairs = settings.certificate.max_spairs if max_spairs is None else max_spairs
    rng = np.random.default_rng(seed)
    results = [
        _certify_chart(m, chart, rng, cfg_s.generic_rank_samples, cfg_s.coord_range, max_minors, max_spairs)
        for chart in charts
    ]
    chart_certs = [r.certificate for r in results]
    base = dict(cone=cone, method="certified", seed=seed, charts=chart_certs)

    # strata with different generic ranks
    ranks = [r.generic_rank for r in results]
    if len(set(ranks)) > 1:
        r1 = results[0]
        r2 = next(r for r in results if r.generic_rank != r1.generic_rank)
        witnesses, points = [], []
        for r in (r1, r2):
            p, w = _witness(m, r.chart, r.generic_coords, sd, _chart_rank(r.op, r.generic_coords))
            points.append(p)
            witnesses.append(w)
        return CjtReport(verdict="not_constant", witnesses=witnesses, witness_points=points,
                         reason="strata have different generic ranks", **base)

    g = ranks[0]
    generic_type = _type_for_rank(sd, g)

    dropping = [r for r in results if r.certificate.outcome == "rank_drops"]
    if dropping:
        r = dropping[0]
        p1, w1 = _witness(m, r.chart, r.generic_coords, sd, g)
        coords = _find_rank_drop(r.op, g, cfg_s.witness_box)
        if coords is None:
            return CjtReport(
                verdict="not_constant", generic_rank=g, witnesses=[w1], witness_points=[p1],
                reason="rank drops off the origin, but no rational witness was found in the search box",
                notes=["the drop locus has no small integer point; over the algebraic closure it is nonempty"],
                **base,
            )
        p2, w2 = _witness(m, r.chart, coords, sd, _chart_rank(r.op, coords))
        return CjtReport(verdict="not_constant", generic_rank=g, witnesses=[w1, w2],
                         witness_points=[p1, p2], reason="rank drops off the origin", **base)

    limited = [r for r in results if r.certificate.outcome == "resource_limit"]
    if limited:
        n = cfg_s.fallback_samples
        cert_logger.warning(f"falling back to {n} samples on {len(limited)} chart(s)")
        # certified blocks keep their rank, so only the limited blocks are sampled
        for r in limited:
            for block, block_rank in r.resource_blocks:
                drop = next((c for c, rk in _sample_chart(block, n, rng, cfg_s.coord_range) if rk != block_rank), None)
                if drop is not None:
                    p1, w1 = _witness(m, r.chart, r.generic_coords, sd, g)
                    p2, w2 = _witness(m, r.chart, drop, sd, _chart_rank(r.op, drop))
                    return CjtReport(
                        verdict="not_constant", generic_rank=g, witnesses=[w1, w2], witness_points=[p1, p2],
                        reason="rank drop found by fallback sampling", samples=n, **base,
                    )
        return CjtReport(
            verdict="inconclusive", generic_rank=g, reason="resource-limit", probabilistic=True,
            sampled_type=generic_type, samples=n,
            notes=[f"no counterexample among {n} fallback samples"], **base,
        )

    return CjtReport(verdict="constant", jordan_type=generic_type, generic_rank=g, **base)


# -- projectivity and endotriviality -----------------------------------------

def projectivity_report(m: Supermodule) -> Tuple[bool, CjtReport]:
    """Projective iff the strong cone type is constant with no [1] blocks."""
    report = check_cjt(m, "strong", "certified")
    if report.verdict == "constant":
        return report.jordan_type.a1 == 0, report
    if report.verdict == "not_constant":
        return False, report
    raise ProjectivityUndecided(report.reason or "certificate inconclusive")


def is_projective(m: Supermodule) -> bool:
    if m.dim == 0:
        return True
    return projectivity_report(m)[0]


def is_endotrivial(m: Supermodule, allow_probabilistic: bool = False, seed: Optional[int] = None) -> EndotrivialReport:
    """
    End(M) = k + projective, decided by two routes.

    The CJT route asks for constant strong type with a1 = 1. The direct route
    runs the same certificate on hom(m, m) and asks for stable type 1; it is
    skipped when hom(m, m) exceeds the configured size. Either route falls back
    to sampling only when allow_probabilistic is set.
    """
    cfg = settings.analysis
    seed = settings.sampling.seed if seed is None else seed
    notes: List[str] = []
    probabilistic = False

    report = check_cjt(m, "strong", "certified", seed=seed)
    cjt_type = report.jordan_type
    if report.verdict == "constant":
        cjt_route = cjt_type.a1 == 1
    elif report.verdict == "not_constant":
        cjt_route = False
    elif allow_probabilistic and report.sampled_type is not None:
        cjt_type = report.sampled_type
        cjt_route = cjt_type.a1 == 1
        probabilistic = True
        notes.append("CJT route used the sampled fallback; certificate hit a resource limit")
    else:
        raise ProjectivityUndecided(report.reason or "certificate inconclusive")

    ext = as_exterior(m)
    hom_dim = ext.dim * ext.dim
    direct_route = None
    direct_certified = None
    direct_types: List[JordanType] = []
    hom_sdim_check = None
    if hom_dim > cfg.endotrivial_direct_max_dim:
        notes.append(f"direct route skipped: dim hom(m, m) = {hom_dim} exceeds {cfg.endotrivial_direct_max_dim}")
    elif ext.dim:
        H = hom(ext, ext)
        hom_sdim_check = superdim(H).sdim == superdim(ext).sdim ** 2
        direct = check_cjt(H, "strong", "certified", seed=seed)
        if direct.verdict == "constant":
            direct_types = [direct.jordan_type]
            direct_route = direct.jordan_type.a1 == 1
            direct_certified = True
        elif direct.verdict == "not_constant":
            direct_types = [w.jordan_type for w in direct.witnesses]
            direct_route = False
            direct_certified = True
        elif allow_probabilistic and direct.sampled_type is not None:
            direct_types = [direct.sampled_type]
            direct_route = direct.sampled_type.a1 == 1
            direct_certified = False
            probabilistic = True
            notes.append(f"direct route used {direct.samples} fallback samples of hom(m, m)")
        else:
            notes.append(f"direct route inconclusive: {direct.reason}")
    else:
        direct_route = False
        direct_certified = True

    agree = None if direct_route is None else direct_route == cjt_route
    if agree is False:
        logger.warning(f"endotriviality routes disagree on {m!r}: cjt={cjt_route}, direct={direct_route}")
    return EndotrivialReport(
        verdict=cjt_route, cjt_type=cjt_type, cjt_route=cjt_route, direct_route=direct_route,
        direct_certified=direct_certified, direct_types=direct_types, hom_sdim_check=hom_sdim_check, routes_agree=agree,
        probabilistic=probabilistic, notes=notes,
    )


# -- associated variety -------------------------------------------------------

def associated_variety(m: Supermodule, cone: str = "weak", seed: Optional[int] = None) -> List[Dict]:
    """
    Per chart description of X_M.

    kind is "full" when the generic fiber is nonzero, "origin" when the fiber
    vanishes at every nonzero point of the chart, "proper" otherwise.
    """
    seed = settings.sampling.seed if seed is None else seed
    records = []
    for chart in _charts_for(m, cone):
        sub_report = _single_chart_report(m, chart, seed)
        g = sub_report.generic_rank
        fiber_dim = m.dim - 2 * g
        if fiber_dim > 0:
            kind = "full"
        elif sub_report.verdict == "constant":
            kind = "origin"
        elif sub_report.verdict == "not_constant":
            kind = "proper"
        else:
            kind = "undecided"
        records.append({"stratum": chart.label, "generic_fiber_dim": fiber_dim, "kind": kind})
    return records


def _single_chart_report(m: Supermodule, chart: Chart, seed: int) -> CjtReport:
    cfg_s = settings.sampling
    cfg_c = settings.certificate
    rng = np.random.default_rng(seed)
    r = _certify_chart(m, chart, rng, cfg_s.generic_rank_samples, cfg_s.coord_range,
                       cfg_c.max_minors, cfg_c.max_spairs)
    verdict = {"constant": "constant", "rank_drops": "not_constant"}.get(r.certificate.outcome, "inconclusive")
    return CjtReport(verdict=verdict, cone="strong" if chart.label == "strong" else "weak",
                     method="certified", seed=seed, generic_rank=r.generic_rank, charts=[r.certificate])


# -- closure bookkeeping --------------------------------------------------------

def tensor_type_prediction(t1: JordanType, t2: JordanType) -> Tuple[JordanType, str]:
    """
    Type of a tensor product of two constant types.

    The [1] part is the graded product of the fibers; the [2] count is
    a1*b2 + a2*b1 + 2*a2*b2, the count forced by dimensions.
    """
    a_ev = t1.a_ev * t2.a_ev + t1.a_od * t2.a_od
    a_od = t1.a_ev * t2.a_od + t1.a_od * t2.a_ev
    a2 = t1.a1 * t2.a2 + t1.a2 * t2.a1 + 2 * t1.a2 * t2.a2
    note = (
        "[2]-count uses a1*b2 + a2*b1 + 2*a2*b2; the variant a1*b2 + a2*b1 + a2*b2 "
        "undercounts dim(M (x) N) whenever a2*b2 > 0"
    )
    return JordanType(a_ev=a_ev, a_od=a_od, a2=a2), note


def tensor_formula_note(t1: JordanType, t2: JordanType) -> str:
    return tensor_type_prediction(t1, t2)[1]
