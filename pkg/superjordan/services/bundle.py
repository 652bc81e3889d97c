"""
Bundle Service.
The universal odd operator theta over the coordinate ring, fibers of the
functors F1 and F2 at rational points, the constant-rank bundle criterion and
graded kernel/image windows.
"""
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from superjordan.algebra.linalg import SparseMatrix, rank
from superjordan.algebra.polys import SymbolicOperator, evaluate, make_ring
from superjordan.config import settings
from superjordan.errors import RangeTooLarge, ZeroPoint
from superjordan.models.algebra import OddPoint, SuperDim
from superjordan.models.reports import BundleReport, FiberReport
from superjordan.models.supermodule import Supermodule
from superjordan.services.jordan_analysis import check_cjt, fiber_at
from superjordan.services.superalgebra import as_exterior, as_exterior_point, point_operator
from superjordan.utils.logging_config import get_logger

logger = get_logger(__name__)

F1_PARITY_NOTE = (
    "F1 fiber parities are reported as computed, (a_ev|a_od) of Ker/Im at the point; "
    "some conventions write the rank of F1 as (a_od|a_ev)"
)


def _exterior_view(m: Supermodule) -> Supermodule:
    """Principal-block sl11 / f(r) modules are read over exterior(2r); ConeViolation otherwise."""
    return as_exterior(m)


@dataclass(frozen=True)
class ThetaOperator:
    """theta(m (x) f) = sum_i z_i.m (x) Y_i f, as a matrix of linear forms in Y1..Ys."""
    module: Supermodule
    matrix: SymbolicOperator

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.matrix.variables

    def squares_to_zero(self) -> bool:
        return self.matrix.matmul(self.matrix).is_zero()

    def at(self, p: OddPoint) -> SparseMatrix:
        return evaluate(self.matrix, p.coeffs)


def build_theta(m: Supermodule) -> ThetaOperator:
    m = _exterior_view(m)
    ring = make_ring([f"Y{i}" for i in range(1, m.algebra.rank + 1)])
    entries = {}
    for g, Y in zip(m.algebra.odd_generators, ring.gens):
        for i, j, v in m.actions[g].entries():
            entries[(i, j)] = entries.get((i, j), ring.zero) + Y * v
    return ThetaOperator(m, SymbolicOperator(ring, m.dim, m.dim, entries))


def fiber_functors(m: Supermodule, p: OddPoint) -> FiberReport:
    """F1 fiber = Ker/Im at p with parities, F2 fiber dimension = rank at p."""
    m = _exterior_view(m)
    p = as_exterior_point(p)
    if p.is_zero():
        raise ZeroPoint("fiber functors need a nonzero point")
    f1 = fiber_at(m, p)
    f2 = rank(point_operator(m, p))
    return FiberReport(point=str(p), f1=f1, f2_dim=f2)


def sample_fibers(m: Supermodule, count: int, seed: int) -> List[FiberReport]:
    rng = np.random.default_rng(seed)
    bound = settings.sampling.coord_range
    nvars = len(m.algebra.odd_generators)
    reports = []
    while len(reports) < count:
        coords = rng.integers(-bound, bound + 1, size=nvars)
        if not coords.any():
            continue
        reports.append(fiber_functors(m, OddPoint.from_coords(m.algebra, [int(c) for c in coords])))
    return reports


def certify_bundle(m: Supermodule, fibers: int = 0, seed: Optional[int] = None) -> BundleReport:
    """F1 and F2 are (super) vector bundles iff the strong Jordan type is constant."""
    m = _exterior_view(m)
    seed = settings.sampling.seed if seed is None else seed
    report = check_cjt(m, "strong", "certified", seed=seed)
    notes = [F1_PARITY_NOTE]
    if report.verdict == "constant":
        jt = report.jordan_type
        return BundleReport(
            verdict="bundle", f1=jt.fiber, f2=jt.a2,
            fibers=sample_fibers(m, fibers, seed), certificate=report, notes=notes,
        )
    if report.verdict == "not_constant":
        witness_fibers = [fiber_functors(m, p) for p in report.witness_points]
        return BundleReport(verdict="not_bundle", fibers=witness_fibers, certificate=report, notes=notes)
    return BundleReport(verdict="inconclusive", certificate=report, notes=notes + [report.reason or ""])


def _monomials(nvars: int, degree: int) -> List[Tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for k in combo:
            exps[k] += 1
        out.append(tuple(exps))
    return out


def theta_in_degree(m: Supermodule, degree: int) -> SparseMatrix:
    """
    theta restricted to m (x) S_d -> m (x) S_{d+1}.

    Column (j, mu) sits at j*|S_d| + index(mu); rows likewise in degree d+1.
    """
    m = _exterior_view(m)
    s = m.algebra.rank
    src = _monomials(s, degree)
    dst = _monomials(s, degree + 1)
    dst_index = {mu: k for k, mu in enumerate(dst)}
    entries: Dict[Tuple[int, int], object] = {}
    for k, g in enumerate(m.algebra.odd_generators):
        for i, j, v in m.actions[g].entries():
            for a, mu in enumerate(src):
                nu = list(mu)
                nu[k] += 1
                pos = (i * len(dst) + dst_index[tuple(nu)], j * len(src) + a)
                entries[pos] = entries.get(pos, 0) + v
    return SparseMatrix(m.dim * len(dst), m.dim * len(src), entries)


def graded_window_dims(m: Supermodule, degrees: Sequence[int]) -> pd.DataFrame:
    """
    Kernel and image dimensions of theta degree by degree.

    f1_dim(d) = ker(d) - im(d-1) and f2_dim(d) = im(d-1), where im(d-1) is the
    image of the degree d-1 map inside degree d.
    """
    m = _exterior_view(m)
    degrees = list(degrees)
    columns = ["ker_dim", "im_dim", "f1_dim", "f2_dim"]
    if not degrees:
        return pd.DataFrame(columns=columns)
    top = settings.analysis.window_max_degree
    if min(degrees) < 0 or max(degrees) > top:
        raise RangeTooLarge(f"degrees must lie in [0, {top}], got {min(degrees)}..{max(degrees)}")

    s = m.algebra.rank
    ranks: Dict[int, int] = {}

    def theta_rank(d: int) -> int:
        if d < 0:
            return 0
        if d not in ranks:
            ranks[d] = rank(theta_in_degree(m, d))
        return ranks[d]

    rows = []
    for d in degrees:
        domain = m.dim * comb(s + d - 1, d)
        im_d = theta_rank(d)
        im_prev = theta_rank(d - 1)
        ker_d = domain - im_d
        rows.append({"degree": d, "ker_dim": ker_d, "im_dim": im_d,
                     "f1_dim": ker_d - im_prev, "f2_dim": im_prev})
    logger.debug(f"graded window {degrees[0]}..{degrees[-1]} for {m!r}")
    return pd.DataFrame(rows).set_index("degree")[columns]
