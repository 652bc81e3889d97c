"""
Indecomposability Service.
Even endomorphism algebra, its trace-form radical, idempotent search and the
identification of indecomposable f1 modules with zigzag modules.
"""
from typing import Dict, List, Optional, Tuple

import numpy as np
from sympy import Poly, QQ, gcdex, symbols

from superjordan.algebra.linalg import SparseMatrix, image, kernel
from superjordan.algebra.linalg import rank as matrix_rank
from superjordan.config import settings
from superjordan.errors import AlgebraMismatch
from superjordan.models.reports import IndecomposabilityReport
from superjordan.models.supermodule import Supermodule
from superjordan.services.constructions import radical_subspace, socle_subspace, submodule
from superjordan.services.jordan_analysis import check_cjt
from superjordan.utils.logging_config import get_logger

logger = get_logger(__name__)

_t = symbols("t")


def even_endomorphisms(m: Supermodule) -> List[SparseMatrix]:
    """
    Basis of the even matrices commuting with every generator.

    Unknowns are the entries phi_ij with |i| = |j|; each generator A gives
    the linear equations (phi A - A phi)_ik = 0.
    """
    n = m.dim
    var: Dict[Tuple[int, int], int] = {}
    for i in range(n):
        for j in range(n):
            if m.parity[i] == m.parity[j]:
                var[(i, j)] = len(var)
    by_row: Dict[int, List[int]] = {}
    for (i, j) in var:
        by_row.setdefault(i, []).append(j)

    equations: Dict[Tuple[int, int], object] = {}
    eq_index: Dict[Tuple[str, int, int], int] = {}

    def add(g, i, k, col, value):
        row = eq_index.setdefault((g, i, k), len(eq_index))
        equations[(row, col)] = equations.get((row, col), QQ.zero) + value

    for g in m.algebra.generator_names:
        A = m.actions[g]
        if A.is_zero():
            continue
        rows = A.row_dicts()
        # (phi A)_ik = sum_j phi_ij A_jk
        for (i, j), col in var.items():
            for k, a in rows.get(j, {}).items():
                add(g, i, k, col, a)
        # (A phi)_ik = sum_j A_ij phi_jk
        for i, row in rows.items():
            for j, a in row.items():
                for k in by_row.get(j, ()):
                    add(g, i, k, var[(j, k)], -a)

    system = SparseMatrix(len(eq_index), len(var), equations)
    inverse = {col: pos for pos, col in var.items()}
    basis = []
    for vec in kernel(system).vectors():
        basis.append(SparseMatrix(n, n, {inverse[col]: v for col, v in vec.items()}))
    return basis


def trace_gram(basis: List[SparseMatrix]) -> SparseMatrix:
    entries = {}
    for a, u in enumerate(basis):
        for b in range(a, len(basis)):
            value = (u @ basis[b]).trace()
            if value:
                entries[(a, b)] = value
                entries[(b, a)] = value
    return SparseMatrix(len(basis), len(basis), entries)


def _charpoly(u: SparseMatrix) -> Poly:
    coeffs = u.to_domain_matrix().charpoly()
    return Poly([QQ.to_sympy(c) for c in coeffs], _t, domain=QQ)


def _poly_at(p: Poly, u: SparseMatrix) -> SparseMatrix:
    """Horner evaluation of p at the matrix u."""
    n = u.rows
    out = SparseMatrix.zero(n)
    identity = SparseMatrix.identity(n)
    for c in p.all_coeffs():
        out = out @ u + identity.scale(QQ.from_sympy(c))
    return out


def split_idempotent(u: SparseMatrix) -> Optional[SparseMatrix]:
    """
    Idempotent polynomial in u separating two coprime factors of its
    characteristic polynomial, or None when the charpoly is a prime power.
    """
    _, factors = _charpoly(u).factor_list()
    if len(factors) < 2:
        return None
    f = factors[0][0] ** factors[0][1]
    g = Poly(1, _t, domain=QQ)
    for h, e in factors[1:]:
        g = g * h ** e
    s, t, one = gcdex(f, g)
    if one != Poly(1, _t, domain=QQ):
        return None
    return _poly_at(t * g, u)


def _is_nontrivial_idempotent(e: SparseMatrix, m: Supermodule) -> bool:
    if e.is_zero() or e == SparseMatrix.identity(m.dim):
        return False
    if e @ e != e:
        return False
    return all(e @ A == A @ e for A in m.actions.values())


def indecomposability(m: Supermodule, seed: Optional[int] = None, attempts: Optional[int] = None) -> IndecomposabilityReport:
    """
    Indecomposable iff E / rad(E) is one dimensional, E the even endomorphisms.

    rad(E) is the kernel of the trace form. Otherwise look for a splitting
    idempotent among basis elements and seeded random combinations.
    """
    if not m.algebra.is_exterior and any(not m.actions[t].is_zero() for t in m.algebra.even_generators):
        raise AlgebraMismatch("indecomposability needs an exterior-algebra or principal-block module")
    if m.dim == 0:
        return IndecomposabilityReport(end_dim=0, radical_dim=0, verdict="decomposable", reason="zero module")

    basis = even_endomorphisms(m)
    gram_rank = matrix_rank(trace_gram(basis))
    end_dim = len(basis)
    radical_dim = end_dim - gram_rank
    if gram_rank == 1:
        return IndecomposabilityReport(end_dim=end_dim, radical_dim=radical_dim, verdict="indecomposable")

    attempts = settings.analysis.idempotent_attempts if attempts is None else attempts
    seed = settings.sampling.seed if seed is None else seed
    rng = np.random.default_rng(seed)
    candidates = list(basis)
    for _ in range(attempts):
        coeffs = rng.integers(-5, 6, size=len(basis))
        u = SparseMatrix.zero(m.dim)
        for c, b in zip(coeffs, basis):
            if c:
                u = u + b.scale(int(c))
        candidates.append(u)

    for tried, u in enumerate(candidates, 1):
        e = split_idempotent(u)
        if e is not None and _is_nontrivial_idempotent(e, m):
            logger.debug(f"split idempotent of rank {matrix_rank(e)} after {tried} candidates")
            return IndecomposabilityReport(
                end_dim=end_dim, radical_dim=radical_dim, verdict="decomposable",
                idempotent_rank=matrix_rank(e), attempts=tried, idempotent=e,
            )
    return IndecomposabilityReport(
        end_dim=end_dim, radical_dim=radical_dim, verdict="inconclusive", attempts=len(candidates),
        reason="no rational splitting idempotent found; E/rad(E) may be a nonsplit extension field",
    )


def decompose(m: Supermodule, seed: Optional[int] = None) -> List[Supermodule]:
    """Split m along idempotents until every piece is indecomposable or undecided."""
    if m.dim == 0:
        return []
    report = indecomposability(m, seed=seed)
    if report.verdict != "decomposable":
        return [m]
    e = report.idempotent
    rest = SparseMatrix.identity(m.dim) - e
    pieces = []
    for proj in (e, rest):
        pieces.extend(decompose(submodule(m, image(proj)), seed=seed))
    return pieces


def classify_f1(m: Supermodule) -> Dict[str, object]:
    """
    Identify an indecomposable non-projective strong-CJT exterior(2) module
    as W(n) or W*(n), possibly parity shifted.
    """
    if m.algebra.descriptor != "exterior(2)":
        raise ValueError("classification is for exterior(2) modules")
    report = check_cjt(m, "strong", "certified")
    if report.verdict != "constant":
        raise ValueError(f"module is not of constant Jordan type ({report.verdict})")
    jt = report.jordan_type
    if jt.a1 == 0:
        raise ValueError("module is projective")
    if indecomposability(m).verdict != "indecomposable":
        raise ValueError("module is not known to be indecomposable")

    rad = radical_subspace(m)
    soc = socle_subspace(m)
    top = m.dim - rad.dim
    top_parity = {m.parity[c] for c in rad.complement_coordinates()}
    if m.dim == 1:
        family, n, natural = "trivial", 1, 0
    elif top == soc.dim + 1:
        family, n, natural = "w", top, 0
    elif soc.dim == top + 1:
        family, n, natural = "wdual", soc.dim, 1
    else:
        raise ValueError(f"head {top} and socle {soc.dim} do not match a zigzag module")
    shifted = top_parity != {natural}
    if jt.a1 != 1 or jt.a2 != n - 1:
        raise ValueError(f"type {jt} does not match 1[1] + {n - 1}[2]")
    return {"family": family, "n": n, "parity_shift": shifted, "jordan_type": str(jt)}
