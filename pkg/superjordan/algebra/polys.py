"""
Polynomial Ideals and Rank Certificates.
Buchberger Groebner bases over QQ, radical membership, minors ideals of
linear-form matrices and the "vanishes only at the origin" test.
"""
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grevlex
from sympy.polys.rings import PolyRing

from superjordan.algebra.linalg import Rational, SparseMatrix, Subspace, bipartite_blocks, to_rational
from superjordan.config import settings
from superjordan.errors import ResourceLimit
from superjordan.utils.logging_config import get_certificate_logger

logger = get_certificate_logger(__name__)

Monomial = Tuple[int, ...]


def make_ring(names: Sequence[str]) -> PolyRing:
    """Polynomial ring over QQ with grevlex order and the declared variable order."""
    return PolyRing(tuple(names), QQ, grevlex)


def total_degree(p) -> int:
    return max((sum(m) for m in p.keys()), default=-1)


def is_homogeneous(p) -> bool:
    return len({sum(m) for m in p.keys()}) <= 1


def spoly(p1, p2, ring):
    """S-polynomial of two monic polynomials."""
    lcm = ring.monomial_lcm(p1.LM, p2.LM)
    m1 = ring.monomial_div(lcm, p1.LM)
    m2 = ring.monomial_div(lcm, p2.LM)
    return p1.mul_monom(m1) - p2.mul_monom(m2)


def _buchberger(f: List, ring, max_spairs: int, max_basis_size: int, max_degree: int) -> List:
    """
    Reduced Groebner basis by Buchberger's algorithm.

    Gebauer-Moeller pair filtering, normal selection strategy (pair with the
    smallest lcm first). Raises ResourceLimit when a cap is crossed.
    """
    order = ring.order
    monomial_mul = ring.monomial_mul
    monomial_div = ring.monomial_div
    monomial_lcm = ring.monomial_lcm

    def select(P):
        return min(P, key=lambda pair: (order(monomial_lcm(f[pair[0]].LM, f[pair[1]].LM)), pair))

    def normal(g, J):
        h = g.rem([f[j] for j in J]) if J else g
        if not h:
            return None
        h = h.monic()
        if h not in I:
            I[h] = len(f)
            f.append(h)
        return h.LM, I[h]

    def update(G, B, ih):
        h = f[ih]
        mh = h.LM

        # new pairs (h, g), g in G
        C = set(G)
        D = set()
        while C:
            ig = min(C)
            C.remove(ig)
            mg = f[ig].LM
            LCMhg = monomial_lcm(mh, mg)

            def lcm_divides(ip):
                return monomial_div(LCMhg, monomial_lcm(mh, f[ip].LM))

            if monomial_mul(mh, mg) == LCMhg or (
                not any(lcm_divides(ipx) for ipx in C) and
                    not any(lcm_divides(pr[1]) for pr in D)):
                D.add((ih, ig))

        E = set()
        for ih_, ig in D:
            mg = f[ig].LM
            if monomial_mul(mh, mg) != monomial_lcm(mh, mg):
                E.add((ih_, ig))

        # old pairs
        B_new = set()
        for ig1, ig2 in B:
            mg1 = f[ig1].LM
            mg2 = f[ig2].LM
            LCM12 = monomial_lcm(mg1, mg2)
            if not monomial_div(LCM12, mh) or \
                    monomial_lcm(mg1, mh) == LCM12 or \
                    monomial_lcm(mg2, mh) == LCM12:
                B_new.add((ig1, ig2))
        B_new |= E

        G_new = {ig for ig in G if not monomial_div(f[ig].LM, mh)}
        G_new.add(ih)
        if len(G_new) > max_basis_size:
            raise ResourceLimit("groebner basis size", max_basis_size, len(G_new))
        if sum(mh) > max_degree:
            raise ResourceLimit("groebner basis degree", max_degree, sum(mh))
        return G_new, B_new

    if not f:
        return []

    # interreduce the input
    f1 = [p.monic() for p in f if p]
    while True:
        f = f1[:]
        f1 = []
        for i in range(len(f)):
            r = f[i].rem(f[:i]) if i else f[i]
            if r:
                f1.append(r.monic())
        if f == f1:
            break

    I: Dict = {}
    F = set()
    G: set = set()
    CP: set = set()
    for i, h in enumerate(f):
        I[h] = i
        F.add(i)

    while F:
        ih = min(F, key=lambda x: (order(f[x].LM), x))
        F.remove(ih)
        G, CP = update(G, CP, ih)

    reductions = 0
    while CP:
        ig1, ig2 = select(CP)
        CP.remove((ig1, ig2))
        reductions += 1
        if reductions > max_spairs:
            raise ResourceLimit("s-pair reductions", max_spairs, reductions)

        h = spoly(f[ig1], f[ig2], ring)
        G1 = sorted(G, key=lambda g: order(f[g].LM))
        ht = normal(h, G1)
        if ht:
            G, CP = update(G, CP, ht[1])

    Gr = set()
    for ig in G:
        ht = normal(f[ig], sorted(G - {ig}))
        if ht:
            Gr.add(ht[1])
    basis = sorted((f[ig] for ig in Gr), key=lambda p: order(p.LM), reverse=True)
    logger.debug(f"groebner: {len(basis)} elements after {reductions} s-pair reductions")
    return basis


@dataclass
class Ideal:
    """Ideal of a polynomial ring with a lazily computed reduced Groebner basis."""
    ring: PolyRing
    generators: List = field(default_factory=list)
    basis: Optional[List] = None

    def __post_init__(self):
        self.generators = [self.ring(g) for g in self.generators if g]

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(str(s) for s in self.ring.symbols)

    def is_unit(self) -> bool:
        return groebner_basis(self).basis == [self.ring.one]

    def is_homogeneous(self) -> bool:
        return all(is_homogeneous(g) for g in self.generators)


def groebner_basis(
    ideal: Ideal,
    max_spairs: Optional[int] = None,
    max_basis_size: Optional[int] = None,
    max_degree: Optional[int] = None,
) -> Ideal:
    """Return the ideal with its reduced grevlex Groebner basis filled in."""
    if ideal.basis is None:
        cfg = settings.certificate
        ideal.basis = _buchberger(
            list(ideal.generators),
            ideal.ring,
            max_spairs if max_spairs is not None else cfg.max_spairs,
            max_basis_size if max_basis_size is not None else cfg.max_basis_size,
            max_degree if max_degree is not None else cfg.max_basis_degree,
        )
    return ideal


def normal_form(p, ideal: Ideal):
    basis = groebner_basis(ideal).basis
    p = ideal.ring(p)
    if not basis:
        return p
    return p.rem(basis)


def radical_membership(p, ideal: Ideal, max_spairs: Optional[int] = None) -> bool:
    """
    Whether some power of p lies in the ideal.

    Decided by the Rabinowitsch trick: p is in the radical iff
    1 is in ideal + <1 - t*p> in a ring with one extra variable t.
    """
    ring = ideal.ring
    p = ring(p)
    if not p:
        return True
    if not normal_form(p, ideal):
        return True
    names = [str(s) for s in ring.symbols]
    extra = "rabinowitsch_t"
    while extra in names:
        extra = "_" + extra
    big = make_ring(names + [extra])
    t = big.gens[-1]

    def lift(q):
        return big({m + (0,): c for m, c in q.items()})

    generators = [lift(g) for g in ideal.generators] + [big.one - t * lift(p)]
    extended = groebner_basis(Ideal(big, generators), max_spairs=max_spairs)
    return extended.basis == [big.one]


def _has_pure_power(basis: Sequence, index: int) -> bool:
    for g in basis:
        lm = g.LM
        if lm[index] > 0 and sum(lm) == lm[index]:
            return True
    return False


def vanishes_only_at_origin(ideal: Ideal, variables: Optional[Sequence[str]] = None) -> bool:
    """
    Whether the zero locus of the ideal over the algebraic closure lies in {0}.

    Every listed variable must be in the radical. For a homogeneous ideal in
    all ring variables this is read off the Groebner basis directly: the
    quotient ring must be finite dimensional, i.e. every variable has a pure
    power among the leading monomials.
    """
    names = [str(s) for s in ideal.ring.symbols]
    variables = list(variables) if variables is not None else names
    if not ideal.generators:
        return not variables
    basis = groebner_basis(ideal).basis
    if basis == [ideal.ring.one]:
        return True
    if set(variables) == set(names) and ideal.is_homogeneous():
        verdict = all(_has_pure_power(basis, i) for i in range(len(names)))
        logger.debug(f"origin test via leading monomials: {verdict} (basis size {len(basis)})")
        return verdict
    gens = dict(zip(names, ideal.ring.gens))
    return all(radical_membership(gens[v], ideal) for v in variables)


@dataclass
class SymbolicOperator:
    """Matrix of linear forms over a polynomial ring, stored sparsely."""
    ring: PolyRing
    rows: int
    cols: int
    entries: Dict[Tuple[int, int], object] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), p in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            p = self.ring(p)
            if p:
                clean[(i, j)] = p
        self.entries = clean

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(str(s) for s in self.ring.symbols)

    def is_linear(self) -> bool:
        return all(sum(m) == 1 for p in self.entries.values() for m in p.keys())

    def is_zero(self) -> bool:
        return not self.entries

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SymbolicOperator":
        row_pos = {r: a for a, r in enumerate(rows)}
        col_pos = {c: b for b, c in enumerate(cols)}
        entries = {
            (row_pos[i], col_pos[j]): p
            for (i, j), p in self.entries.items()
            if i in row_pos and j in col_pos
        }
        return SymbolicOperator(self.ring, len(rows), len(cols), entries)

    def blocks(self) -> List[Tuple[List[int], List[int], "SymbolicOperator"]]:
        """Independent row/column blocks of the support; rank is additive over them."""
        return [
            (rows, cols, self.submatrix(rows, cols))
            for rows, cols in bipartite_blocks(self.entries.keys())
        ]

    def matmul(self, other: "SymbolicOperator") -> "SymbolicOperator":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row: Dict[int, List[Tuple[int, object]]] = {}
        for (j, k), q in other.entries.items():
            by_row.setdefault(j, []).append((k, q))
        out: Dict[Tuple[int, int], object] = {}
        for (i, j), p in self.entries.items():
            for k, q in by_row.get(j, ()):
                out[(i, k)] = out.get((i, k), self.ring.zero) + p * q
        return SymbolicOperator(self.ring, self.rows, other.cols, out)

    def to_domain_matrix(self) -> DomainMatrix:
        data: Dict[int, Dict[int, object]] = {}
        for (i, j), p in self.entries.items():
            data.setdefault(i, {})[j] = p
        return DomainMatrix(data, (self.rows, self.cols), self.ring.to_domain())

    def symbolic_rank(self) -> int:
        """Rank over the fraction field of the coordinate ring."""
        if not self.entries:
            return 0
        return int(self.to_domain_matrix().to_field().rank())


def evaluate_poly(p, point: Sequence[Rational]) -> Rational:
    total = QQ.zero
    for monom, coeff in p.items():
        term = coeff
        for value, exp in zip(point, monom):
            if exp:
                term *= value ** exp
        total += term
    return total


def evaluate(op: SymbolicOperator, point: Sequence[object]) -> SparseMatrix:
    """Entrywise evaluation at a rational point."""
    if len(point) != op.ring.ngens:
        raise ValueError(f"point has {len(point)} coordinates, ring has {op.ring.ngens} variables")
    values = [to_rational(v) for v in point]
    return SparseMatrix(
        op.rows, op.cols,
        {pos: evaluate_poly(p, values) for pos, p in op.entries.items()},
    )


def _det(ring, rows: List[List]):
    """Cofactor expansion below size 4, fraction-free Bareiss otherwise."""
    k = len(rows)
    if k == 1:
        return rows[0][0]
    if k == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if k == 3:
        a, b, c = rows
        return (a[0] * (b[1] * c[2] - b[2] * c[1])
                - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0]))
    return DomainMatrix([list(r) for r in rows], (k, k), ring.to_domain()).det()


def _linear_span(ring, polys: Iterable) -> List:
    """Basis of the QQ-span of the given polynomials (reduced echelon on coefficients)."""
    monomials: Dict[Monomial, int] = {}
    vectors = []
    for p in polys:
        vec = {}
        for m, c in p.items():
            vec[monomials.setdefault(m, len(monomials))] = c
        vectors.append(vec)
    if not monomials:
        return []
    # leftmost pivot = largest monomial
    ordered = sorted(monomials, key=ring.order, reverse=True)
    position = {monomials[m]: k for k, m in enumerate(ordered)}
    span = Subspace.span(len(ordered), [{position[j]: c for j, c in vec.items()} for vec in vectors])
    return [ring({ordered[k]: c for k, c in row}) for row in span.basis]


def minors_count(op: SymbolicOperator, k: int) -> int:
    """Number of k x k minors after dropping zero rows and columns."""
    nz_rows = {i for i, _ in op.entries}
    nz_cols = {j for _, j in op.entries}
    return comb(len(nz_rows), k) * comb(len(nz_cols), k)


def minors_ideal(op: SymbolicOperator, k: int, max_minors: Optional[int] = None) -> Ideal:
    """
    Ideal generated by all k x k minors.

    Zero rows and columns are dropped first since every minor through them
    vanishes. The generators are replaced by a basis of their linear span.
    """
    if not 1 <= k <= min(op.rows, op.cols):
        raise ValueError(f"minor size {k} out of range for {op.rows}x{op.cols}")
    cap = max_minors if max_minors is not None else settings.certificate.max_minors
    count = minors_count(op, k)
    if count > cap:
        raise ResourceLimit("minors", cap, count)

    rows = sorted({i for i, _ in op.entries})
    cols = sorted({j for _, j in op.entries})
    zero = op.ring.zero
    minors = []
    for rsel in combinations(rows, k):
        for csel in combinations(cols, k):
            block = [[op.entries.get((i, j), zero) for j in csel] for i in rsel]
            if any(not any(row) for row in block):
                continue
            d = _det(op.ring, block)
            if d:
                minors.append(d)
    generators = _linear_span(op.ring, minors)
    logger.debug(f"minors_ideal: k={k}, {count} minors, {len(generators)} independent generators")
    return Ideal(op.ring, generators)
