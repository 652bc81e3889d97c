"""
Module Constructions Service.
Builds trivial, shifted, summed, tensored, dual and Hom modules, Kac modules,
free modules, radical/socle/head layers, syzygies, zigzag W modules and a
seeded random generator.
"""
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from superjordan.algebra.linalg import SparseMatrix, Subspace, image, kernel
from superjordan.algebra.linalg import rank as matrix_rank
from superjordan.errors import AlgebraMismatch, NotContained
from superjordan.models.algebra import EVEN, ODD, AlgebraSpec
from superjordan.models.supermodule import Supermodule
from superjordan.utils.logging_config import get_logger

logger = get_logger(__name__)


def _parity_value(parity) -> int:
    if parity in (EVEN, ODD):
        return int(parity)
    text = str(parity).lower()
    if text in ("ev", "even", "0"):
        return EVEN
    if text in ("od", "odd", "1"):
        return ODD
    raise ValueError(f"unknown parity {parity!r}")


def _same_algebra(*modules: Supermodule) -> AlgebraSpec:
    algebra = modules[0].algebra
    for other in modules[1:]:
        if other.algebra != algebra:
            raise AlgebraMismatch(f"{algebra} vs {other.algebra}")
    return algebra


def _require_exterior(m: Supermodule, what: str):
    if not m.algebra.is_exterior:
        raise AlgebraMismatch(f"{what} is only available over exterior algebras, got {m.algebra}")


# -- basic functors ------------------------------------------------------

def zero_module(algebra: AlgebraSpec) -> Supermodule:
    return Supermodule(algebra, (), {}, "0")


def trivial(algebra: AlgebraSpec, parity=EVEN) -> Supermodule:
    p = _parity_value(parity)
    return Supermodule(algebra, (p,), {}, "k_ev" if p == EVEN else "k_od")


def parity_shift(m: Supermodule) -> Supermodule:
    """Flip every parity; action matrices are unchanged."""
    return Supermodule(m.algebra, tuple(1 - p for p in m.parity), m.actions)


def direct_sum(*modules: Supermodule) -> Supermodule:
    if not modules:
        raise ValueError("direct_sum needs at least one module")
    algebra = _same_algebra(*modules)
    parity = tuple(p for m in modules for p in m.parity)
    actions = {
        g: SparseMatrix.block_diagonal([m.actions[g] for m in modules])
        for g in algebra.generator_names
    }
    return Supermodule(algebra, parity, actions)


def tensor(m: Supermodule, n: Supermodule) -> Supermodule:
    """
    Koszul-signed tensor product.

    e_i (x) f_j sits at index i*dim(n) + j. An odd generator acts by
    A (x) I + S (x) B with S the parity sign of the left factor; an even one
    by A (x) I + I (x) B.
    """
    algebra = _same_algebra(m, n)
    parity = tuple((p + q) % 2 for p in m.parity for q in n.parity)
    Im, In = SparseMatrix.identity(m.dim), SparseMatrix.identity(n.dim)
    sign = m.sign_matrix()
    actions = {}
    for g, gp in algebra.generators:
        left = m.actions[g].kron(In)
        right = (sign if gp == ODD else Im).kron(n.actions[g])
        actions[g] = left + right
    return Supermodule(algebra, parity, actions)


def dual(m: Supermodule) -> Supermodule:
    """
    Dual module, (g.f)(v) = -(-1)^{|g||f|} f(g.v).

    Odd generators act by -A^T S, even ones by -A^T, on the dual basis.
    """
    sign = m.sign_matrix()
    actions = {}
    for g, gp in m.algebra.generators:
        At = m.actions[g].transpose()
        actions[g] = -(At @ sign) if gp == ODD else -At
    return Supermodule(m.algebra, m.parity, actions)


def hom(m: Supermodule, n: Supermodule) -> Supermodule:
    """Hom_k(m, n) realised as n (x) m*."""
    _same_algebra(m, n)
    return tensor(n, dual(m))


# -- sl(1|1) Kac modules --------------------------------------------------

def kac0() -> Supermodule:
    """K(0): v even, w odd, y.v = w."""
    y = SparseMatrix(2, 2, {(1, 0): 1})
    return Supermodule(AlgebraSpec.sl11(), (EVEN, ODD), {"y1": y}, "K(0)")


def dual_kac0() -> Supermodule:
    """K^-(0): u odd, z even, x.u = z."""
    x = SparseMatrix(2, 2, {(1, 0): 1})
    return Supermodule(AlgebraSpec.sl11(), (ODD, EVEN), {"x1": x}, "K-(0)")


# -- exterior algebra modules ---------------------------------------------

def exterior_words(s: int) -> List[Tuple[int, ...]]:
    """Basis words of the exterior algebra on s generators, by length then lexicographically."""
    return [w for k in range(s + 1) for w in combinations(range(1, s + 1), k)]


def free_module(algebra: AlgebraSpec, rank: int = 1, parity=EVEN) -> Supermodule:
    """Regular representation of the exterior algebra, rank copies, left multiplication."""
    if not algebra.is_exterior:
        algebra = algebra.principal_exterior()
    p = _parity_value(parity)
    s = algebra.rank
    words = exterior_words(s)
    index = {w: k for k, w in enumerate(words)}
    size = len(words)
    parity_vec = tuple((len(w) + p) % 2 for _ in range(rank) for w in words)
    actions = {}
    for j in range(1, s + 1):
        entries = {}
        for w in words:
            if j in w:
                continue
            sign = -1 if sum(1 for i in w if i < j) % 2 else 1
            target = tuple(sorted(w + (j,)))
            for copy in range(rank):
                entries[(copy * size + index[target], copy * size + index[w])] = sign
        actions[f"z{j}"] = SparseMatrix(rank * size, rank * size, entries)
    return Supermodule(algebra, parity_vec, actions, f"free({rank})")


def radical_subspace(m: Supermodule) -> Subspace:
    """Sum of the images of the odd generators."""
    vectors = []
    for g in m.algebra.odd_generators:
        vectors.extend(image(m.actions[g]).vectors())
    return Subspace.span(m.dim, vectors)


def socle_subspace(m: Supermodule) -> Subspace:
    """Common kernel of the odd generators."""
    odd = m.algebra.odd_generators
    if not odd:
        return Subspace.full(m.dim)
    stacked = {}
    for k, g in enumerate(odd):
        for i, j, v in m.actions[g].entries():
            stacked[(k * m.dim + i, j)] = v
    return kernel(SparseMatrix(len(odd) * m.dim, m.dim, stacked))


def submodule(m: Supermodule, w: Subspace) -> Supermodule:
    """
    Induced module on an invariant graded subspace.

    The basis is the reduced echelon basis of w; coordinates are read at the pivots.
    """
    basis = w.vectors()
    parity = tuple(m.parity[p] for p in w.pivots)
    actions = {}
    for g in m.algebra.generator_names:
        A = m.actions[g]
        entries = {}
        for k, vec in enumerate(basis):
            out = A.apply(vec)
            if not w.contains(out):
                raise NotContained(f"subspace is not invariant under {g}")
            for k2, p in enumerate(w.pivots):
                if out.get(p):
                    entries[(k2, k)] = out[p]
        actions[g] = SparseMatrix(w.dim, w.dim, entries)
    return Supermodule(m.algebra, parity, actions)


def quotient_module(m: Supermodule, w: Subspace) -> Supermodule:
    """Induced module on m/w, basis the non-pivot coordinates of w."""
    complement = w.complement_coordinates()
    position = {c: k for k, c in enumerate(complement)}
    parity = tuple(m.parity[c] for c in complement)
    actions = {}
    for g in m.algebra.generator_names:
        A = m.actions[g]
        entries = {}
        for k, c in enumerate(complement):
            out = w.reduce(A.column(c))
            for idx, v in out.items():
                entries[(position[idx], k)] = v
        actions[g] = SparseMatrix(len(complement), len(complement), entries)
    return Supermodule(m.algebra, parity, actions)


def radical_module(m: Supermodule) -> Supermodule:
    return submodule(m, radical_subspace(m))


def socle_module(m: Supermodule) -> Supermodule:
    return submodule(m, socle_subspace(m))


def head(m: Supermodule) -> Supermodule:
    return quotient_module(m, radical_subspace(m))


def quotient_by_socle(m: Supermodule) -> Supermodule:
    return quotient_module(m, socle_subspace(m))


# -- projective covers and syzygies ---------------------------------------

def _word_action(m: Supermodule, word: Tuple[int, ...], vector: Dict[int, object]) -> Dict[int, object]:
    """z_{w1}(z_{w2}(...z_{wk}(v)))."""
    out = dict(vector)
    for j in reversed(word):
        out = m.actions[f"z{j}"].apply(out)
        if not out:
            break
    return out


def projective_cover(m: Supermodule) -> Tuple[Supermodule, SparseMatrix]:
    """
    Free module on a lifted head basis with the cover map onto m.

    Head lifts are the standard basis vectors outside the radical's pivots,
    so they are homogeneous. Returns (P, pi) with pi of shape dim(m) x dim(P).
    """
    _require_exterior(m, "projective_cover")
    rad = radical_subspace(m)
    lifts = rad.complement_coordinates()
    s = m.algebra.rank
    words = exterior_words(s)
    if not lifts:
        return zero_module(m.algebra), SparseMatrix(m.dim, 0)
    blocks = [free_module(m.algebra, 1, m.parity[h]) for h in lifts]
    cover = direct_sum(*blocks)
    entries = {}
    col = 0
    for h in lifts:
        for w in words:
            for i, v in _word_action(m, w, {h: 1}).items():
                entries[(i, col)] = v
            col += 1
    pi = SparseMatrix(m.dim, cover.dim, entries)
    return cover, pi


def omega1(m: Supermodule) -> Supermodule:
    """Kernel of the projective cover map."""
    _require_exterior(m, "omega")
    if m.dim == 0:
        return zero_module(m.algebra)
    cover, pi = projective_cover(m)
    return submodule(cover, kernel(pi))


def top_product(m: Supermodule) -> SparseMatrix:
    """Action of z1 z2 ... zs."""
    _require_exterior(m, "top_product")
    T = SparseMatrix.identity(m.dim)
    for g in m.algebra.odd_generators:
        T = T @ m.actions[g]
    return T


def free_rank(m: Supermodule) -> int:
    """Number of free summands; equals the rank of the top product."""
    return matrix_rank(top_product(m))


def omega(m: Supermodule, n: int) -> Supermodule:
    """
    Syzygy (Heller shift) of any integer order.

    n = 0 strips projective summands, n > 0 iterates kernels of projective
    covers, n < 0 is dual(omega(dual(m), -n)).
    """
    _require_exterior(m, "omega")
    if n == 0:
        if free_rank(m) == 0:
            return m
        return omega(omega1(m), -1)
    if n < 0:
        return dual(omega(dual(m), -n))
    out = m
    for _ in range(n):
        out = omega1(out)
    logger.debug(f"omega^{n}: dim {m.dim} -> {out.dim}")
    return out


# -- zigzags and random modules ------------------------------------------

def w_module(n: int) -> Supermodule:
    """
    Zigzag over exterior(2): m_1..m_n even, s_1..s_{n-1} odd,
    z1.m_i = s_i and z2.m_{i+1} = s_i.
    """
    if n < 1:
        raise ValueError("w_module needs n >= 1")
    dim = 2 * n - 1
    x, y = {}, {}
    for i in range(1, n):
        x[(n + i - 1, i - 1)] = 1
        y[(n + i - 1, i)] = 1
    parity = (EVEN,) * n + (ODD,) * (n - 1)
    return Supermodule(AlgebraSpec.exterior(2), parity,
                       {"z1": SparseMatrix(dim, dim, x), "z2": SparseMatrix(dim, dim, y)}, f"W({n})")


def w_dual_module(n: int) -> Supermodule:
    return dual(w_module(n)).renamed(f"W*({n})")


def random_module(algebra: AlgebraSpec, dim: int, seed: int, density: float = 0.5, bound: int = 2) -> Supermodule:
    """
    Seeded module with Rad^2 = 0.

    Basis splits into a top layer and a bottom layer; every generator maps top
    into bottom with random integer entries between opposite parities, so all
    products of two generators vanish.
    """
    if not algebra.is_exterior:
        raise AlgebraMismatch(f"random_module is only available over exterior algebras, got {algebra}")
    if dim == 0:
        return zero_module(algebra)
    rng = np.random.default_rng([seed, dim, algebra.rank])
    top = int(rng.integers(1, dim + 1))
    parity = tuple(int(p) for p in rng.integers(0, 2, size=dim))
    actions = {}
    for g in algebra.odd_generators:
        entries = {}
        for j in range(top):
            for i in range(top, dim):
                if parity[i] == parity[j] or rng.random() >= density:
                    continue
                value = int(rng.integers(-bound, bound + 1))
                if value:
                    entries[(i, j)] = value
        actions[g] = SparseMatrix(dim, dim, entries)
    return Supermodule(algebra, parity, actions, f"random({dim},{seed})")
