"""
Superalgebra Core Service.
Validation of supermodules against the defining relations, operators at odd
points, symbolic operators over cone charts and restriction to subalgebras.
"""
from dataclasses import dataclass
from itertools import product
from typing import List, Sequence, Tuple

from superjordan.algebra.linalg import SparseMatrix
from superjordan.algebra.polys import SymbolicOperator, make_ring
from superjordan.errors import ConeViolation
from superjordan.models.algebra import ODD, AlgebraSpec, OddPoint, SuperDim
from superjordan.models.supermodule import Supermodule
from superjordan.utils.logging_config import get_logger

logger = get_logger(__name__)


def _first_difference(lhs: SparseMatrix, rhs: SparseMatrix) -> Tuple[int, int]:
    diff = lhs - rhs
    return next(iter((i, j) for i, j, _ in diff.entries()))


def validate(m: Supermodule) -> List[str]:
    """
    Check parity compatibility and the bracket relations.

    Returns:
        Violation descriptions naming the generators and a matrix position;
        empty when the module is valid.
    """
    violations: List[str] = []
    algebra = m.algebra
    parity = m.parity

    for g, gp in algebra.generators:
        for i, j, _ in m.actions[g].entries():
            if (parity[i] != parity[j]) != (gp == ODD):
                kind = "odd" if gp == ODD else "even"
                violations.append(f"parity: {kind} generator {g} has entry at ({i}, {j})")
                break

    odd = algebra.odd_generators
    for a, u in enumerate(odd):
        for v in odd[a:]:
            Au, Av = m.actions[u], m.actions[v]
            lhs = Au @ Av + Av @ Au
            target = algebra.bracket(u, v)
            rhs = m.actions[target] if target else SparseMatrix.zero(m.dim)
            if lhs != rhs:
                i, j = _first_difference(lhs, rhs)
                if u == v and target is None:
                    violations.append(f"relation {u}^2 = 0 fails at ({i}, {j})")
                else:
                    violations.append(f"relation [{u},{v}] = {target or 0} fails at ({i}, {j})")

    for t in algebra.even_generators:
        At = m.actions[t]
        for g in algebra.generator_names:
            Ag = m.actions[g]
            lhs = At @ Ag - Ag @ At
            if not lhs.is_zero():
                i, j = next(iter((i, j) for i, j, _ in lhs.entries()))
                violations.append(f"relation [{t},{g}] = 0 fails at ({i}, {j})")
    return violations


def superdim(m: Supermodule) -> SuperDim:
    odd = sum(m.parity)
    return SuperDim(even=m.dim - odd, odd=odd)


def principal_block_check(m: Supermodule) -> bool:
    """Every even generator t_i acts by zero."""
    return all(m.actions[t].is_zero() for t in m.algebra.even_generators)


def point_operator(m: Supermodule, p: OddPoint) -> SparseMatrix:
    """Action of sum coeffs(g) * g over the odd generators."""
    if p.algebra != m.algebra:
        raise ValueError(f"point over {p.algebra} used on a module over {m.algebra}")
    op = SparseMatrix.zero(m.dim)
    for name, c in zip(m.algebra.odd_generators, p.coeffs):
        if c:
            op = op + m.actions[name].scale(c)
    return op


@dataclass(frozen=True)
class Chart:
    """
    A linear chart of the odd part: the listed odd generators get the listed variables.

    The strong chart covers every odd generator; a weak stratum picks one of
    x_i, y_i for each factor i.
    """
    label: str
    generators: Tuple[str, ...]
    variables: Tuple[str, ...]

    def point(self, algebra: AlgebraSpec, coords: Sequence[object]) -> OddPoint:
        return OddPoint.from_map(algebra, dict(zip(self.generators, coords)))


def strong_chart(algebra: AlgebraSpec) -> Chart:
    odd = tuple(algebra.odd_generators)
    if algebra.is_exterior:
        variables = tuple(f"c{name[1:]}" for name in odd)
    else:
        variables = tuple(("a" if name[0] == "x" else "b") + name[1:] for name in odd)
    return Chart("strong", odd, variables)


def weak_stratum(algebra: AlgebraSpec, choice: Sequence[str]) -> Chart:
    """Stratum V_eps; choice[i-1] is 'x' or 'y' for factor i."""
    if algebra.is_exterior:
        return strong_chart(algebra)
    if len(choice) != algebra.rank or any(c not in ("x", "y") for c in choice):
        raise ValueError(f"stratum choice must pick x or y for each of {algebra.rank} factors")
    gens = tuple(f"{c}{i}" for i, c in enumerate(choice, 1))
    variables = tuple(("a" if c == "x" else "b") + str(i) for i, c in enumerate(choice, 1))
    label = "weak[" + ",".join(gens) + "]"
    return Chart(label, gens, variables)


def weak_strata(algebra: AlgebraSpec) -> List[Chart]:
    if algebra.is_exterior:
        return [strong_chart(algebra)]
    return [weak_stratum(algebra, choice) for choice in product("xy", repeat=algebra.rank)]


def symbolic_operator(m: Supermodule, chart: Chart) -> SymbolicOperator:
    """D = sum over the chart generators of variable * A_g, entries are linear forms."""
    ring = make_ring(chart.variables)
    entries = {}
    for gen, var in zip(chart.generators, ring.gens):
        for i, j, v in m.actions[gen].entries():
            entries[(i, j)] = entries.get((i, j), ring.zero) + var * v
    return SymbolicOperator(ring, m.dim, m.dim, entries)


def restrict_to_subalgebra(m: Supermodule, gens: Sequence[str]) -> Supermodule:
    """Forget the actions outside gens; generators are renamed canonically."""
    sub, rename = m.algebra.subalgebra(gens)
    actions = {new: m.actions[old] for old, new in rename.items()}
    logger.debug(f"restricted {m.algebra} module to {sub} via {rename}")
    return Supermodule(sub, m.parity, actions, m.name)


def as_exterior(m: Supermodule) -> Supermodule:
    """
    Reinterpret a principal-block sl11 / f(r) module over exterior(2r).

    x_i goes to z_i and y_i to z_{r+i}, matching the odd generator order,
    so OddPoint coefficients carry over unchanged.
    """
    if m.algebra.is_exterior:
        return m
    if not principal_block_check(m):
        raise ConeViolation("module is not in the principal block (some t_i acts nonzero)")
    target = m.algebra.principal_exterior()
    actions = {f"z{k}": m.actions[g] for k, g in enumerate(m.algebra.odd_generators, 1)}
    return Supermodule(target, m.parity, actions, m.name)


def as_exterior_point(p: OddPoint) -> OddPoint:
    if p.algebra.is_exterior:
        return p
    return OddPoint(p.algebra.principal_exterior(), p.coeffs)
