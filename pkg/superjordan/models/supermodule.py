"""
The Supermodule value type: a graded vector space with one action matrix per generator.
"""
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import List, Mapping, Optional, Tuple

from superjordan.algebra.linalg import SparseMatrix
from superjordan.errors import UnknownGenerator
from superjordan.models.algebra import EVEN, ODD, AlgebraSpec


@dataclass(frozen=True, eq=False)
class Supermodule:
    """
    Finite dimensional supermodule over an AlgebraSpec.

    parity[i] is 0 for even and 1 for odd basis vectors. Generators missing
    from actions act by zero. Matrices act on coordinate columns from the left.
    """
    algebra: AlgebraSpec
    parity: Tuple[int, ...]
    actions: Mapping[str, SparseMatrix] = field(default_factory=dict)
    name: Optional[str] = None

    def __post_init__(self):
        parity = tuple(int(p) for p in self.parity)
        if any(p not in (EVEN, ODD) for p in parity):
            raise ValueError("parity entries must be 0 (even) or 1 (odd)")
        n = len(parity)
        known = set(self.algebra.generator_names)
        for g in self.actions:
            if g not in known:
                raise UnknownGenerator(f"{g!r} is not a generator of {self.algebra.descriptor}")
        actions = {}
        for g in self.algebra.generator_names:
            mat = self.actions.get(g)
            if mat is None:
                mat = SparseMatrix.zero(n)
            if mat.shape != (n, n):
                raise ValueError(f"action of {g} has shape {mat.shape}, expected {(n, n)}")
            actions[g] = mat
        object.__setattr__(self, "parity", parity)
        object.__setattr__(self, "actions", MappingProxyType(actions))

    @property
    def dim(self) -> int:
        return len(self.parity)

    @property
    def even_indices(self) -> List[int]:
        return [i for i, p in enumerate(self.parity) if p == EVEN]

    @property
    def odd_indices(self) -> List[int]:
        return [i for i, p in enumerate(self.parity) if p == ODD]

    def action(self, generator: str) -> SparseMatrix:
        try:
            return self.actions[generator]
        except KeyError:
            raise UnknownGenerator(f"{generator!r} is not a generator of {self.algebra.descriptor}")

    def sign_matrix(self) -> SparseMatrix:
        """Parity sign operator diag((-1)^|e_i|)."""
        return SparseMatrix.diagonal([-1 if p else 1 for p in self.parity])

    def renamed(self, name: Optional[str]) -> "Supermodule":
        return Supermodule(self.algebra, self.parity, self.actions, name)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Supermodule):
            return NotImplemented
        return (self.algebra == other.algebra and self.parity == other.parity
                and all(self.actions[g] == other.actions[g] for g in self.algebra.generator_names))

    __hash__ = None

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"Supermodule({self.algebra.descriptor}{label}, dim={self.dim})"
