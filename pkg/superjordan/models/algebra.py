"""
Pydantic models for the supported superalgebras, odd points and super dimensions.
"""
import re
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field
from sympy import QQ

from superjordan.algebra.linalg import Rational, format_rational, to_rational
from superjordan.errors import NotSubalgebra, UnknownGenerator

EVEN, ODD = 0, 1

_DESCRIPTOR_RE = re.compile(r"^\s*(sl11|f|exterior)\s*(?:\(\s*(\d+)\s*\))?\s*$")


class AlgebraKind(str, Enum):
    """Families of superalgebras the toolkit handles."""
    SL11 = "sl11"
    F = "f"
    EXTERIOR = "exterior"


class AlgebraSpec(BaseModel):
    """
    A superalgebra with its canonical generator table.

    sl11 has t1 (even), x1, y1 (odd); f(r) has t1..tr, x1..xr, y1..yr;
    exterior(s) has odd z1..zs and zero bracket. The only nonzero brackets
    are [x_i, y_i] = t_i.
    """
    model_config = ConfigDict(frozen=True)

    kind: AlgebraKind
    rank: int = Field(default=1, ge=1, description="r for f(r), s for exterior(s); 1 for sl11")

    @classmethod
    def sl11(cls) -> "AlgebraSpec":
        return cls(kind=AlgebraKind.SL11, rank=1)

    @classmethod
    def f(cls, r: int) -> "AlgebraSpec":
        return cls(kind=AlgebraKind.F, rank=r)

    @classmethod
    def exterior(cls, s: int) -> "AlgebraSpec":
        return cls(kind=AlgebraKind.EXTERIOR, rank=s)

    @classmethod
    def parse(cls, text: str) -> "AlgebraSpec":
        match = _DESCRIPTOR_RE.match(text)
        if not match:
            raise ValueError(f"unknown algebra descriptor {text!r}")
        kind, arg = match.group(1), match.group(2)
        if kind == "sl11":
            if arg not in (None, "1"):
                raise ValueError("sl11 takes no rank")
            return cls.sl11()
        if arg is None:
            raise ValueError(f"{kind} needs a rank, e.g. {kind}(2)")
        return cls(kind=AlgebraKind(kind), rank=int(arg))

    @property
    def descriptor(self) -> str:
        if self.kind == AlgebraKind.SL11:
            return "sl11"
        return f"{self.kind.value}({self.rank})"

    def __str__(self) -> str:
        return self.descriptor

    @property
    def is_exterior(self) -> bool:
        return self.kind == AlgebraKind.EXTERIOR

    @property
    def generators(self) -> List[Tuple[str, int]]:
        if self.is_exterior:
            return [(f"z{i}", ODD) for i in range(1, self.rank + 1)]
        r = range(1, self.rank + 1)
        return ([(f"t{i}", EVEN) for i in r]
                + [(f"x{i}", ODD) for i in r]
                + [(f"y{i}", ODD) for i in r])

    @property
    def generator_names(self) -> List[str]:
        return [name for name, _ in self.generators]

    @property
    def odd_generators(self) -> List[str]:
        return [name for name, parity in self.generators if parity == ODD]

    @property
    def even_generators(self) -> List[str]:
        return [name for name, parity in self.generators if parity == EVEN]

    def parity_of(self, name: str) -> int:
        for gen, parity in self.generators:
            if gen == name:
                return parity
        raise UnknownGenerator(f"{name!r} is not a generator of {self.descriptor}")

    def bracket(self, u: str, v: str) -> Optional[str]:
        """Name of [u, v] if nonzero, else None."""
        if self.is_exterior:
            return None
        pair = {u[0], v[0]}
        if pair == {"x", "y"} and u[1:] == v[1:]:
            return f"t{u[1:]}"
        return None

    def subalgebra(self, gens: Sequence[str]) -> Tuple["AlgebraSpec", Dict[str, str]]:
        """
        Identify the subalgebra spanned by gens.

        Returns:
            The induced AlgebraSpec and a map old name -> canonical new name.
        """
        chosen = list(dict.fromkeys(gens))
        if not chosen:
            raise NotSubalgebra("empty generator set")
        for name in chosen:
            self.parity_of(name)
        odd = [g for g in self.odd_generators if g in chosen]
        for u in odd:
            for v in odd:
                b = self.bracket(u, v)
                if b is not None and b not in chosen:
                    raise NotSubalgebra(f"[{u}, {v}] = {b} is missing from {chosen}")

        if self.is_exterior:
            ordered = [g for g in self.generator_names if g in chosen]
            return AlgebraSpec.exterior(len(ordered)), {g: f"z{k}" for k, g in enumerate(ordered, 1)}

        even = [g for g in self.even_generators if g in chosen]
        if not even:
            return AlgebraSpec.exterior(len(odd)), {g: f"z{k}" for k, g in enumerate(odd, 1)}

        factors = sorted(int(t[1:]) for t in even)
        if set(chosen) != {f"{c}{i}" for i in factors for c in "txy"}:
            raise NotSubalgebra(
                f"{chosen} is closed but not a union of whole factors or an odd abelian set"
            )
        rename = {}
        for k, i in enumerate(factors, 1):
            for c in "txy":
                rename[f"{c}{i}"] = f"{c}{k}"
        if len(factors) == 1:
            return AlgebraSpec.sl11(), rename
        return AlgebraSpec.f(len(factors)), rename

    def principal_exterior(self) -> "AlgebraSpec":
        """Exterior algebra on the odd generators (x1..xr, y1..yr -> z1..z2r)."""
        return AlgebraSpec.exterior(len(self.odd_generators))


class SuperDim(BaseModel):
    """Graded dimension (even|odd) of a super vector space."""
    model_config = ConfigDict(frozen=True)

    even: int = Field(..., ge=0)
    odd: int = Field(..., ge=0)

    @property
    def sdim(self) -> int:
        return self.even - self.odd

    @property
    def dim(self) -> int:
        return self.even + self.odd

    def __str__(self) -> str:
        return f"({self.even}|{self.odd})"


@dataclass(frozen=True)
class OddPoint:
    """A point of the odd part, coefficients aligned with algebra.odd_generators."""
    algebra: AlgebraSpec
    coeffs: Tuple[Rational, ...]

    @classmethod
    def from_map(cls, algebra: AlgebraSpec, mapping: Mapping[str, object]) -> "OddPoint":
        names = algebra.odd_generators
        for name in mapping:
            if name not in names:
                raise UnknownGenerator(f"{name!r} is not an odd generator of {algebra.descriptor}")
        return cls(algebra, tuple(to_rational(mapping.get(n, 0)) for n in names))

    @classmethod
    def unit(cls, algebra: AlgebraSpec, name: str) -> "OddPoint":
        return cls.from_map(algebra, {name: 1})

    @classmethod
    def from_coords(cls, algebra: AlgebraSpec, coords: Sequence[object]) -> "OddPoint":
        if len(coords) != len(algebra.odd_generators):
            raise ValueError("coordinate count does not match odd generators")
        return cls(algebra, tuple(to_rational(c) for c in coords))

    def coeff(self, name: str) -> Rational:
        return self.coeffs[self.algebra.odd_generators.index(name)]

    def as_map(self) -> Dict[str, Rational]:
        return {n: c for n, c in zip(self.algebra.odd_generators, self.coeffs) if c}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def in_weak_cone(self) -> bool:
        """[p, p] = sum 2 a_i b_i t_i vanishes."""
        if self.algebra.is_exterior:
            return True
        return all(not (self.coeff(f"x{i}") * self.coeff(f"y{i}"))
                   for i in range(1, self.algebra.rank + 1))

    def scaled(self, c) -> "OddPoint":
        q = to_rational(c)
        return OddPoint(self.algebra, tuple(q * v for v in self.coeffs))

    def __str__(self) -> str:
        parts = []
        for name, c in self.as_map().items():
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            body = name if mag == QQ.one else f"{format_rational(mag)}*{name}"
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text
