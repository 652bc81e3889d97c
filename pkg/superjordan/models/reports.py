"""
Pydantic models for analysis results: Jordan types, CJT verdicts, indecomposability,
endotriviality and bundle reports.
"""
from typing import Any, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from superjordan.models.algebra import SuperDim


class JordanType(BaseModel):
    """Super Jordan type (a_ev|a_od)[1] + a2[2] of a square-zero odd operator."""
    model_config = ConfigDict(frozen=True)

    a_ev: int = Field(..., ge=0)
    a_od: int = Field(..., ge=0)
    a2: int = Field(..., ge=0, description="number of [2] blocks")

    @classmethod
    def from_fiber(cls, fiber: SuperDim, a2: int) -> "JordanType":
        return cls(a_ev=fiber.even, a_od=fiber.odd, a2=a2)

    @property
    def a1(self) -> int:
        """Stable type: number of [1] blocks."""
        return self.a_ev + self.a_od

    @property
    def dim(self) -> int:
        return self.a1 + 2 * self.a2

    @property
    def sdim(self) -> int:
        return self.a_ev - self.a_od

    @property
    def fiber(self) -> SuperDim:
        return SuperDim(even=self.a_ev, odd=self.a_od)

    def stable_part(self):
        return self.a_ev, self.a_od

    def __str__(self) -> str:
        return f"({self.a_ev}|{self.a_od})[1] + {self.a2}[2]"


def stable_equivalent(t1: JordanType, t2: JordanType) -> bool:
    """Same (a_ev|a_od), any number of [2] blocks."""
    return t1.stable_part() == t2.stable_part()


class WitnessRecord(BaseModel):
    """A point together with the Jordan type found there."""
    point: str
    jordan_type: JordanType
    chart: Optional[str] = None


class BlockCertificate(BaseModel):
    """Outcome of the minors certificate on one independent block of a chart operator."""
    rows: int
    cols: int
    generic_rank: int
    minors: int = 0
    generators: int = 0
    basis_size: int = 0
    outcome: Literal["trivial", "certified", "rank_drops", "resource_limit"] = "certified"


class ChartCertificate(BaseModel):
    """Per-chart (weak stratum or full odd space) certificate."""
    label: str
    variables: List[str]
    generic_rank: int
    blocks: List[BlockCertificate] = Field(default_factory=list)
    outcome: Literal["constant", "rank_drops", "resource_limit", "sampled"] = "constant"


class CjtReport(BaseModel):
    """Constant Jordan type verdict with witnesses and certificate metadata."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    verdict: Literal["constant", "not_constant", "inconclusive"]
    cone: Literal["weak", "strong"]
    method: Literal["certified", "sampled"]
    jordan_type: Optional[JordanType] = None
    witnesses: List[WitnessRecord] = Field(default_factory=list)
    generic_rank: Optional[int] = None
    charts: List[ChartCertificate] = Field(default_factory=list)
    samples: Optional[int] = None
    seed: int = 0
    reason: Optional[str] = None
    probabilistic: bool = False
    sampled_type: Optional[JordanType] = None
    notes: List[str] = Field(default_factory=list)

    # OddPoint objects behind the witness strings
    witness_points: List[Any] = Field(default_factory=list, exclude=True)

    @property
    def is_constant(self) -> bool:
        return self.verdict == "constant"


class IndecomposabilityReport(BaseModel):
    """Even endomorphism algebra data and the decomposability verdict."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    end_dim: int
    radical_dim: int
    verdict: Literal["indecomposable", "decomposable", "inconclusive"]
    idempotent_rank: Optional[int] = None
    attempts: int = 0
    reason: Optional[str] = None

    idempotent: Optional[Any] = Field(default=None, exclude=True)


class EndotrivialReport(BaseModel):
    """Both decision routes for End(M) = k + projective."""
    verdict: bool
    cjt_type: Optional[JordanType] = None
    cjt_route: bool
    direct_route: Optional[bool] = None
    direct_certified: Optional[bool] = None
    direct_types: List[JordanType] = Field(default_factory=list)
    hom_sdim_check: Optional[bool] = None
    routes_agree: Optional[bool] = None
    probabilistic: bool = False
    notes: List[str] = Field(default_factory=list)


class FiberReport(BaseModel):
    """Fibers of F1 and F2 at one point."""
    point: str
    f1: SuperDim
    f2_dim: int


class BundleReport(BaseModel):
    """Super vector bundle verdict for the fiber functors."""
    verdict: Literal["bundle", "not_bundle", "inconclusive"]
    f1: Optional[SuperDim] = None
    f2: Optional[int] = None
    fibers: List[FiberReport] = Field(default_factory=list)
    certificate: CjtReport
    notes: List[str] = Field(default_factory=list)
