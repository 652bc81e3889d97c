"""Data models for superalgebras, supermodules and analysis reports."""
from superjordan.models.algebra import EVEN, ODD, AlgebraKind, AlgebraSpec, OddPoint, SuperDim
from superjordan.models.supermodule import Supermodule
from superjordan.models.reports import (
    BlockCertificate,
    BundleReport,
    ChartCertificate,
    CjtReport,
    EndotrivialReport,
    FiberReport,
    IndecomposabilityReport,
    JordanType,
    WitnessRecord,
    stable_equivalent,
)
