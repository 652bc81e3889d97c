"""Exact linear algebra and polynomial ideal machinery."""
from superjordan.algebra.linalg import (
    Rational,
    SparseMatrix,
    Subspace,
    format_rational,
    image,
    kernel,
    parse_rational,
    quotient_dims,
    rank,
    to_rational,
)
from superjordan.algebra.polys import (
    Ideal,
    SymbolicOperator,
    evaluate,
    groebner_basis,
    make_ring,
    minors_ideal,
    normal_form,
    radical_membership,
    vanishes_only_at_origin,
)

__all__ = [
    "Rational",
    "SparseMatrix",
    "Subspace",
    "format_rational",
    "image",
    "kernel",
    "parse_rational",
    "quotient_dims",
    "rank",
    "to_rational",
    "Ideal",
    "SymbolicOperator",
    "evaluate",
    "groebner_basis",
    "make_ring",
    "minors_ideal",
    "normal_form",
    "radical_membership",
    "vanishes_only_at_origin",
]
