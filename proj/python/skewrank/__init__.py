"""Exact skew-symmetric rank tools for trivectors."""

from ._skewrank import (
    Tensor,
    UnsupportedDimension,
    WrongClassifier,
    annihilator_dims,
    classify,
    contract,
    detB_is_zero,
    essential_dim,
    is_decomposable,
    labels,
    normal_form,
    orbit_sample,
    point_ideal_degrees,
    signature,
    standard_decomposition,
    table_rank,
    verify_standard,
    wedge,
)

__all__ = [
    "Tensor",
    "UnsupportedDimension",
    "WrongClassifier",
    "annihilator_dims",
    "classify",
    "contract",
    "detB_is_zero",
    "essential_dim",
    "is_decomposable",
    "labels",
    "normal_form",
    "orbit_sample",
    "point_ideal_degrees",
    "signature",
    "standard_decomposition",
    "table_rank",
    "verify_standard",
    "wedge",
]
