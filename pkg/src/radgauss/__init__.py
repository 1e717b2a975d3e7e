"""Exact tails of weighted Rademacher sums compared with the Gaussian tail."""

from .errors import (
    ArgumentError,
    DegenerateError,
    DomainError,
    InvalidWeightsError,
    RadGaussError,
    RegionError,
    SizeError,
)
from .exact import RatioReport, WeightVector, atom_support, exact_tail, normalize, ratio, split_check
from .gaussian import Constants, constants, normal_density, normal_tail, optimal_constant

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "Constants",
    "DegenerateError",
    "DomainError",
    "InvalidWeightsError",
    "RadGaussError",
    "RatioReport",
    "RegionError",
    "SizeError",
    "WeightVector",
    "atom_support",
    "constants",
    "exact_tail",
    "normal_density",
    "normal_tail",
    "normalize",
    "optimal_constant",
    "ratio",
    "split_check",
]
