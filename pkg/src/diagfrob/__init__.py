"""Exact tools for integer feasibility of linear systems under slack conditions."""

from .errors import DiagFrobError
from .frobenius import (FeasibilityCertificate, gen_tight_instance, solve_canonical_with_slack,
                        solve_standard_with_slack)
from .systems import CanonicalSystem, StandardSystem

__version__ = "0.1.0"

__all__ = [
    "CanonicalSystem",
    "DiagFrobError",
    "FeasibilityCertificate",
    "StandardSystem",
    "gen_tight_instance",
    "solve_canonical_with_slack",
    "solve_standard_with_slack",
]
