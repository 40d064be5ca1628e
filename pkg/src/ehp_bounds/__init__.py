"""Exact EHP-derived bounds on the p-torsion of homotopy groups of spheres."""

from .asymptotics import GrowthEstimate, estimate_growth, golden_floor_check, int_log
from .bounds import (PHI, ExpForm, all_bounds, bodigheimer_henn_bound, boyde_bound, fibonacci,
                     henn_bound, limitation_constants, selick_rank_bound, simple_bound,
                     strong_bound)
from .core import (DomainError, EHPError, EvalContext, P2Policy, ParityError, SphereEntry,
                   StemTable, even_sphere_value, h_sequence, sphere_value, stem_table, t_value)
from .known import KnownTorsionRecord, compare, load_known
from .verify import (VerificationReport, check_dominance, check_fibonacci_lower,
                     check_monotonicity, check_star, check_theorem, check_vanishing)

__all__ = [
    "PHI", "DomainError", "EHPError", "EvalContext", "ExpForm", "GrowthEstimate",
    "KnownTorsionRecord", "P2Policy", "ParityError", "SphereEntry", "StemTable",
    "VerificationReport", "all_bounds", "bodigheimer_henn_bound", "boyde_bound",
    "check_dominance", "check_fibonacci_lower", "check_monotonicity", "check_star",
    "check_theorem", "check_vanishing", "compare", "estimate_growth", "even_sphere_value",
    "fibonacci", "golden_floor_check", "h_sequence", "henn_bound", "int_log",
    "limitation_constants", "load_known", "selick_rank_bound", "simple_bound", "sphere_value",
    "stem_table", "strong_bound", "t_value",
]
