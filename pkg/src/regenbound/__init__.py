"""Exact bounds on the storage / repair-bandwidth tradeoff of regenerating codes."""

from .tradeoff import (
    BoundError, BoundResult, CodeParams, DomainError, OperatingPoint, Regime,
    RegimeCoordinates, RegimeError, classify, corollary_gap, cut_set_bound,
    epsilon0, epsilon1, exact_repair_bound, extremal_points, from_regime,
    functional_optimal_B, mbr_file_size, normalize, space_sharing, to_regime,
)
from .sweep import CurveKind, SweepPoint, sweep_curve
from .repair_matrix import (
    Case, CaseMismatchError, RegionSpec, build_region, case_bounds,
    render_region, row_sum_identity, solve_epsilon,
)
from .entropy import LPProblem, VarSet, check_certificate, elemental_inequalities, solve

__version__ = "0.1.0"
