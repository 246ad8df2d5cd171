"""r-best nonlinear optimization over weighted independence systems."""
from .instances import (ComparisonOracle, ExplicitSystem, GeneratorSystem, GroundPoint, Instance,
                        LinearOracle, MembershipOracle, ObjectiveTable, OracleStats, WeightVector,
                        make_example_3_1, make_lower_bound_family, make_membership_family)
from .monoid import (GapData, PrimitiveTuple, g_bound, gap_data, is_saturated, r_bound,
                     restricted_monoid, subtuple_for_block)
from .solver import (BlockSpec, FaceSpec, SolveReport, block_maximize, face_maximize,
                     naive_min_under, quasiconvex_solve, r_best_solve)
from .verify import brute_force_solve, certify_rank

__all__ = [
    "BlockSpec", "ComparisonOracle", "ExplicitSystem", "FaceSpec", "GapData", "GeneratorSystem",
    "GroundPoint", "Instance", "LinearOracle", "MembershipOracle", "ObjectiveTable",
    "OracleStats", "PrimitiveTuple", "SolveReport", "WeightVector", "block_maximize",
    "brute_force_solve", "certify_rank", "face_maximize", "g_bound", "gap_data",
    "is_saturated", "make_example_3_1", "make_lower_bound_family", "make_membership_family",
    "naive_min_under", "quasiconvex_solve", "r_best_solve", "r_bound", "restricted_monoid",
    "subtuple_for_block",
]
