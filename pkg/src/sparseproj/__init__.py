"""Sparseness-enforcing Euclidean projections.

Projects nonnegative vectors onto the non-convex sets where the normalized
L1/L2 sparseness measure attains a prescribed value, in linear time and
constant additional space, and computes products with the projection's
gradient.  Includes independent verification oracles and a solver
benchmark harness.
"""

__version__ = "0.1.0"

from .auxfn import AuxEvaluation, evaluate_aux
from .bench import BenchConfig, BenchRecord, run_benchmark, write_csv
from .core import (
    DegenerateInputError,
    SolverError,
    SparsenessTarget,
    ValidationStatus,
    derive_norms,
    sigma,
    validate_input,
)
from .gradient import GradientFactors, grad_matrix, grad_vec, gradient_factors
from .oracle import (
    FDJacobian,
    OracleReport,
    jacobian_fd,
    project_bruteforce,
    project_sorted,
)
from .projection import ProjectionResult, closed_form_alpha, project, project_inplace
from .rootfind import SolverKind, SolverState, find_bracket, init_state, step

__all__ = [
    "AuxEvaluation",
    "BenchConfig",
    "BenchRecord",
    "DegenerateInputError",
    "FDJacobian",
    "GradientFactors",
    "OracleReport",
    "ProjectionResult",
    "SolverError",
    "SolverKind",
    "SolverState",
    "SparsenessTarget",
    "ValidationStatus",
    "closed_form_alpha",
    "derive_norms",
    "evaluate_aux",
    "find_bracket",
    "grad_matrix",
    "grad_vec",
    "gradient_factors",
    "init_state",
    "jacobian_fd",
    "project",
    "project_bruteforce",
    "project_inplace",
    "project_sorted",
    "run_benchmark",
    "sigma",
    "step",
    "validate_input",
    "write_csv",
]
