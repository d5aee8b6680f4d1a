"""
pellsolver - Multi-strategy solver for Pell's equation

Minimal solutions of y^2 - Ax^2 = 1 by continued fractions with remainder
shortcuts, by sequential differences on binary quadratic forms and by closed
case formulas, plus solution families and the companion equation
y^2 - Ax^2 = -3.
"""

__version__ = "1.0.0"
__author__ = "PellSolver Team"

from .models import PellSolution, DistinctiveParams, SolutionFamily, BenchReport
from .config import SolverConfig, load_config
from .cf_engine import solve_fast, solve_standard
from .form_reduction import inverse_solve, solve_from_representation
from .negpell3 import solve_minus3
from .relations import identity_family, shift
from .scan_bench import bench, build_table

__all__ = [
    "PellSolution",
    "DistinctiveParams",
    "SolutionFamily",
    "BenchReport",
    "SolverConfig",
    "load_config",
    "solve_fast",
    "solve_standard",
    "inverse_solve",
    "solve_from_representation",
    "solve_minus3",
    "identity_family",
    "shift",
    "bench",
    "build_table",
]
