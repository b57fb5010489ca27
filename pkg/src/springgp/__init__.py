"""Minimum-mass design of compression helical springs made of power-law materials."""
from .dual_solver import DualMultipliers, DualSolution, dual_objective, recover_primal, solve_dual
from .errors import (
    CaseInapplicable,
    MultipleRootsSuspected,
    NoAdmissibleIndex,
    OracleInfeasible,
    ParseError,
    SpringGPError,
    ValidationError,
)
from .gp_model import (
    ConstraintResiduals,
    DesignVariables,
    GPCoefficients,
    build_coefficients,
    constraint_residuals,
    is_feasible,
    objective,
)
from .mechanics import LoadCase, MaterialSpec, SpringGeometry, WireTorsion
from .primal_solver import (
    ActiveCase,
    KInterval,
    PrimalSolution,
    admissible_interval,
    k_feasibility,
    solve,
    solve_case3,
    solve_case4,
    sweep,
)
from .verifier import KKTReport, OracleResult, duality_gap, grid_oracle, kkt_residuals

__version__ = "0.1.0"
