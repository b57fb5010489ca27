"""Independent checks on closed-form designs.

Nothing in here reuses the closed-form solver: KKT residuals are evaluated from
the raw gradients of the program, and the grid oracle only evaluates the
objective and constraints on a brute-force log grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import OracleInfeasible
from .gp_model import DesignVariables, GPCoefficients, constraint_residuals, objective

ORACLE_FEAS_TOL = 1e-9


@dataclass(frozen=True)
class KKTReport:
    stationarity: tuple[float, float]
    complementary_slackness: tuple[float, float, float]
    primal_feasibility: tuple[float, float, float]
    dual_feasibility: tuple[float, float, float]
    max_violation: float


@dataclass(frozen=True)
class OracleResult:
    best_point: DesignVariables
    best_objective: float
    evaluations: int
    feasible_fraction: float
    history: tuple = ()


def _scaled_sum(terms):
    scale = max(abs(t) for t in terms)
    if scale == 0:
        return 0.0
    return abs(math.fsum(terms)) / scale


def kkt_residuals(coeffs: GPCoefficients, k: float, candidate) -> KKTReport:
    """Evaluate every KKT relation of the program at a candidate solution.

    ``candidate`` needs ``x`` (DesignVariables) and ``lam1``, ``lam2``,
    ``lam3``. Stationarity residuals are divided by the largest term of their
    equation. Multipliers are made dimensionless with the objective value f
    (lam3 additionally with x1, since g3 carries length), so complementary
    slackness reads |lam_i g_i| / f.
    """
    x1, x2 = candidate.x.x1, candidate.x.x2
    if not (x1 > 0 and x2 > 0):
        raise ValueError("candidate must have positive x1, x2")
    lam1, lam2, lam3 = candidate.lam1, candidate.lam2, candidate.lam3
    c, c11, c12, c21, n = coeffs.c, coeffs.c11, coeffs.c12, coeffs.c21, coeffs.n

    dx1 = (
        c * x2 ** 2,
        c11 * lam1 * x2 ** -3,
        3.0 * c21 * lam2 * x1 ** 2 * x2 ** (-n - 3),
        -lam3,
    )
    dx2 = (
        2.0 * c * x1 * x2,
        -3.0 * c11 * lam1 * x1 * x2 ** -4,
        -2.0 * c12 * lam1 * x2 ** -3,
        -(n + 3) * c21 * lam2 * x1 ** 3 * x2 ** (-n - 4),
        k * lam3,
    )
    stationarity = (_scaled_sum(dx1), _scaled_sum(dx2))

    g = constraint_residuals(coeffs, candidate.x, k)
    f = objective(coeffs, candidate.x)
    scaled_lams = (lam1 / f, lam2 / f, lam3 * x1 / f)
    scaled_g = (g.g1, g.g2, g.g3 / x1)
    slackness = tuple(abs(lam * gi) for lam, gi in zip(scaled_lams, scaled_g))
    primal = tuple(max(gi, 0.0) for gi in scaled_g)
    dual = tuple(max(-lam, 0.0) for lam in scaled_lams)
    worst = max(stationarity + slackness + primal + dual)
    return KKTReport(stationarity, slackness, primal, dual, worst)


def duality_gap(primal_objective: float, dual_objective: float) -> float:
    """Relative gap (primal - dual) / primal."""
    if not primal_objective > 0:
        raise ValueError(f"primal objective must be positive, got {primal_objective!r}")
    return (primal_objective - dual_objective) / primal_objective


def _grid_pass(coeffs, k, center, half_decades, points):
    x1s = center[0] * np.logspace(-half_decades, half_decades, points)
    x2s = center[1] * np.logspace(-half_decades, half_decades, points)
    X1, X2 = np.meshgrid(x1s, x2s, indexing="ij")
    g1 = coeffs.c11 * X1 / X2 ** 3 + coeffs.c12 / X2 ** 2 - 1.0
    g2 = coeffs.c21 * X1 ** 3 * X2 ** (-coeffs.n - 3) - 1.0
    g3n = (k * X2 - X1) / X1
    feasible = (g1 <= ORACLE_FEAS_TOL) & (g2 <= ORACLE_FEAS_TOL) & (g3n <= ORACLE_FEAS_TOL)
    mass = np.where(feasible, coeffs.c * X1 * X2 ** 2, np.inf)
    # row-major argmin over (x1, x2) breaks ties by smaller x1, then smaller x2
    i, j = np.unravel_index(np.argmin(mass), mass.shape)
    best = float(mass[i, j])
    return best, (float(x1s[i]), float(x2s[j])), int(feasible.sum()), (x1s[[0, -1]], x2s[[0, -1]])


def grid_oracle(
    coeffs: GPCoefficients,
    k: float,
    refinements: int = 3,
    seed=None,
    decades: float = 1.0,
    points: int = 400,
) -> OracleResult:
    """Brute-force the program on successively finer log grids.

    The first pass spans +-`decades` around the seed in both coordinates with
    `points` x `points` samples. Each further pass re-centres on the best
    feasible point and shrinks the span tenfold. `refinements` counts passes.

    `seed` is a DesignVariables (typically the closed-form answer) or None to
    seed from dimensional analysis alone: x2 ~ sqrt(c12), x1 = k x2.

    Raises:
        OracleInfeasible: if the first pass contains no feasible point.
    """
    if not k > 1:
        raise ValueError(f"k must exceed 1, got {k!r}")
    if refinements < 1:
        raise ValueError(f"refinements must be >= 1, got {refinements!r}")
    if seed is None:
        x2 = math.sqrt(coeffs.c12)
        center = (k * x2, x2)
    else:
        center = (seed.x1, seed.x2)

    best_f, best_x = math.inf, None
    evaluations = feasible_count = 0
    history = []
    half = decades
    for _ in range(refinements):
        f, x, n_feas, bounds = _grid_pass(coeffs, k, center, half, points)
        evaluations += points * points
        feasible_count += n_feas
        if best_x is None and not math.isfinite(f):
            raise OracleInfeasible(
                "no feasible grid point in the oracle bracket",
                x1_bounds=tuple(bounds[0]),
                x2_bounds=tuple(bounds[1]),
            )
        if f < best_f:
            best_f, best_x = f, x
        history.append(best_f)
        center = best_x
        half /= 10.0
    return OracleResult(
        best_point=DesignVariables(*best_x),
        best_objective=best_f,
        evaluations=evaluations,
        feasible_fraction=feasible_count / evaluations,
        history=tuple(history),
    )
