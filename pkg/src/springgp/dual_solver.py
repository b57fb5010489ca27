"""Dual of the spring geometric program.

Dual weights: lam01 (objective), lam11 and lam12 (the two stress terms),
lam21 (deflection) and lam31 (spring index). Normality and the two
orthogonality conditions leave lam11 and lam12 free:

    lam01 = 1
    lam21 = (3 - 2 lam11 - 2 lam12) / n
    lam31 = 1 + 9/n + (1 - 6/n) lam11 - (6/n) lam12

Stationarity of ln v in (lam11, lam12) only fixes their ratio, and can hold
only at the root k* of g. There the dual optimum is

    v* = c c21^(3/n) k*^(1 + 9/n).

Everything with exponents of order 1/n is accumulated as logarithms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from ._numerics import safe_exp
from .gp_model import DesignVariables, GPCoefficients
from .primal_solver import admissible_interval


@dataclass(frozen=True)
class DualMultipliers:
    lam01: float
    lam11: float
    lam12: float
    lam21: float
    lam31: float

    def equality_residuals(self, n: float) -> tuple[float, float, float]:
        """Normality and the two orthogonality residuals (all zero when valid)."""
        return (
            self.lam01 - 1.0,
            self.lam01 + self.lam11 + 3.0 * self.lam21 - self.lam31,
            2.0 * self.lam01 - 3.0 * self.lam11 - 2.0 * self.lam12 - (n + 3) * self.lam21 + self.lam31,
        )


@dataclass(frozen=True)
class DualSolution:
    k_star: float
    v_star: float
    log_v_star: float
    multipliers: DualMultipliers
    recovered: DesignVariables


def dependent_multipliers(n: float, lam11: float, lam12: float) -> tuple[float, float]:
    """(lam21, lam31) implied by normality and orthogonality."""
    lam21 = (3.0 - 2.0 * lam11 - 2.0 * lam12) / n
    lam31 = 1.0 + 9.0 / n + (1.0 - 6.0 / n) * lam11 - (6.0 / n) * lam12
    return lam21, lam31


def log_dual_objective(coeffs: GPCoefficients, k: float, lam11: float, lam12: float) -> float:
    """ln v for free weights (lam11, lam12); see :func:`dual_objective`."""
    if not (lam11 > 0 and lam12 > 0):
        raise ValueError(f"lam11 and lam12 must be positive, got ({lam11!r}, {lam12!r})")
    if not coeffs.c11 > 0:
        raise ValueError("dual objective needs c11 > 0")
    lam21, lam31 = dependent_multipliers(coeffs.n, lam11, lam12)
    # tiny negative values from rounding at the boundary lam11 + lam12 = 3/2
    if lam21 < -1e-12 or lam31 < -1e-12:
        raise ValueError(f"weights give negative lam21={lam21!r} or lam31={lam31!r}")
    lam21, lam31 = max(lam21, 0.0), max(lam31, 0.0)
    total = lam11 + lam12
    return (
        math.log(coeffs.c)
        + lam11 * math.log(coeffs.c11 * total / lam11)
        + lam12 * math.log(coeffs.c12 * total / lam12)
        + lam21 * math.log(coeffs.c21)
        + lam31 * math.log(k)
    )


def dual_objective(coeffs: GPCoefficients, k: float, lam11: float, lam12: float) -> float:
    """Dual function v(lam11, lam12) with lam01 = 1 and lam21, lam31 eliminated.

    Raises:
        ValueError: if the weights are non-positive or imply lam21 < 0 or lam31 < 0.
    """
    return safe_exp(log_dual_objective(coeffs, k, lam11, lam12))


def stationary_multiplier_ratios(coeffs: GPCoefficients, k: float) -> tuple[float, float]:
    """Ratios (lam11+lam12)/lam11 and (lam11+lam12)/lam12 where d ln v = 0.

    They are mutually consistent (1/r11 + 1/r12 = 1) only when g(k) = 0.
    """
    if not k > 1:
        raise ValueError(f"k must exceed 1, got {k!r}")
    if not coeffs.c11 > 0:
        raise ValueError("stationary ratios are undefined for c11 = 0")
    n = coeffs.n
    base = (2.0 / n) * math.log(coeffs.c21) + (6.0 / n) * math.log(k)
    r11 = safe_exp(base - math.log(k) - math.log(coeffs.c11))
    r12 = safe_exp(base - math.log(coeffs.c12))
    return r11, r12


def log_v_star(coeffs: GPCoefficients, k: float) -> float:
    n = coeffs.n
    return math.log(coeffs.c) + (3.0 / n) * math.log(coeffs.c21) + (1.0 + 9.0 / n) * math.log(k)


def recovered_design(coeffs: GPCoefficients, k: float) -> DesignVariables:
    """x1 = c21^(1/n) k^(1+3/n), x2 = c21^(1/n) k^(3/n)."""
    n = coeffs.n
    ln_x2 = math.log(coeffs.c21) / n + 3.0 * math.log(k) / n
    x2 = safe_exp(ln_x2)
    return DesignVariables(k * x2, x2)


def recover_primal(coeffs: GPCoefficients, dual: DualSolution) -> DesignVariables:
    """Primal point from the dual optimum.

    At the optimum the deflection and index weights are both nonzero, so
    c21 x1^3 x2^-(n+3) = 1 and k x2 / x1 = 1; solving these two monomial
    equations gives the closed form of :func:`recovered_design`.
    """
    return recovered_design(coeffs, dual.k_star)


def solve_dual(coeffs: GPCoefficients) -> DualSolution:
    """Solve the dual at k = k*.

    lam11 is a free positive parameter bounded by
    (3/2) c11 c21^(-2/n) k*^(1-6/n); it is fixed at half that bound so results
    are reproducible. Neither v* nor the recovered design depends on it.

    Raises:
        NoAdmissibleIndex: if k* <= 1.
    """
    k = admissible_interval(coeffs).k_star
    r11, _ = stationary_multiplier_ratios(coeffs, k)
    lam11 = 0.5 * (1.5 / r11)
    lam12 = (r11 - 1.0) * lam11
    lam21, lam31 = dependent_multipliers(coeffs.n, lam11, lam12)
    mult = DualMultipliers(1.0, lam11, lam12, lam21, lam31)
    lv = log_v_star(coeffs, k)
    return DualSolution(
        k_star=k,
        v_star=safe_exp(lv),
        log_v_star=lv,
        multipliers=mult,
        recovered=recovered_design(coeffs, k),
    )
