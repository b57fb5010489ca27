"""Closed-form KKT solution of the spring program for a chosen spring index k.

Only two active sets survive the KKT analysis, both with the index constraint
active (x1 = k x2):

* stress-active ("Case3"):      x2 = sqrt(c11 k + c12)
* deflection-active ("Case4"):  x2 = c21^(1/n) k^(3/n)

Which one applies is decided by the sign of

    g(k) = c21^(2/n) k^(6/n) - c11 k - c12,

negative for the stress-active case and positive for the deflection-active
case. The two coincide at the positive root k* of g, and (1, k*] is the range
of spring indices for which the stress constraint governs.

For small n the exponent 6/n is large (60 at n = 0.1), so g is always handled
through its log-domain residual (see :func:`k_log_residual`).
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ._numerics import safe_exp
from .errors import CaseInapplicable, MultipleRootsSuspected, NoAdmissibleIndex, SpringGPError
from .gp_model import DesignVariables, GPCoefficients

ROOT_RTOL = 1e-12
BOUNDARY_TOL = 1e-9
BRACKET_CAP = 1e6
_MAX_BISECTIONS = 400


class ActiveCase(str, enum.Enum):
    CASE3 = "Case3"
    CASE4 = "Case4"
    BOUNDARY = "Boundary"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class KInterval:
    """Admissible spring-index interval (lower, k_star], lower exclusive."""

    k_star: float
    lower: float = 1.0
    negative_root: Optional[float] = None
    bracket: Optional[tuple] = None


@dataclass(frozen=True)
class PrimalSolution:
    k: float
    x: DesignVariables
    lam1: float
    lam2: float
    lam3: float
    objective: float
    active_case: ActiveCase

    @property
    def multipliers(self):
        return (self.lam1, self.lam2, self.lam3)


def k_log_residual(coeffs: GPCoefficients, k: float) -> float:
    """ln(c21^(2/n) k^(6/n)) - ln(c11 k + c12); same sign as g(k).

    Returns +inf where c11 k + c12 <= 0 (only reachable for k < 0). Negative k
    is taken through |k|, i.e. the even extension of k^(6/n).
    """
    n = coeffs.n
    rhs = coeffs.c11 * k + coeffs.c12
    if rhs <= 0:
        return math.inf
    if k == 0:
        return -math.inf
    return (2.0 / n) * math.log(coeffs.c21) + (6.0 / n) * math.log(abs(k)) - math.log(rhs)


def k_feasibility(coeffs: GPCoefficients, k: float) -> float:
    """g(k) = c21^(2/n) k^(6/n) - c11 k - c12 for k > 0.

    Evaluated as (c11 k + c12) * expm1(log residual), so the sign is exact even
    where the power term alone would underflow to zero or overflow.
    """
    if not k > 0:
        raise ValueError(f"k must be positive, got {k!r}")
    rhs = coeffs.c11 * k + coeffs.c12
    r = k_log_residual(coeffs, k)
    if r > 709.0:
        return math.inf
    return rhs * math.expm1(r)


def _bisect(sign_fn: Callable[[float], float], lo: float, hi: float, rtol: float = ROOT_RTOL) -> float:
    """Bisection on a bracket with sign_fn(lo) < 0 < sign_fn(hi) (or reversed)."""
    f_lo = sign_fn(lo)
    if f_lo == 0:
        return lo
    f_hi = sign_fn(hi)
    if f_hi == 0:
        return hi
    if (f_lo < 0) == (f_hi < 0):
        raise SpringGPError(f"bracket [{lo!r}, {hi!r}] does not change sign")
    for _ in range(_MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        if abs(hi - lo) <= rtol * abs(mid) or mid in (lo, hi):
            return mid
        f_mid = sign_fn(mid)
        if f_mid == 0:
            return mid
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _negative_root(coeffs: GPCoefficients) -> Optional[float]:
    resid = lambda k: k_log_residual(coeffs, k)
    if coeffs.c11 > 0:
        lo = -coeffs.c12 / coeffs.c11
    else:
        lo = -1.0
        while resid(lo) <= 0:
            lo *= 2.0
            if lo < -BRACKET_CAP:
                return None
    # residual is +inf at lo and -inf at 0; it decreases monotonically between
    return _bisect(lambda k: -resid(k), lo, 0.0)


def admissible_interval(coeffs: GPCoefficients) -> KInterval:
    """Locate k*, the root of g above 1, by bracketed bisection in log space.

    The bracket starts at [1, 2] and the upper end doubles until g changes
    sign (capped at 1e6). The reported negative root is a diagnostic only.

    Raises:
        NoAdmissibleIndex: if g(1) >= 0, i.e. k* <= 1. The exception carries
            the root actually found in (0, 1].
    """
    resid = lambda k: k_log_residual(coeffs, k)
    if resid(1.0) >= 0:
        lo = 0.5
        while resid(lo) >= 0 and lo > 1e-300:
            lo *= 0.5
        k_low = 1.0 if resid(1.0) == 0 else _bisect(resid, lo, 1.0)
        raise NoAdmissibleIndex(k_low)

    hi = 2.0
    while resid(hi) <= 0:
        hi *= 2.0
        if hi > BRACKET_CAP:
            raise SpringGPError(f"g(k) stays negative up to k={BRACKET_CAP:g}; k* not bracketed")
    lo = max(1.0, hi / 2.0)
    k_star = _bisect(resid, lo, hi)

    interior = np.geomspace(1.0, k_star, 66)[1:-1]
    if any(resid(float(k)) > BOUNDARY_TOL for k in interior):
        warnings.warn(
            f"g(k) turns positive inside (1, {k_star:.6g}]; more than one root above 1",
            MultipleRootsSuspected,
            stacklevel=2,
        )
    return KInterval(k_star=k_star, negative_root=_negative_root(coeffs), bracket=(lo, hi))


def _check_index(k):
    if not k > 1:
        raise ValueError(f"spring index k must exceed 1, got {k!r}")


def solve_case3(coeffs: GPCoefficients, k: float, _case=ActiveCase.CASE3) -> PrimalSolution:
    """Stress and index constraints active, deflection slack (lam2 = 0).

    Raises:
        CaseInapplicable: if g(k) > 0, where this point violates g2.
    """
    _check_index(k)
    if k_log_residual(coeffs, k) > BOUNDARY_TOL:
        raise CaseInapplicable(f"stress-active case requires g(k) <= 0; k={k!r} exceeds k*")
    c, c11, c12 = coeffs.c, coeffs.c11, coeffs.c12
    s = c11 * k + c12
    x2 = math.sqrt(s)
    x1 = k * x2
    lam1 = 3.0 * c * k * x2 ** 5 / (2.0 * s)
    lam3 = (5.0 * c11 * k + 2.0 * c12) / (2.0 * s) * c * x2 ** 2
    return PrimalSolution(
        k=k,
        x=DesignVariables(x1, x2),
        lam1=lam1,
        lam2=0.0,
        lam3=lam3,
        objective=c * k * s ** 1.5,
        active_case=_case,
    )


def solve_case4(coeffs: GPCoefficients, k: float) -> PrimalSolution:
    """Deflection and index constraints active, stress slack (lam1 = 0).

    Raises:
        CaseInapplicable: if g(k) < 0, where this point violates g1.
    """
    _check_index(k)
    if k_log_residual(coeffs, k) < -BOUNDARY_TOL:
        raise CaseInapplicable(f"deflection-active case requires g(k) >= 0; k={k!r} is below k*")
    c, c21, n = coeffs.c, coeffs.c21, coeffs.n
    ln_k, ln_c21 = math.log(k), math.log(c21)
    ln_x2 = ln_c21 / n + 3.0 * ln_k / n
    x2 = safe_exp(ln_x2)
    x1 = k * x2
    lam2 = safe_exp(math.log(3.0 * c) + (n + 3) * ln_x2 - ln_c21 - 2.0 * ln_k - math.log(n))
    lam3 = c * (1.0 + 9.0 / n) * x2 ** 2
    f = safe_exp(math.log(c) + 3.0 * ln_c21 / n + (1.0 + 9.0 / n) * ln_k)
    return PrimalSolution(
        k=k,
        x=DesignVariables(x1, x2),
        lam1=0.0,
        lam2=lam2,
        lam3=lam3,
        objective=f,
        active_case=ActiveCase.CASE4,
    )


def solve(coeffs: GPCoefficients, k: float) -> PrimalSolution:
    """Minimum-mass design for spring index k, dispatching on the sign of g(k).

    Within BOUNDARY_TOL of k* both cases coincide; the stress-active formulas
    are used and the result is tagged Boundary.
    """
    _check_index(k)
    r = k_log_residual(coeffs, k)
    if abs(r) <= BOUNDARY_TOL:
        return solve_case3(coeffs, k, _case=ActiveCase.BOUNDARY)
    if r < 0:
        return solve_case3(coeffs, k)
    return solve_case4(coeffs, k)


def sweep(coeffs: GPCoefficients, k_min: float, k_max: float, steps: int) -> list[PrimalSolution]:
    """Solve at `steps` log-uniform spring indices from k_min to k_max inclusive."""
    if not 1 < k_min < k_max:
        raise ValueError(f"sweep needs 1 < k_min < k_max, got ({k_min!r}, {k_max!r})")
    if steps < 2:
        raise ValueError(f"steps must be at least 2, got {steps!r}")
    ks = np.geomspace(k_min, k_max, int(steps))
    ks[0], ks[-1] = k_min, k_max
    return [solve(coeffs, float(k)) for k in ks]
