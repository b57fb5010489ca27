"""The fixed three-constraint geometric program for minimum spring mass.

With design vector (x1, x2) = (D, d) and a chosen spring index k::

    minimize    f  = c x1 x2^2
    subject to  g1 = c11 x1 x2^-3 + c12 x2^-2 - 1 <= 0     (shear stress)
                g2 = c21 x1^3 x2^-(n+3) - 1      <= 0     (tip deflection)
                g3 = k x2 - x1                   <= 0     (spring index)
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .mechanics import LoadCase, MaterialSpec


@dataclass(frozen=True)
class GPCoefficients:
    """Posynomial coefficients of the mass program plus the power index n.

    ``c11`` may be zero so degenerate analytic test problems can be posed;
    every coefficient built from physical inputs is strictly positive.
    """

    c: float
    c11: float
    c12: float
    c21: float
    n: float

    def __post_init__(self):
        for name in ("c", "c12", "c21", "n"):
            value = getattr(self, name)
            if not value > 0:
                raise ValueError(f"{name} must be positive, got {value!r}")
        if not self.c11 >= 0:
            raise ValueError(f"c11 must be non-negative, got {self.c11!r}")


@dataclass(frozen=True)
class DesignVariables:
    """x1 = mean coil diameter D (m), x2 = wire diameter d (m)."""

    x1: float
    x2: float

    def __post_init__(self):
        if not (self.x1 > 0 and self.x2 > 0):
            raise ValueError(f"design variables must be positive, got ({self.x1!r}, {self.x2!r})")


@dataclass(frozen=True)
class ConstraintResiduals:
    g1: float
    g2: float
    g3: float


def build_coefficients(material: MaterialSpec, turns: float, load: LoadCase) -> GPCoefficients:
    """Assemble c, c11, c12, c21 from SI material, turn count and load data.

    Raises:
        ValueError: on any non-positive P, tau_max, delta_max, rho or N.
    """
    bad = [
        name
        for name, value in (
            ("P", load.P),
            ("tau_max", load.tau_max),
            ("delta_max", load.delta_max),
            ("rho", material.rho),
            ("N", turns),
        )
        if not value > 0
    ]
    if bad:
        raise ValueError(f"must be positive: {', '.join(bad)}")
    n, P, N = material.n, load.P, turns
    return GPCoefficients(
        c=math.pi ** 2 * material.rho * N / 4.0,
        c11=2.0 * (n + 3) * P / (math.pi * load.tau_max),
        c12=4.0 * P / (math.pi * load.tau_max),
        c21=(n + 3) * 2.0 ** n * P * N / (material.G * load.delta_max),
        n=n,
    )


def objective(coeffs: GPCoefficients, x: DesignVariables) -> float:
    """Spring mass c x1 x2^2 in kg."""
    return coeffs.c * x.x1 * x.x2 ** 2


def constraint_residuals(coeffs: GPCoefficients, x: DesignVariables, k: float) -> ConstraintResiduals:
    x1, x2, n = x.x1, x.x2, coeffs.n
    g1 = coeffs.c11 * x1 / x2 ** 3 + coeffs.c12 / x2 ** 2 - 1.0
    g2 = coeffs.c21 * x1 ** 3 * x2 ** (-n - 3) - 1.0
    g3 = k * x2 - x1
    return ConstraintResiduals(g1, g2, g3)


def is_feasible(coeffs: GPCoefficients, x: DesignVariables, k: float, tol: float = 0.0) -> bool:
    """True iff g1, g2 and g3/x1 are all <= tol."""
    if tol < 0:
        raise ValueError(f"tol must be non-negative, got {tol!r}")
    g = constraint_residuals(coeffs, x, k)
    return g.g1 <= tol and g.g2 <= tol and g.g3 / x.x1 <= tol
