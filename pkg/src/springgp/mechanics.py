"""Torsion mechanics of a helical spring wound from power-law (Hollomon) wire.

All quantities are strict SI: Pa, m, N, kg. The constitutive law is

    sigma = K |eps|^(n-1) eps

and the torsional response of a circular wire of diameter d is governed by the
generalized area moment

    I_n = pi d^(n+3) / ((n+3) 2^(n+2)),

which reduces to the polar moment pi d^4 / 32 for a linear material (n = 1).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from ._numerics import pos_pow
from .errors import PowerIndexWarning


@dataclass(frozen=True)
class MaterialSpec:
    """Power-law material constants.

    Attributes:
        K: material constant of the power law ("bulk modulus"), Pa.
        n: power-law index.
        nu: Poisson's ratio.
        rho: density, kg/m^3.
    """

    K: float
    n: float
    nu: float
    rho: float

    def __post_init__(self):
        if not self.K > 0:
            raise ValueError(f"K must be positive, got {self.K!r}")
        if not self.n > 0:
            raise ValueError(f"n must be positive, got {self.n!r}")
        if not 0 <= self.nu < 0.5:
            raise ValueError(f"nu must lie in [0, 0.5), got {self.nu!r}")
        # rho = 0 is tolerated here so mass scaling can be probed; the GP
        # builder insists on rho > 0.
        if not self.rho >= 0:
            raise ValueError(f"rho must be non-negative, got {self.rho!r}")
        if self.n > 1:
            warnings.warn(
                f"power-law index n={self.n} > 1 is unusual for Hollomon metals",
                PowerIndexWarning,
                stacklevel=3,
            )

    @property
    def G(self) -> float:
        """Shear modulus K / (1 + nu)."""
        return self.K / (1.0 + self.nu)


@dataclass(frozen=True)
class SpringGeometry:
    """Mean coil diameter D (m), wire diameter d (m) and active turns N."""

    D: float
    d: float
    N: float

    def __post_init__(self):
        if not self.D > 0:
            raise ValueError(f"D must be positive, got {self.D!r}")
        if not self.d > 0:
            raise ValueError(f"d must be positive, got {self.d!r}")
        if not self.N >= 1:
            raise ValueError(f"N must be at least 1, got {self.N!r}")
        if not self.D > self.d:
            raise ValueError(f"spring index D/d must exceed 1, got {self.D / self.d!r}")

    @property
    def C(self) -> float:
        """Spring index D / d."""
        return self.D / self.d


@dataclass(frozen=True)
class LoadCase:
    """Axial load P (N) with allowable shear stress (Pa) and tip deflection (m)."""

    P: float
    tau_max: float
    delta_max: float

    def __post_init__(self):
        if not self.P >= 0:
            raise ValueError(f"P must be non-negative, got {self.P!r}")
        if not self.tau_max > 0:
            raise ValueError(f"tau_max must be positive, got {self.tau_max!r}")
        if not self.delta_max > 0:
            raise ValueError(f"delta_max must be positive, got {self.delta_max!r}")


@dataclass(frozen=True)
class WireTorsion:
    """Torque carried by the wire and the area moment resisting it."""

    T: float
    I_n: float

    def __post_init__(self):
        if not self.I_n > 0:
            raise ValueError(f"I_n must be positive, got {self.I_n!r}")

    @classmethod
    def from_load(cls, load: LoadCase, geom: SpringGeometry, material: MaterialSpec):
        return cls(T=load.P * geom.D / 2.0, I_n=generalized_area_moment(geom.d, material.n))


def uniaxial_stress(strain: float, material: MaterialSpec) -> float:
    """Power-law stress K |eps|^(n-1) eps. Odd in eps, exactly 0 at eps = 0."""
    if strain == 0:
        return 0.0
    return math.copysign(material.K * pos_pow(abs(strain), material.n), strain)


def generalized_area_moment(d: float, n: float) -> float:
    """I_n = pi d^(n+3) / ((n+3) 2^(n+2))."""
    if not d > 0:
        raise ValueError(f"d must be positive, got {d!r}")
    if not n > 0:
        raise ValueError(f"n must be positive, got {n!r}")
    return math.pi * d ** (n + 3) / ((n + 3) * 2.0 ** (n + 2))


def shear_stress_at_radius(load: LoadCase, geom: SpringGeometry, material: MaterialSpec, r: float) -> float:
    """Torsional plus direct shear stress at radius r in the wire cross-section.

    Raises:
        ValueError: if r lies outside [0, d/2].
    """
    if not 0 <= r <= geom.d / 2:
        raise ValueError(f"r={r!r} outside [0, d/2={geom.d / 2!r}]")
    n, P, D, d = material.n, load.P, geom.D, geom.d
    torsion = 2.0 ** (n + 1) * (n + 3) * P * D * pos_pow(r, n) / (math.pi * d ** (n + 3))
    direct = 4.0 * P / (math.pi * d * d)
    return torsion + direct


def stress_factor(n: float, C: float) -> float:
    """Direct-shear correction K_s = 1 + 2/((n+3) C)."""
    return 1.0 + 2.0 / ((n + 3) * C)


def max_shear_stress(load: LoadCase, geom: SpringGeometry, material: MaterialSpec) -> float:
    """Shear stress at the wire surface, 2(n+3) P D / (pi d^3) * K_s."""
    n = material.n
    return 2.0 * (n + 3) * load.P * geom.D / (math.pi * geom.d ** 3) * stress_factor(n, geom.C)


def tip_deflection(load: LoadCase, geom: SpringGeometry, material: MaterialSpec) -> float:
    """Axial tip deflection (n+3) 2^(n+2) D^3 P N / (4 G d^(n+3))."""
    n = material.n
    scale = (n + 3) * 2.0 ** (n + 2) / 4.0
    return scale * geom.D ** 3 * load.P * geom.N / (material.G * geom.d ** (n + 3))


def rate_of_twist(torsion: WireTorsion, material: MaterialSpec) -> float:
    """alpha = 2 (T / (2 G I_n))^(1/n)."""
    if torsion.T < 0:
        raise ValueError(f"torque must be non-negative, got {torsion.T!r}")
    return 2.0 * pos_pow(torsion.T / (2.0 * material.G * torsion.I_n), 1.0 / material.n)


def torsion_shear_stress(torsion: WireTorsion, material: MaterialSpec, r: float) -> float:
    """Torsional shear stress 2 G (r alpha / 2)^n; equals T r^n / I_n."""
    alpha = rate_of_twist(torsion, material)
    return 2.0 * material.G * pos_pow(r * alpha / 2.0, material.n)


def spring_mass(geom: SpringGeometry, material: MaterialSpec) -> float:
    """Wire mass (pi d^2 / 4)(pi D) rho N."""
    return (math.pi * geom.d ** 2 / 4.0) * (math.pi * geom.D) * material.rho * geom.N
