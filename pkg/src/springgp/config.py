"""Design-problem config files.

Flat ``key = value`` lines with dotted section prefixes; ``#`` starts a
comment. Stress-like values are given in MPa and converted to Pa on load;
everything else is SI already::

    material.K_MPa       = 960
    material.n           = 0.1
    material.nu          = 0.275
    material.rho_kg_m3   = 7700
    load.P_N             = 10
    load.tau_max_MPa     = 200
    load.delta_max_m     = 0.03
    spring.turns         = 10
    options.k            = 10        # optional
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .errors import ParseError, ValidationError
from .mechanics import LoadCase, MaterialSpec

MPA = 1e6

REQUIRED_KEYS = (
    "material.K_MPa",
    "material.n",
    "material.nu",
    "material.rho_kg_m3",
    "load.P_N",
    "load.tau_max_MPa",
    "load.delta_max_m",
    "spring.turns",
)

OPTION_KEYS = {
    "options.k": float,
    "options.k_min": float,
    "options.k_max": float,
    "options.steps": int,
    "options.practical_k_min": float,
    "options.practical_k_max": float,
    "options.D_m": float,
    "options.d_m": float,
    "options.oracle_refinements": int,
    "options.kkt_tol": float,
    "options.out": str,
}


@dataclass(frozen=True)
class Options:
    k: Optional[float] = None
    k_min: Optional[float] = None
    k_max: Optional[float] = None
    steps: int = 50
    practical_k_min: float = 4.0
    practical_k_max: float = 12.0
    D_m: Optional[float] = None
    d_m: Optional[float] = None
    oracle_refinements: int = 3
    kkt_tol: float = 1e-8
    out: Optional[str] = None


@dataclass(frozen=True)
class DesignProblemConfig:
    material: MaterialSpec
    load: LoadCase
    turns: float
    options: Options


def bundled_example_path() -> Path:
    """Path of the shipped stainless-steel example config."""
    return Path(__file__).with_name("data") / "stainless_example.cfg"


def _read_pairs(text):
    pairs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", line=lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ParseError("empty key", line=lineno)
        if key not in REQUIRED_KEYS and key not in OPTION_KEYS:
            raise ParseError("unknown key", line=lineno, key=key)
        if key in pairs:
            raise ParseError("duplicate key", line=lineno, key=key)
        if not value:
            raise ParseError("missing value", line=lineno, key=key)
        pairs[key] = (lineno, value)
    return pairs


def _convert(pairs, key, kind):
    lineno, value = pairs[key]
    try:
        return kind(value)
    except ValueError:
        raise ParseError(f"cannot read {value!r} as {kind.__name__}", line=lineno, key=key) from None


def parse_config_text(text: str) -> DesignProblemConfig:
    pairs = _read_pairs(text)
    missing = [key for key in REQUIRED_KEYS if key not in pairs]
    if missing:
        raise ParseError(f"missing required key(s): {', '.join(missing)}", key=missing[0])

    raw = {key: _convert(pairs, key, float) for key in REQUIRED_KEYS}
    opts = {
        key.split(".", 1)[1]: _convert(pairs, key, kind)
        for key, kind in OPTION_KEYS.items()
        if key in pairs
    }
    options = Options(**opts)

    problems = []

    def need(ok, message):
        if not ok:
            problems.append(message)

    need(raw["material.K_MPa"] > 0, "material.K_MPa must be > 0")
    need(raw["material.n"] > 0, "material.n must be > 0")
    need(0 <= raw["material.nu"] < 0.5, "material.nu must lie in [0, 0.5)")
    need(raw["material.rho_kg_m3"] > 0, "material.rho_kg_m3 must be > 0")
    need(raw["load.P_N"] > 0, "load.P_N must be > 0")
    need(raw["load.tau_max_MPa"] > 0, "load.tau_max_MPa must be > 0")
    need(raw["load.delta_max_m"] > 0, "load.delta_max_m must be > 0")
    need(raw["spring.turns"] >= 1, "spring.turns must be >= 1")
    if options.k is not None:
        need(options.k > 1, "options.k must exceed 1")
    if options.k_min is not None:
        need(options.k_min > 1, "options.k_min must exceed 1")
    if options.k_min is not None and options.k_max is not None:
        need(options.k_max > options.k_min, "options.k_max must exceed options.k_min")
    need(options.steps >= 2, "options.steps must be >= 2")
    need(
        options.practical_k_max > options.practical_k_min,
        "options.practical_k_max must exceed options.practical_k_min",
    )
    for key in ("D_m", "d_m"):
        value = getattr(options, key)
        if value is not None:
            need(value > 0, f"options.{key} must be > 0")
    if options.D_m is not None and options.d_m is not None and options.d_m > 0:
        need(options.D_m > options.d_m, "options.D_m must exceed options.d_m")
    need(options.oracle_refinements >= 1, "options.oracle_refinements must be >= 1")
    need(options.kkt_tol > 0, "options.kkt_tol must be > 0")
    if problems:
        raise ValidationError(problems)

    with warnings.catch_warnings():
        # n > 1 warnings are re-emitted by the CLI with config context
        warnings.simplefilter("ignore")
        material = MaterialSpec(
            K=raw["material.K_MPa"] * MPA,
            n=raw["material.n"],
            nu=raw["material.nu"],
            rho=raw["material.rho_kg_m3"],
        )
    load = LoadCase(
        P=raw["load.P_N"],
        tau_max=raw["load.tau_max_MPa"] * MPA,
        delta_max=raw["load.delta_max_m"],
    )
    return DesignProblemConfig(material=material, load=load, turns=raw["spring.turns"], options=options)


def parse_config(path) -> DesignProblemConfig:
    """Read and validate a config file; all units come back in SI.

    Raises:
        ParseError: malformed lines, unknown or duplicate keys, missing keys.
        ValidationError: every physical invariant the values violate.
    """
    return parse_config_text(Path(path).read_text(encoding="utf-8"))
