"""``springgp`` command-line front end.

Exit codes: 0 success, 2 config/argument validation failure, 3 no admissible
spring index, 4 verification failure (KKT residual above threshold or oracle
disagreement), 1 anything unexpected.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from pathlib import Path

import numpy as np

from . import config as cfgmod
from .dual_solver import solve_dual
from .errors import NoAdmissibleIndex, OracleInfeasible, ParseError, SpringGPError, ValidationError
from .gp_model import DesignVariables, build_coefficients, constraint_residuals
from .mechanics import SpringGeometry, max_shear_stress, spring_mass, tip_deflection
from .primal_solver import admissible_interval, k_log_residual, solve, sweep
from .verifier import duality_gap, grid_oracle, kkt_residuals

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INVALID = 2
EXIT_NO_INDEX = 3
EXIT_VERIFY = 4

ORACLE_REL_TOL = 5e-3
PLOT_POINTS = 200

COMMANDS = ("analyze", "interval", "solve", "sweep", "dual", "verify")


class UsageError(SpringGPError):
    pass


class VerificationFailed(SpringGPError):
    pass


def _fmt(value, fmt):
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return format(value, ".17g" if fmt == "csv" else ".6g")
    if value is None:
        return ""
    return str(value)


def render(rows, fmt):
    """Render a list of dicts as CSV (full precision) or an aligned table."""
    if not rows:
        return ""
    columns = list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row[col], "csv") for col in columns])
        return buf.getvalue()
    cells = [[_fmt(row[col], "table") for col in columns] for row in rows]
    if len(rows) == 1:
        width = max(len(col) for col in columns)
        return "".join(f"{col:<{width}}  {val}\n" for col, val in zip(columns, cells[0]))
    widths = [max(len(col), *(len(r[i]) for r in cells)) for i, col in enumerate(columns)]
    lines = ["  ".join(col.rjust(w) for col, w in zip(columns, widths))]
    lines += ["  ".join(val.rjust(w) for val, w in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"


def _pick(flag, option, default=None):
    if flag is not None:
        return flag
    if option is not None:
        return option
    return default


def _require_index(k):
    if k is None:
        raise UsageError("a spring index is required (--k or options.k)")
    if not k > 1:
        raise UsageError(f"spring index k must exceed 1, got {k}")
    return k


def _check_kkt(report, tol, label, rows):
    if not report.max_violation <= tol:
        raise VerificationFailed(
            f"{label}: KKT max violation {report.max_violation:.3e} above threshold {tol:.1e}", rows
        )


def cmd_analyze(problem, coeffs, args):
    D = _pick(args.coil_diameter, problem.options.D_m)
    d = _pick(args.wire_diameter, problem.options.d_m)
    if D is None or d is None:
        raise UsageError("analyze needs --coil-diameter and --wire-diameter (or options.D_m / options.d_m)")
    try:
        geom = SpringGeometry(D=D, d=d, N=problem.turns)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    tau = max_shear_stress(problem.load, geom, problem.material)
    delta = tip_deflection(problem.load, geom, problem.material)
    g = constraint_residuals(coeffs, DesignVariables(D, d), geom.C)
    return [
        {
            "D_m": D,
            "d_m": d,
            "spring_index": geom.C,
            "max_shear_stress_Pa": tau,
            "stress_margin": 1.0 - tau / problem.load.tau_max,
            "tip_deflection_m": delta,
            "deflection_margin": 1.0 - delta / problem.load.delta_max,
            "mass_kg": spring_mass(geom, problem.material),
            "g1": g.g1,
            "g2": g.g2,
        }
    ], []


def cmd_interval(problem, coeffs, args):
    iv = admissible_interval(coeffs)
    lo_p, hi_p = problem.options.practical_k_min, problem.options.practical_k_max
    rec_k = rec_mass = None
    # mass rises with k on (1, k*], so the lightest practical design sits at the lower end
    if lo_p > iv.lower and lo_p <= min(hi_p, iv.k_star):
        rec_k = lo_p
        rec_mass = solve(coeffs, rec_k).objective
    return [
        {
            "lower": iv.lower,
            "k_star": iv.k_star,
            "negative_root": iv.negative_root,
            "practical_k_min": lo_p,
            "practical_k_max": hi_p,
            "recommended_k": rec_k,
            "recommended_mass_kg": rec_mass,
        }
    ], []


def cmd_solve(problem, coeffs, args):
    k = _require_index(_pick(args.k, problem.options.k))
    sol = solve(coeffs, k)
    report = kkt_residuals(coeffs, k, sol)
    g = constraint_residuals(coeffs, sol.x, k)
    row = {
        "k": k,
        "x1_m": sol.x.x1,
        "x2_m": sol.x.x2,
        "mass_kg": sol.objective,
        "active_case": sol.active_case.value,
        "lam1": sol.lam1,
        "lam2": sol.lam2,
        "lam3": sol.lam3,
        "g1": g.g1,
        "g2": g.g2,
        "g3_rel": g.g3 / sol.x.x1,
        "kkt_max_violation": report.max_violation,
    }
    _check_kkt(report, problem.options.kkt_tol, f"solve k={k}", [row])
    return [row], []


def _sweep_rows(coeffs, solutions):
    rows = []
    for sol in solutions:
        g = constraint_residuals(coeffs, sol.x, sol.k)
        rows.append(
            {
                "k": sol.k,
                "x1_m": sol.x.x1,
                "x2_m": sol.x.x2,
                "mass_kg": sol.objective,
                "active_case": sol.active_case.value,
                "g1": g.g1,
                "g2": g.g2,
            }
        )
    return rows


def cmd_sweep(problem, coeffs, args):
    iv = admissible_interval(coeffs)
    opts = problem.options
    k_min = _pick(args.k_min, opts.k_min, 2.0)
    k_max = _pick(args.k_max, opts.k_max, iv.k_star)
    steps = _pick(args.steps, None, opts.steps)
    if not 1 < k_min < k_max:
        raise UsageError(f"sweep needs 1 < k_min < k_max, got k_min={k_min}, k_max={k_max}")
    if steps < 2:
        raise UsageError(f"steps must be at least 2, got {steps}")
    rows = _sweep_rows(coeffs, sweep(coeffs, k_min, k_max, steps))

    g_ks = np.geomspace(1.0, 1.2 * iv.k_star, PLOT_POINTS + 1)[1:]
    g_rows = [{"k": float(k), "g_log_residual": k_log_residual(coeffs, float(k))} for k in g_ks]
    m_ks = np.geomspace(1.0, iv.k_star, PLOT_POINTS + 1)[1:]
    m_ks[-1] = iv.k_star
    m_rows = [{"k": float(k), "mass_kg": solve(coeffs, float(k)).objective} for k in m_ks]
    return rows, [("_gk", g_rows), ("_mass", m_rows)]


def cmd_dual(problem, coeffs, args):
    dual = solve_dual(coeffs)
    primal = solve(coeffs, dual.k_star)
    report = kkt_residuals(coeffs, dual.k_star, primal)
    m = dual.multipliers
    row = {
        "k_star": dual.k_star,
        "v_star_kg": dual.v_star,
        "ln_v_star": dual.log_v_star,
        "lam01": m.lam01,
        "lam11": m.lam11,
        "lam12": m.lam12,
        "lam21": m.lam21,
        "lam31": m.lam31,
        "x1_m": dual.recovered.x1,
        "x2_m": dual.recovered.x2,
        "primal_mass_kg": primal.objective,
        "duality_gap": duality_gap(primal.objective, dual.v_star),
    }
    _check_kkt(report, problem.options.kkt_tol, "dual recovery", [row])
    return [row], []


def cmd_verify(problem, coeffs, args):
    iv = admissible_interval(coeffs)
    ks = []
    k = _pick(args.k, problem.options.k)
    if k is not None:
        ks.append(_require_index(k))
    ks.append(iv.k_star)
    refinements = problem.options.oracle_refinements
    rows, failures = [], []
    for k in ks:
        sol = solve(coeffs, k)
        report = kkt_residuals(coeffs, k, sol)
        oracle = grid_oracle(coeffs, k, refinements, seed=sol.x)
        rel = (oracle.best_objective - sol.objective) / sol.objective
        rows.append(
            {
                "k": k,
                "active_case": sol.active_case.value,
                "closed_form_kg": sol.objective,
                "oracle_kg": oracle.best_objective,
                "oracle_rel_diff": rel,
                "kkt_max_violation": report.max_violation,
                "evaluations": oracle.evaluations,
                "feasible_fraction": oracle.feasible_fraction,
            }
        )
        if report.max_violation > problem.options.kkt_tol:
            failures.append(f"k={k:.6g}: KKT max violation {report.max_violation:.3e}")
        if abs(rel) > ORACLE_REL_TOL:
            failures.append(f"k={k:.6g}: oracle differs from closed form by {rel:.3%}")
    if failures:
        raise VerificationFailed("; ".join(failures), rows)
    return rows, []


HANDLERS = {
    "analyze": cmd_analyze,
    "interval": cmd_interval,
    "solve": cmd_solve,
    "sweep": cmd_sweep,
    "dual": cmd_dual,
    "verify": cmd_verify,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="springgp",
        description="Minimum-mass design of helical springs made of power-law materials.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument(
        "--config",
        type=Path,
        default=None,
        help="design-problem config (default: bundled stainless-steel example)",
    )
    parser.add_argument("--k", type=float, default=None, help="spring index D/d")
    parser.add_argument("--k-min", type=float, default=None)
    parser.add_argument("--k-max", type=float, default=None)
    parser.add_argument("--steps", type=int, default=None)
    parser.add_argument("--coil-diameter", type=float, default=None, help="D in m (analyze)")
    parser.add_argument("--wire-diameter", type=float, default=None, help="d in m (analyze)")
    parser.add_argument(
        "--out",
        type=Path,
        default=None,
        help="write output here instead of stdout; sweep also writes <stem>_gk.csv and <stem>_mass.csv",
    )
    parser.add_argument("--format", choices=("table", "csv"), default="table")
    return parser


def _write_outputs(rows, extras, args, out_path, stdout):
    text = render(rows, args.format)
    if out_path is None:
        stdout.write(text)
        return
    out_path.write_text(text, encoding="utf-8", newline="\n")
    for suffix, extra_rows in extras:
        side = out_path.with_name(out_path.stem + suffix + ".csv")
        side.write_text(render(extra_rows, "csv"), encoding="utf-8", newline="\n")


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK

    config_path = args.config or cfgmod.bundled_example_path()
    try:
        problem = cfgmod.parse_config(config_path)
    except OSError as exc:
        stderr.write(f"springgp: cannot read config: {exc}\n")
        return EXIT_INVALID
    except (ParseError, ValidationError) as exc:
        stderr.write(f"springgp: {config_path}: {exc}\n")
        return EXIT_INVALID
    if problem.material.n > 1:
        stderr.write(f"springgp: warning: power-law index n={problem.material.n} > 1 is unusual\n")

    out_path = args.out
    if out_path is None and problem.options.out is not None:
        out_path = Path(problem.options.out)

    coeffs = build_coefficients(problem.material, problem.turns, problem.load)
    try:
        rows, extras = HANDLERS[args.command](problem, coeffs, args)
    except UsageError as exc:
        stderr.write(f"springgp: {exc}\n")
        return EXIT_INVALID
    except NoAdmissibleIndex as exc:
        stderr.write(f"springgp: {exc}\n")
        return EXIT_NO_INDEX
    except VerificationFailed as exc:
        if len(exc.args) > 1:
            _write_outputs(exc.args[1], [], args, out_path, stdout)
        stderr.write(f"springgp: verification failed: {exc.args[0]}\n")
        return EXIT_VERIFY
    except OracleInfeasible as exc:
        stderr.write(f"springgp: verification failed: {exc}\n")
        return EXIT_VERIFY
    except SpringGPError as exc:
        stderr.write(f"springgp: {exc}\n")
        return EXIT_INTERNAL
    _write_outputs(rows, extras, args, out_path, stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
