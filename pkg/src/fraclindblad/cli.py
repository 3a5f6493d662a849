"""Command-line front end.

Subcommands: ``curves``, ``landscape``, ``ml``, ``cp-audit``, ``convergence``.

Exit codes: 0 success, 2 invalid configuration, 3 file I/O failure,
4 internal consistency failure (analytic and integrator disagree).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import analytic, fde_solver
from .config import INITIAL_STATES, METHODS, ConfigError, load_config
from .mlf import MittagLefflerAccuracyError, MittagLefflerDomainError, ml_two
from .quantum_ops import (
    POSITIVITY_TOL,
    LindbladModel,
    lindblad_superoperator,
    min_choi_eigenvalue,
    vec,
)
from .svgplot import heat_map, line_plot

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_INCONSISTENT = 4

DISCREPANCY_TOL = 1e-2
CSV_FMT = "%.15e"


class _Exit(Exception):
    def __init__(self, code, message=""):
        super().__init__(message)
        self.code = code


def _num(v):
    return CSV_FMT % v


def _write(path, text):
    try:
        path = Path(path)
        with path.open("w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot write {path}: {exc}") from None


def _svg_path(csv_path):
    return Path(csv_path).with_suffix(".svg")


def _config_from_args(args):
    try:
        return load_config(
            args.config,
            gamma=args.gamma,
            alphas=tuple(args.alpha) if args.alpha else None,
            t_max=args.t_max,
            steps=args.steps,
            initial_state=args.initial,
            method=args.method,
            output_path=args.out,
            emit_svg=True if args.svg else None,
        )
    except ConfigError as exc:
        raise _Exit(EXIT_CONFIG, f"invalid configuration: {exc}") from None
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot read configuration: {exc}") from None


def _generator(cfg):
    return lindblad_superoperator(LindbladModel.amplitude_damping(cfg.gamma))


def coherence_curves(cfg):
    """Trajectories keyed by ``(method, alpha)`` for the configured scenario."""
    rho0 = cfg.initial_density()
    methods = ("analytic", "integrator") if cfg.method == "both" else (cfg.method,)
    out = {}
    for method in methods:
        for a in cfg.alphas:
            if method == "analytic":
                params = analytic.AmplitudeDampingParams(cfg.gamma, a)
                traj = analytic.ad_trajectory(rho0, params, cfg.times)
            else:
                problem = fde_solver.CaputoProblem(
                    a, _generator(cfg), rho0.vec(), cfg.t_max, cfg.steps
                )
                traj = fde_solver.solve(problem)
            out[method, a] = traj
    return out


def run_coherence_curves(cfg, stdout=sys.stdout):
    trajs = coherence_curves(cfg)
    lines = ["t,alpha,c_l1,rho11,trace_defect,method"]
    for (method, a), traj in trajs.items():
        s = traj.series
        for k, t in enumerate(traj.times):
            lines.append(
                ",".join(
                    (_num(t), _num(a), _num(s["c_l1"][k]), _num(s["rho11"][k]),
                     _num(s["trace_defect"][k]), method)
                )
            )
    _write(cfg.output_path, "\n".join(lines) + "\n")
    print(f"wrote {len(lines) - 1} rows to {cfg.output_path}", file=stdout)

    if cfg.emit_svg:
        curves = [
            (f"alpha = {a:g}" + (f" ({method})" if cfg.method == "both" else ""),
             traj.times, traj.series["c_l1"], method == "integrator" and cfg.method == "both")
            for (method, a), traj in trajs.items()
        ]
        title = f"l1 coherence, amplitude damping, gamma = {cfg.gamma:g}"
        svg = _svg_path(cfg.output_path)
        _write(svg, line_plot(curves, xlabel="t", ylabel="C_l1(t)", title=title))
        print(f"wrote {svg}", file=stdout)

    if cfg.method == "both":
        gap = max(
            float(np.max(np.abs(trajs["analytic", a].series["c_l1"]
                                - trajs["integrator", a].series["c_l1"])))
            for a in cfg.alphas
        )
        print(f"max c_l1 discrepancy (analytic vs integrator): {gap:.3e}", file=stdout)
        if not gap <= DISCREPANCY_TOL:
            raise _Exit(
                EXIT_INCONSISTENT,
                f"analytic and integrator coherence differ by {gap:.3e} > {DISCREPANCY_TOL:g}",
            )
    return EXIT_OK


def coherence_landscape(cfg, alpha_count):
    """``(alphas, times, c_l1[alpha, t])`` from the closed forms."""
    if alpha_count < 2:
        raise ConfigError("alpha_count", f"must be at least 2, got {alpha_count}")
    if cfg.method != "analytic":
        raise ConfigError("method", "the landscape uses the closed forms; set method = analytic")
    a_min = cfg.alphas[0]
    if a_min >= 1.0:
        raise ConfigError("alphas", "landscape needs a smallest alpha below 1")
    alphas = np.linspace(a_min, 1.0, alpha_count)
    rho0 = cfg.initial_density()
    c0 = 2.0 * abs(rho0.entries[1, 0])
    times = cfg.times
    grid = np.empty((alpha_count, times.size))
    for i, a in enumerate(alphas):
        ta = np.where(times > 0, np.exp(a * np.log(np.where(times > 0, times, 1.0))), 0.0)
        grid[i] = c0 * ml_two(a, 1.0, -0.5 * cfg.gamma * ta)
    return alphas, times, grid


def run_coherence_landscape(cfg, alpha_count, stdout=sys.stdout):
    try:
        alphas, times, grid = coherence_landscape(cfg, alpha_count)
    except ConfigError as exc:
        raise _Exit(EXIT_CONFIG, f"invalid configuration: {exc}") from None
    lines = ["t,alpha,c_l1"]
    for i, a in enumerate(alphas):
        for j, t in enumerate(times):
            lines.append(f"{_num(t)},{_num(a)},{_num(grid[i, j])}")
    _write(cfg.output_path, "\n".join(lines) + "\n")
    print(f"wrote {len(lines) - 1} rows to {cfg.output_path}", file=stdout)
    if cfg.emit_svg:
        svg = _svg_path(cfg.output_path)
        title = f"l1 coherence landscape, gamma = {cfg.gamma:g}"
        _write(svg, heat_map(times, alphas, grid, xlabel="t", ylabel="alpha", title=title))
        print(f"wrote {svg}", file=stdout)
    return EXIT_OK


def run_ml_eval(alpha, beta, z_list, stdout=sys.stdout):
    try:
        values = [ml_two(alpha, beta, z) for z in z_list]
    except MittagLefflerDomainError as exc:
        raise _Exit(EXIT_CONFIG, f"invalid parameters: {exc}") from None
    except MittagLefflerAccuracyError as exc:
        raise _Exit(EXIT_INCONSISTENT, str(exc)) from None
    for z, e in zip(z_list, values):
        print(f"{_num(z)}, {_num(e)}", file=stdout)
    return EXIT_OK


def cp_audit(cfg, t_samples):
    """Rows ``(alpha, t, min Choi eigenvalue, trace defect)`` of the fractional propagator."""
    if t_samples < 1:
        raise ConfigError("t_samples", f"must be at least 1, got {t_samples}")
    gen = _generator(cfg)
    d = gen.dim
    trace_fn = vec(np.eye(d))
    rows = []
    for a in cfg.alphas:
        for t in np.linspace(0.0, cfg.t_max, t_samples):
            prop = analytic.matrix_ml(a, float(t), gen)
            tdef = float(np.max(np.abs(trace_fn @ prop.entries - trace_fn)))
            rows.append((a, float(t), min_choi_eigenvalue(prop), tdef))
    return rows


def run_cp_audit(cfg, t_samples, stdout=sys.stdout):
    try:
        rows = cp_audit(cfg, t_samples)
    except ConfigError as exc:
        raise _Exit(EXIT_CONFIG, f"invalid configuration: {exc}") from None
    print("alpha,t,min_choi_eigenvalue,trace_defect", file=stdout)
    for a, t, lo, tdef in rows:
        print(f"{_num(a)},{_num(t)},{_num(lo)},{_num(tdef)}", file=stdout)
    worst = min(r[2] for r in rows)
    verdict = "PASS" if worst >= -POSITIVITY_TOL else "FAIL"
    print(f"{verdict}: minimum Choi eigenvalue {worst:.3e} (tolerance {-POSITIVITY_TOL:g})",
          file=stdout)
    return EXIT_OK


def run_convergence(cfg, step_counts, stdout=sys.stdout):
    rho0 = cfg.initial_density()
    gen = _generator(cfg)
    print("alpha,steps,max_error,ratio,order", file=stdout)
    try:
        for a in cfg.alphas:
            params = analytic.AmplitudeDampingParams(cfg.gamma, a)
            problem = fde_solver.CaputoProblem(a, gen, rho0.vec(), cfg.t_max, step_counts[0])
            rows = fde_solver.convergence_study(
                problem,
                step_counts,
                reference=lambda t, p=params: analytic.ad_trajectory(rho0, p, t).states,
            )
            for r in rows:
                print(f"{a:g},{r.steps},{r.max_error:.6e},{r.ratio:.4f},{r.order:.4f}",
                      file=stdout)
    except ValueError as exc:
        raise _Exit(EXIT_CONFIG, f"invalid configuration: {exc}") from None
    return EXIT_OK


def _common(parser):
    parser.add_argument("--config", type=Path, help="key = value scenario file")
    parser.add_argument("--gamma", type=float, help="decay rate")
    parser.add_argument("--alpha", type=float, action="append",
                        help="fractional order (repeatable)")
    parser.add_argument("--t-max", type=float, dest="t_max", help="final time")
    parser.add_argument("--steps", type=int, help="number of time steps")
    parser.add_argument("--initial", choices=INITIAL_STATES, help="initial state")
    parser.add_argument("--method", choices=METHODS, help="solution method")
    parser.add_argument("--out", type=Path, help="CSV output path (SVG goes next to it)")
    parser.add_argument("--svg", action="store_true", default=None, help="also write an SVG")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fraclindblad",
        description="Fractional-time Lindblad dynamics of a damped qubit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curves", help="coherence curves C_l1(t), one per alpha")
    _common(p)

    p = sub.add_parser("landscape", help="coherence over the (t, alpha) plane")
    _common(p)
    p.add_argument("--alpha-count", type=int, default=50, dest="alpha_count")

    p = sub.add_parser("ml", help="evaluate E_{alpha,beta}(z)")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("z", type=float, nargs="+")

    p = sub.add_parser("cp-audit", help="Choi-matrix positivity of the fractional propagator")
    _common(p)
    p.add_argument("--t-samples", type=int, default=20, dest="t_samples")

    p = sub.add_parser("convergence", help="integrator error against the closed form")
    _common(p)
    p.add_argument("--step-counts", type=int, nargs="+", default=[250, 500, 1000],
                   dest="step_counts")
    return parser


def main(argv=None, stdout=None, stderr=None):
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "ml":
            return run_ml_eval(args.alpha, args.beta, args.z, stdout=stdout)
        cfg = _config_from_args(args)
        if args.command == "curves":
            return run_coherence_curves(cfg, stdout=stdout)
        if args.command == "landscape":
            return run_coherence_landscape(cfg, args.alpha_count, stdout=stdout)
        if args.command == "cp-audit":
            return run_cp_audit(cfg, args.t_samples, stdout=stdout)
        if args.command == "convergence":
            return run_convergence(cfg, args.step_counts, stdout=stdout)
    except _Exit as exc:
        if str(exc):
            print(f"error: {exc}", file=stderr)
        return exc.code
    parser.error(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
