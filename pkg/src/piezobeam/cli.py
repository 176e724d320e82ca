"""Command-line front end.

Subcommands: ``constants``, ``classify``, ``spectrum``, ``simulate``,
``transfer``, ``observability``, ``sweep``.  Each reads the beam description
from a ``key = value`` config file, writes CSV (and optionally SVG)
artifacts, and prints a one-line summary.  Exit codes: 0 success, 2 invalid
input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import observability as obs
from . import spectral
from .config import RunConfig, load_config
from .csvio import read_csv, write_csv, write_svg
from .errors import NumericalError, PiezoBeamError, ValidationError
from .frequency import transfer_closed
from .params import StabilityClass, classify_stability, derive_constants
from .sweeps import SWEEP_METRICS, run_sweep
from .timedomain import (
    Grid,
    SimConfig,
    decay_rate,
    gaussian_velocity_state,
    grid_state_from_modal,
    simulate,
    sine_velocity_state,
    state_from_samples,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="piezobeam",
        description="Spectral, time-domain and frequency-domain analysis of a "
        "voltage-actuated piezoelectric beam with magnetic coupling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="path to key = value config file")
        p.add_argument("--out", default=None, help="output CSV path")

    p = sub.add_parser("constants", help="derived spectral constants")
    common(p)

    p = sub.add_parser("classify", help="stabilizability class of zeta2/zeta1")
    common(p)
    p.add_argument("--qmax", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("spectrum", help="eigenvalues of the undamped generator")
    common(p)
    p.add_argument("--jmax", type=int, default=None, help="modes per family (default J)")

    p = sub.add_parser("simulate", help="time-domain simulation")
    common(p)
    p.add_argument("--mode", choices=("open", "closed", "classical"), default="closed")
    p.add_argument("--T", type=float, default=None)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--k", type=float, default=None)
    p.add_argument("--cfl", type=float, default=None)
    p.add_argument(
        "--initial",
        default=None,
        help="initial data: eigenmode:F,J | sine:J | bump | oddpair:P,Q | file:STATE.csv",
    )
    p.add_argument("--svg", default=None, help="write an energy-history SVG here")
    p.add_argument("--snapshots", default=None, help="directory for state snapshots")

    p = sub.add_parser("transfer", help="transfer function on a vertical line")
    common(p)
    p.add_argument("--s1", type=float, default=1.0, help="real part of the line")
    p.add_argument("--im-max", type=float, default=100.0)
    p.add_argument("--n-points", type=int, default=2001)

    p = sub.add_parser("observability", help="odd/odd approximants and quotients")
    common(p)
    p.add_argument("--count", type=int, default=4)
    p.add_argument("--T", type=float, default=None)

    p = sub.add_parser("sweep", help="parallel parameter sweep")
    common(p)
    p.add_argument("--param", required=True)
    p.add_argument("--values", required=True, help="comma-separated values")
    p.add_argument("--metric", required=True, choices=SWEEP_METRICS)
    p.add_argument("--workers", type=int, default=None)
    return parser


def _out_path(args, default_name: str) -> Path:
    return Path(args.out) if args.out else Path(default_name)


def _cmd_constants(args, cfg: RunConfig) -> int:
    dc = derive_constants(cfg.params)
    path = _out_path(args, "constants.csv")
    write_csv(path, ["alpha", "zeta1", "zeta2", "b1", "b2"],
              [(dc.alpha, dc.zeta1, dc.zeta2, dc.b1, dc.b2)])
    print(
        f"alpha={dc.alpha:.6g} zeta1={dc.zeta1:.6g} zeta2={dc.zeta2:.6g} "
        f"b1={dc.b1:.6g} b2={dc.b2:.6g} -> {path}"
    )
    return EXIT_OK


def _cmd_classify(args, cfg: RunConfig) -> int:
    dc = derive_constants(cfg.params)
    qmax = args.qmax if args.qmax is not None else cfg.qmax
    tol = args.tol if args.tol is not None else cfg.tol
    report = classify_stability(dc, qmax=qmax, tol=tol, length=cfg.params.length)
    label = report.classification.value
    if report.classification is StabilityClass.EXPONENTIALLY_STABLE:
        a = report.approximant
        print(f"{label} p={a.p} q={a.q} gap={report.gap:.4f} Tmin={report.min_time:.3f}")
    elif report.approximant is not None:
        a = report.approximant
        print(f"{label} p={a.p} q={a.q} err={a.error:.3g}")
    else:
        print(f"{label} ratio={report.ratio:.12g} qmax={qmax} tol={tol:g}")
    return EXIT_OK


def _cmd_spectrum(args, cfg: RunConfig) -> int:
    jmax = args.jmax if args.jmax is not None else cfg.J
    modes = spectral.eigenvalues(cfg.params, jmax)
    path = _out_path(args, "spectrum.csv")
    rows = [(m.family, m.sign, m.j, lam.imag) for m, lam in modes]
    write_csv(path, ["family", "sign", "j", "im_lambda"], rows)
    print(f"wrote {len(rows)} eigenvalues (jmax={jmax}) -> {path}")
    return EXIT_OK


def _parse_initial(spec_text: str | None, mode: str, cfg: RunConfig, grid: Grid):
    text = spec_text or ("eigenmode:1,1" if mode == "open" else "bump")
    if text == "bump":
        return gaussian_velocity_state(grid)
    name, _, rest = text.partition(":")
    if name == "sine":
        return sine_velocity_state(grid, j=int(rest or 1))
    if name == "eigenmode":
        fam, j = (int(v) for v in rest.split(","))
        coeffs = spectral.ModalCoefficients.single(
            spectral.ModeIndex(fam, +1, j), J=max(j, 1)
        )
        return grid_state_from_modal(coeffs, cfg.params, grid)
    if name == "oddpair":
        p, q = (int(v) for v in rest.split(","))
        approx = obs.OddApproximant(p=p, q=q, err=0.0, cq2=0.0)
        coeffs = obs.near_unobservable_state(approx, cfg.params)
        return grid_state_from_modal(coeffs, cfg.params, grid)
    if name == "file":
        header, rows = read_csv(rest)
        if header != ["x", "v", "p", "vdot", "pdot"]:
            raise ValidationError(f"{rest}: expected columns x,v,p,vdot,pdot")
        cols = np.array([[float(v) for v in row] for row in rows]).T
        return state_from_samples(grid, *cols)
    raise ValidationError(f"unknown initial-data preset {text!r}")


def _cmd_simulate(args, cfg: RunConfig) -> int:
    params = cfg.params
    grid = Grid(args.N if args.N is not None else cfg.n, params.length)
    sim = SimConfig(
        mode=args.mode,
        T=args.T if args.T is not None else cfg.T,
        cfl=args.cfl if args.cfl is not None else cfg.cfl,
        k=args.k if args.k is not None else cfg.k,
        snapshot_dt=cfg.sample_dt if args.snapshots else None,
    )
    initial = _parse_initial(args.initial, args.mode, cfg, grid)
    traj = simulate(initial, params, sim)
    stride = max(1, int(round(cfg.sample_dt / traj.dt)))
    idx = np.arange(0, traj.t.size, stride)
    if idx[-1] != traj.t.size - 1:
        idx = np.append(idx, traj.t.size - 1)
    path = _out_path(args, "trajectory.csv")
    write_csv(
        path,
        ["time", "energy", "y"],
        zip(traj.t[idx], traj.energy[idx], traj.y[idx]),
    )
    if traj.energy.size >= 10 and np.all(traj.energy > 0):
        rate, r2 = decay_rate(traj.energy, traj.t)
    else:
        rate, r2 = 0.0, 0.0
    if args.svg:
        write_svg(args.svg, traj.t[idx], traj.energy[idx], title="energy")
    if args.snapshots:
        snap_dir = Path(args.snapshots)
        snap_dir.mkdir(parents=True, exist_ok=True)
        index_rows = []
        for i, (t, state) in enumerate(traj.snapshots):
            name = f"state_{i:04d}.csv"
            write_csv(
                snap_dir / name,
                ["x", "v", "p", "vdot", "pdot"],
                zip(state.grid.nodes, state.v, state.p, state.vdot, state.pdot),
            )
            index_rows.append((i, t, name))
        write_csv(snap_dir / "index.csv", ["index", "time", "file"], index_rows)
    print(
        f"mode={args.mode} steps={traj.t.size - 1} E0={traj.energy[0]:.6g} "
        f"ET={traj.energy[-1]:.6g} decay_rate={rate:.6g} r2={r2:.4f} "
        f"max|y|={np.max(np.abs(traj.y)):.6g} -> {path}"
    )
    return EXIT_OK


def _cmd_transfer(args, cfg: RunConfig) -> int:
    params = cfg.params
    dc = derive_constants(params)
    ims = np.linspace(-args.im_max, args.im_max, args.n_points)
    rows = []
    sup, arg = 0.0, complex(args.s1, 0.0)
    for im in ims:
        s = complex(args.s1, im)
        g = transfer_closed(s, params, dc)
        rows.append((s.real, s.imag, g.real, g.imag, abs(g)))
        if abs(g) > sup:
            sup, arg = abs(g), s
    path = _out_path(args, "frequency.csv")
    write_csv(path, ["re_s", "im_s", "re_G", "im_G", "abs_G"], rows)
    print(f"sup|G|={sup:.6g} at s={arg.real:g}{arg.imag:+g}j -> {path}")
    return EXIT_OK


def _cmd_observability(args, cfg: RunConfig) -> int:
    params = cfg.params
    dc = derive_constants(params)
    T = args.T if args.T is not None else cfg.T
    approximants = obs.odd_odd_approximants(dc.ratio, count=args.count, qmax=cfg.qmax)
    rows = []
    for a in approximants:
        state = obs.near_unobservable_state(a, params, dc=dc)
        quotient = obs.observability_quotient(state, params, T, dc=dc)
        rows.append((a.p, a.q, a.err, quotient))
    path = _out_path(args, "observability.csv")
    write_csv(path, ["p", "q", "err", "quotient"], rows)
    tail = f"last quotient={rows[-1][3]:.3e}" if rows else "no approximants found"
    print(f"ratio={dc.ratio:.12g} found {len(rows)} approximants; {tail} -> {path}")
    return EXIT_OK


def _cmd_sweep(args, cfg: RunConfig) -> int:
    values = [float(v) for v in args.values.split(",") if v.strip()]
    rows = run_sweep(cfg, args.param, values, args.metric, workers=args.workers)
    path = _out_path(args, "sweep.csv")
    write_csv(path, ["value", "metric", "error"], rows)
    failures = sum(1 for r in rows if r[2])
    print(f"swept {args.param} over {len(rows)} values ({failures} failed) -> {path}")
    return EXIT_OK


_COMMANDS = {
    "constants": _cmd_constants,
    "classify": _cmd_classify,
    "spectrum": _cmd_spectrum,
    "simulate": _cmd_simulate,
    "transfer": _cmd_transfer,
    "observability": _cmd_observability,
    "sweep": _cmd_sweep,
}


def run(argv) -> int:
    """Execute one CLI invocation; returns the process exit code."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        return _COMMANDS[args.command](args, cfg)
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except PiezoBeamError as exc:  # pragma: no cover - safety net
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
