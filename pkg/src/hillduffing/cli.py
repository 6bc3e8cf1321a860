"""Command-line interface.

Every command is deterministic: identical flags produce byte-identical
data files (floats are written with 17 significant digits, '.' decimal
separator, '\\n' line endings).  Grid commands write ``<name>.csv`` plus a
``<name>.meta.json`` sidecar echoing the full configuration; the sidecar
also records wall time, so only the CSV is byte-reproducible.

Exit codes: 0 success, 1 verification failure, 2 usage/config error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time

from . import __version__, beam, criteria, duffing, hill, tongues, verify
from .errors import BracketNotFound, DomainError, IntegrationFailure

# let argparse accept range values like "-2:6:160" that begin with a minus
_NEGATIVE_RANGE = re.compile(r"^-(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?(:\S*)?$")

_CRITERIA = {
    "li-zhang": criteria.li_zhang,
    "zhukovskii": criteria.zhukovskii,
    "burdina": criteria.burdina,
}


def _parse_range(text: str) -> tuple[float, float, int]:
    """Parse 'lo:hi:count' with inclusive endpoints."""
    parts = text.split(":")
    if len(parts) != 3:
        raise DomainError(f"range must look like lo:hi:count, got {text!r}")
    lo, hi = float(parts[0]), float(parts[1])
    count = int(parts[2])
    if count < 2:
        raise DomainError(f"range count must be >= 2, got {count}")
    if not hi > lo:
        raise DomainError(f"range must be ordered, got {text!r}")
    return lo, hi, count


def _plane(name: str) -> tongues.Plane:
    return tongues.Plane.GAMMA if name == "gamma" else tongues.Plane.OMEGA


def _workers(args: argparse.Namespace) -> int:
    env = os.environ.get("HILLDUFFING_WORKERS")
    n = int(env) if env else args.workers
    if n < 1:
        raise DomainError(f"workers must be >= 1, got {n}")
    return n


def _basename(out: str) -> str:
    return out[:-4] if out.endswith(".csv") else out


def _write_text(path: str, lines) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", newline="\n") as fh:
        for line in lines:
            fh.write(line + "\n")
    os.replace(tmp, path)


def _write_meta(path: str, command: str, config: dict, wall_time: float) -> None:
    payload = {
        "command": command,
        "config": config,
        "library_version": __version__,
        "wall_time_s": wall_time,
        "created_at": time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime()),
    }
    tmp = path + ".tmp"
    with open(tmp, "w", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    os.replace(tmp, path)


def _cmd_scan(args: argparse.Namespace) -> int:
    x_lo, x_hi, nx = _parse_range(args.x)
    y_lo, y_hi, ny = _parse_range(args.y)
    tol_boundary = 0.02 if args.paper_figures else args.tol_boundary
    t0 = time.perf_counter()
    grid = tongues.scan(
        _plane(args.plane), (x_lo, x_hi), (y_lo, y_hi), (nx, ny),
        integrator_tol=args.tol, tol_boundary=tol_boundary,
        workers=_workers(args),
    )
    wall = time.perf_counter() - t0
    base = _basename(args.out)
    _write_text(base + ".csv", grid.csv_rows())
    config = dict(grid.meta, workers=_workers(args), paper_figures=args.paper_figures)
    _write_meta(base + ".meta.json", "scan", config, wall)
    print(f"wrote {base}.csv ({nx * ny} cells) and {base}.meta.json")
    return 0


def _criteria_cell(task) -> tuple[str, ...]:
    plane_name, x, y, names = task
    try:
        if plane_name == "gamma":
            p = hill.squared_duffing_coefficient(x, y)
        else:
            p = hill.omega_coefficient(x, y)
    except DomainError:
        return tuple("I" for _ in names)
    verdicts = []
    for name in names:
        try:
            verdicts.append("S" if _CRITERIA[name](p).guaranteed_stable else "I")
        except (DomainError, IntegrationFailure, ValueError):
            verdicts.append("I")
    return tuple(verdicts)


def _cmd_criteria_map(args: argparse.Namespace) -> int:
    x_lo, x_hi, nx = _parse_range(args.x)
    y_lo, y_hi, ny = _parse_range(args.y)
    names = [n.strip() for n in args.criteria.split(",")]
    for n in names:
        if n not in _CRITERIA:
            raise DomainError(f"unknown criterion {n!r}; choose from {sorted(_CRITERIA)}")
    xs = tongues.axis_values(x_lo, x_hi, nx)
    ys = tongues.axis_values(y_lo, y_hi, ny)
    tasks = [(args.plane, float(x), float(y), tuple(names)) for x in xs for y in ys]
    t0 = time.perf_counter()
    workers = _workers(args)
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(_criteria_cell, tasks, chunksize=16))
    else:
        cells = [_criteria_cell(t) for t in tasks]
    wall = time.perf_counter() - t0

    header = "x,y," + ",".join(n.replace("-", "_") for n in names)
    lines = [header]
    for idx, verdicts in enumerate(cells):
        i, j = divmod(idx, ys.size)
        lines.append(f"{xs[i]:.17g},{ys[j]:.17g}," + ",".join(verdicts))
    base = _basename(args.out)
    _write_text(base + ".csv", lines)
    config = {
        "plane": args.plane, "x_range": [x_lo, x_hi], "y_range": [y_lo, y_hi],
        "resolution": [nx, ny], "criteria": names, "workers": workers,
    }
    _write_meta(base + ".meta.json", "criteria-map", config, wall)
    print(f"wrote {base}.csv ({nx * ny} cells) and {base}.meta.json")
    return 0


def _cmd_tongue_bracket(args: argparse.Namespace) -> int:
    try:
        sample = tongues.trace_level_bracket(
            _plane(args.plane), args.ell, args.delta,
            threshold=args.threshold, integrator_tol=args.tol,
        )
    except BracketNotFound as exc:
        # thin tongues can legitimately evade the sampling resolution
        print(f"NOT FOUND: {exc}")
        return 0
    print(f"tongue {sample.ell} at delta={sample.delta:.17g}: "
          f"lower={sample.lower:.17g} upper={sample.upper:.17g} "
          f"(threshold {sample.threshold:.17g}, peak |trace| {sample.peak_trace:.17g})")
    if args.out:
        payload = {
            "plane": args.plane, "ell": sample.ell, "delta": sample.delta,
            "lower": sample.lower, "upper": sample.upper,
            "threshold": sample.threshold, "peak": sample.peak,
            "peak_trace": sample.peak_trace,
        }
        _write_text(args.out, [json.dumps(payload, indent=2, sort_keys=True)])
    return 0


def _cmd_beam(args: argparse.Namespace) -> int:
    pair = beam.ModePair(args.m, args.n)
    result = beam.simulate(
        pair, args.delta, z_ratio=args.z_ratio, horizon=args.horizon,
        tol=args.tol, growth_factor=args.growth_factor,
    )
    if args.out:
        beam.write_trajectory_csv(result, args.out)
        print(f"wrote {args.out} ({result.trajectory.shape[0]} rows)")
    onset = "none" if result.onset_time is None else f"{result.onset_time:.6g}"
    print(f"verdict: {result.verdict.value} (onset {onset}, "
          f"max |z| {result.max_abs_z:.6g}, threshold {result.threshold:.6g})")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    results = verify.run_suite(args.suite)
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def _cmd_duffing_eval(args: argparse.Namespace) -> int:
    params = duffing.DuffingParams(args.delta, args.omega)
    t_lo, t_hi, nt = _parse_range(args.t)
    ts = tongues.axis_values(t_lo, t_hi, nt)
    lines = ["t,y,y_dot"]
    for t in ts:
        y = duffing.duffing_solution(params, t)
        v = duffing.duffing_velocity(params, t)
        lines.append(f"{t:.17g},{y:.17g},{v:.17g}")
    if args.out:
        _write_text(args.out, lines)
        print(f"wrote {args.out} ({nt} rows)")
    else:
        for line in lines:
            print(line)
    print(f"period: {duffing.period(params):.17g}")
    if args.omega == 1.0:
        print(f"energy: {duffing.energy(params):.17g}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hillduffing",
        description="Stability charts for Hill equations with squared-Duffing "
                    "coefficients and two-mode beam instabilities.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name: str, **kwargs) -> argparse.ArgumentParser:
        p = sub.add_parser(name, **kwargs)
        p._negative_number_matcher = _NEGATIVE_RANGE
        return p

    scan_p = add_parser("scan", help="monodromy-trace grid over a parameter plane")
    scan_p.add_argument("--plane", choices=["gamma", "omega"], required=True)
    scan_p.add_argument("--x", required=True, metavar="LO:HI:COUNT",
                        help="delta axis, inclusive endpoints")
    scan_p.add_argument("--y", required=True, metavar="LO:HI:COUNT",
                        help="gamma or omega axis")
    scan_p.add_argument("--tol", type=float, default=hill.DEFAULT_TOL)
    scan_p.add_argument("--tol-boundary", type=float, default=hill.DEFAULT_TOL_BOUNDARY)
    scan_p.add_argument("--paper-figures", action="store_true",
                        help="classify against the published level lines +-1.98")
    scan_p.add_argument("--workers", type=int, default=1)
    scan_p.add_argument("--out", required=True, help="output base name")
    scan_p.set_defaults(func=_cmd_scan)

    crit_p = add_parser("criteria-map", help="per-cell sufficient-criterion verdicts")
    crit_p.add_argument("--plane", choices=["gamma", "omega"], required=True)
    crit_p.add_argument("--x", required=True, metavar="LO:HI:COUNT")
    crit_p.add_argument("--y", required=True, metavar="LO:HI:COUNT")
    crit_p.add_argument("--criteria", default="li-zhang,zhukovskii,burdina",
                        help="comma-separated subset of li-zhang, zhukovskii, burdina")
    crit_p.add_argument("--workers", type=int, default=1)
    crit_p.add_argument("--out", required=True)
    crit_p.set_defaults(func=_cmd_criteria_map)

    tb_p = add_parser("tongue-bracket", help="bisect tongue boundaries at fixed delta")
    tb_p.add_argument("--plane", choices=["gamma", "omega"], required=True)
    tb_p.add_argument("--ell", type=int, required=True)
    tb_p.add_argument("--delta", type=float, required=True)
    tb_p.add_argument("--threshold", type=float, default=None)
    tb_p.add_argument("--tol", type=float, default=hill.DEFAULT_TOL)
    tb_p.add_argument("--out", default=None, help="optional JSON output path")
    tb_p.set_defaults(func=_cmd_tongue_bracket)

    beam_p = add_parser("beam", help="two-mode beam simulation and transfer verdict")
    beam_p.add_argument("--m", type=int, required=True)
    beam_p.add_argument("--n", type=int, required=True)
    beam_p.add_argument("--delta", type=float, required=True)
    beam_p.add_argument("--z-ratio", type=float, default=1e-3)
    beam_p.add_argument("--horizon", type=float, default=None)
    beam_p.add_argument("--growth-factor", type=float, default=beam.DEFAULT_GROWTH_FACTOR)
    beam_p.add_argument("--tol", type=float, default=hill.DEFAULT_TOL)
    beam_p.add_argument("--out", default=None, help="trajectory CSV path")
    beam_p.set_defaults(func=_cmd_beam)

    ver_p = add_parser("verify", help="run a named self-check suite")
    ver_p.add_argument("suite", choices=[*verify.SUITES, "all"])
    ver_p.set_defaults(func=_cmd_verify)

    de_p = add_parser("duffing-eval", help="tabulate a closed-form Duffing solution")
    de_p.add_argument("--delta", type=float, required=True)
    de_p.add_argument("--omega", type=float, default=1.0)
    de_p.add_argument("--t", required=True, metavar="LO:HI:COUNT")
    de_p.add_argument("--out", default=None)
    de_p.set_defaults(func=_cmd_duffing_eval)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
