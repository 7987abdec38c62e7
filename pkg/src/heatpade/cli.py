"""Command-line front end for reproducible experiments and plot-data emission.

Every output file embeds a run manifest (subcommand, options, seed,
artifact version): as ``#`` comment lines preceding the header row in CSV
output, or under a ``manifest`` key in JSON output.  Given the manifest,
every subcommand is deterministic.

Exit codes: 0 on success, 2 on usage errors, 1 on numeric failures with a
machine-readable JSON error record on stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .disk_exact import survival_disk, tau_disk
from .errors import HeatPadeError, UnsupportedOrder
from .geometry import Disk, curve_from_json, curve_to_json
from .heat_content import (
    ExpansionMode,
    sigma_curvature,
    sigma_savo,
    small_time_expansion,
    small_time_survival,
    tau_large_s_series,
)
from .mc_oracle import McConfig, simulate_survival
from .pade import ladder
from .series import j0_zeros, maclaurin_tau_disk


class UsageError(Exception):
    pass


def _floats(text: str):
    try:
        return [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"expected a comma-separated number list, got {text!r}") from exc


def _ints(text: str):
    vals = _floats(text)
    if any(v != int(v) for v in vals):
        raise UsageError(f"expected integers, got {text!r}")
    return [int(v) for v in vals]


def _manifest(args, **extra):
    skip = {"func", "out", "subcommand"}
    opts = {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}
    opts.update(extra)
    return {
        "subcommand": args.subcommand,
        "version": __version__,
        "out": getattr(args, "out", None),
        "options": opts,
    }


def _open_out(path):
    return open(path, "w", newline="") if path else sys.stdout


def _write_csv(path, manifest, header, rows):
    fh = _open_out(path)
    try:
        for key, value in sorted(manifest["options"].items()):
            fh.write(f"# {key}={value}\n")
        fh.write(f"# subcommand={manifest['subcommand']} version={manifest['version']}\n")
        writer = csv.writer(fh)
        writer.writerow(header)

        def cell(v):
            if v is None:
                return ""
            if isinstance(v, (str, int)):
                return v
            return repr(float(v))

        for row in rows:
            writer.writerow([cell(v) for v in row])
    finally:
        if fh is not sys.stdout:
            fh.close()


def _write_json(path, manifest, payload):
    fh = _open_out(path)
    try:
        json.dump({"manifest": manifest, **payload}, fh, indent=2)
        fh.write("\n")
    finally:
        if fh is not sys.stdout:
            fh.close()


def _load_curve(args):
    try:
        return curve_from_json(args.shape)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad shape specification: {exc}") from exc


def _solution_record(sol):
    d = sol.small_s_coeffs
    return {
        "n": sol.n,
        "p": list(sol.approximant.p),
        "q": list(sol.approximant.q),
        "residual_norm": sol.residual_norm,
        "poles": [[z.real, z.imag] for z in sol.poles],
        "closest_pole": [sol.closest_pole.real, sol.closest_pole.imag],
        "lambda1": sol.lambda1,
        "d": {"d0": d[0], "d2": d[1], "d4": d[2], "d6": d[3]},
    }


def cmd_coeffs(args):
    curve = _load_curve(args)
    rows = []
    for j in range(1, args.j_max + 1):
        exact = sigma_savo(curve, j) if j <= 6 else None
        rows.append((j, sigma_curvature(curve, j), exact))
    manifest = _manifest(args, shape=json.dumps(curve_to_json(curve)))
    _write_csv(args.out, manifest, ["j", "sigma_curvature", "sigma_exact"], rows)
    return 0


def cmd_survival(args):
    curve = _load_curve(args)
    times = _floats(args.times)
    method = args.method
    if method == "auto":
        method = "exact" if isinstance(curve, Disk) else "expansion"
    if method == "exact" and not isinstance(curve, Disk):
        raise UsageError("exact survival curves are available for disks only")
    if method == "exact":
        rows = [(t, survival_disk(t, curve.R) if t > 0 else 1.0) for t in times]
    else:
        exp = small_time_expansion(curve, args.j_max, args.mode)
        rows = [(t, small_time_survival(exp, t)) for t in times]
    manifest = _manifest(args, shape=json.dumps(curve_to_json(curve)), method=method)
    _write_csv(args.out, manifest, ["t", "S"], rows)
    return 0


def cmd_tau(args):
    curve = _load_curve(args)
    s_values = _floats(args.s)
    if any(s <= 0 for s in s_values):
        raise UsageError("Laplace variable values must be positive")
    method = args.method
    if method == "auto":
        method = "exact" if isinstance(curve, Disk) else "expansion"
    if method == "exact" and not isinstance(curve, Disk):
        raise UsageError("exact Laplace transforms are available for disks only")
    if method == "exact":
        rows = [(s, tau_disk(s, curve.R)) for s in s_values]
    else:
        c = tau_large_s_series(curve, args.j_max, args.mode)
        rows = [(s, 1.0 / s**2 + sum(cj / s ** (j + 2) for j, cj in enumerate(c.c, start=1))) for s in s_values]
    manifest = _manifest(args, shape=json.dumps(curve_to_json(curve)), method=method)
    _write_csv(args.out, manifest, ["s", "tau"], rows)
    return 0


def cmd_pade(args):
    curve = _load_curve(args)
    c = tau_large_s_series(curve, args.n + 2, args.mode)
    sol = ladder(c, args.n, seed=args.seed, n_multistart=args.multistarts)[-1]
    manifest = _manifest(args, shape=json.dumps(curve_to_json(curve)))
    _write_json(args.out, manifest, {"solution": _solution_record(sol)})
    return 0


def cmd_lambda1(args):
    curve = _load_curve(args)
    c = tau_large_s_series(curve, args.n_max + 2, args.mode)
    sols = ladder(c, args.n_max, seed=args.seed, n_multistart=args.multistarts)
    rows = [
        (sol.n, sol.closest_pole.imag, sol.closest_pole.real, sol.lambda1) for sol in sols
    ]
    manifest = _manifest(args, shape=json.dumps(curve_to_json(curve)))
    _write_csv(args.out, manifest, ["n", "im_s", "re_s", "lambda1"], rows)
    return 0


def _sweep_cell(task):
    b, eps, n_list, mode, seed, multistarts = task
    curve = Disk(R=b) if eps == 0.0 else curve_from_json({"kind": "ellipse", "b": b, "eps": eps})
    c = tau_large_s_series(curve, max(n_list) + 2, mode)
    sols = ladder(c, max(n_list), seed=seed, n_multistart=multistarts)
    return [
        (eps, sol.n, sol.lambda1, sol.closest_pole.imag, sol.closest_pole.real)
        for sol in sols
        if sol.n in n_list
    ]


def _worker_cap(n_cells):
    cap = os.environ.get("HEATPADE_THREADS")
    cap = int(cap) if cap else os.cpu_count() or 1
    return max(1, min(cap, n_cells))


def cmd_sweep(args):
    eps_list = sorted(set(_floats(args.eps)))
    n_list = sorted(set(_ints(args.n)))
    if any(not 0.0 <= e < 1.0 for e in eps_list):
        raise UsageError("eccentricities must lie in [0, 1)")
    if any(n < 1 for n in n_list):
        raise UsageError("orders must be >= 1")
    mode = ExpansionMode(args.mode)
    if mode is ExpansionMode.SAVO_EXACT and max(n_list) > 4:
        raise UnsupportedOrder("exact-coefficient mode supports n <= 4 (series order n+2 <= 6)")
    tasks = [(args.b, e, n_list, mode.value, args.seed, args.multistarts) for e in eps_list]
    workers = _worker_cap(len(tasks))
    if workers == 1:
        results = [_sweep_cell(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_cell, tasks))
    rows = sorted(r for cell in results for r in cell)
    manifest = _manifest(args)
    _write_csv(args.out, manifest, ["eps", "n", "lambda1", "im_s", "re_s"], rows)
    return 0


def cmd_table1(args):
    c = tau_large_s_series(Disk(), args.n_max + 2)
    sols = ladder(c, args.n_max, seed=args.seed, n_multistart=args.multistarts)
    rows = []
    for sol in sols:
        d = sol.small_s_coeffs
        rows.append((f"[{sol.n}/{sol.n + 2}]", d[0], d[1], d[2], d[3], sol.closest_pole.imag))
    d_exact = [float(v) for v in maclaurin_tau_disk(1, 3)]
    rows.append(("exact", *d_exact, j0_zeros(1)[0]))
    manifest = _manifest(args)
    _write_csv(args.out, manifest, ["pade", "d0", "d2", "d4", "d6", "im_s"], rows)
    return 0


def cmd_mc(args):
    curve = _load_curve(args)
    cfg = McConfig(
        walkers=args.walkers, dt=args.dt, t_grid=tuple(_floats(args.times)), seed=args.seed
    )
    rows = simulate_survival(curve, cfg)
    manifest = _manifest(args, shape=json.dumps(curve_to_json(curve)))
    _write_csv(args.out, manifest, ["t", "S_hat", "stderr"], rows)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="heatpade",
        description="Survival-probability expansions and lowest-eigenvalue estimates "
        "for star-shaped plane domains.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--out", help="output file (default: stdout)")
        return p

    p = add("coeffs", cmd_coeffs, "small-time expansion coefficients for a shape")
    p.add_argument("--shape", required=True, help="shape JSON (path or inline)")
    p.add_argument("--j-max", type=int, default=6)

    for name, func in (("survival", cmd_survival), ("tau", cmd_tau)):
        p = add(name, func, f"sampled {name} curve (disk exact or truncated expansion)")
        p.add_argument("--shape", required=True)
        p.add_argument("--times" if name == "survival" else "--s", required=True)
        p.add_argument("--method", choices=("auto", "exact", "expansion"), default="auto")
        p.add_argument("--j-max", type=int, default=5)
        p.add_argument("--mode", choices=("curvature", "savo"), default="curvature")

    p = add("pade", cmd_pade, "one rational-interpolation fit at a given order")
    p.add_argument("--shape", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("curvature", "savo"), default="curvature")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--multistarts", type=int, default=200)

    p = add("lambda1", cmd_lambda1, "pole trajectory and lambda_1 estimates for n = 1..N")
    p.add_argument("--shape", required=True)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--mode", choices=("curvature", "savo"), default="curvature")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--multistarts", type=int, default=200)

    p = add("sweep", cmd_sweep, "lambda_1 over an ellipse eccentricity grid")
    p.add_argument("--eps", required=True, help="comma-separated eccentricities")
    p.add_argument("--n", required=True, help="comma-separated orders")
    p.add_argument("--b", type=float, default=1.0, help="minor semiaxis")
    p.add_argument("--mode", choices=("curvature", "savo"), default="curvature")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--multistarts", type=int, default=200)

    p = add("table1", cmd_table1, "disk small-s coefficients and pole imaginary parts by order")
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--multistarts", type=int, default=200)

    p = add("mc", cmd_mc, "Monte-Carlo survival curve")
    p.add_argument("--shape", required=True)
    p.add_argument("--walkers", type=int, default=10000)
    p.add_argument("--dt", type=float, default=1e-4)
    p.add_argument("--times", required=True)
    p.add_argument("--seed", type=int, default=1)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HeatPadeError as exc:
        record = {"error": type(exc).__name__, "message": str(exc), "subcommand": args.subcommand}
        print(json.dumps(record), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
