"""Command-line front end.

Subcommands:

* ``debye``    -- tabulate a Debye/Kratky curve to CSV (optionally a figure),
* ``sample``   -- draw a path ensemble and export it,
* ``validate`` -- Monte Carlo vs analytic form-factor cross-check,
* ``gyration`` -- gyration/end-to-halftime report.

Exit codes: 0 success, 1 computation failure, 2 usage/validation error.
Every file output gets a JSON sidecar echoing the resolved configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConvergenceError, DomainError, FactorizationError, UnsupportedParameterError
from .formfactor import (
    Transform,
    debye_curve,
    form_factor,
    form_factor_mc,
    gyration_relation,
    linear_fbm_gyration_sq,
    write_curve_csv,
    y_from_k,
)
from .process import CircleGrid, ProcessClass, ProcessSpec
from .sampler import SamplingMethod, export_ensemble, sample_process

_FIG_PRESETS = {
    "fig1": {"process": "pfbm", "hursts": [1 / 2, 1 / 3, 1 / 5, 1 / 7], "transform": "linear"},
    "fig2": {"process": "pfbm", "hursts": [1 / 2, 1 / 3, 1 / 4, 1 / 5], "transform": "kratky"},
    "fig3": {"process": "pggbm", "beta": 0.5, "hursts": [1 / 2, 1 / 3, 1 / 5, 1 / 7], "transform": "linear"},
    "fig4": {"process": "pgbm", "hursts": [1 / 2, 1 / 3, 1 / 4, 1 / 5], "transform": "kratky"},
}


def _spec_from_args(args, hurst=None):
    pc = ProcessClass(args.process)
    if pc is ProcessClass.PGGBM and args.beta is None:
        raise DomainError("pggbm requires --beta")
    if pc is not ProcessClass.PGGBM and args.beta is not None:
        raise DomainError(f"--beta is only meaningful for pggbm, not {pc.value}")
    return ProcessSpec(
        pc,
        hurst if hurst is not None else args.hurst,
        getattr(args, "length", 1.0),
        beta=args.beta,
    )


def _sidecar(out_path, subcommand, params):
    meta = {
        "subcommand": subcommand,
        "params": params,
        "seed": params.get("seed"),
        "method": params.get("method"),
        "version": __version__,
        "fallbacks": params.get("fallbacks", []),
    }
    sidecar = Path(str(out_path)).with_suffix(".json")
    with open(sidecar, "w", newline="") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return sidecar


def _y_grid(args):
    if args.points < 2:
        raise DomainError("--points must be >= 2")
    if not (args.ymin >= 0 and args.ymax > args.ymin):
        raise DomainError("need 0 <= ymin < ymax")
    if args.transform in ("loglog", "kratky"):
        lo = args.ymin if args.ymin > 0 else args.ymax / 1e4
        return np.geomspace(lo, args.ymax, args.points)
    return np.linspace(args.ymin, args.ymax, args.points)


def _cmd_debye(args):
    transform = Transform(args.transform)
    if args.preset:
        preset = _FIG_PRESETS[args.preset]
        if args.transform == "linear":
            transform = Transform(preset["transform"])
        beta = preset.get("beta")
        if transform in (Transform.LOGLOG, Transform.KRATKY) and args.ymin == 0.0:
            args.ymin = 0.05
        args.transform = transform.value
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        y = _y_grid(args)
        curves = []
        for h in preset["hursts"]:
            curve = debye_curve(preset["process"], h, beta, y, transform)
            curves.append(curve)
            name = f"{args.preset}_{preset['process']}_H{h:.6g}.csv"
            with open(out_dir / name, "w", newline="") as fh:
                write_curve_csv(curve, fh)
            _sidecar(out_dir / name, "debye", {
                "process": preset["process"], "hurst": h, "beta": beta,
                "ymin": float(y[0]), "ymax": float(y[-1]), "points": args.points,
                "transform": transform.value, "preset": args.preset,
            })
        if args.plot:
            from .plotting import plot_debye_curves

            plot_debye_curves(curves, out_dir / f"{args.preset}.png", transform)
        return 0

    args.transform = transform.value
    spec = _spec_from_args(args)
    y = _y_grid(args)
    curve = debye_curve(spec.process_class, spec.hurst, spec.beta, y, transform)
    params = {
        "process": spec.process_class.value, "hurst": spec.hurst, "beta": spec.beta,
        "ymin": float(y[0]), "ymax": float(y[-1]), "points": args.points,
        "transform": transform.value,
    }
    if args.out == "-":
        write_curve_csv(curve, sys.stdout)
    else:
        with open(args.out, "w", newline="") as fh:
            write_curve_csv(curve, fh)
        _sidecar(args.out, "debye", params)
        if args.plot:
            from .plotting import plot_debye_curves

            plot_debye_curves([curve], Path(args.out).with_suffix(".png"), transform)
    return 0


def _cmd_sample(args):
    if args.grid < 2:
        raise DomainError("--grid must be >= 2")
    if args.paths < 1:
        raise DomainError("--paths must be >= 1")
    spec = _spec_from_args(args)
    grid = CircleGrid(args.grid, args.length)
    ensemble = sample_process(spec, grid, args.paths, args.seed, SamplingMethod(args.method))
    export_ensemble(ensemble, args.out)
    params = {
        "process": spec.process_class.value, "hurst": spec.hurst, "beta": spec.beta,
        "length": args.length, "grid": args.grid, "paths": args.paths,
        "seed": args.seed, "method": ensemble.method.value,
        "fallbacks": ["circulant->cholesky"] if ensemble.circulant_fallback else [],
    }
    _sidecar(args.out, "sample", params)
    return 0


def _validate_rows(spec, grid_n, args, k_values, analytic_hurst):
    grid = CircleGrid(grid_n, args.length)
    ensemble = sample_process(spec, grid, args.paths, args.seed, SamplingMethod(args.method))
    analytic_spec = spec
    if analytic_hurst is not None:
        analytic_spec = ProcessSpec(
            spec.process_class, analytic_hurst, spec.circle_length,
            beta=spec.beta if spec.process_class is ProcessClass.PGGBM else None,
        )
    rows = []
    for k in k_values:
        est, se = form_factor_mc(ensemble, k)
        ana = form_factor(analytic_spec, k)
        z = 0.0 if se == 0.0 else (est - ana) / se
        rows.append({
            "k": k,
            "y": y_from_k(k, analytic_spec.hurst, args.length),
            "analytic": ana,
            "estimate": est,
            "std_error": se,
            "z": z,
        })
    return rows, ensemble


def _cmd_validate(args):
    spec = _spec_from_args(args)
    if args.k:
        k_values = [float(v) for v in args.k.split(",")]
    else:
        y_values = [float(v) for v in (args.y or "0.5,1,2,4").split(",")]
        scale = math.sqrt(2.0) / (args.length / 2.0) ** spec.hurst
        k_values = [y * scale for y in y_values]
    if args.grid < 4:
        raise DomainError("--grid must be >= 4")

    rows, ensemble = _validate_rows(spec, args.grid, args, k_values, args.analytic_hurst)
    coarse_rows, _ = _validate_rows(spec, args.grid // 2, args, k_values, args.analytic_hurst)

    ok = True
    lines = ["k,y,analytic,estimate,std_error,z,refinement_shift,row_ok"]
    for row, coarse in zip(rows, coarse_rows):
        shift = row["estimate"] - coarse["estimate"]
        se = row["std_error"]
        row_ok = abs(row["z"]) <= 4.0 and (se == 0.0 or abs(shift) < se)
        ok = ok and row_ok
        lines.append(
            f"{row['k']:.17g},{row['y']:.17g},{row['analytic']:.17g},"
            f"{row['estimate']:.17g},{se:.17g},{row['z']:.17g},"
            f"{shift:.17g},{str(row_ok).lower()}"
        )
    report = "\n".join(lines) + "\n"
    params = {
        "process": spec.process_class.value, "hurst": spec.hurst, "beta": spec.beta,
        "length": args.length, "grid": args.grid, "paths": args.paths,
        "seed": args.seed, "method": ensemble.method.value,
        "k_values": k_values,
        "fallbacks": ["circulant->cholesky"] if ensemble.circulant_fallback else [],
    }
    if args.out and args.out != "-":
        with open(args.out, "w", newline="") as fh:
            fh.write(report)
        _sidecar(args.out, "validate", params)
        if args.plot:
            from .plotting import plot_validation

            plot_validation(rows, Path(args.out).with_suffix(".png"))
    else:
        sys.stdout.write(report)
    return 0 if ok else 1


def _cmd_gyration(args):
    spec = _spec_from_args(args)
    report = gyration_relation(spec)
    linear_cmp = linear_fbm_gyration_sq(spec.hurst, args.length / 2.0)
    payload = {
        "process": spec.process_class.value,
        "hurst": spec.hurst,
        "beta": spec.beta,
        "length": args.length,
        "r_g_squared": report.r_g_squared,
        "r_e_squared": report.r_e_squared,
        "relation_residual": report.relation_residual,
        "linear_fbm_r_g_squared_at_half_length": linear_cmp,
    }
    if args.json:
        json.dump(payload, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")
    return 0


def _add_process_args(p, with_length=True):
    p.add_argument("--process", required=True, choices=[c.value for c in ProcessClass])
    p.add_argument("--hurst", required=True, type=float)
    p.add_argument("--beta", type=float, default=None)
    if with_length:
        p.add_argument("--length", type=float, default=1.0)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ringbm",
        description="Periodic fractional processes: Debye curves, sampling, validation.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("debye", help="tabulate a Debye/Kratky curve")
    p.add_argument("--process", choices=[c.value for c in ProcessClass])
    p.add_argument("--hurst", type=float)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--ymin", type=float, default=0.0)
    p.add_argument("--ymax", type=float, default=5.0)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--transform", choices=[t.value for t in Transform], default="linear")
    p.add_argument("--preset", choices=sorted(_FIG_PRESETS))
    p.add_argument("--out", required=True)
    p.add_argument("--plot", action="store_true", help="also render a PNG figure")
    p.set_defaults(func=_cmd_debye)

    p = sub.add_parser("sample", help="draw and export a path ensemble")
    _add_process_args(p)
    p.add_argument("--grid", type=int, required=True)
    p.add_argument("--paths", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=[m.value for m in SamplingMethod], default="circulant")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("validate", help="MC vs analytic form-factor cross-check")
    _add_process_args(p)
    p.add_argument("--grid", type=int, default=256)
    p.add_argument("--paths", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=[m.value for m in SamplingMethod], default="circulant")
    p.add_argument("--k", help="comma-separated wavenumbers")
    p.add_argument("--y", help="comma-separated scaled y values (default 0.5,1,2,4)")
    p.add_argument("--out", default="-")
    p.add_argument("--plot", action="store_true")
    p.add_argument("--analytic-hurst", type=float, default=None, help=argparse.SUPPRESS)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("gyration", help="gyration/end-to-halftime report")
    _add_process_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_gyration)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "debye" and not args.preset:
        if args.process is None or args.hurst is None:
            parser.error("debye requires --process and --hurst (or --preset)")
    try:
        return args.func(args)
    except (DomainError, UnsupportedParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceError, FactorizationError) as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
