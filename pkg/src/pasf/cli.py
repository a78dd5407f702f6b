"""Command-line surface.

Subcommands: design-iir, design-fir, complement, bode, separate, kfpasf,
scenario. Exit codes: 0 success, 1 validation failure, 2 runtime failure.
Errors print one machine-parsable line: ``error: <category>: <message>``.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import design as dsn
from . import response as rsp
from .csvio import export_csv, read_csv
from .errors import (
    DegenerateDesignError,
    InvalidArgumentError,
    OutOfBandError,
    PasfError,
)
from .runtime import PasfState
from .scenario_io import load_scenario
from .scenarios import built_in, run_estimation, run_scenario


def _spec_from_args(args) -> dsn.SeparationSpec:
    return dsn.SeparationSpec(args.rho_tilde, args.period, args.sampling_time)


def _add_spec_args(p):
    p.add_argument("--rho-tilde", type=float, required=True,
                   help="separation frequency [rad/s]")
    p.add_argument("--period", type=int, required=True,
                   help="target period [samples]")
    p.add_argument("--sampling-time", type=float, required=True,
                   help="sampling time T [s]")


def _write_pair(periodic, aperiodic, out_dir, stem):
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for tag, coeffs in (("p", periodic), ("a", aperiodic)):
        path = os.path.join(out_dir, f"{stem}_{tag}.txt")
        dsn.save_coefficients(coeffs, path)
        paths.append(path)
    return paths


def _cmd_design_iir(args) -> int:
    spec = _spec_from_args(args)
    p, a = dsn.design_iir(spec, args.order,
                          allow_out_of_band=args.allow_out_of_band)
    paths = _write_pair(p, a, args.out_dir, f"iir{args.order}")
    rep = dsn.check_stability(p)
    print(f"wrote {paths[0]} and {paths[1]}")
    print(f"stable: {rep.stable} (max pole magnitude {rep.max_root_magnitude:.6g})")
    return 0


def _cmd_design_fir(args) -> int:
    spec = _spec_from_args(args)
    p, a = dsn.design_fir_equiripple(
        spec, args.order,
        passband_edge=args.passband_edge,
        stopband_edge=args.stopband_edge,
        weight_ratio=args.weight_ratio,
    )
    paths = _write_pair(p, a, args.out_dir, f"fir{args.order}")
    print(f"wrote {paths[0]} and {paths[1]}")
    return 0


def _cmd_complement(args) -> int:
    coeffs = dsn.load_coefficients(args.coeffs)
    comp = dsn.make_complementary(coeffs)
    os.makedirs(args.out_dir, exist_ok=True)
    path = args.out or os.path.join(args.out_dir, "complement.txt")
    dsn.save_coefficients(comp, path)
    print(f"wrote {path}")
    return 0


def _cmd_bode(args) -> int:
    coeffs = dsn.load_coefficients(args.coeffs)
    grid = rsp.default_grid(coeffs, n_points=args.points,
                            omega_min=args.omega_min,
                            omega_max=args.omega_max)
    table = rsp.bode_table(coeffs, grid)
    os.makedirs(args.out_dir, exist_ok=True)
    path = args.out or os.path.join(args.out_dir, "bode.csv")
    export_csv(path, ["omega_rad_s", "gain_db", "phase_deg"], table.rows())
    print(f"wrote {path} ({len(table.omega)} rows)")
    return 0


def _cmd_separate(args) -> int:
    p = dsn.load_coefficients(args.coeffs_p)
    a = dsn.load_coefficients(args.coeffs_a)
    header, data = read_csv(args.input)
    if len(header) < 2 or header[0] != "t":
        raise InvalidArgumentError(
            f"input CSV must have header t,x; got {header}"
        )
    state = PasfState(p, a)
    rows = []
    for t, x in data[:, :2]:
        xp, xa = state.step(x)
        rows.append((int(t), x, xp, xa))
    os.makedirs(args.out_dir, exist_ok=True)
    path = args.out or os.path.join(args.out_dir, "separated.csv")
    export_csv(path, ["t", "x", "xp", "xa"], rows)
    print(f"wrote {path} ({len(rows)} rows)")
    return 0


def _load_scenario_arg(name_or_path, seed):
    if os.path.isfile(name_or_path):
        return load_scenario(name_or_path, seed)
    return built_in(name_or_path, seed)


def _cmd_kfpasf(args) -> int:
    scn = _load_scenario_arg(args.scenario, args.seed)
    if scn.kind not in ("estimation", "control"):
        raise InvalidArgumentError(
            f"kfpasf needs an estimation or control scenario, got {scn.kind}"
        )
    run = run_estimation(scn, scn.filters[0], args.seed)
    n = run.x_upd.shape[1]
    header = (["t", "y"]
              + [f"xhat_{i+1}" for i in range(n)]
              + [f"xp_hat_{i+1}" for i in range(n)]
              + [f"xa_hat_{i+1}" for i in range(n)]
              + ["trP"])
    rows = (
        [int(run.t[i]), run.y[i], *run.x_upd[i], *run.xp_upd[i],
         *run.xa_upd[i], run.tr_p[i]]
        for i in range(len(run.t))
    )
    os.makedirs(args.out_dir, exist_ok=True)
    path = args.out or os.path.join(args.out_dir, f"{scn.name}_kfpasf.csv")
    export_csv(path, header, rows)
    print(f"wrote {path}")
    return 0


def _cmd_scenario(args) -> int:
    summaries = []
    name = None
    for replica in range(args.replicas):
        seed = args.seed + replica
        scn = _load_scenario_arg(args.name, seed)
        name = scn.name
        out_dir = (args.out_dir if args.replicas == 1
                   else os.path.join(args.out_dir, f"replica{replica:03d}"))
        outputs = run_scenario(scn, seed=seed, out_dir=out_dir,
                               plot_script=args.plot_script)
        for f in outputs["files"]:
            print(f"wrote {f}")
        summaries.append((replica, seed, _replica_summary(scn, outputs)))
    if args.replicas > 1:
        header = ["replica", "seed"] + list(summaries[0][2])
        rows = [[rep, seed, *vals.values()] for rep, seed, vals in summaries]
        path = os.path.join(args.out_dir, f"{name}_replicas.csv")
        export_csv(path, header, rows)
        print(f"wrote {path}")
    return 0


def _replica_summary(scn, outputs) -> dict:
    """Per-replica scalar summaries, merged across seeds in seed order."""
    summary = {}
    for label, run in outputs["results"].items():
        if label == "interference":
            continue
        if hasattr(run, "x_upd"):
            err = run.x_true[:, 0] - run.x_upd[:, 0]
            summary[f"{label}_rms_err_1"] = float(np.sqrt(np.mean(err**2)))
            summary[f"{label}_trP_final"] = float(run.tr_p[-1])
        else:
            err_p = run.xp - run.truth_p
            summary[f"{label}_rms_sep_err"] = float(np.sqrt(np.mean(err_p**2)))
            summary[f"{label}_rms_interference"] = float(
                np.sqrt(np.mean(run.interference**2)))
    return summary


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pasf",
        description="Periodic/aperiodic separation filters, comb baselines, "
                    "and a separation-aware Kalman estimator.",
    )
    parser.add_argument("--seed", type=int, default=0, help="base random seed")
    parser.add_argument("--out-dir", default=".", help="output directory")
    parser.add_argument("--plot-script", default=True,
                        action=argparse.BooleanOptionalAction,
                        help="emit a gnuplot script with scenario outputs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("design-iir", help="bilinear IIR pair")
    _add_spec_args(p)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--allow-out-of-band", action="store_true",
                   help="permit rho_tilde*period*T above pi")
    p.set_defaults(func=_cmd_design_iir)

    p = sub.add_parser("design-fir", help="equiripple FIR pair")
    _add_spec_args(p)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--passband-edge", type=float, default=None,
                   help="lifted passband edge [rad/sample], default rho")
    p.add_argument("--stopband-edge", type=float, default=None,
                   help="lifted stopband edge [rad/sample], default min(pi, 3*rho)")
    p.add_argument("--weight-ratio", type=float, default=1.0)
    p.set_defaults(func=_cmd_design_fir)

    p = sub.add_parser("complement", help="complementary aperiodic-pass filter")
    p.add_argument("--coeffs", required=True, help="periodic-pass coefficient file")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_complement)

    p = sub.add_parser("bode", help="frequency response table")
    p.add_argument("--coeffs", required=True)
    p.add_argument("--points", type=int, default=2000)
    p.add_argument("--omega-min", type=float, default=1e-3)
    p.add_argument("--omega-max", type=float, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_bode)

    p = sub.add_parser("separate", help="stream a t,x CSV through a filter pair")
    p.add_argument("--coeffs-p", required=True)
    p.add_argument("--coeffs-a", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_separate)

    p = sub.add_parser("kfpasf", help="run the estimator on a scenario")
    p.add_argument("scenario", help="built-in name or scenario file path")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_kfpasf)

    p = sub.add_parser("scenario", help="run a full scenario with CSV outputs")
    p.add_argument("name", help="built-in name or scenario file path")
    p.add_argument("--replicas", type=int, default=1,
                   help="independent seeded runs (seed, seed+1, ...)")
    p.set_defaults(func=_cmd_scenario)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidArgumentError, OutOfBandError, DegenerateDesignError) as exc:
        print(f"error: validation: {exc}", file=sys.stderr)
        return 1
    except PasfError as exc:
        print(f"error: runtime: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
