"""Command-line pipeline: simulate -> baseband -> decompose -> analyze -> image.

Exit codes: 0 success, 1 configuration error, 2 physics/gate error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import analysis, baseband, eta, imaging, matrixio, rpca, simulate
from .errors import ConfigError, NumericalError, PhysicsError
from .scenario import (Scenario, Target, load_scenario, scenario_hash,
                       serialize_scenario)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_PHYSICS = 2
EXIT_NUMERICAL = 3

SWEEP_SPEEDS = (1.5, 2.4, 3.8, 6.0, 9.5, 15.0)


def _load(args) -> Scenario:
    if args.config:
        return load_scenario(args.config)
    if args.regime:
        ref = resources.files("sarlrs").joinpath(f"data/{args.regime}.json")
        if not ref.is_file():
            raise ConfigError(f"unknown regime '{args.regime}'")
        with resources.as_file(ref) as path:
            return load_scenario(path)
    raise ConfigError("either --config or --regime is required")


def _meta(sc: Scenario, provenance: str, args) -> dict:
    return {
        "scenario_hash": scenario_hash(sc),
        "regime": args.regime or "custom",
        "provenance": provenance,
    }


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _first_mover(sc: Scenario) -> Target:
    for t in sc.targets:
        if not t.stationary:
            return t
    raise ConfigError("scenario has no moving target")


def _resolve_eta(mode: str, sc: Scenario, shape) -> tuple[float, str]:
    if mode == "conventional":
        return eta.conventional_eta(*shape), "conventional"
    if mode == "optimal":
        params = eta.ApertureParams.from_scenario(sc, _first_mover(sc).velocity)
        return eta.eta_bounds_baseband(params).eta_star, "analytic-optimal"
    try:
        value = float(mode)
    except ValueError:
        raise ConfigError(f"--eta must be 'conventional', 'optimal', or a number, got '{mode}'")
    if value <= 0:
        raise ConfigError("--eta value must be positive")
    return value, "explicit"


def _baseband_matrix(sc: Scenario) -> np.ndarray:
    D = simulate.synthesize_downramped(sc)
    t = simulate.fast_times(sc)
    return baseband.to_baseband(D, sc.pulse, sc.sampling.delta_t, t0=t[0])


def _decompose(sc: Scenario, args):
    DB = _baseband_matrix(sc)
    eta_value, eta_mode = _resolve_eta(args.eta, sc, DB.shape)
    config = rpca.RpcaConfig(eta="conventional" if eta_mode == "conventional" else eta_value)
    dec = rpca.decompose_windowed(DB, args.windows, config)
    return DB, dec, eta_value, eta_mode


def _write_pgm(path, mag: np.ndarray) -> None:
    peak = mag.max()
    scaled = (mag / peak * 65535.0 if peak > 0 else mag).astype(">u2")
    with open(path, "wb") as fh:
        fh.write(f"P5\n{mag.shape[1]} {mag.shape[0]}\n65535\n".encode())
        fh.write(scaled.tobytes())


def _write_image(out: Path, name: str, img: imaging.KmImage) -> None:
    mag = img.magnitude()
    _write_pgm(out / f"{name}.pgm", mag)
    sidecar = {
        "source": img.source,
        "center_m": list(img.grid.center),
        "extent_m": [img.grid.extent_x, img.grid.extent_y],
        "pixels": [img.grid.nx, img.grid.ny],
        "dynamic_range": float(mag.max() / np.median(mag)) if np.median(mag) > 0 else None,
        "out_of_gate": img.out_of_gate,
        "peaks": imaging.peak_report(img),
    }
    (out / f"{name}.json").write_text(json.dumps(sidecar, indent=2) + "\n")


def _grid(args, sc: Scenario) -> imaging.ImagingGrid:
    return imaging.ImagingGrid(center=sc.reference_point,
                               extent_x=args.grid_extent, extent_y=args.grid_extent,
                               nx=args.grid_pixels, ny=args.grid_pixels)


def cmd_simulate(args) -> int:
    sc = _load(args)
    out = _outdir(args)
    D = simulate.synthesize_downramped(sc)
    matrixio.write_matrix(out / "D.sarm", D, _meta(sc, "simulate", args))
    (out / "scenario.json").write_text(serialize_scenario(sc))
    return EXIT_OK


def cmd_baseband(args) -> int:
    sc = _load(args)
    out = _outdir(args)
    matrixio.write_matrix(out / "DB.sarm", _baseband_matrix(sc), _meta(sc, "baseband", args))
    return EXIT_OK


def cmd_decompose(args) -> int:
    sc = _load(args)
    out = _outdir(args)
    _, dec, eta_value, eta_mode = _decompose(sc, args)
    matrixio.write_matrix(out / "L.sarm", dec.L, _meta(sc, "decompose:L", args))
    matrixio.write_matrix(out / "S.sarm", dec.S, _meta(sc, "decompose:S", args))
    report = {
        "eta": eta_value, "eta_mode": eta_mode, "windows": args.windows,
        "iterations": dec.iterations, "residual": dec.residual,
        "rank_L": dec.rank, "nnz_S": dec.sparse_count, "converged": dec.converged,
    }
    (out / "rpca_report.json").write_text(json.dumps(report, indent=2) + "\n")
    if not dec.converged:
        raise NumericalError("RPCA did not converge within the iteration cap")
    return EXIT_OK


def cmd_eta(args) -> int:
    sc = _load(args)
    out = _outdir(args)
    params = eta.ApertureParams.from_scenario(sc, _first_mover(sc).velocity)
    report = {
        "baseband": eta.eta_bounds_baseband(params).as_dict(),
        "original": eta.eta_bounds_original(params).as_dict(),
        "conventional": eta.conventional_eta(
            sc.platform.pulse_count, simulate.fast_times(sc).size),
    }
    (out / "eta_report.json").write_text(json.dumps(report, indent=2) + "\n")
    print(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_image(args) -> int:
    sc = _load(args)
    out = _outdir(args)
    velocity = [float(x) for x in args.velocity.split(",")] if args.velocity else [0.0, 0.0, 0.0]
    if len(velocity) != 3:
        raise ConfigError("--velocity must be vx,vy,vz")
    grid = _grid(args, sc)
    if args.source == "D":
        data = simulate.synthesize_downramped(sc)
    elif args.source == "DB":
        data = _baseband_matrix(sc)
    else:
        _, dec, _, _ = _decompose(sc, args)
        data = dec.L if args.source == "L" else dec.S
    img = imaging.migrate(data, sc, grid, hypothesis_velocity=velocity, source=args.source)
    _write_image(out, f"image_{args.source}", img)
    if args.csv:
        np.savetxt(out / f"image_{args.source}.csv", img.magnitude(), delimiter=",")
    return EXIT_OK


def cmd_analyze(args) -> int:
    sc = _load(args)
    out = _outdir(args)
    mover = _first_mover(sc)
    direction = mover.velocity / np.linalg.norm(mover.velocity)
    stat_template = next((t for t in sc.targets if t.stationary), None)
    if stat_template is None:
        raise ConfigError("scenario has no stationary target")

    def single(target):
        return sc.with_targets([target])

    D_stat = simulate.synthesize_downramped(single(stat_template))
    DB_stat = simulate.synthesize_baseband_direct(single(stat_template))

    rows = []
    for v in SWEEP_SPEEDS:
        tgt = Target(position=mover.position, velocity=v * direction)
        DB = simulate.synthesize_baseband_direct(single(tgt))
        D = simulate.synthesize_downramped(single(tgt))
        bb = analysis.empirical_eta_bounds(DB_stat, DB)
        orig = analysis.empirical_eta_bounds(D_stat, D)
        sig = np.linalg.svd(DB, compute_uv=False)
        params = eta.ApertureParams.from_scenario(sc, v * direction)
        rows.append({
            "speed_mps": v,
            "nuclear": float(sig.sum()),
            "frobenius": float(np.linalg.norm(sig)),
            "eta_max_empirical_baseband": bb.eta_max,
            "eta_max_empirical_original": orig.eta_max,
            "dynamic_range_baseband": bb.dynamic_range,
            "dynamic_range_original": orig.dynamic_range,
            "eta_star_empirical": np.sqrt(bb.eta_min * bb.eta_max),
            "eta_star_analytic": eta.eta_bounds_baseband(params).eta_star,
        })
    with open(out / "velocity_sweep.csv", "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)

    # eta* sensitivity to the number of stationary targets
    rng = np.random.default_rng(7)
    stat_rows = []
    mover_db = simulate.synthesize_baseband_direct(single(mover))
    emax = analysis.empirical_eta_bounds(DB_stat, mover_db).eta_max
    for count in range(1, 11):
        targets = [Target(position=stat_template.position + np.array([dx, dy, 0.0]),
                          velocity=[0.0, 0.0, 0.0])
                   for dx, dy in rng.uniform(-20, 20, size=(count, 2))]
        DBs = simulate.synthesize_baseband_direct(sc.with_targets(targets))
        emin = analysis.empirical_eta_bounds(DBs, mover_db).eta_min
        stat_rows.append({"stationary_count": count, "eta_min_empirical": emin,
                          "eta_star_empirical": float(np.sqrt(emin * emax))})
    with open(out / "stationary_count_sweep.csv", "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(stat_rows[0]))
        writer.writeheader()
        writer.writerows(stat_rows)

    report = analysis.nuclear_velocity_exponent(
        sc, mover.position, np.geomspace(SWEEP_SPEEDS[0], SWEEP_SPEEDS[0] * 10, 5),
        direction)
    summary = {"beta": report["beta"], "frobenius_slope": report["frobenius_slope"]}
    (out / "analysis_summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    return EXIT_OK


def cmd_pipeline(args) -> int:
    sc = _load(args)
    out = _outdir(args)
    D = simulate.synthesize_downramped(sc)
    matrixio.write_matrix(out / "D.sarm", D, _meta(sc, "simulate", args))
    DB, dec, eta_value, eta_mode = _decompose(sc, args)
    matrixio.write_matrix(out / "DB.sarm", DB, _meta(sc, "baseband", args))
    matrixio.write_matrix(out / "L.sarm", dec.L, _meta(sc, "decompose:L", args))
    matrixio.write_matrix(out / "S.sarm", dec.S, _meta(sc, "decompose:S", args))

    params = eta.ApertureParams.from_scenario(sc, _first_mover(sc).velocity)
    eta_report = {
        "used": {"value": eta_value, "mode": eta_mode, "windows": args.windows},
        "baseband": eta.eta_bounds_baseband(params).as_dict(),
        "original": eta.eta_bounds_original(params).as_dict(),
    }
    (out / "eta_report.json").write_text(json.dumps(eta_report, indent=2) + "\n")

    spec_rows = []
    for name, M in (("D", D), ("DB", DB), ("L", dec.L), ("S", dec.S)):
        sig = np.linalg.svd(M, compute_uv=False)
        for k, s in enumerate(sig[:min(64, sig.size)]):
            spec_rows.append({"matrix": name, "k": k, "sigma": float(s)})
    with open(out / "spectra.csv", "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["matrix", "k", "sigma"])
        writer.writeheader()
        writer.writerows(spec_rows)

    metrics = analysis.separation_metrics(dec, sc)
    (out / "metrics.json").write_text(json.dumps(metrics.as_dict(), indent=2) + "\n")

    grid = _grid(args, sc)
    velocity = _first_mover(sc).velocity
    for name, data, v in (("D", DB, (0, 0, 0)), ("L", dec.L, (0, 0, 0)),
                          ("S", dec.S, velocity)):
        img = imaging.migrate(data, sc, grid, hypothesis_velocity=v, source=name)
        _write_image(out, f"image_{name}", img)

    summary = {
        "scenario_hash": scenario_hash(sc),
        "eta": eta_report["used"],
        "rpca": {"iterations": dec.iterations, "residual": dec.residual,
                 "rank_L": dec.rank, "converged": dec.converged},
        "metrics": metrics.as_dict(),
    }
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sarlrs",
        description="SAR simulation and low-rank plus sparse moving-target separation")
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "simulate": cmd_simulate,
        "baseband": cmd_baseband,
        "decompose": cmd_decompose,
        "eta": cmd_eta,
        "image": cmd_image,
        "analyze": cmd_analyze,
        "pipeline": cmd_pipeline,
    }
    for name, fn in commands.items():
        p = sub.add_parser(name)
        p.add_argument("--config", help="scenario JSON file")
        p.add_argument("--regime", choices=["gotcha", "scaled"],
                       help="built-in scenario to use when --config is absent")
        p.add_argument("--out", default="runs/latest", help="output directory")
        p.add_argument("--eta", default="conventional",
                       help="conventional | optimal | explicit value")
        p.add_argument("--windows", type=int, default=1,
                       help="consecutive slow-time blocks for RPCA")
        if name == "image":
            p.add_argument("--source", choices=["D", "DB", "L", "S"], default="D")
            p.add_argument("--velocity", help="hypothesis velocity vx,vy,vz [m/s]")
            p.add_argument("--csv", action="store_true", help="also dump raw |I| as CSV")
        if name in ("image", "pipeline"):
            p.add_argument("--grid-extent", type=float, default=60.0,
                           help="image half-extent [m]")
            p.add_argument("--grid-pixels", type=int, default=41)
        p.set_defaults(fn=fn)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PhysicsError as exc:
        print(f"physics error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
