"""Command-line entry points.

Subcommands: eigs, sweep, find, scan, stability, table. Physics parameters
come from the YAML config (--config); flags cover only output paths, thread
count and plot emission. Exit codes: 0 success, 1 physics tolerance failure,
2 configuration error, 3 solver failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .basis import ChannelConfig
from .config import RunConfig, load_config
from .eigensolver import eigen_decompose
from .errors import ChargePlaneError, ConfigError, EigensolverError
from .hamiltonian import RotatedHamiltonian
from .output import (
    eigenvalues_to_lines,
    resonances_to_json,
    trajectories_to_csv,
    trajectories_to_svg,
)
from .reference import format_table, run_table
from .resonance import auto_search, refine_resonance, stability_scan
from .trajectory import sweep

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_CONFIG = 2
EXIT_SOLVER = 3


def _write(out_dir: str | None, name: str, text: str):
    if out_dir is None:
        sys.stdout.write(text)
        return
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    (path / name).write_text(text, encoding="utf-8", newline="\n")


def _require(value, what: str):
    if value is None:
        raise ConfigError(f"this command requires {what} in the config")
    return value


def cmd_eigs(cfg: RunConfig, args) -> int:
    energy = _require(cfg.scan.energy, "scan.energy")
    ham = RotatedHamiltonian(cfg.channel, cfg.potential)
    eigenset = eigen_decompose(ham.matrix(energy))
    _write(args.out, "eigenvalues.csv", eigenvalues_to_lines(eigenset.values))
    return EXIT_OK


def cmd_sweep(cfg: RunConfig, args) -> int:
    grid = _require(cfg.scan.grid, "scan.grid")
    trajectories = sweep(cfg.channel, cfg.potential, grid, threads=args.threads)
    _write(args.out, "trajectories.csv", trajectories_to_csv(trajectories))
    if args.svg:
        _write(args.out, "trajectories.svg", trajectories_to_svg(trajectories))
    return EXIT_OK


def cmd_find(cfg: RunConfig, args) -> int:
    guess = _require(cfg.scan.guess, "scan.guess")
    if not cfg.scan.z_targets:
        raise ConfigError("this command requires scan.z_targets in the config")
    results = [
        refine_resonance(guess, target, cfg.channel, cfg.potential)
        for target in cfg.scan.z_targets
    ]
    results.sort(key=lambda r: (r.z_target, r.e_r))
    _write(args.out, "resonances.json", resonances_to_json(results))
    return EXIT_OK


def cmd_scan(cfg: RunConfig, args) -> int:
    grid = _require(cfg.scan.grid, "scan.grid")
    results = auto_search(
        cfg.channel,
        cfg.potential,
        cfg.scan.z_targets,
        im_schedule=cfg.scan.im_schedule,
        re_range=(grid.re_start, grid.re_end),
        steps=grid.steps,
        window=cfg.scan.window,
        threads=args.threads,
    )
    _write(args.out, "resonances.json", resonances_to_json(results))
    return EXIT_OK


def cmd_stability(cfg: RunConfig, args) -> int:
    guess = _require(cfg.scan.guess, "scan.guess")
    if not cfg.scan.z_targets:
        raise ConfigError("this command requires scan.z_targets in the config")
    st = cfg.stability
    lams = st.lambda_values or (cfg.channel.scale,)
    thetas = st.theta_values or (cfg.channel.theta,)
    ns = st.n_values or (cfg.channel.n_basis,)
    results = []
    for target in cfg.scan.z_targets:
        res = refine_resonance(guess, target, cfg.channel, cfg.potential)
        if res.converged:
            report = stability_scan(
                res, lams, thetas, ns, cfg.channel, cfg.potential, tolerance=st.tolerance
            )
            res = dataclasses.replace(res, stability=report)
        results.append(res)
    results.sort(key=lambda r: (r.z_target, r.e_r))
    _write(args.out, "resonances.json", resonances_to_json(results))
    return EXIT_OK


def cmd_table(cfg: RunConfig, args) -> int:
    status = EXIT_OK
    chunks = []
    for table in cfg.table.tables:
        rows = run_table(table, tolerance=cfg.table.tolerance)
        chunks.append(f"== {table} ==\n" + format_table(rows))
        failing = [r for r in rows if not r.ok]
        if failing:
            status = EXIT_TOLERANCE
            for r in failing:
                chunks.append(
                    f"FAIL: Z={r.z:g} l={r.l} expected ({r.ref_e_r:.12g}, {r.ref_gamma:.12g}) "
                    f"got ({r.computed_e_r:.12g}, {r.computed_gamma:.12g})\n"
                )
    _write(args.out, "table.txt", "".join(chunks))
    return status


_COMMANDS = {
    "eigs": cmd_eigs,
    "sweep": cmd_sweep,
    "find": cmd_find,
    "scan": cmd_scan,
    "stability": cmd_stability,
    "table": cmd_table,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chargeplane",
        description="Locate potential-scattering resonances via eigenvalue "
        "trajectories in the complex charge plane.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("eigs", "eigenvalue listing at a single energy"),
        ("sweep", "trajectory CSV (and optional SVG) over an energy grid"),
        ("find", "refine a resonance from a guess"),
        ("scan", "automated search over an Im-E schedule"),
        ("stability", "refine then verify a stability plateau"),
        ("table", "reproduce the built-in benchmark tables"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="YAML config file")
        p.add_argument("--out", default=None, help="output directory (default: stdout)")
        p.add_argument("--threads", type=int, default=1, help="parallelism for sweeps")
        p.add_argument("--svg", action="store_true", help="also emit an SVG plot")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        return _COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except EigensolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except ChargePlaneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
