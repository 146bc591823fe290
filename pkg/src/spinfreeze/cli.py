"""Command-line surface: list scenarios, run them, emit CSV/SVG reports.

Exit codes: 0 success, 1 invalid configuration, 2 propagation failure,
3 I/O failure. A run writes ``<name>_populations.csv`` (plus optional
``<name>_discord.csv`` and ``<name>.svg``) and finishes with
``manifest.json``; a run is complete iff the manifest exists.
"""

import argparse
import json
import os
import sys
import time
from dataclasses import replace

import numpy as np

from . import __version__
from .config import ConfigError, parse_config
from .dynamics import TimeSeries
from .experiments import (
    PRESET_DESCRIPTIONS,
    PRESET_NAMES,
    ScenarioConfig,
    ScenarioError,
    preset,
    run_scenario,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_PROPAGATION = 2
EXIT_IO = 3


def _format(x: float) -> str:
    return f"{x:.17e}"


def emit_csv(series: TimeSeries, path: str, include_nuclear: bool = False) -> None:
    """Write the recorded trajectory as CSV, full-precision scientific."""
    labels = [f"P_{lab}" for lab in series.basis_labels]
    header = ["t_us"] + labels
    columns = [series.times] + [series.populations[:, j] for j in range(len(labels))]
    if include_nuclear:
        marg = series.nuclear_marginals()
        header += ["P_gN", "P_eN"]
        columns += [marg[:, 0], marg[:, 1]]
    header += ["trace_err", "min_eig"]
    columns += [series.trace_err, series.min_eig]

    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in np.column_stack(columns):
            fh.write(",".join(_format(x) for x in row) + "\n")


def emit_discord_csv(series: TimeSeries, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("t_us,discord\n")
        for t, d in zip(series.discord_times, series.discord):
            fh.write(f"{_format(t)},{_format(d)}\n")


def cmd_list(out=None) -> int:
    out = out if out is not None else sys.stdout
    for name in PRESET_NAMES:
        out.write(f"{name:<16}{PRESET_DESCRIPTIONS[name]}\n")
    return EXIT_OK


def _resolve_config(args) -> ScenarioConfig:
    if args.config and args.preset:
        raise ConfigError("give either a preset name or --config, not both")
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        return parse_config(text)
    if args.preset:
        try:
            return preset(args.preset)
        except ScenarioError as exc:
            raise ConfigError(str(exc)) from exc
    raise ConfigError(
        f"nothing to run; give a preset name ({', '.join(PRESET_NAMES)}) or --config FILE"
    )


def cmd_run(args) -> int:
    try:
        cfg = _resolve_config(args)
        if args.seed is not None:
            cfg = replace(cfg, seed=args.seed)
        if args.frame is not None:
            cfg = replace(cfg, frame=args.frame)
        if args.discord and "discord" not in cfg.outputs:
            cfg = replace(cfg, outputs=cfg.outputs + ("discord",))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    out_dir = args.out or os.environ.get("SPINFREEZE_OUT") or "."
    started = time.monotonic()
    try:
        series, metrics = run_scenario(cfg)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PROPAGATION

    try:
        os.makedirs(out_dir, exist_ok=True)
        files = []
        pop_path = os.path.join(out_dir, f"{cfg.name}_populations.csv")
        emit_csv(series, pop_path, include_nuclear="nuclear_marginal" in cfg.outputs)
        files.append(os.path.basename(pop_path))
        if series.discord is not None:
            d_path = os.path.join(out_dir, f"{cfg.name}_discord.csv")
            emit_discord_csv(series, d_path)
            files.append(os.path.basename(d_path))
        if args.svg:
            from .plotting import render_timeseries

            svg_path = os.path.join(out_dir, f"{cfg.name}.svg")
            render_timeseries(series, svg_path, title=cfg.name)
            files.append(os.path.basename(svg_path))

        manifest = {
            "scenario": cfg.name,
            "config_path": args.config,
            "out_dir": os.path.abspath(out_dir),
            "seed": cfg.seed,
            "frame": cfg.frame,
            "files": files,
            "wall_clock_s": round(time.monotonic() - started, 3),
            "version": __version__,
        }
        with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO

    if metrics is not None:
        print(
            f"{cfg.name}: max_leakage = {metrics.max_leakage:.6g}, "
            f"mean_leakage = {metrics.mean_leakage:.6g} over {metrics.time_window:g} us "
            f"({metrics.mode})"
        )
    if series.discord is not None:
        print(f"{cfg.name}: max discord = {float(series.discord.max()):.6g}")
    print(f"wrote {len(files)} file(s) + manifest.json to {os.path.abspath(out_dir)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinfreeze",
        description="Simulate driven electron-nuclear spin dynamics and freezing scenarios.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("list", help="list scenario presets")
    run = sub.add_parser("run", help="run one scenario")
    run.add_argument("preset", nargs="?", help="preset name (see 'list')")
    run.add_argument("--config", help="scenario configuration file")
    run.add_argument("--out", help="output directory (default: $SPINFREEZE_OUT or '.')")
    run.add_argument("--seed", type=int, help="override the noise seed")
    run.add_argument("--frame", choices=("lab", "rotating"), help="override the frame")
    run.add_argument("--discord", action="store_true", help="also compute the discord trace")
    run.add_argument("--svg", action="store_true", help="render an SVG figure")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list":
        return cmd_list()
    return cmd_run(args)


if __name__ == "__main__":
    sys.exit(main())
