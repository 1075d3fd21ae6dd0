"""Command line entry point: ``wmsncover run`` and ``wmsncover sweep``.

Settings can come from a flat ``key=value`` file (``--config``); flags given
on the command line override the file, which overrides the defaults.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import fields
from pathlib import Path
from typing import Sequence

from .harness import ConfigError, ExperimentConfig, report_csv, run_pipeline, sweep

_FLOAT_KEYS = {"width", "height", "cell_size", "alpha_deg", "beta_deg", "kmax_deg", "zmin", "zmax", "target_eta"}
_INT_KEYS = {"nodes", "seed"}
_LIST_KEYS = {"seeds", "nodes_list"}


def read_config_file(path: str | Path) -> dict[str, object]:
    """Parse ``key=value`` lines; ``#`` starts a comment, dashes and underscores are interchangeable."""
    out: dict[str, object] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        out[key] = _coerce(key, value, f"{path}:{lineno}")
    return out


def _coerce(key: str, value: str, where: str) -> object:
    try:
        if key in _FLOAT_KEYS:
            return None if value.lower() in ("", "none", "post-tilt") else float(value)
        if key in _INT_KEYS:
            if key == "nodes" and ("," in value or " " in value):
                return [int(v) for v in value.replace(",", " ").split()]
            return int(value, 0)
        if key in _LIST_KEYS:
            return [int(v) for v in value.replace(",", " ").split()]
        if key == "literal_table1":
            return value.lower() in ("1", "true", "yes", "on")
        if key in ("predicate", "out"):
            return value
    except ValueError as exc:
        raise ConfigError(f"{where}: bad value for {key}: {value!r}") from exc
    raise ConfigError(f"{where}: unknown key {key!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wmsncover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="key=value settings file")
        p.add_argument("--width", type=float)
        p.add_argument("--height", type=float)
        p.add_argument("--cell-size", type=float)
        p.add_argument("--alpha-deg", type=float, help="horizontal FOV half-angle")
        p.add_argument("--beta-deg", type=float, help="vertical FOV half-angle")
        p.add_argument("--kmax-deg", type=float, help="maximum tilt")
        p.add_argument("--zmin", type=float)
        p.add_argument("--zmax", type=float)
        p.add_argument("--target-eta", type=float, help="set-cover target (default: post-tilt coverage)")
        p.add_argument("--predicate", choices=["quad", "annular"])
        p.add_argument(
            "--literal-table1",
            action="store_true",
            default=None,
            help="read the tabulated 45/60 degree angles as half-angles (rejected by validation)",
        )
        p.add_argument("--out", help="output directory")

    run = sub.add_parser("run", help="single pipeline run")
    common(run)
    run.add_argument("--nodes", type=int)
    run.add_argument("--seed", type=int)

    sw = sub.add_parser("sweep", help="pipeline over several seeds and node counts")
    common(sw)
    sw.add_argument("--nodes", type=int, nargs="+")
    sw.add_argument("--seeds", type=int, nargs="+")
    return parser


def resolve(args: argparse.Namespace) -> tuple[ExperimentConfig, dict[str, object]]:
    settings: dict[str, object] = {}
    if args.config:
        settings.update(read_config_file(args.config))
    for key, value in vars(args).items():
        if key in ("command", "config") or value is None:
            continue
        settings[key] = value

    extra = {k: settings.pop(k) for k in ("seeds", "nodes_list", "literal_table1") if k in settings}
    nodes = settings.get("nodes")
    if isinstance(nodes, list):
        extra["nodes_list"] = nodes
        settings["nodes"] = nodes[0]

    names = {f.name for f in fields(ExperimentConfig)}
    unknown = set(settings) - names
    if unknown:
        raise ConfigError(f"unknown settings: {sorted(unknown)}")
    if extra.get("literal_table1"):
        return ExperimentConfig.literal_table1(**settings), extra
    return ExperimentConfig(**settings), extra


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config, extra = resolve(args)
    except ConfigError as exc:
        print(f"wmsncover: invalid configuration: {exc}", file=sys.stderr)
        return 2

    if args.command == "run":
        result = run_pipeline(config)
        sys.stdout.write(report_csv(result.report))
    else:
        seeds = extra.get("seeds") or [config.seed]
        counts = extra.get("nodes_list") or [config.nodes]
        table, _ = sweep(config, seeds, counts)
        sys.stdout.write(table)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
