"""Command-line front end.

Subcommands:
  run <config>          simulate one plant/observer pair, write CSV + metrics
  compare <config>      run both observer variants on one plant trace
  validate              numerics self-checks against closed-form oracles
  dump-config <preset>  print a bundled config as JSON

Exit codes: 0 ok, 1 validation failure, 2 config error, 3 diverged run.
The default output directory comes from $FRACOBS_OUT, else the cwd.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .configs import BUNDLED_CONFIGS, bundled_config
from .errors import ConfigError
from .fde import Trace
from .harness import (
    ComparisonResult,
    ExperimentConfig,
    MetricsReport,
    compare_observers,
    config_hash,
    run_experiment,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_DIVERGED = 3


def _load_config(source: str, overrides: list[str], seed: Optional[int]) -> ExperimentConfig:
    """Resolve a config path or bundled name, apply --set/--seed overrides."""
    path = Path(source)
    if path.is_file():
        try:
            raw = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(str(source), f"not valid JSON ({exc})") from None
    else:
        try:
            raw = bundled_config(source)
        except KeyError:
            raise ConfigError(
                str(source),
                f"no such file, and not a bundled config "
                f"(bundled: {sorted(BUNDLED_CONFIGS)})",
            ) from None
    for item in overrides:
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError("--set", f"expected key=value, got {item!r}")
        _apply_override(raw, key.strip(), value.strip())
    if seed is not None:
        raw["seed"] = seed
    return ExperimentConfig.from_dict(raw)


def _apply_override(raw: dict, dotted: str, value: str) -> None:
    node = raw
    parts = dotted.split(".")
    for p in parts[:-1]:
        node = node.setdefault(p, {})
        if not isinstance(node, dict):
            raise ConfigError(dotted, f"{p!r} is not a section")
    try:
        parsed = json.loads(value)
    except json.JSONDecodeError:
        parsed = value  # bare strings like memory=full
    node[parts[-1]] = parsed


# ---------------------------------------------------------------------------
# serialization

def _csv_schema(n: int) -> list[str]:
    cols = ["t"]
    cols += [f"x{i+1}" for i in range(n)]
    cols += [f"xhat{i+1}" for i in range(n)]
    cols += [f"xtilde{i+2}" for i in range(n - 1)]
    cols += [f"e{i+1}" for i in range(n)]
    cols += ["f_true", "f_tilde", "f_hat", "e_f", "theta_tilde"]
    cols += [f"E{i+1}" for i in range(n)]
    return cols


def write_trace_csv(path: Path, trace: Trace, n: int, stride: int) -> None:
    """Fixed-schema CSV; columns absent from the trace stay empty."""
    schema = _csv_schema(n)
    t = trace.times()[::stride]
    have = {lab: trace.values[::stride, i] for i, lab in enumerate(trace.labels)}
    have["t"] = t
    columns = [have.get(name) for name in schema]
    with open(path, "w", newline="") as fh:
        fh.write(",".join(schema) + "\n")
        for k in range(t.size):
            row = ("" if col is None else repr(float(col[k])) for col in columns)
            fh.write(",".join(row) + "\n")


def _write_manifest(path: Path, cfg: ExperimentConfig, duration: float,
                    outputs: list[Path], diverged: bool) -> None:
    manifest = {
        "name": cfg.name,
        "config_hash": config_hash(cfg),
        "seed": cfg.seed,
        "version": __version__,
        "duration_s": round(duration, 3),
        "diverged": diverged,
        "outputs": [p.name for p in outputs],
    }
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _out_dir(arg: Optional[str]) -> Path:
    out = Path(arg or os.environ.get("FRACOBS_OUT", "."))
    out.mkdir(parents=True, exist_ok=True)
    return out


# ---------------------------------------------------------------------------
# subcommands

def cmd_run(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config, args.set or [], args.seed)
    out = _out_dir(args.out)
    t0 = time.perf_counter()
    trace, report = run_experiment(cfg)
    duration = time.perf_counter() - t0

    n = cfg.build_plant().n
    csv_path = out / f"{cfg.name}_trace.csv"
    met_path = out / f"{cfg.name}_metrics.txt"
    man_path = out / f"{cfg.name}_manifest.json"
    write_trace_csv(csv_path, trace, n, cfg.output_stride)
    met_path.write_text(report.to_text() + "\n")
    _write_manifest(man_path, cfg, duration, [csv_path, met_path], trace.diverged)

    for p in (csv_path, met_path, man_path):
        print(p)
    if trace.diverged:
        print(f"run diverged at t = {trace.diverged_at}", file=sys.stderr)
        return EXIT_DIVERGED
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config, args.set or [], args.seed)
    out = _out_dir(args.out)
    t0 = time.perf_counter()
    result = compare_observers(cfg)
    duration = time.perf_counter() - t0

    n = cfg.build_plant().n
    paths = []
    for trace, variant in ((result.trace_a, result.variant_a),
                           (result.trace_b, result.variant_b)):
        p = out / f"{cfg.name}_{variant}_trace.csv"
        write_trace_csv(p, trace, n, cfg.output_stride)
        paths.append(p)
    rep_path = out / f"{cfg.name}_comparison.txt"
    rep_path.write_text(result.to_text() + "\n")
    paths.append(rep_path)
    diverged = result.trace_a.diverged or result.trace_b.diverged
    man_path = out / f"{cfg.name}_manifest.json"
    _write_manifest(man_path, cfg, duration, paths, diverged)

    print(result.to_text())
    for p in paths + [man_path]:
        print(p)
    return EXIT_DIVERGED if diverged else EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    from . import selfcheck

    return selfcheck.main()


def cmd_dump_config(args: argparse.Namespace) -> int:
    try:
        raw = bundled_config(args.preset)
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return EXIT_CONFIG
    print(json.dumps(raw, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fracobs",
        description="fractional-order sliding-mode observer simulations",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("config", help="config file path or bundled name")
        p.add_argument("--out", help="output directory (default $FRACOBS_OUT or cwd)")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="override a config entry, e.g. grid.t_end=10")

    p_run = sub.add_parser("run", help="simulate one configuration")
    add_common(p_run)
    p_run.set_defaults(fn=cmd_run)

    p_cmp = sub.add_parser("compare", help="proposed vs baseline on one plant trace")
    add_common(p_cmp)
    p_cmp.set_defaults(fn=cmd_compare)

    p_val = sub.add_parser("validate", help="run the numerics self-checks")
    p_val.set_defaults(fn=cmd_validate)

    p_dump = sub.add_parser("dump-config", help="print a bundled config as JSON")
    p_dump.add_argument("preset", help=f"one of {sorted(BUNDLED_CONFIGS)}")
    p_dump.set_defaults(fn=cmd_dump_config)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
