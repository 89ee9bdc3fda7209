"""Command line entry point: ``lorelast <suite> [options]``.

Settings are layered as suite defaults < ``--config`` file < explicit flags.
The config file holds ``key = value`` lines (``#`` starts a comment); keys
use the flag names with or without the leading dashes.

Exit status: 0 when every check passes, 1 when some check fails, 2 for a
configuration error.
"""

from __future__ import annotations

import argparse
import sys
import time

from .errors import ConfigError, LorelastError
from .report import emit
from .suites import SUITES

COMMON = {"seed", "output", "format", "include_timing", "config"}


def _flag(key):
    return "--" + key.replace("_", "-")


def _key(name):
    return name.strip().lstrip("-").replace("-", "_")


def _coerce(value, default, key):
    if isinstance(default, bool):
        low = str(value).lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"{key}: expected a boolean, got {value!r}")
    try:
        if isinstance(default, int):
            return int(value)
        if isinstance(default, float):
            return float(value)
    except ValueError:
        raise ConfigError(f"{key}: expected {type(default).__name__}, got {value!r}")
    return str(value)


def read_config(path):
    """Flat ``key = value`` pairs from a file."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}")
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{n}: expected 'key = value'")
        k, v = line.split("=", 1)
        out[_key(k)] = v.strip().strip("'\"")
    return out


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lorelast",
        description="Numerical checks for volume-preserving Lorentzian elasticity: plane-wave "
                    "solutions, their spinor content, screw-group symmetry and the linearized theory.")
    sub = parser.add_subparsers(dest="suite", required=True, metavar="SUITE")
    for name, (_, defaults, blurb) in SUITES.items():
        p = sub.add_parser(name, help=blurb, description=blurb,
                           formatter_class=argparse.ArgumentDefaultsHelpFormatter)
        for key, default in defaults.items():
            if key == "seed":
                continue
            p.add_argument(_flag(key), dest=key, default=argparse.SUPPRESS, metavar=key.upper(),
                           help=f"(default {default!r})")
        p.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                       help="master seed for all pseudo-random draws (default 0)")
        p.add_argument("--config", default=None, help="key = value file applied before the flags")
        p.add_argument("--output", default=None, help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--include-timing", action="store_true",
                       help="add wall time to the JSON report (breaks byte-identical reruns)")
    return parser


def resolve_config(suite, ns):
    """Merge defaults, config file and flags; unknown config keys are errors."""
    _, defaults, _ = SUITES[suite]
    defaults = dict(defaults)
    defaults.setdefault("seed", 0)
    cfg = dict(defaults)
    layers = []
    if ns.config:
        layers.append(read_config(ns.config))
    layers.append({k: v for k, v in vars(ns).items() if k in defaults})
    for layer in layers:
        for k, v in layer.items():
            if k in COMMON - {"seed"}:
                continue
            if k not in defaults:
                raise ConfigError(f"unknown setting {k!r} for {suite}")
            cfg[k] = _coerce(v, defaults[k], k)
    return cfg


def main(argv=None):
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:          # --help (0) or a usage error such as an unknown suite (2)
        return exc.code
    run, _, _ = SUITES[ns.suite]
    try:
        cfg = resolve_config(ns.suite, ns)
        t0 = time.perf_counter()
        report = run(cfg)
        report.wall_time = time.perf_counter() - t0
    except LorelastError as exc:       # ConfigError, or data rejected by a constructor
        print(f"lorelast: configuration error: {exc}", file=sys.stderr)
        return 2
    try:
        text = emit(report, ns.output, ns.format, ns.include_timing)
    except OSError as exc:
        print(f"lorelast: {exc}", file=sys.stderr)
        return 2
    if ns.output is None:
        sys.stdout.write(text)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
