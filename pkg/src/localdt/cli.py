"""Command-line surface.

Subcommands:

* ``invariants`` -- asymptotic genus-0 invariant table as JSON or CSV,
* ``verify`` -- run one of the verification suites,
* ``walls`` -- positive walls of a charge,
* ``series`` -- truncated closed-form generating function.

Rationals are always serialized as exact ``p/q`` text.  Diagnostics go to
standard error and are controlled by the ``LOG_LEVEL`` environment variable
(``error``, ``info`` or ``debug``); standard output carries only data.
Exit codes: 0 success, 1 verification failure, 2 usage or configuration
error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass, fields
from fractions import Fraction

from .charge import Charge, Geometry
from .hnconfig import enumerate_walls
from .liealg import TruncationBounds
from .localcurve import LocalCurveConfig, closed_form_a1, closed_form_series, extract_asymptotic, higgs_invariant
from .pseries import BiSeries
from .suites import SUITES
from .wallcross import InvariantTable

log = logging.getLogger("localdt")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    """Validated run parameters, assembled from a config file plus flags."""

    genus: int = 0
    d1: int = 1
    d2: int | None = None
    r_max: int = 3
    e_max: int = 6
    u_max: int = 1
    q_max: int = 8
    nonneg: bool = False
    format: str = "json"
    seed: int = 0
    trials: int = 100

    def __post_init__(self) -> None:
        if self.d2 is None:
            self.d2 = 2 - 2 * self.genus - self.d1
        try:
            Geometry(self.genus, self.d1, self.d2)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.format not in ("json", "csv", "text"):
            raise ConfigError(f"unknown output format {self.format!r}")
        for name in ("r_max", "e_max", "u_max", "q_max", "trials"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be non-negative")

    def local_curve_config(self) -> LocalCurveConfig:
        if self.genus != 0 or (self.d1, self.d2) not in ((1, 1), (0, 2)):
            raise ConfigError(
                "asymptotic invariants need genus 0 with twisting (1,1) or (0,2)"
            )
        return LocalCurveConfig(self.d1, TruncationBounds(self.r_max, self.e_max))


_CONFIG_KEYS = {f.name for f in fields(RunConfig)}
_BOOL_KEYS = {"nonneg"}
_STR_KEYS = {"format"}


def load_config_file(path: str) -> dict:
    """Parse a ``key=value`` config file; '#' starts a comment."""
    out = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
                key, _, value = line.partition("=")
                key = key.strip().replace("-", "_")
                value = value.strip()
                if key not in _CONFIG_KEYS:
                    raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
                if key in _BOOL_KEYS:
                    out[key] = value.lower() in ("1", "true", "yes", "on")
                elif key in _STR_KEYS:
                    out[key] = value
                else:
                    out[key] = int(value)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    return out


def build_run_config(args: argparse.Namespace) -> RunConfig:
    values: dict = {}
    if getattr(args, "config", None):
        values.update(load_config_file(args.config))
    overrides = {
        "genus": getattr(args, "genus", None),
        "d1": getattr(args, "d1", None),
        "d2": getattr(args, "d2", None),
        "r_max": getattr(args, "rmax", None),
        "e_max": getattr(args, "emax", None),
        "u_max": getattr(args, "umax", None),
        "q_max": getattr(args, "qmax", None),
        "format": getattr(args, "format", None),
        "seed": getattr(args, "seed", None),
        "trials": getattr(args, "trials", None),
    }
    values.update({k: v for k, v in overrides.items() if v is not None})
    if getattr(args, "nonneg", False):
        values["nonneg"] = True
    return RunConfig(**values)


# ---------------------------------------------------------------------------
# Emission helpers: canonical JSON, CSV, series text.
# ---------------------------------------------------------------------------

def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def table_document(table: InvariantTable, cfg: RunConfig, extras: dict | None = None) -> dict:
    rows = [
        {"r": c.r, "e": c.e, "v": c.v, "value": str(val)}
        for c, val in sorted(table.entries.items(), key=lambda kv: (kv[0].v, kv[0].r, kv[0].e))
    ]
    doc = {
        "geometry": {"genus": cfg.genus, "d1": cfg.d1, "d2": cfg.d2},
        "bounds": {"r_max": cfg.r_max, "e_max": cfg.e_max},
        "invariants": rows,
    }
    if extras:
        doc.update(extras)
    return doc


def table_csv(table: InvariantTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["r", "e", "v", "value"])
    for c, val in sorted(table.entries.items(), key=lambda kv: (kv[0].v, kv[0].r, kv[0].e)):
        writer.writerow([c.r, c.e, c.v, str(val)])
    return buf.getvalue()


def series_text(series: BiSeries) -> str:
    """Plain-text rendering: terms by increasing total degree, ``u*q^2`` style."""
    if not series:
        return "0"
    bits = []
    for (du, dq), coeff in sorted(series.items(), key=lambda kv: (sum(kv[0]), kv[0])):
        mono = "*".join(
            part
            for part in (
                "u" if du == 1 else f"u^{du}" if du else "",
                "q" if dq == 1 else f"q^{dq}" if dq else "",
            )
            if part
        )
        mag = abs(coeff)
        if not mono:
            text = str(mag)
        elif mag == 1:
            text = mono
        else:
            text = f"{mag}*{mono}"
        if not bits:
            bits.append(text if coeff > 0 else f"-{text}")
        else:
            bits.append(f"{'+' if coeff > 0 else '-'} {text}")
    return " ".join(bits)


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------

def cmd_invariants(args: argparse.Namespace) -> int:
    cfg = build_run_config(args)
    lcfg = cfg.local_curve_config()
    log.info("extracting asymptotic invariants d1=%d r<=%d e<=%d", cfg.d1, cfg.r_max, cfg.e_max)
    table = extract_asymptotic(lcfg)
    for r in range(1, cfg.r_max + 1):
        for e in range(0, cfg.e_max + 1):
            table.set(Charge(r, e, 0), higgs_invariant(r, e, cfg.d1))
    if cfg.format == "csv":
        sys.stdout.write(table_csv(table))
    else:
        sys.stdout.write(canonical_json(table_document(table, cfg, {"chamber": "inf"})))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = build_run_config(args)
    runner = SUITES[args.suite]
    log.info("running suite %s (seed=%d, trials=%d)", args.suite, cfg.seed, cfg.trials)
    result = runner(cfg)
    for line in result.lines():
        print(line)
    if not result.passed:
        log.error("suite %s failed", args.suite)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def _parse_pair(text: str, what: str) -> tuple[int, int]:
    try:
        a, b = (int(part) for part in text.split(","))
    except ValueError:
        raise ConfigError(f"{what} must be two comma-separated integers, got {text!r}") from None
    return a, b


def cmd_walls(args: argparse.Namespace) -> int:
    cfg = build_run_config(args)
    alpha = _parse_pair(args.alpha, "--alpha")
    if alpha[0] < 1:
        raise ConfigError(f"--alpha needs rank >= 1, got {alpha}")
    window = _parse_pair(args.window, "--window") if args.window else None
    if window is None and not cfg.nonneg:
        raise ConfigError("general-mode wall search needs --window lo,hi (or --nonneg)")
    wall_set = enumerate_walls(alpha, args.v, window=window, nonneg=cfg.nonneg)
    log.info("found %d walls for alpha=%s v=%d", len(wall_set.walls), alpha, args.v)
    if cfg.format == "json":
        doc = {
            "alpha": {"r": alpha[0], "e": alpha[1]},
            "v": args.v,
            "window": {"lo": wall_set.window[0], "hi": wall_set.window[1]},
            "nonneg": wall_set.nonneg,
            "walls": [str(w) for w in wall_set.walls],
        }
        sys.stdout.write(canonical_json(doc))
    else:
        for w in wall_set.walls:
            print(w)
    return EXIT_OK


def cmd_series(args: argparse.Namespace) -> int:
    cfg = build_run_config(args)
    lcfg = LocalCurveConfig(cfg.d1, TruncationBounds(max(cfg.u_max, 1), cfg.q_max))
    caps = (cfg.u_max, cfg.q_max)
    if args.v == 1:
        series = closed_form_series(1, lcfg, caps=caps)
    else:
        series = closed_form_series(2, lcfg, closed_form_a1(lcfg, caps), caps=caps)
    if cfg.format == "json":
        sys.stdout.write(canonical_json({"v": args.v, "d1": cfg.d1, "series": series.to_jsonable()}))
    else:
        print(series_text(series))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser and entry point.
# ---------------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="key=value config file; flags override")
    parser.add_argument("--genus", type=int, help="curve genus (default 0)")
    parser.add_argument("--d1", type=int, help="first twisting degree")
    parser.add_argument("--d2", type=int, help="second twisting degree (default 2-2g-d1)")
    parser.add_argument("--rmax", type=int, help="rank bound")
    parser.add_argument("--emax", type=int, help="degree bound")
    parser.add_argument("--umax", type=int, help="u-degree cap for series output")
    parser.add_argument("--qmax", type=int, help="q-degree cap for series output")
    parser.add_argument("--nonneg", action="store_true", help="restrict to non-negative part degrees")
    parser.add_argument("--format", choices=("json", "csv", "text"), help="output format")
    parser.add_argument("--seed", type=int, help="seed for randomized suites")
    parser.add_argument("--trials", type=int, help="instance count for randomized suites")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="localdt",
        description="Exact wallcrossing computations for local-curve invariants.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="asymptotic genus-0 invariant table")
    _add_common(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("walls", help="positive walls of a charge")
    p.add_argument("--alpha", required=True, metavar="R,E", help="target charge (r,e)")
    p.add_argument("--v", type=int, required=True, choices=(1, 2), help="framing rank")
    p.add_argument("--window", metavar="LO,HI", help="degree window for wall candidates")
    _add_common(p)
    p.set_defaults(func=cmd_walls, format_default="text")

    p = sub.add_parser("series", help="closed-form generating function")
    p.add_argument("--v", type=int, required=True, choices=(1, 2), help="framing rank")
    _add_common(p)
    p.set_defaults(func=cmd_series, format_default="text")

    return parser


def _configure_logging() -> None:
    level_name = os.environ.get("LOG_LEVEL", "error").lower()
    levels = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger("localdt")
    root.handlers[:] = [handler]
    root.setLevel(levels.get(level_name, logging.ERROR))


def main(argv=None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "format", None) is None and hasattr(args, "format_default"):
        args.format = args.format_default
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
