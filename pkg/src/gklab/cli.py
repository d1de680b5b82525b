"""Command-line entry point.

Exit status: 0 when every selected check passes, 1 when any fails, 2 on a
usage error (bad arguments, n not a prime power, unwritable output).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import curve, quotients
from .report import CHECKS, FORMATS, RunConfig, run
from .tower import build_tower

SUBCOMMANDS = {
    "verify": None,  # --check / --all decide
    "report": tuple(CHECKS),
    "verify-identities": ("identities",),
    "points": ("maximality", "hermitian", "smoothness"),
    "maximality": ("maximality", "hermitian"),
    "aut": ("hurwitz", "aut-preserves", "aut-order"),
    "semigroup": ("genus", "semigroup"),
    "rr-basis": ("rr",),
    "quotients": ("quotients",),
    "covering": ("covering",),
}

# option name -> (type, default); None defaults are filled after the config file is merged
_OPTIONS = {
    "n": (int, None),
    "p": (int, None),
    "h": (int, None),
    "format": (str, "text"),
    "emit": (str, None),
    "output": (str, None),
    "max_field_size": (int, curve.DEFAULT_MAX_ENUM_FIELD),
    "max_closure": (int, None),
    "m": (int, None),
    "no_timing": (bool, False),
    "all": (bool, False),
}


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="n = p^h; q = n^3")
    common.add_argument("--p", type=int, help="characteristic (with --h)")
    common.add_argument("--h", type=int, help="exponent (with --p)")
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--emit", metavar="PATH", help="write the point set as JSONL (points subcommand)")
    common.add_argument("--output", "-o", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--max-field-size", type=int, help="refuse to enumerate when q^2 exceeds this")
    common.add_argument("--max-closure", type=int, help="largest group the closure may build")
    common.add_argument("--m", type=int, help="single Riemann-Roch degree (rr-basis)")
    common.add_argument("--no-timing", action="store_true", default=None, help="omit runtimes for byte-stable output")
    common.add_argument("--all", action="store_true", default=None, help="run every check")
    common.add_argument("--check", action="append", choices=list(CHECKS), help="run one check (repeatable)")
    common.add_argument("--config", metavar="FILE", help="key=value file mirroring the flags; flags win")

    parser = argparse.ArgumentParser(prog="gklab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def read_config(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, val = (s.strip() for s in line.split("=", 1))
            key = key.lstrip("-").replace("-", "_")
            if key == "check":
                out.setdefault("check", []).extend(v.strip() for v in val.split(",") if v.strip())
                continue
            if key not in _OPTIONS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            typ = _OPTIONS[key][0]
            if typ is bool:
                out[key] = val.lower() in ("1", "true", "yes", "on")
            else:
                try:
                    out[key] = typ(val)
                except ValueError:
                    raise UsageError(f"{path}:{lineno}: bad value for {key}") from None
    return out


def make_config(args: argparse.Namespace) -> RunConfig:
    values = vars(args).copy()
    if args.config:
        for key, val in read_config(args.config).items():
            if values.get(key) is None:
                values[key] = val
    for key, (_, default) in _OPTIONS.items():
        if values.get(key) is None:
            values[key] = default

    n = values["n"]
    if values["p"] is not None or values["h"] is not None:
        if values["p"] is None or values["h"] is None:
            raise UsageError("--p and --h go together")
        if values["p"] < 2 or values["h"] < 1:
            raise UsageError("need p >= 2 and h >= 1")
        if n is not None and n != values["p"] ** values["h"]:
            raise UsageError("--n disagrees with --p/--h")
        n = values["p"] ** values["h"]
    if n is None:
        raise UsageError("give --n or --p/--h")

    fixed = SUBCOMMANDS[args.command]
    if fixed is not None:
        checks = fixed
    elif values["all"] or not values.get("check"):
        checks = tuple(CHECKS)
    else:
        checks = tuple(values["check"])

    extra = {}
    if values["max_closure"] is not None:
        extra["max_closure"] = values["max_closure"]
    try:
        return RunConfig(
            n=n,
            checks=checks,
            format=values["format"],
            emit=values["emit"],
            output=values["output"],
            max_field_size=values["max_field_size"],
            timing=not values["no_timing"],
            m=values["m"],
            **extra,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _quotient_table(n: int, fmt: str) -> str:
    rows = quotients.quotient_table(n)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, quotients.CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(r.csv_fields())
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([r.csv_fields() for r in rows], indent=2) + "\n"
    if fmt == "md":
        lines = ["| " + " | ".join(quotients.CSV_COLUMNS) + " |", "|" + "---|" * len(quotients.CSV_COLUMNS)]
        lines += ["| " + " | ".join(str(v) for v in r.csv_fields().values()) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    lines = [f"{'d':>5} {'g1':>8} {'|G1|':>14} {'|G1|/24g1^2':>14} large"]
    for r in rows:
        ratio = "-" if r.ratio is None else f"{float(r.ratio):.4g}"
        lines.append(f"{r.d:>5} {r.g1:>8} {r.G1_order:>14} {ratio:>14} {r.large}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
    except (UsageError, OSError) as exc:
        parser.error(str(exc))  # exits with status 2

    report = run(cfg)
    if args.command == "quotients":
        text = _quotient_table(cfg.n, cfg.format)
    else:
        text = report.render(cfg.format, timing=cfg.timing)

    try:
        if cfg.emit:
            with open(cfg.emit, "w") as fh:
                curve.write_jsonl(curve.enumerate_points(build_tower(cfg.p, cfg.h), cfg.max_field_size), fh)
        if cfg.output:
            with open(cfg.output, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"gklab: {exc}", file=sys.stderr)
        return 2
    except curve.ResourceLimitError as exc:
        print(f"gklab: {exc}", file=sys.stderr)
        return 1
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
