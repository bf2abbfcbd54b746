"""Command line entry point: ``agegossip {solve,simulate,sweep}``.

Settings are resolved as built-in defaults, then the JSON file given with
``--config``, then explicit flags. A report's ``config`` block is itself a
valid config file.
"""
from __future__ import annotations

import argparse
import json
import sys

from .harness import FORMATS, MODES, ConfigError, ExperimentConfig, SweepError, emit, sweep

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2

_FLAG_TO_FIELD = {
    "n": "n",
    "lambda_e": "lambda_e",
    "lambda_r": "lambda_r",
    "lambda_u": "lambda_u",
    "lambda_g": "lambda_g",
    "horizon": "horizon",
    "burn_in": "burn_in",
    "out": "output_path",
    "mode": "mode",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def parse_gaps(text) -> list[int]:
    """``"0,2,4"`` or the inclusive range ``"0..30"``."""
    if isinstance(text, list):
        return [_int(g) for g in text]
    text = str(text).strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = _int(lo), _int(hi)
        if hi < lo:
            raise ConfigError(f"empty gap range {text!r}")
        return list(range(lo, hi + 1))
    return [_int(g) for g in text.split(",") if g.strip()]


def parse_seeds(text) -> list[int]:
    """A comma list of seeds, or a single integer meaning seeds ``0..count-1``."""
    if isinstance(text, list):
        return [_int(s) for s in text]
    if isinstance(text, int):
        return list(range(text))
    text = str(text).strip()
    if "," in text:
        return [_int(s) for s in text.split(",") if s.strip()]
    count = _int(text)
    if count < 1:
        raise ConfigError(f"seed count must be positive, got {count}")
    return list(range(count))


def _int(text) -> int:
    try:
        return int(str(text).strip())
    except ValueError:
        raise ConfigError(f"not an integer: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON config file")
    common.add_argument("--n", type=int)
    common.add_argument("--lambda-e", type=float, dest="lambda_e")
    common.add_argument("--lambda-r", type=float, dest="lambda_r")
    common.add_argument("--lambda-u", type=float, dest="lambda_u")
    common.add_argument("--lambda", type=float, dest="lambda_g", help="per-node gossip rate")
    gaps = common.add_mutually_exclusive_group()
    gaps.add_argument("--gap", type=int)
    gaps.add_argument("--gaps", help="comma list or inclusive range a..b")
    common.add_argument("--horizon", type=float)
    common.add_argument("--burn-in", type=float, dest="burn_in")
    common.add_argument("--seeds", help="comma list, or a count meaning 0..count-1")
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--jobs", type=int, help="worker processes (default: all cores)")

    parser = _Parser(prog="agegossip", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("solve", parents=[common], help="exact F and x1 per gap")
    sub.add_parser("simulate", parents=[common], help="Monte Carlo estimates per gap")
    sw = sub.add_parser("sweep", parents=[common], help="gap sweep in any mode")
    sw.add_argument("--mode", choices=MODES)
    return parser


def resolve(args: argparse.Namespace) -> tuple[ExperimentConfig, str, int | None]:
    settings: dict = {}
    fmt, jobs = "csv", None
    if args.config:
        try:
            with open(args.config) as fh:
                settings = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(settings, dict):
            raise ConfigError(f"config {args.config} is not a JSON object")
        fmt = settings.pop("format", fmt)
        jobs = settings.pop("jobs", jobs)
        if "gap_values" in settings:
            settings["gap_values"] = parse_gaps(settings["gap_values"])
        if "seeds" in settings:
            settings["seeds"] = parse_seeds(settings["seeds"])

    for flag, name in _FLAG_TO_FIELD.items():
        value = getattr(args, flag, None)
        if value is not None:
            settings[name] = value
    if args.gap is not None:
        settings["gap_values"] = [args.gap]
    elif args.gaps is not None:
        settings["gap_values"] = parse_gaps(args.gaps)
    if args.seeds is not None:
        settings["seeds"] = parse_seeds(args.seeds)
    if args.format is not None:
        fmt = args.format
    if args.jobs is not None:
        jobs = args.jobs
    if fmt not in FORMATS:
        raise ConfigError(f"format must be one of {FORMATS}, got {fmt!r}")

    if args.command == "solve":
        settings["mode"] = "analytic"
    elif args.command == "simulate":
        settings["mode"] = "simulate"
    return ExperimentConfig.from_dict(settings), fmt, jobs


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config, fmt, jobs = resolve(args)
    except (ConfigError, TypeError) as exc:
        print(f"agegossip: invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        report = sweep(config, jobs=jobs)
        text = emit(report, fmt, config.output_path)
    except (SweepError, OSError) as exc:
        print(f"agegossip: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    if config.output_path is None:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
