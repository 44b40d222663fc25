"""Command-line entry point: ``noisy-rsp <command> ...``.

Exit codes: 0 success, 1 a checked assertion failed, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

from noisy_rsp.analysis import (
    AXES,
    Axis,
    SweepSpec,
    figure_spec,
    find_equilibria,
    format_float,
    sweep,
)
from noisy_rsp.channels import NOISY_KINDS, ChannelKind
from noisy_rsp.closed_form import GRID_PRESETS, compare_closed_vs_sim
from noisy_rsp.game import TABLE_1, PayoffMatrix, StrategyParams, payoff
from noisy_rsp.verify import Tolerances, all_passed, format_table, kraus_dump, run_checks

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

_PI_EXPR = re.compile(r"^\s*([0-9.]*)\s*\*?\s*pi\s*(?:/\s*([0-9.]+))?\s*$", re.IGNORECASE)


class UsageError(Exception):
    pass


def parse_number(text: str) -> float:
    """Float literal or a multiple of pi such as ``pi/2``, ``3pi/4``, ``0.5*pi``."""
    match = _PI_EXPR.match(text)
    if match:
        coef = float(match.group(1)) if match.group(1) else 1.0
        denom = float(match.group(2)) if match.group(2) else 1.0
        return coef * math.pi / denom
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return value


def parse_channel(text: str) -> ChannelKind:
    try:
        return ChannelKind.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def parse_channels(text: str) -> tuple:
    if text.strip().lower() == "all":
        return NOISY_KINDS
    return tuple(parse_channel(t) for t in text.split(",") if t.strip())


def parse_vary(text: str) -> Axis:
    try:
        name, rng = text.split("=", 1)
        start, stop, step = (parse_number(p) for p in rng.split(":"))
        return Axis(name.strip(), start, stop, step)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad --vary {text!r}: {exc}") from None


def parse_fix(text: str) -> tuple[str, float]:
    try:
        name, value = text.split("=", 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad --fix {text!r}; expected axis=value") from None
    name = name.strip()
    if name not in AXES:
        raise argparse.ArgumentTypeError(f"unknown axis {name!r}")
    return name, parse_number(value)


def positive(text: str) -> float:
    value = parse_number(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with a payoff_matrix entry")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default=None)

    parser = argparse.ArgumentParser(
        prog="noisy-rsp", description="Noisy quantum Rock-Scissors-Paper game on two qutrits."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("payoff", parents=[common], help="payoffs at one parameter point")
    for name in ("x1", "y1", "x2", "y2"):
        p.add_argument(f"--{name}", type=parse_number, required=True, help="radians")
    p.add_argument("--channel", type=parse_channel, required=True)
    p.add_argument("--alpha", type=parse_number, required=True)

    p = sub.add_parser("sweep", parents=[common], help="payoff surface over one or two axes")
    p.add_argument("--vary", type=parse_vary, action="append", required=True,
                   metavar="AXIS=START:STOP:STEP")
    p.add_argument("--fix", type=parse_fix, action="append", default=[], metavar="AXIS=VALUE")
    p.add_argument("--channels", type=parse_channels, default=NOISY_KINDS)

    p = sub.add_parser("figure", parents=[common], help="grid of a published figure")
    p.add_argument("number", type=int, choices=range(1, 7))
    p.add_argument("--step", type=positive, default=None,
                   help="step of the first axis (alpha for figure 1, else the angle)")
    p.add_argument("--alpha-step", type=positive, default=0.05, help="alpha step, figures 4-6")

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.add_argument("--dump-kraus", action="store_true",
                   help="also print single-qutrit Kraus sets as JSON")
    p.add_argument("--dump-alpha", type=parse_number, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    for name in ("completeness", "unitarity", "trace", "hermiticity", "positivity",
                 "zero_sum", "equivalence", "curve"):
        p.add_argument(f"--tol-{name.replace('_', '-')}", type=positive, default=None)

    p = sub.add_parser("compare", parents=[common], help="closed forms vs simulation")
    p.add_argument("--channel", type=parse_channel, required=True)
    p.add_argument("--grid", choices=sorted(GRID_PRESETS), default="coarse")
    p.add_argument("--player", choices=("alice", "bob"), default="alice")
    p.add_argument("--tolerance", type=positive, default=1e-9)

    p = sub.add_parser("nash", parents=[common], help="pure-grid equilibrium search")
    p.add_argument("--channel", type=parse_channel, required=True)
    p.add_argument("--alpha", type=parse_number, required=True)
    p.add_argument("--step", type=positive, default=math.pi / 20)
    return parser


def _load_matrix(path: str | None) -> PayoffMatrix:
    if path is None:
        return TABLE_1
    try:
        return PayoffMatrix.load(path)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot load config {path}: {exc}") from exc


def _emit(text: str, path: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_payoff(args, m) -> int:
    a = StrategyParams(args.x1, args.y1)
    b = StrategyParams(args.x2, args.y2)
    r = payoff(a, b, args.channel, args.alpha, m)
    if args.format == "json":
        _emit(json.dumps({"alice": r.alice, "bob": r.bob}), args.output)
    elif args.format == "csv":
        _emit(f"payoff_alice,payoff_bob\n{format_float(r.alice)},{format_float(r.bob)}", args.output)
    else:
        _emit(f"alice={format_float(r.alice)} bob={format_float(r.bob)}", args.output)
    return EXIT_OK


def _surface_out(surface, args) -> int:
    if args.format == "json":
        doc = {
            "header": surface.header,
            "rows": [list(v) + [c.value, a, b] for v, c, a, b in surface.rows],
        }
        _emit(json.dumps(doc), args.output)
    else:
        _emit(surface.to_csv(), args.output)
    return EXIT_OK


def _cmd_sweep(args, m) -> int:
    fixed = dict(args.fix)
    spec = SweepSpec(tuple(args.vary), fixed, args.channels, m)
    return _surface_out(sweep(spec), args)


def _cmd_figure(args, m) -> int:
    spec = figure_spec(args.number, step=args.step, alpha_step=args.alpha_step, payoff_matrix=m)
    return _surface_out(sweep(spec), args)


def _cmd_verify(args, m) -> int:
    overrides = {
        k: getattr(args, f"tol_{k}")
        for k in Tolerances.__dataclass_fields__
        if getattr(args, f"tol_{k}") is not None
    }
    rows = run_checks(Tolerances(**overrides), m, seed=args.seed)
    if args.format == "json":
        doc = {"checks": [vars(r) for r in rows]}
        if args.dump_kraus:
            doc["kraus"] = kraus_dump(args.dump_alpha)
        _emit(json.dumps(doc, indent=2), args.output)
    else:
        text = format_table(rows)
        if args.dump_kraus:
            text += "\n" + json.dumps(kraus_dump(args.dump_alpha), indent=2)
        _emit(text, args.output)
    return EXIT_OK if all_passed(rows) else EXIT_FAILED


def _cmd_compare(args, m) -> int:
    if args.channel is ChannelKind.NOISELESS:
        raise UsageError("compare needs a noisy channel: ad, pd or dep")
    report = compare_closed_vs_sim(args.channel, args.grid, m, args.player, args.tolerance)
    _emit(report.to_json(), args.output)
    # alpha = 0 must agree: both sides then describe the noiseless game
    return EXIT_OK if report.anchor_deviation() <= args.tolerance else EXIT_FAILED


def _cmd_nash(args, m) -> int:
    found = find_equilibria(args.channel, args.alpha, args.step, m)
    if args.format == "csv":
        lines = ["x1,y1,x2,y2,best_response_gap,payoff_alice,payoff_bob"]
        lines += [",".join(format_float(v) for v in c.to_dict().values()) for c in found]
        _emit("\n".join(lines), args.output)
    else:
        doc = {
            "channel": args.channel.value,
            "alpha": args.alpha,
            "step": args.step,
            "candidates": [c.to_dict() for c in found],
        }
        _emit(json.dumps(doc, indent=2), args.output)
    return EXIT_OK


COMMANDS = {
    "payoff": _cmd_payoff,
    "sweep": _cmd_sweep,
    "figure": _cmd_figure,
    "verify": _cmd_verify,
    "compare": _cmd_compare,
    "nash": _cmd_nash,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        m = _load_matrix(args.config)
        return COMMANDS[args.command](args, m)
    except (UsageError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"noisy-rsp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
