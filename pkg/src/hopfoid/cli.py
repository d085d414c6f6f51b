"""Command line entry point: ``hopfoid run | list-examples | describe``."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import List, Optional

from .algebra import AlgebraError, WindowExceeded
from .config import OPTIONAL_SUITES, SUITE_NAMES, ConfigError, load_config, parse_config, parse_window
from .kernel import InfiniteWindow
from .registry import BUILTINS, builtin_text
from .report import FAIL, Report, emit_report
from .suites import run_suites, unexpected

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_RESOURCE = 3
EXIT_INCONCLUSIVE = 4

log = logging.getLogger("hopfoid")


def _load(target: str):
    if os.path.exists(target):
        return load_config(target)
    if target in BUILTINS:
        return parse_config(builtin_text(target), source=f"builtin:{target}")
    raise ConfigError(f"{target!r} is neither a config file nor a builtin example")


def _apply_overrides(cfg, args) -> None:
    if args.window:
        a, t = parse_window(args.window)
        if cfg.track == "finite-group":
            raise ConfigError("--window does not apply to the finite-group track")
        cfg.a_cap = a if a is not None else cfg.a_cap
        cfg.t_cap = t if t is not None else cfg.t_cap
    if args.suites:
        cfg.suites = [s for s in args.suites.replace(",", " ").split() if s]
    if args.controls and "controls" not in cfg.suites:
        cfg.suites.append("controls")
    if args.seed is not None:
        cfg.seed = args.seed
    if args.allow_inconclusive:
        cfg.allow_inconclusive = True
    if args.out:
        cfg.output = args.out
    cfg.validate()


def exit_code(report: Report, allow_inconclusive: bool) -> int:
    bad = unexpected(report)
    if bad["fail"]:
        return EXIT_FAIL
    if bad["inconclusive"] and not allow_inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def _print_summary(report: Report, out) -> None:
    for rec in report.records():
        mark = rec.verdict
        expected = rec.details.get("expected")
        if expected == FAIL:
            mark = f"{rec.verdict} (expected fail)"
        elif expected is not None:
            mark = f"{rec.verdict} ({expected})"
        horizon = "" if rec.valid_to is None else f" valid_to={rec.valid_to}"
        print(f"{mark:28s} {rec.check_id}{horizon}", file=out)
    c = report.counts()
    print(f"summary: {c['pass']} pass, {c['fail']} fail, {c['inconclusive-window']} inconclusive", file=out)


def cmd_run(args) -> int:
    try:
        cfg = _load(args.config)
        _apply_overrides(cfg, args)
    except (ConfigError, AlgebraError, ValueError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    progress = None if args.quiet else (lambda name: print(f"running {name} ...", file=sys.stderr, flush=True))
    try:
        report = run_suites(cfg, timing=args.timing, progress=progress)
    except (MemoryError, RecursionError, InfiniteWindow, WindowExceeded) as exc:
        print(f"resource exhaustion: {type(exc).__name__}: {exc}", file=sys.stderr)
        if cfg.output:
            emit_report(Report(config=cfg.summary(), error=f"{type(exc).__name__}: {exc}"), cfg.output)
        return EXIT_RESOURCE
    if cfg.output:
        if cfg.output == "-":
            sys.stdout.write(report.dumps(args.timing))
        else:
            emit_report(report, cfg.output, args.timing)
    if cfg.output != "-":
        _print_summary(report, sys.stdout)
    return exit_code(report, cfg.allow_inconclusive)


def cmd_list(args) -> int:
    for name, (desc, _) in BUILTINS.items():
        print(f"{name:15s} {desc}")
    return EXIT_PASS


def cmd_describe(args) -> int:
    if args.example not in BUILTINS:
        print(f"unknown example {args.example!r}; try list-examples", file=sys.stderr)
        return EXIT_CONFIG
    desc, text = BUILTINS[args.example]
    print(f"# {desc}")
    sys.stdout.write(text)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hopfoid", description="Exact verification of scalar-extension Hopf algebroids.")
    sub = p.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run verification suites on a config file or builtin example")
    run.add_argument("config", help="path to a config file, or a builtin example name")
    run.add_argument("--window", help="override truncation caps, e.g. A=3,T=3")
    run.add_argument("--suites", help=f"comma separated subset of {', '.join(SUITE_NAMES + OPTIONAL_SUITES)}")
    run.add_argument("--controls", action="store_true", help="also run the negative-control suite")
    run.add_argument("--seed", type=int, help="seed for randomized sampling")
    run.add_argument("--out", help="write the JSON report here ('-' for stdout)")
    run.add_argument("--allow-inconclusive", action="store_true", help="exit 0 when only inconclusive-window verdicts remain")
    run.add_argument("--timing", action="store_true", help="include per-check timings (reports stop being byte-stable)")
    run.add_argument("-q", "--quiet", action="store_true", help="no progress lines on stderr")
    run.set_defaults(func=cmd_run)
    ls = sub.add_parser("list-examples", help="list builtin example configurations")
    ls.set_defaults(func=cmd_list)
    ds = sub.add_parser("describe", help="print a builtin example configuration")
    ds.add_argument("example")
    ds.set_defaults(func=cmd_describe)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
