"""Command-line entry point: ``uqsl2 verify`` and ``uqsl2 emit``.

Exit codes: 0 when every check passes, 1 when any check fails, 2 for
usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .errors import ConfigError, NotTypeOneError, UnknownOperatorError
from .harness import OPERATORS, SUITES, SuiteConfig, emit_operator, run_suites
from .modules import Basis
from .scalars import Ident, QContext, ThetaMode, parse_rational

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _csv(text: str) -> list[str]:
    return [p.strip() for p in text.split(",") if p.strip()]


def parse_q_list(text: str) -> tuple:
    try:
        return tuple(parse_rational(p) for p in _csv(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def parse_t_range(text: str) -> tuple:
    """``-2..2`` (inclusive) or a comma list such as ``-1,0,3``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if lo > hi:
                raise ValueError(f"empty range {text!r}")
            return tuple(range(lo, hi + 1))
        return tuple(int(p) for p in _csv(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad t range {text!r}: {exc}") from None


def _enum_list(enum_cls):
    def parse(text: str) -> tuple:
        try:
            return tuple(enum_cls(p) for p in _csv(text))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None

    return parse


def parse_suites(text: str) -> tuple:
    names = _csv(text)
    if "all" in names:
        return SUITES
    bad = [n for n in names if n not in SUITES]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown suite(s) {bad}; choose from {', '.join(SUITES)}, all")
    return tuple(s for s in SUITES if s in names)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uqsl2", description="Exact verification of U_q(sl2) module identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run identity suites over a parameter grid")
    v.add_argument("--d-max", type=int, default=8)
    v.add_argument("--q", type=parse_q_list, default=parse_q_list("4,9"), help="comma list of rationals")
    v.add_argument("--theta-mode", type=_enum_list(ThetaMode), default=tuple(ThetaMode))
    v.add_argument("--t", type=parse_t_range, default=parse_t_range("-2..2"), help="A..B or comma list")
    v.add_argument("--ident", type=_enum_list(Ident), default=tuple(Ident))
    v.add_argument("--suite", type=parse_suites, default=SUITES, help="comma list, or 'all'")
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--jobs", type=int, default=1, help="worker processes")
    v.add_argument("--format", choices=("json", "text"), default="text")
    v.add_argument("--out", type=Path, default=None)

    e = sub.add_parser("emit", help="write one operator as tagged JSON")
    e.add_argument("--what", required=True, help=", ".join(OPERATORS))
    e.add_argument("--d", type=int, required=True)
    e.add_argument("--eps", type=int, choices=(1, -1), default=1)
    e.add_argument("--basis", choices=[b.value for b in Basis], default=Basis.CHEVALLEY_V.value)
    e.add_argument("--q", type=parse_rational, default=parse_rational("4"))
    e.add_argument("--theta", type=parse_rational, default=None, help="defaults to the mode's standard root")
    e.add_argument("--theta-mode", type=ThetaMode, default=ThetaMode.SQ_Q)
    e.add_argument("--t", type=int, default=0)
    e.add_argument("--ident", type=Ident, default=Ident.PRIMARY)
    e.add_argument("--format", choices=("json",), default="json")
    e.add_argument("--out", type=Path, default=None)
    return parser


def _write(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _cmd_verify(args) -> int:
    cfg = SuiteConfig(
        d_max=args.d_max,
        q_values=args.q,
        theta_modes=args.theta_mode,
        t_values=args.t,
        idents=args.ident,
        suites=args.suite,
        seed=args.seed,
        jobs=args.jobs,
    )
    report = run_suites(cfg)
    _write(report.to_json() if args.format == "json" else report.to_text(), args.out)
    # wall time is kept out of the report so reruns are byte-identical
    print(f"{report.passed}/{report.total} checks passed in {report.wall_time:.1f}s", file=sys.stderr)
    return EXIT_OK if report.failed == 0 else EXIT_FAIL


def _cmd_emit(args) -> int:
    if args.theta is None:
        ctx = QContext.standard(args.q, args.theta_mode, args.t, args.ident)
    else:
        ctx = QContext(args.q, args.theta, args.theta_mode, args.t, args.ident)
    payload = emit_operator(args.what, args.d, args.eps, Basis(args.basis), ctx)
    _write(json.dumps(payload, indent=1, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors itself
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_emit(args)
    except (ConfigError, UnknownOperatorError, NotTypeOneError, ValueError) as exc:
        print(f"uqsl2: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
