"""Command-line front door: parse, typecheck, normalize, interpret, demos.

Exit codes: 0 success, 1 syntax/type error, 2 runtime error (division by
zero), 64 usage error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import chars as chars_mod
from .examples import power
from .interp import RuntimeDivisionByZero, format_value, run
from .nbe import norm
from .primitives import (
    DivisionByZero,
    lit,
    naive_prim_env,
    rational_signature,
    smart_prim_env,
)
from .syntax import (
    App,
    ParseError,
    TypingError,
    infer,
    parse_term,
    pretty_term,
    pretty_type,
    print_term,
    print_type,
)

USAGE_ERROR = 64


@dataclass
class CliConfig:
    command: str
    inline: str | None = None
    path: str | None = None
    prims: str = "smart"
    output: str = "sexpr"
    demo_name: str | None = None
    demo_arg: int | None = None
    naive: bool = False


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--file", metavar="PATH", help="read the term from a file")
    group.add_argument("--inline", metavar="TERM", help="read the term from the argument")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="ebn", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_norm = sub.add_parser("norm", help="print the normal form of a closed term")
    _add_input_flags(p_norm)
    p_norm.add_argument("--prims", choices=("smart", "naive"), default="smart")
    p_norm.add_argument("--output", choices=("pretty", "sexpr"), default="sexpr")

    p_check = sub.add_parser("check", help="print the inferred type of a closed term")
    _add_input_flags(p_check)
    p_check.add_argument("--output", choices=("pretty", "sexpr"), default="sexpr")

    p_run = sub.add_parser("run", help="interpret a closed term and print its value")
    _add_input_flags(p_run)

    p_demo = sub.add_parser("demo", help="run a named scenario")
    demo_sub = p_demo.add_subparsers(dest="demo_name", required=True)

    p_chars = demo_sub.add_parser("chars", help="normalize a string-language term")
    group = p_chars.add_mutually_exclusive_group(required=True)
    group.add_argument("--file", metavar="PATH")
    group.add_argument("--inline", metavar="TERM")

    p_power = demo_sub.add_parser("power", help="generate and normalize a power function")
    p_power.add_argument("n", type=int)
    p_power.add_argument("--naive", action="store_true", help="disable smart primitives")

    return parser


def _read_source(args) -> str:
    if args.inline is not None:
        return args.inline
    return Path(args.file).read_text(encoding="utf-8")


def _prim_env(kind: str):
    return smart_prim_env() if kind == "smart" else naive_prim_env()


def _cmd_norm(cfg: CliConfig, source: str) -> int:
    term = parse_term(source)
    out = norm(term, rational_signature(), _prim_env(cfg.prims))
    print(pretty_term(out) if cfg.output == "pretty" else print_term(out))
    return 0


def _cmd_check(cfg: CliConfig, source: str) -> int:
    term = parse_term(source)
    ty = infer({}, rational_signature(), term)
    print(pretty_type(ty) if cfg.output == "pretty" else print_type(ty))
    return 0


def _cmd_run(cfg: CliConfig, source: str) -> int:
    term = parse_term(source)
    infer({}, rational_signature(), term)
    print(format_value(run(term)))
    return 0


def _cmd_demo_chars(source: str) -> int:
    term = chars_mod.parse_chars(source)
    normal = chars_mod.norm_chars(term, "list")
    assert normal == chars_mod.norm_chars(term, "function")
    print(f"normal form: {chars_mod.format_chars(normal)}")
    out = sys.stdout
    out.write("denotes:     ")
    chars_mod.print_chars(normal, out)
    out.write("\n")
    return 0


def _cmd_demo_power(n: int, naive: bool) -> int:
    sig = rational_signature()
    env = naive_prim_env() if naive else smart_prim_env()
    generated = power(n)
    normal = norm(generated, sig, env)
    print(f"generated:   {print_term(generated)}")
    print(f"normal form: {print_term(normal)}")
    print(f"pretty:      {pretty_term(normal)}")
    for probe in (Fraction(2), Fraction(3), Fraction(-1, 2)):
        value = run(App(normal, lit(probe)))
        print(f"f({probe}) = {format_value(value)}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = CliConfig(
        command=args.command,
        inline=getattr(args, "inline", None),
        path=getattr(args, "file", None),
        prims=getattr(args, "prims", "smart"),
        output=getattr(args, "output", "sexpr"),
        demo_name=getattr(args, "demo_name", None),
        demo_arg=getattr(args, "n", None),
        naive=getattr(args, "naive", False),
    )
    try:
        if cfg.command == "norm":
            return _cmd_norm(cfg, _read_source(args))
        if cfg.command == "check":
            return _cmd_check(cfg, _read_source(args))
        if cfg.command == "run":
            return _cmd_run(cfg, _read_source(args))
        if cfg.command == "demo" and cfg.demo_name == "chars":
            return _cmd_demo_chars(_read_source(args))
        if cfg.command == "demo" and cfg.demo_name == "power":
            return _cmd_demo_power(cfg.demo_arg, cfg.naive)
    except (ParseError, TypingError) as e:
        print(f"ebn: error: {e}", file=sys.stderr)
        return 1
    except (DivisionByZero, RuntimeDivisionByZero) as e:
        print(f"ebn: runtime error: division by zero ({e})", file=sys.stderr)
        return 2
    raise AssertionError("unreachable: argparse enforces the command set")


if __name__ == "__main__":
    sys.exit(main())
