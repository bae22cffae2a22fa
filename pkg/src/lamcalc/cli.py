"""Command-line surface for the calculus.

Every invocation prints exactly one JSON object on standard output:
``{"ok": bool, "result": ...}`` plus an ``"error"`` key when something
went wrong.  Exit codes: 0 the judgment holds or the command succeeded,
1 it does not hold, 2 the input was malformed, 3 a fuel or budget limit
was hit, 4 a certification traversal found a cycle.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import IO, Sequence

from .arity import aaa
from .bigtree import fsb_certify
from .errors import BudgetExceeded, FuelExhausted
from .extended import cpx_reducts, csx_certify, lleq_holds
from .props import SUITES, run_suite
from .reduction import conv, cpr_reducts, normalize
from .sexpr import ParseError, parse_env, parse_term, print_env, print_term
from .statics import da, lstas
from .terms import Params
from .traversal import Cycle

__all__ = ["main", "run"]

_DEFAULTS = {"c": 1, "D": 2, "fuel": 1000, "budget": 100000}

_EXIT_OK = 0
_EXIT_FAILS = 1
_EXIT_INPUT = 2
_EXIT_RESOURCES = 3
_EXIT_CYCLE = 4


class _CliError(Exception):
    """Bad invocation or unreadable input; reported as exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _CliError(message)


def _read_config(path: str) -> dict[str, int]:
    out: dict[str, int] = {}
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as e:
        raise _CliError(f"cannot read config {path}: {e}") from e
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in _DEFAULTS:
            raise _CliError(f"config {path}:{lineno}: expected one of "
                            f"{', '.join(sorted(_DEFAULTS))} = <number>")
        try:
            out[key] = int(value.strip())
        except ValueError as e:
            raise _CliError(f"config {path}:{lineno}: {value.strip()!r} "
                            "is not a number") from e
    return out


def _params(args: argparse.Namespace) -> Params:
    values = dict(_DEFAULTS)
    if args.config is not None:
        values.update(_read_config(args.config))
    for key, flag in (("c", args.c), ("D", args.big_d),
                      ("fuel", args.fuel), ("budget", args.budget)):
        if flag is not None:
            values[key] = flag
    try:
        return Params(c=values["c"], big_d=values["D"],
                      fuel=values["fuel"], budget=values["budget"])
    except ValueError as e:
        raise _CliError(str(e)) from e


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--c", type=int, default=None)
    common.add_argument("--D", dest="big_d", type=int, default=None)
    common.add_argument("--fuel", type=int, default=None)
    common.add_argument("--budget", type=int, default=None)
    common.add_argument("--config", default=None)

    top = _Parser(prog="lamcalc", add_help=False)
    sub = top.add_subparsers(dest="command", required=True)

    def cmd(name: str, env: bool = True) -> _Parser:
        p = sub.add_parser(name, add_help=False, parents=[common])
        if env:
            p.add_argument("--env", default="[]")
        return p

    cmd("parse", env=False).add_argument("term")
    cmd("check").add_argument("term")
    cmd("arity").add_argument("term")
    cmd("degree").add_argument("term")
    p = cmd("stype")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("term")
    cmd("nf").add_argument("term")
    p = cmd("reducts")
    p.add_argument("--extended", action="store_true")
    p.add_argument("term")
    p = cmd("conv")
    p.add_argument("term1")
    p.add_argument("term2")
    p = cmd("lleq", env=False)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--t", required=True)
    p.add_argument("env1")
    p.add_argument("env2")
    cmd("csx").add_argument("term")
    cmd("bigtree").add_argument("term")
    p = cmd("props", env=False)
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--size", type=int, default=3)
    p.add_argument("--envlen", type=int, default=1)
    p.add_argument("--maxsort", type=int, default=1)
    return top


def _dispatch(args: argparse.Namespace) -> tuple[int, object, str | None]:
    params = _params(args)

    if args.command == "parse":
        return _EXIT_OK, print_term(parse_term(args.term)), None

    if args.command == "props":
        bad = run_suite(args.suite, params, args.size, args.envlen,
                        args.maxsort)
        result = {"suite": args.suite, "counterexamples": bad}
        return (_EXIT_OK if not bad else _EXIT_FAILS), result, None

    if args.command == "lleq":
        holds = lleq_holds(args.l, parse_term(args.t),
                           parse_env(args.env1), parse_env(args.env2))
        return (_EXIT_OK if holds else _EXIT_FAILS), holds, None

    env = parse_env(args.env)

    if args.command == "check":
        from .validity import snv_check

        report = snv_check(params, env, parse_term(args.term))
        result = {"valid": report.valid,
                  "failure": list(report.failure) if report.failure else None}
        return (_EXIT_OK if report.valid else _EXIT_FAILS), result, None

    if args.command == "arity":
        a = aaa(env, parse_term(args.term))
        if a is None:
            return _EXIT_FAILS, None, "no applicability arity"
        return _EXIT_OK, str(a), None

    if args.command == "degree":
        d = da(params, env, parse_term(args.term))
        if d is None:
            return _EXIT_FAILS, None, "no degree"
        return _EXIT_OK, d, None

    if args.command == "stype":
        u = lstas(params, env, parse_term(args.term), args.n)
        if u is None:
            return _EXIT_FAILS, None, f"no static type at {args.n}"
        return _EXIT_OK, print_term(u), None

    if args.command == "nf":
        return _EXIT_OK, print_term(
            normalize(env, parse_term(args.term), params.fuel)), None

    if args.command == "reducts":
        t = parse_term(args.term)
        if args.extended:
            reducts = cpx_reducts(params, env, t)
        else:
            reducts = cpr_reducts(env, t, params.budget)
        return _EXIT_OK, sorted(print_term(u) for u in reducts), None

    if args.command == "conv":
        holds = conv(env, parse_term(args.term1), parse_term(args.term2),
                     params.fuel)
        return (_EXIT_OK if holds else _EXIT_FAILS), holds, None

    if args.command == "csx":
        got = csx_certify(params, env, parse_term(args.term))
        if isinstance(got, Cycle):
            cycle = {"cycle": [print_term(t) for t in got.path]}
            return _EXIT_CYCLE, cycle, "cycle detected"
        return _EXIT_OK, {"nodes": got.nodes, "max_depth": got.max_depth}, None

    if args.command == "bigtree":
        got = fsb_certify(params, env, parse_term(args.term))
        if isinstance(got, Cycle):
            cycle = {"cycle": [f"{print_env(c.env)} |- {print_term(c.term)}"
                               for c in got.path]}
            return _EXIT_CYCLE, cycle, "cycle detected"
        return _EXIT_OK, {"nodes": got.nodes, "edges": got.edges,
                          "max_depth": got.max_depth}, None

    raise _CliError(f"unknown command {args.command!r}")


def run(argv: Sequence[str], out: IO[str] | None = None) -> int:
    """Execute one invocation, print its JSON result, return the exit code."""

    stream = out if out is not None else sys.stdout
    try:
        args = _build_parser().parse_args(list(argv))
        code, result, error = _dispatch(args)
    except (_CliError, ParseError) as e:
        code, result, error = _EXIT_INPUT, None, str(e)
    except FuelExhausted as e:
        code, result, error = _EXIT_RESOURCES, None, f"fuel exhausted: {e}"
    except BudgetExceeded as e:
        code, result, error = _EXIT_RESOURCES, None, f"budget exceeded: {e}"
    payload: dict[str, object] = {"ok": code == _EXIT_OK, "result": result}
    if error is not None:
        payload["error"] = error
    print(json.dumps(payload, sort_keys=True), file=stream)
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
