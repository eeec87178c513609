"""Command-line front end.

Exit status: 0 when the verdict is true or the command is informational,
2 when the verdict is false, 1 on usage errors and library errors.
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from pathlib import Path
from typing import Sequence

from . import suites
from .algebra import quotient_commutativity_check
from .config import CONFIG, snapshot
from .errors import PermutaError
from .fields import CONWAY, field
from .grammar import parse_group
from .magnus import FreeWord, OrderedGroupAlgebraElement, magnus_compare, magnus_expand, valuation
from .report import Item, VerificationReport

VERIFY_TARGETS = ("lemma2.1", "lemma3.1", "thm3.2", "lemma6.4", "thm6.5-2", "magnus")


class UsageError(Exception):
    pass


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--json", metavar="PATH", default=default(None), help="also write the report as JSON ('-' for stdout)")
    parser.add_argument("--cap-order", type=int, default=default(None), help="largest group order for lattice enumeration")
    parser.add_argument("--cap-closure", type=int, default=default(None), help="largest closure size when generating groups")
    parser.add_argument("--seed", type=int, default=default(0), help="seed for sampled checks (default 0)")
    parser.add_argument("--timing", action="store_true", default=default(False), help="record wall time in the report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permuta", description="Permutable-subgroup, group-algebra and free-group order checks.")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, **kw) -> argparse.ArgumentParser:
        p = sub.add_parser(name, **kw)
        _global_flags(p, suppress=True)
        return p

    p = add("classify", help="tabulate every subgroup of a group")
    p.add_argument("--group", required=True)

    p = add("verify", help="run a verification suite")
    p.add_argument("target", choices=VERIFY_TARGETS)
    p.add_argument("--group", help="check this group instead of the default corpus")
    p.add_argument("--p", type=int, help="restrict to this prime")

    p = add("radical", help="Jacobson radical of F_p[G]")
    p.add_argument("--group", required=True)
    p.add_argument("--p", type=int, required=True)

    p = add("magnus", help="free-group order and expansions")
    msub = p.add_subparsers(dest="magnus_command", required=True)
    c = msub.add_parser("compare")
    _global_flags(c, suppress=True)
    c.add_argument("w1")
    c.add_argument("w2")
    c.add_argument("--rank", type=int)
    e = msub.add_parser("expand")
    _global_flags(e, suppress=True)
    e.add_argument("word")
    e.add_argument("--deg", type=int, required=True)
    e.add_argument("--rank", type=int)

    p = add("valuation", help="least support word of a group-algebra element")
    p.add_argument("alpha")
    p.add_argument("--field", default="2", help="field order as q or p^k (default 2)")
    p.add_argument("--rank", type=int)
    return parser


def _field_order(text: str) -> int:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\^\s*(\d+)\s*)?", text)
    if not m:
        raise UsageError(f"bad field order {text!r}; use q or p^k")
    q = int(m.group(1)) ** int(m.group(2) or 1)
    try:
        field(q)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return q


def _groups(spec: str | None):
    return None if spec is None else [(spec, parse_group(spec))]


def _primes(p: int | None, default: tuple[int, ...]) -> tuple[int, ...]:
    if p is None:
        return default
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise UsageError(f"--p must be a prime, got {p}")
    return (p,)


def _verify(args: argparse.Namespace) -> list[Item]:
    target, groups = args.target, _groups(args.group)
    if target == "lemma2.1":
        return suites.criteria_items(groups)
    if target == "lemma3.1":
        return suites.small_gl_items(groups)
    if target == "thm3.2":
        if args.group is None:
            return suites.gl_items()
        m = re.fullmatch(r"GL\((\d+),(\d+)\)", re.sub(r"\s+", "", args.group))
        if not m:
            raise UsageError("verify thm3.2 takes --group GL(n,q)")
        return suites.gl_items([(int(m.group(1)), int(m.group(2)))])
    if target == "lemma6.4":
        return suites.radical_intersection_items(groups, _primes(args.p, (2, 3)))
    if target == "thm6.5-2":
        if groups is not None and args.p is not None:
            name, G = groups[0]
            p = _primes(args.p, ())[0]
            return [Item(f"F_{p}[{name}]/J commutative", quotient_commutativity_check(G, p))]
        return suites.quotient_commutativity_items(groups, _primes(args.p, (2, 3, 5)))
    return suites.magnus_items(seed=args.seed)


def _word(text: str, rank: int | None) -> FreeWord:
    try:
        return FreeWord.parse(text, rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _dispatch(args: argparse.Namespace) -> list[Item]:
    if args.command == "classify":
        return suites.classify_items(args.group, parse_group(args.group))
    if args.command == "verify":
        return _verify(args)
    if args.command == "radical":
        p = _primes(args.p, ())[0]
        return suites.radical_items(args.group, parse_group(args.group), p)
    if args.command == "magnus":
        if args.magnus_command == "compare":
            rank = args.rank or max(_word(args.w1, None).rank, _word(args.w2, None).rank)
            w1, w2 = _word(args.w1, rank), _word(args.w2, rank)
            result = {-1: "less", 0: "equal", 1: "greater"}[magnus_compare(w1, w2)]
            return [Item(f"compare {w1} with {w2}", None, {"result": result})]
        if args.deg < 1:
            raise UsageError("--deg must be at least 1")
        w = _word(args.word, args.rank)
        exp = magnus_expand(w, args.deg)
        coeffs = {"".join(f"X{g + 1}" for g in m) or "1": c for m, c in exp.coeffs.items()}
        return [Item(f"expansion of {w} to degree {args.deg}", None, {"series": str(exp), "coefficients": coeffs})]
    q = _field_order(args.field)
    try:
        alpha = OrderedGroupAlgebraElement.parse(args.alpha, field(q), args.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return [Item(f"valuation of {alpha} over F_{q}", None, {"valuation": str(valuation(alpha))})]


def run(argv: Sequence[str]) -> tuple[int, VerificationReport | None]:
    """Execute one command; returns (exit status, report or None on error)."""
    argv = list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (0 if exc.code == 0 else 1), None
    saved = snapshot()
    try:
        if args.cap_order is not None:
            CONFIG.lattice_cap = args.cap_order
        if args.cap_closure is not None:
            CONFIG.closure_cap = args.cap_closure
        config = snapshot() | {"seed": args.seed, "field_moduli": {str(q): list(m[2]) for q, m in sorted(CONWAY.items())}}
        start = time.perf_counter()
        try:
            items = _dispatch(args)
        except (PermutaError, UsageError) as exc:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
            return 1, None
        report = VerificationReport(command=argv, config=config, items=items)
        if args.timing:
            report.wall_time = round(time.perf_counter() - start, 3)
    finally:
        for key, value in saved.items():
            setattr(CONFIG, key, value)
    sys.stdout.write(report.to_text())
    if args.json == "-":
        sys.stdout.write(report.to_json())
    elif args.json:
        Path(args.json).write_text(report.to_json())
    return (2 if report.verdict is False else 0), report


def main(argv: Sequence[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)[0]


if __name__ == "__main__":
    sys.exit(main())
