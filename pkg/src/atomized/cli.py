"""Command line front end.

Exit codes: 0 success, 1 model/oracle disagreement, 2 input error, 3 guard
exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import __version__
from .core import Atom, CSet
from .crossing import full_cross_batch, freest_model
from .decompose import element_tuples, subdirect_factors
from .errors import AxiomViolation, FormatError, GuardError, PreconditionError
from .formats import (
    Problem,
    duple_text,
    hasse_dot,
    model_document,
    parse_model,
    parse_problem,
    serialize_model,
    term_text,
)
from .generate import constants, random_duples
from .model import Model, holds, model_classes
from .oracle import ORACLE_GUARD, congruence_closure, oracle_equiv
from .redundancy import is_redundant, omega_masks, reduce_atomization

EXIT_OK, EXIT_DISAGREE, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


def _global_flags(parser: argparse.ArgumentParser, default) -> None:
    parser.add_argument("--seed", type=int, default=default, help="RNG seed for randomized subcommands")
    parser.add_argument("--guard", type=int, default=default, metavar="N",
                        help="override the |C| limit of every exhaustive enumeration")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="atomized", description="Atomized semilattice toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_flags(parser, None)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("atomize", parents=[common], help="build the freest model of the assertions")
    p.add_argument("file")
    p.add_argument("--reduce", action="store_true", help="drop redundant atoms")
    p.add_argument("--format", choices=["text", "structured"], default="text")

    p = sub.add_parser("cross", parents=[common], help="cross the assertions into a base model")
    p.add_argument("file")
    p.add_argument("--base", required=True, help="serialized model (text or structured)")
    p.add_argument("--reduce", action="store_true")
    p.add_argument("--format", choices=["text", "structured"], default="text")

    p = sub.add_parser("check", parents=[common], help="compare the model with the congruence-closure oracle")
    p.add_argument("file")
    p.add_argument("--max-c", type=int, default=None, help=f"largest |C| to check (default {ORACLE_GUARD})")
    p.add_argument("--reduce", action="store_true", help="check the reduced atomization")

    p = sub.add_parser("omega", parents=[common], help="list all compatible atoms, flagged R/NR")
    p.add_argument("file")

    p = sub.add_parser("decompose", parents=[common], help="print subdirect factors and element tuples")
    p.add_argument("file")

    p = sub.add_parser("hasse", parents=[common], help="emit the Hasse diagram as DOT")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="write DOT here instead of stdout")

    p = sub.add_parser("fuzz", parents=[common], help="random oracle-equivalence trials")
    p.add_argument("--constants", type=int, default=4, help="|C| per trial")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-duples", type=int, default=8)
    return parser


def _load(path: str) -> Problem:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_problem(text)
    except FormatError as exc:
        exc.message = f"{path}: {exc.message}"
        raise


def _print_model(M: Model, problem: Problem, fmt: str) -> None:
    answers = [
        (duple_text(problem.table, q), "POS" if holds(M, q) else "NEG")
        for q in problem.queries
    ]
    if fmt == "structured":
        doc = model_document(M)
        if answers:
            doc["queries"] = [{"query": q, "answer": a} for q, a in answers]
        print(json.dumps(doc, indent=2))
        return
    sys.stdout.write(serialize_model(M, "text"))
    for q, a in answers:
        print(f"query {q}: {a}")


def cmd_atomize(args) -> int:
    problem = _load(args.file)
    M = freest_model(problem.table, problem.assertions)
    if args.reduce:
        M = reduce_atomization(M)
    _print_model(M, problem, args.format)
    return EXIT_OK


def cmd_cross(args) -> int:
    problem = _load(args.file)
    try:
        text = Path(args.base).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {args.base}: {exc.strerror}") from None
    base = parse_model(text, problem.table)
    M = full_cross_batch(base, problem.assertions)
    if args.reduce:
        M = reduce_atomization(M)
    _print_model(M, problem, args.format)
    return EXIT_OK


def cmd_check(args) -> int:
    problem = _load(args.file)
    guard = args.max_c if args.max_c is not None else args.guard
    M = freest_model(problem.table, problem.assertions)
    if args.reduce:
        M = reduce_atomization(M)
    oracle = congruence_closure(problem.table, problem.assertions, guard)
    ok, bad = oracle_equiv(M, oracle, guard)
    n = (1 << problem.table.size) - 1
    if ok:
        print(f"OK: model with {len(M)} atoms agrees with the oracle on {n * n} duples")
        return EXIT_OK
    model_says = "POS" if holds(M, bad) else "NEG"
    oracle_says = "NEG" if model_says == "POS" else "POS"
    print(f"MISMATCH: {duple_text(problem.table, bad)} is {model_says} in the model, "
          f"{oracle_says} in the oracle")
    return EXIT_DISAGREE


def cmd_omega(args) -> int:
    problem = _load(args.file)
    M = freest_model(problem.table, problem.assertions)
    om = omega_masks(M, args.guard)
    n = problem.table.size
    for m in om:
        flag = "R" if is_redundant(M, Atom(CSet(m, n)), om=om) else "NR"
        print(f"{flag:<2} {{{','.join(problem.table.names_of(m))}}}")
    return EXIT_OK


def cmd_decompose(args) -> int:
    problem = _load(args.file)
    M = freest_model(problem.table, problem.assertions)
    table = problem.table
    factors = subdirect_factors(M)
    for i, f in enumerate(factors):
        print(f"factor {i} {{{','.join(table.names_of(f.atom))}}}")
    tuples = element_tuples(M)
    for members in model_classes(M, args.guard):
        bits = "".join(str(b) for b in tuples[members[0]])
        names = " = ".join(term_text(table, m, "+") for m in members)
        print(f"{bits} {names}")
    return EXIT_OK


def cmd_hasse(args) -> int:
    problem = _load(args.file)
    M = freest_model(problem.table, problem.assertions)
    dot = hasse_dot(M, args.guard)
    if args.output:
        Path(args.output).write_text(dot, encoding="utf-8")
    else:
        sys.stdout.write(dot)
    return EXIT_OK


def cmd_fuzz(args) -> int:
    rng = random.Random(args.seed)
    table = constants(args.constants)
    for trial in range(args.trials):
        R = random_duples(rng, table, args.max_duples)
        M = freest_model(table, R)
        ok, bad = oracle_equiv(M, congruence_closure(table, R, args.guard), args.guard)
        if not ok:
            problem = Problem(table, tuple(R))
            print(f"MISMATCH in trial {trial} on {duple_text(table, bad)}")
            print("assertions: " + "; ".join(duple_text(table, r) for r in problem.assertions))
            return EXIT_DISAGREE
    print(f"OK: {args.trials} trials at |C| = {args.constants}")
    return EXIT_OK


COMMANDS = {
    "atomize": cmd_atomize,
    "cross": cmd_cross,
    "check": cmd_check,
    "omega": cmd_omega,
    "decompose": cmd_decompose,
    "hasse": cmd_hasse,
    "fuzz": cmd_fuzz,
}


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (FormatError, AxiomViolation, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
