"""Command-line front end.

Sequence files hold one formula per line. Line 1 is the most recent
revision, the one that dominates the order; each later line only breaks
ties left by the lines above it. ``--chronological`` reads (and writes)
files the other way round, oldest revision first. Blank lines and ``#``
comments are ignored, and a line ``vars: a b c`` declares the alphabet
explicitly (it may add variables the formulas do not use).

Exit status: 0 for an affirmative verdict, 1 for a negative one, 2 for any
error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .encoder import build_diff, diff_cnf, diff_dimacs
from .formula import (
    EnumerationCapError, FormulaSyntaxError, Var, formula_as_cnf,
    is_horn, parse_formula, to_text,
)
from .horn import NotHornError, build_hardness_instance
from .redundancy import check_redundant_two, equivalent, minimize
from .semantics import AlphabetMismatch, RevisionSequence, Verdict
from .solver import DimacsError, import_dimacs

__all__ = ["SequenceFile", "read_sequence", "format_sequence", "main"]

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2

HEADER_NEWEST_FIRST = "# line 1 is the most recent revision; later lines only break ties"
HEADER_CHRONOLOGICAL = "# oldest revision first; the last line is the most recent revision"

_ENGINE_NAMES = {"sat": "sat", "brute": "bruteforce", "bruteforce": "bruteforce", "auto": "auto"}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SequenceFile:
    path: str
    parsed: RevisionSequence
    declared_alphabet: tuple[Var, ...] | None = None


def read_sequence(path: str | Path, chronological: bool = False) -> SequenceFile:
    text = Path(path).read_text()
    formulas = []
    declared = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vars:"):
            if declared is not None:
                raise UsageError(f"{path}:{lineno}: second 'vars:' line")
            try:
                declared = tuple(Var(name) for name in line[5:].split())
            except ValueError as exc:
                raise UsageError(f"{path}:{lineno}: {exc}") from None
            continue
        try:
            formulas.append(parse_formula(line))
        except FormulaSyntaxError as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from None
    if chronological:
        formulas.reverse()
    return SequenceFile(str(path), RevisionSequence(tuple(formulas), declared), declared)


def format_sequence(s: RevisionSequence, chronological: bool = False,
                    declare_alphabet: bool = True) -> str:
    lines = [HEADER_CHRONOLOGICAL if chronological else HEADER_NEWEST_FIRST]
    if declare_alphabet and s.alphabet:
        lines.append("vars: " + " ".join(v.name for v in s.alphabet))
    formulas = list(s.formulas)
    if chronological:
        formulas.reverse()
    lines += [to_text(f) for f in formulas]
    return "\n".join(lines) + "\n"


def _file_position(k: int, length: int, chronological: bool) -> int:
    """Convert between sequence positions and formula-line numbers."""
    return length + 1 - k if chronological else k


def _model_dict(model) -> dict[str, int]:
    return {v.name: int(b) for v, b in zip(model.alphabet, model.bits)}


def _emit(args, verdict_text: str, verdict: Verdict | None, seconds: float,
          extra: dict | None = None, lines: Sequence[str] = ()) -> None:
    witness = verdict.witness if verdict is not None else None
    if args.json:
        payload = {
            "verdict": verdict_text,
            "witness": None if witness is None else
            {"i": _model_dict(witness.i), "j": _model_dict(witness.j)},
            "engine": verdict.engine if verdict is not None else None,
            "timing": round(seconds, 6),
        }
        payload.update(extra or {})
        print(json.dumps(payload))
        return
    print(verdict_text)
    if witness is not None:
        print(f"  i: {witness.i}")
        print(f"  j: {witness.j}")
    for line in lines:
        print(line)


def cmd_equiv(args) -> int:
    a = read_sequence(args.a, args.chronological).parsed
    b = read_sequence(args.b, args.chronological).parsed
    start = time.perf_counter()
    verdict = equivalent(a, b, _ENGINE_NAMES[args.engine])
    elapsed = time.perf_counter() - start
    _emit(args, "EQUIVALENT" if verdict else "NOT EQUIVALENT", verdict, elapsed)
    return EXIT_YES if verdict else EXIT_NO


def cmd_redundant(args) -> int:
    s = read_sequence(args.file, args.chronological).parsed
    if not len(s):
        raise UsageError("sequence is empty")
    line = args.pos if args.pos is not None else _file_position(len(s), len(s), args.chronological)
    if not 1 <= line <= len(s):
        raise UsageError(f"position {line} out of range 1..{len(s)}")
    k = _file_position(line, len(s), args.chronological)
    start = time.perf_counter()
    verdict = equivalent(s, s.without(k), _ENGINE_NAMES[args.engine])
    elapsed = time.perf_counter() - start
    _emit(args, "REDUNDANT" if verdict else "IRREDUNDANT", verdict, elapsed,
          {"position": line})
    return EXIT_YES if verdict else EXIT_NO


def cmd_minimize(args) -> int:
    s = read_sequence(args.file, args.chronological).parsed
    report = minimize(s, _ENGINE_NAMES[args.engine])
    Path(args.output).write_text(format_sequence(report.minimized, args.chronological))
    removed = sorted(_file_position(k, len(s), args.chronological)
                     for k in report.removed_positions)
    lines = [
        f"removed lines: {' '.join(map(str, removed)) if removed else 'none'}",
        f"kept {len(report.minimized)} of {len(s)} formulas",
        f"equivalence checks: {report.checks_performed}",
    ]
    verdict = Verdict(True, engine=report.engine)
    _emit(args, "MINIMIZED", verdict, report.seconds,
          {"removed": removed, "checks": report.checks_performed}, lines)
    return EXIT_YES


def cmd_dimacs(args) -> int:
    a = read_sequence(args.a, args.chronological).parsed
    b = read_sequence(args.b, args.chronological).parsed
    encoding = build_diff(a, b)
    cnf = diff_cnf(encoding)
    nvars = len(cnf.variables())
    roles = [
        "c non-equivalence encoding: UNSAT iff the two sequences induce the same order",
        "c roles: __y_<x> and __z_<x> are the two model copies,",
        "c   __m_k/__e_k and __n_k/__f_k are the strict/tie selectors of each sequence,",
        "c   __a and __b hold the order comparison under each sequence, __t<k> are auxiliary",
    ]
    Path(args.output).write_text("\n".join(roles) + "\n" + diff_dimacs(encoding))
    if not args.json:
        print(f"wrote {nvars} variables and {len(cnf.clauses)} clauses to {args.output}")
    else:
        print(json.dumps({"variables": nvars, "clauses": len(cnf.clauses)}))
    return EXIT_YES


def cmd_gen_hard(args) -> int:
    try:
        source = import_dimacs(Path(args.cnf).read_text())
    except DimacsError as exc:
        raise UsageError(f"{args.cnf}: {exc}") from None
    instance = build_hardness_instance(source)
    Path(args.output).write_text(format_sequence(instance.sequence, args.chronological))
    if not args.json:
        print(f"wrote {len(instance.sequence)} Horn formulas to {args.output}")
    else:
        print(json.dumps({"formulas": len(instance.sequence)}))
    return EXIT_YES


def cmd_horn_check(args) -> int:
    s = read_sequence(args.file, args.chronological).parsed
    if len(s) != 2:
        raise UsageError(f"horn-check needs exactly two formulas, got {len(s)}")
    for f in s:
        c = formula_as_cnf(f)
        if c is None or not is_horn(c):
            raise UsageError(f"not a Horn clause set: {to_text(f)}")
    start = time.perf_counter()
    redundant = check_redundant_two(*s.formulas)
    elapsed = time.perf_counter() - start
    verdict = Verdict(redundant, engine="horn")
    _emit(args, "REDUNDANT" if redundant else "IRREDUNDANT", verdict, elapsed)
    return EXIT_YES if redundant else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--chronological", action="store_true",
                        help="files list the oldest revision first")
    common.add_argument("--json", action="store_true", help="print a JSON report")
    engine = argparse.ArgumentParser(add_help=False)
    engine.add_argument("--engine", choices=sorted(_ENGINE_NAMES), default="auto")

    parser = argparse.ArgumentParser(
        prog="lexirev",
        description="Equivalence and redundancy of lexicographic revision sequences.",
        epilog="Line 1 of a sequence file is the most recent revision unless "
               "--chronological is given.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("equiv", parents=[common, engine], help="compare two sequences")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(run=cmd_equiv)

    p = sub.add_parser("redundant", parents=[common, engine],
                       help="test whether one formula can be dropped")
    p.add_argument("file")
    p.add_argument("--pos", type=int, help="formula line to test (default: the oldest revision)")
    p.set_defaults(run=cmd_redundant)

    p = sub.add_parser("minimize", parents=[common, engine], help="drop redundant formulas")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(run=cmd_minimize)

    p = sub.add_parser("dimacs", parents=[common], help="write the non-equivalence CNF")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(run=cmd_dimacs)

    p = sub.add_parser("gen-hard", parents=[common],
                       help="Horn sequence whose oldest formula is redundant iff a CNF is unsatisfiable")
    p.add_argument("cnf", help="DIMACS file")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(run=cmd_gen_hard)

    p = sub.add_parser("horn-check", parents=[common],
                       help="redundancy of the second formula of a two-formula Horn file")
    p.add_argument("file")
    p.set_defaults(run=cmd_horn_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_YES
    try:
        return args.run(args)
    except (UsageError, OSError, FormulaSyntaxError, AlphabetMismatch,
            EnumerationCapError, NotHornError, DimacsError, ValueError) as exc:
        print(f"lexirev: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
