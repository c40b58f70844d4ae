"""Equivalence, redundancy and minimization of revision sequences.

Positions are 1-based and follow the storage order: position 1 is the most
recent revision, position ``len(s)`` the oldest.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .encoder import check_equivalence
from .formula import Formula, Iff, Not, formula_as_cnf, is_horn, max_vars, size
from .horn import redundant_two_horn
from .semantics import RevisionSequence, Verdict, common_alphabet, equivalent_bruteforce
from .solver import is_satisfiable

__all__ = [
    "ENGINES", "AUTO_BRUTEFORCE_LIMIT", "MinimizationReport",
    "equivalent", "is_redundant_at", "minimize", "check_redundant_two",
]

ENGINES = ("sat", "bruteforce", "auto")
AUTO_BRUTEFORCE_LIMIT = 10 ** 7


def _pick_engine(s: RevisionSequence, r: RevisionSequence, engine: str) -> str:
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; choose from {ENGINES}")
    if engine != "auto":
        return engine
    n = len(common_alphabet(s, r))
    work = 4 ** n * sum(size(f) for f in s.formulas + r.formulas)
    if work <= AUTO_BRUTEFORCE_LIMIT and 2 * n <= max_vars():
        return "bruteforce"
    return "sat"


def equivalent(s: RevisionSequence, r: RevisionSequence, engine: str = "auto") -> Verdict:
    """Whether ``s`` and ``r`` induce the same order.

    ``auto`` enumerates model pairs when ``4**n`` times the total formula
    size is at most ten million, and otherwise solves the SAT encoding.
    """
    if _pick_engine(s, r, engine) == "bruteforce":
        return equivalent_bruteforce(s, r)
    return check_equivalence(s, r)


def is_redundant_at(s: RevisionSequence, k: int, engine: str = "sat") -> Verdict:
    """Whether removing the formula at position ``k`` keeps the order."""
    return equivalent(s, s.without(k), engine)


@dataclass(frozen=True)
class MinimizationReport:
    original: RevisionSequence
    minimized: RevisionSequence
    removed_positions: list[int] = field(default_factory=list)
    checks_performed: int = 0
    engine: str = ""
    seconds: float = 0.0


def minimize(s: RevisionSequence, engine: str = "auto") -> MinimizationReport:
    """Greedily drop formulas whose removal keeps the order.

    Each pass scans from the oldest revision to the newest and removes every
    position found redundant in the current sequence; passes repeat until one
    removes nothing. The result is equivalent to ``s`` but not necessarily
    of minimum length.
    """
    start = time.perf_counter()
    current = s
    origin = list(range(1, len(s) + 1))
    removed: list[int] = []
    checks = 0
    progress = True
    while progress:
        progress = False
        for k in range(len(current), 0, -1):
            checks += 1
            if equivalent(current, current.without(k), engine):
                current = current.without(k)
                removed.append(origin.pop(k - 1))
                progress = True
    return MinimizationReport(s, current, removed, checks, engine,
                              time.perf_counter() - start)


def check_redundant_two(f1: Formula, f2: Formula) -> bool:
    """Whether ``[f1, f2]`` is equivalent to ``[f1]``.

    Horn clause sets go through the polynomial Horn procedure; anything else
    is decided by SAT calls on the four cases: ``f2`` inconsistent, valid,
    equivalent to ``f1`` or to ``!f1``.
    """
    c1, c2 = formula_as_cnf(f1), formula_as_cnf(f2)
    if c1 is not None and c2 is not None and is_horn(c1) and is_horn(c2):
        return redundant_two_horn(c1, c2)
    return (not is_satisfiable(f2)
            or not is_satisfiable(Not(f2))
            or not is_satisfiable(Not(Iff(f1, f2)))
            or not is_satisfiable(Iff(f1, f2)))
