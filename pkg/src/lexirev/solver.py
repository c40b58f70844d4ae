"""DPLL satisfiability, unit propagation and DIMACS I/O.

The solver is DPLL with two watched literals, extended with conflict
analysis: each conflict yields a learned clause and a backjump. Branching
always picks the lowest-index unassigned variable and tries ``False``
first, so results are reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .formula import (
    Clause, Cnf, Formula, Literal, Model, Not, Var, And, _tseitin_ints,
)

__all__ = [
    "PartialAssignment", "Conflict", "Fixpoint", "SolveResult",
    "SolverBudgetExceeded", "DimacsError",
    "unit_propagate", "solve", "is_satisfiable", "entails",
    "export_dimacs", "import_dimacs",
]

PartialAssignment = Mapping[Var, bool]


class SolverBudgetExceeded(RuntimeError):
    pass


class DimacsError(ValueError):
    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")


@dataclass(frozen=True)
class Conflict:
    """Unit propagation derived the empty clause."""

    assignment: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class Fixpoint:
    assignment: dict
    cnf: Cnf

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class SolveResult:
    model: Model | None

    @property
    def satisfiable(self) -> bool:
        return self.model is not None

    def __bool__(self) -> bool:
        return self.satisfiable


def unit_propagate(c: Cnf, p: PartialAssignment | None = None) -> Conflict | Fixpoint:
    """Assert unit clauses under ``p`` until none remain or a clause empties.

    Returns a :class:`Fixpoint` holding the extended assignment and the
    reduced clause set (satisfied clauses dropped, false literals deleted),
    or a :class:`Conflict`.
    """
    assignment = dict(p or {})
    clauses = [clause.literals for clause in c.clauses]
    while True:
        reduced = []
        unit = None
        for lits in clauses:
            if any(assignment.get(l.var) == l.positive for l in lits):
                continue
            rest = frozenset(l for l in lits if l.var not in assignment)
            if not rest:
                return Conflict(assignment)
            if unit is None and len(rest) == 1:
                unit = next(iter(rest))
            reduced.append(rest)
        if unit is None:
            return Fixpoint(assignment, Cnf(tuple(Clause(r) for r in reduced)))
        assignment[unit.var] = unit.positive
        clauses = reduced


def _dpll(nvars: int, clauses: list[list[int]], budget: int | None = None) -> list[bool] | None:
    """Core search over integer clauses; returns values indexed 1..nvars or None.

    Conflicts are analysed to the first unique implication point; the learned
    clause is kept and the search jumps back to the level where it becomes
    unit. Decisions always take the lowest unassigned index, ``False`` first.
    """
    value = [0] * (nvars + 1)
    level = [0] * (nvars + 1)
    reason: list[list[int] | None] = [None] * (nvars + 1)
    watches: dict[int, list[list[int]]] = {}
    trail: list[int] = []
    trail_lim: list[int] = []
    units: list[int] = []
    for clause in clauses:
        if not clause:
            return None
        if len(clause) == 1:
            units.append(clause[0])
        else:
            watches.setdefault(clause[0], []).append(clause)
            watches.setdefault(clause[1], []).append(clause)

    def assign(lit: int, why: list[int] | None) -> None:
        v = lit if lit > 0 else -lit
        value[v] = 1 if lit > 0 else -1
        level[v] = len(trail_lim)
        reason[v] = why
        trail.append(lit)

    for lit in units:
        v = value[lit if lit > 0 else -lit]
        if v and (v > 0) != (lit > 0):
            return None
        if not v:
            assign(lit, None)

    def propagate(head: int) -> list[int] | None:
        """Process the trail from ``head``; return a falsified clause or None."""
        while head < len(trail):
            false_lit = -trail[head]
            head += 1
            watching = watches.get(false_lit)
            if not watching:
                continue
            keep = []
            for idx, clause in enumerate(watching):
                if clause[0] == false_lit:
                    clause[0], clause[1] = clause[1], clause[0]
                other = clause[0]
                ov = value[other if other > 0 else -other]
                if ov and (ov > 0) == (other > 0):
                    keep.append(clause)
                    continue
                for k in range(2, len(clause)):
                    lit = clause[k]
                    lv = value[lit if lit > 0 else -lit]
                    if not lv or (lv > 0) == (lit > 0):
                        clause[1], clause[k] = lit, false_lit
                        watches.setdefault(lit, []).append(clause)
                        break
                else:
                    keep.append(clause)
                    if ov:
                        keep.extend(watching[idx + 1:])
                        watches[false_lit] = keep
                        return clause
                    assign(other, clause)
            watches[false_lit] = keep
        return None

    def analyze(conflict: list[int]) -> tuple[list[int], int]:
        current = len(trail_lim)
        seen = [False] * (nvars + 1)
        learnt = [0]
        open_count = 0
        clause = conflict
        implied = 0
        idx = len(trail) - 1
        while True:
            for q in (clause[1:] if implied else clause):
                v = q if q > 0 else -q
                if seen[v] or level[v] == 0:
                    continue
                seen[v] = True
                if level[v] == current:
                    open_count += 1
                else:
                    learnt.append(q)
            while not seen[abs(trail[idx])]:
                idx -= 1
            implied = trail[idx]
            idx -= 1
            open_count -= 1
            if open_count == 0:
                break
            clause = reason[abs(implied)]
        learnt[0] = -implied
        if len(learnt) == 1:
            return learnt, 0
        best = max(range(1, len(learnt)), key=lambda k: level[abs(learnt[k])])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, level[abs(learnt[1])]

    def backtrack(to_level: int) -> None:
        nonlocal hint
        if len(trail_lim) <= to_level:
            return
        mark = trail_lim[to_level]
        for undone in trail[mark:]:
            v = undone if undone > 0 else -undone
            value[v] = 0
            reason[v] = None
            if v < hint:
                hint = v
        del trail[mark:]
        del trail_lim[to_level:]

    hint = 1
    head = 0
    steps = 0
    while True:
        conflict = propagate(head)
        if conflict is not None:
            if not trail_lim:
                return None
            learnt, back_to = analyze(conflict)
            backtrack(back_to)
            head = len(trail)
            if len(learnt) == 1:
                assign(learnt[0], None)
            else:
                watches.setdefault(learnt[0], []).append(learnt)
                watches.setdefault(learnt[1], []).append(learnt)
                assign(learnt[0], learnt)
            continue
        head = len(trail)
        while hint <= nvars and value[hint]:
            hint += 1
        if hint > nvars:
            return [False] + [v > 0 for v in value[1:]]
        steps += 1
        if budget is not None and steps > budget:
            raise SolverBudgetExceeded(f"more than {budget} decisions")
        trail_lim.append(len(trail))
        assign(-hint, None)


def _cnf_to_ints(c: Cnf, order: Sequence[Var] = ()) -> tuple[list[list[int]], list[Var]]:
    index: dict[Var, int] = {}
    names: list[Var] = []
    for v in list(order) + c.var_order():
        if v not in index:
            names.append(v)
            index[v] = len(names)
    clauses = []
    for clause in c.clauses:
        if clause.is_tautological():
            continue
        clauses.append([index[l.var] if l.positive else -index[l.var]
                        for l in clause.sorted_literals()])
    return clauses, names


def _check_model(clauses: list[list[int]], values: list[bool]) -> None:
    for clause in clauses:
        for x in clause:
            if values[x] if x > 0 else not values[-x]:
                break
        else:
            raise AssertionError(f"solver produced a model violating clause {clause}")


def _solve_ints(clauses: list[list[int]], names: list[Var],
                budget: int | None = None) -> Model | None:
    values = _dpll(len(names), [list(c) for c in clauses], budget)
    if values is None:
        return None
    _check_model(clauses, values)
    return Model(tuple(names), tuple(values[1:]))


def solve(c: Cnf, order: Sequence[Var] = (), budget: int | None = None) -> SolveResult:
    """Decide satisfiability of ``c``.

    Variables are indexed by ``order`` first, then by first occurrence in the
    clauses. A satisfiable result carries a total model over the variables of
    ``c`` (plus any in ``order``) that has been checked against every clause.
    ``budget`` bounds the number of branching decisions.
    """
    clauses, names = _cnf_to_ints(c, order)
    return SolveResult(_solve_ints(clauses, names, budget))


def is_satisfiable(f: Formula, budget: int | None = None) -> bool:
    clauses, names = _tseitin_ints(f)
    return _solve_ints(clauses, names, budget) is not None


def entails(premise: Formula, conclusion: Formula) -> bool:
    """``premise |= conclusion``, decided as unsatisfiability of ``premise & !conclusion``."""
    return not is_satisfiable(And((premise, Not(conclusion))))


# --------------------------------------------------------------------------
# DIMACS
# --------------------------------------------------------------------------

_NAME_COMMENT = re.compile(r"c\s+var\s+(\d+)\s*=\s*(\S+)\s*$")


def export_dimacs(c: Cnf, names: Mapping[Var, int] | None = None) -> str:
    """DIMACS CNF text for ``c``.

    ``names`` maps variables to indices 1..V; by default variables are
    numbered by first occurrence. The name map is written as comment lines
    ``c var <n> = <name>`` ahead of the ``p cnf`` header. Literals within a
    clause are listed by increasing index, negative before positive.
    """
    if names is None:
        names = {v: i for i, v in enumerate(c.var_order(), 1)}
    names = dict(names)
    if sorted(names.values()) != list(range(1, len(names) + 1)):
        raise ValueError("variable indices must be exactly 1..V")
    missing = c.variables() - set(names)
    if missing:
        raise ValueError(f"no index for variables {sorted(v.name for v in missing)}")
    lines = [f"c var {i} = {v.name}" for v, i in sorted(names.items(), key=lambda kv: kv[1])]
    lines.append(f"p cnf {len(names)} {len(c.clauses)}")
    for clause in c.clauses:
        lits = sorted(clause.literals, key=lambda l: (names[l.var], l.positive))
        body = [str(names[l.var]) if l.positive else f"-{names[l.var]}" for l in lits]
        lines.append(" ".join(body + ["0"]))
    return "\n".join(lines) + "\n"


def import_dimacs(text: str) -> Cnf:
    """Parse DIMACS CNF text.

    Comment lines of the form ``c var <n> = <name>`` name variable ``n``;
    other variables are called ``x<n>``. Clauses may span lines.
    """
    declared: dict[int, str] = {}
    header = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line == "%":
            continue
        if line.startswith("c"):
            m = _NAME_COMMENT.match(line)
            if m:
                declared[int(m.group(1))] = m.group(2)
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"bad problem line {line!r}", lineno)
            try:
                header = (int(parts[2]), int(parts[3]), lineno)
            except ValueError:
                raise DimacsError(f"bad problem line {line!r}", lineno) from None
            continue
        if header is None:
            raise DimacsError("clause before 'p cnf' header", lineno)
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise DimacsError(f"not an integer literal: {token!r}", lineno) from None
            if abs(lit) > header[0]:
                raise DimacsError(f"variable {abs(lit)} exceeds declared {header[0]}", lineno)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if header is None:
        raise DimacsError("missing 'p cnf' header", max(1, len(text.splitlines())))
    if current:
        raise DimacsError("last clause is not terminated by 0", len(text.splitlines()))
    if len(clauses) != header[1]:
        raise DimacsError(f"header declares {header[1]} clauses, found {len(clauses)}", header[2])

    def var(i: int) -> Var:
        return Var(declared.get(i, f"x{i}"))

    return Cnf(tuple(Clause(Literal(var(abs(x)), x > 0) for x in clause) for clause in clauses))
