"""Polynomial procedures for Horn clause sets.

Satisfiability and entailment run on the least model, computed by forward
chaining with per-clause counters (linear in the formula size).
:func:`horn_neg_equiv` decides whether one Horn formula is equivalent to the
negation of another by eliminating variables that one side entails or is
entailed by the negation of; combined with the other three tests it decides
redundancy of the second formula of a two-formula sequence.

The module also builds the negativized instances showing that redundancy
is hard for longer Horn sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .formula import Clause, Cnf, Literal, Var, cnf_to_formula, conj, Not
from .semantics import RevisionSequence

__all__ = [
    "NotHornError", "HardnessInstance",
    "horn_sat", "least_model", "horn_entails_clause", "horn_entails", "horn_equiv",
    "percent_remove", "entails_var", "entailed_by_negvar", "horn_neg_equiv",
    "horn_tautological", "redundant_two_horn", "negativize", "build_hardness_instance",
    "PRIME_SUFFIX", "SELECTOR_NAME",
]

PRIME_SUFFIX = "__p"
SELECTOR_NAME = "y__sel"


class NotHornError(ValueError):
    pass


def _require_horn(f: Cnf, what: str = "formula") -> None:
    for clause in f.clauses:
        if len(clause.positives) > 1:
            raise NotHornError(f"{what} is not Horn: clause {clause} has several positive literals")


def least_model(f: Cnf, facts: Iterable[Var] = ()) -> set[Var] | None:
    """Variables true in the least model of ``f`` plus ``facts``; None if unsatisfiable.

    Standard forward chaining: each clause keeps a count of body atoms not
    yet derived and fires when the count reaches zero.
    """
    _require_horn(f)
    watching: dict[Var, list[int]] = {}
    missing: list[int] = []
    heads: list[Var | None] = []
    queue: list[Var] = list(facts)
    for k, clause in enumerate(f.clauses):
        body = clause.negatives
        head = next(iter(clause.positives), None)
        heads.append(head)
        missing.append(len(body))
        for v in body:
            watching.setdefault(v, []).append(k)
        if not body:
            if head is None:
                return None
            queue.append(head)
    true: set[Var] = set()
    while queue:
        v = queue.pop()
        if v in true:
            continue
        true.add(v)
        for k in watching.get(v, ()):
            missing[k] -= 1
            if missing[k] == 0:
                head = heads[k]
                if head is None:
                    return None
                if head not in true:
                    queue.append(head)
    return true


def horn_sat(f: Cnf) -> bool:
    """Satisfiability by unit propagation; the least model completes with all-false."""
    return least_model(f) is not None


def horn_entails_clause(f: Cnf, c: Clause) -> bool:
    """``f |= c``: adding the negation of ``c`` as unit clauses makes ``f`` inconsistent."""
    if c.is_tautological():
        return True
    model = least_model(f, c.negatives)
    return model is None or bool(model & c.positives)


def horn_entails(f1: Cnf, f2: Cnf) -> bool:
    return all(horn_entails_clause(f1, c) for c in f2.clauses)


def horn_equiv(f1: Cnf, f2: Cnf) -> bool:
    _require_horn(f2)
    return horn_entails(f1, f2) and horn_entails(f2, f1)


def percent_remove(f: Cnf, x: Var) -> Cnf:
    """Drop clauses containing ``x``; delete ``!x`` from the rest."""
    pos, neg = Literal(x, True), Literal(x, False)
    return Cnf(tuple(
        Clause(c.literals - {neg}) if neg in c.literals else c
        for c in f.clauses if pos not in c.literals))


def entails_var(f: Cnf, x: Var) -> bool:
    """``f |= x`` for Horn ``f``, i.e. ``f & !x`` is inconsistent."""
    model = least_model(f)
    return model is None or x in model


def entailed_by_negvar(f: Cnf, x: Var) -> bool:
    """Every clause of ``f`` contains ``!x``."""
    neg = Literal(x, False)
    return all(neg in c.literals for c in f.clauses)


def horn_tautological(f: Cnf) -> bool:
    """Every clause holds both a variable and its negation."""
    return all(c.is_tautological() for c in f.clauses)


def _drop_tautologies(f: Cnf) -> Cnf:
    return Cnf(tuple(c for c in f.clauses if not c.is_tautological()))


def _variables_in_order(*fs: Cnf) -> list[Var]:
    seen: dict[Var, None] = {}
    for f in fs:
        for v in f.var_order():
            seen.setdefault(v)
    return sorted(seen)


def horn_neg_equiv(f1: Cnf, f2: Cnf) -> bool:
    """Whether ``f1`` is equivalent to ``!f2``, for Horn ``f1`` and ``f2``.

    Repeatedly picks a variable ``x`` that one side entails, or whose
    negation entails one side, checks the matching condition on the other
    side (failing fast when it does not hold) and removes ``x`` from both.
    Once nothing applies, equivalence holds only when one side is empty and
    the other inconsistent. Tautological clauses are removed first, which
    makes the clause-scan test for ``!x |= F`` exact.
    """
    _require_horn(f1, "first formula")
    _require_horn(f2, "second formula")
    f1, f2 = _drop_tautologies(f1), _drop_tautologies(f2)
    changed = True
    while changed:
        changed = False
        facts1, facts2 = _facts(f1), _facts(f2)
        for x in _variables_in_order(f1, f2):
            applied = _simplify_step(facts1, facts2, x)
            if applied is None:
                continue
            if applied is False:
                return False
            f1, f2 = percent_remove(f1, x), percent_remove(f2, x)
            facts1, facts2 = _facts(f1), _facts(f2)
            changed = True
    if not f1.clauses:
        return not horn_sat(f2)
    if not horn_sat(f1):
        return horn_tautological(f2)
    if not f2.clauses:
        return not horn_sat(f1)
    if not horn_sat(f2):
        return horn_tautological(f1)
    return False


@dataclass(frozen=True)
class _Facts:
    """What a Horn formula entails about single variables.

    ``model`` is the least model (None when inconsistent, in which case the
    formula entails every variable). ``negated`` holds the variables whose
    negation occurs in every clause (None when there are no clauses, so the
    condition holds vacuously for every variable).
    """

    model: frozenset[Var] | None
    negated: frozenset[Var] | None

    def entails(self, x: Var) -> bool:
        return self.model is None or x in self.model

    def entailed_by_neg(self, x: Var) -> bool:
        return self.negated is None or x in self.negated


def _facts(f: Cnf) -> _Facts:
    model = least_model(f)
    negated = None
    for clause in f.clauses:
        negs = clause.negatives
        negated = negs if negated is None else negated & negs
        if not negated:
            break
    return _Facts(None if model is None else frozenset(model), negated)


def _simplify_step(facts1: _Facts, facts2: _Facts, x: Var) -> bool | None:
    """Try the four elimination rules on ``x`` in order.

    Returns None when no rule applies, False when the applicable rule's side
    condition fails, True when ``x`` may be removed from both formulas.
    """
    if facts2.entails(x):
        return facts1.entailed_by_neg(x)
    if facts2.entailed_by_neg(x):
        return facts1.entails(x)
    if facts1.entails(x):
        return facts2.entailed_by_neg(x)
    if facts1.entailed_by_neg(x):
        return facts2.entails(x)
    return None


def redundant_two_horn(s1: Cnf, s2: Cnf) -> bool:
    """Whether ``[s1, s2]`` orders models exactly as ``[s1]`` does.

    Holds iff ``s2`` is inconsistent, valid, equivalent to ``s1`` or
    equivalent to ``!s1``.
    """
    _require_horn(s1, "first formula")
    _require_horn(s2, "second formula")
    return (not horn_sat(s2)
            or horn_tautological(s2)
            or horn_equiv(s1, s2)
            or horn_neg_equiv(s2, s1))


def _prime(x: Var) -> Var:
    return Var(x.name + PRIME_SUFFIX)


def _check_fresh(f: Cnf, extra: Iterable[Var] = ()) -> None:
    names = f.variables()
    clashes = {_prime(x) for x in names} & names
    clashes |= set(extra) & names
    if clashes:
        raise ValueError(
            f"variables {sorted(v.name for v in clashes)} collide with generated names")


def negativize(f: Cnf) -> Cnf:
    """Replace each positive ``x`` by ``!x__p`` and add ``!x | !x__p`` for every variable.

    The result has no positive literals, hence is Horn.
    """
    _check_fresh(f)
    clauses = [
        Clause(Literal(_prime(l.var), False) if l.positive else l for l in c.literals)
        for c in f.clauses
    ]
    clauses += [Clause((Literal(x, False), Literal(_prime(x), False))) for x in f.var_order()]
    return Cnf(tuple(clauses))


@dataclass(frozen=True)
class HardnessInstance:
    sequence: RevisionSequence
    source: Cnf


def build_hardness_instance(f: Cnf) -> HardnessInstance:
    """Horn sequence whose last formula is redundant iff ``f`` is unsatisfiable.

    The sequence is ``[!y | f^n, y & !x_1 & !x_1', ..., y & !x_n & !x_n', y]``
    with ``f^n`` the negativization of ``f`` and ``y`` a fresh variable.
    """
    y = Var(SELECTOR_NAME)
    _check_fresh(f, (y,))
    neg_y = Literal(y, False)
    first = Cnf(tuple(Clause(c.literals | {neg_y}) for c in negativize(f).clauses))
    xs = f.var_order()
    middle = [conj(y, Not(x), Not(_prime(x))) for x in xs]
    alphabet = tuple(xs) + tuple(_prime(x) for x in xs) + (y,)
    sequence = RevisionSequence((cnf_to_formula(first), *middle, y), alphabet)
    return HardnessInstance(sequence, f)
