"""Lexicographic orders induced by revision sequences, evaluated directly.

A :class:`RevisionSequence` stores formulas most-recent first: ``s[0]`` is
the last revision applied and dominates the order, later entries only break
ties. Everything here follows the recursive definition of the order and is
used as the reference the SAT encoding is checked against.
"""

from __future__ import annotations

import enum
import functools
import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .formula import (
    And, Const, EnumerationCapError, Formula, Iff, Implies, Model, Not, Or, Var,
    conj, evaluate, max_vars, parse_formula, var_order,
)
from . import solver

__all__ = [
    "RevisionSequence", "Order", "Witness", "Verdict", "AlphabetMismatch",
    "common_alphabet", "leq_formula", "leq", "compare", "truth_vector",
    "equivalent_bruteforce", "q_conjunction", "redundant_last_by_conjunctions",
    "DEFAULT_CONJUNCTION_CAP",
]

DEFAULT_CONJUNCTION_CAP = 20


class AlphabetMismatch(ValueError):
    pass


def _merge_alphabets(*groups: Iterable[Var]) -> tuple[Var, ...]:
    return tuple(dict.fromkeys(v for group in groups for v in group))


@dataclass(frozen=True)
class RevisionSequence:
    """Formulas ``[S_1, ..., S_m]`` with ``S_1`` the most recent revision.

    ``alphabet`` defaults to the variables of the formulas in order of first
    occurrence; an explicit alphabet may add variables but not omit any.
    """

    formulas: tuple[Formula, ...] = ()
    alphabet: tuple[Var, ...] | None = None

    def __post_init__(self):
        formulas = tuple(self.formulas)
        object.__setattr__(self, "formulas", formulas)
        used = _merge_alphabets(*(var_order(f) for f in formulas))
        if self.alphabet is None:
            object.__setattr__(self, "alphabet", used)
        else:
            alphabet = tuple(self.alphabet)
            missing = set(used) - set(alphabet)
            if missing:
                raise AlphabetMismatch(
                    f"alphabet misses {sorted(v.name for v in missing)}")
            if len(set(alphabet)) != len(alphabet):
                raise AlphabetMismatch("alphabet contains duplicates")
            object.__setattr__(self, "alphabet", alphabet)

    @classmethod
    def parse(cls, *texts: str, alphabet: Sequence[str] | None = None) -> RevisionSequence:
        """``RevisionSequence.parse("a", "!a | b")`` is ``[a, !a | b]``."""
        alpha = None if alphabet is None else tuple(Var(v) for v in alphabet)
        return cls(tuple(parse_formula(t) for t in texts), alpha)

    def __len__(self) -> int:
        return len(self.formulas)

    def __iter__(self):
        return iter(self.formulas)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return RevisionSequence(self.formulas[index], self.alphabet)
        return self.formulas[index]

    def __add__(self, other: RevisionSequence) -> RevisionSequence:
        return RevisionSequence(self.formulas + other.formulas,
                                _merge_alphabets(self.alphabet, other.alphabet))

    def without(self, k: int) -> RevisionSequence:
        """Drop the formula at 1-based position ``k``."""
        if not 1 <= k <= len(self):
            raise IndexError(f"position {k} out of range 1..{len(self)}")
        return RevisionSequence(self.formulas[:k - 1] + self.formulas[k:], self.alphabet)

    def with_alphabet(self, alphabet: Sequence[Var]) -> RevisionSequence:
        return RevisionSequence(self.formulas, tuple(alphabet))

    def __str__(self) -> str:
        return "[" + ", ".join(str(f) for f in self.formulas) + "]"


def common_alphabet(s: RevisionSequence, r: RevisionSequence) -> tuple[Var, ...]:
    return _merge_alphabets(s.alphabet, r.alphabet)


class Order(enum.Enum):
    LESS = "strictly-less"
    EQUIVALENT = "equivalent"
    GREATER = "strictly-greater"


@dataclass(frozen=True)
class Witness:
    """Two models that a pair of orders compares differently."""

    i: Model
    j: Model

    def __post_init__(self):
        if self.i.alphabet != self.j.alphabet:
            raise AlphabetMismatch("witness models use different alphabets")


@dataclass(frozen=True)
class Verdict:
    """Outcome of an equivalence or redundancy check.

    ``holds`` is true for equivalent (or redundant); otherwise ``witness``
    carries a pair of models ordered differently.
    """

    holds: bool
    witness: Witness | None = None
    engine: str = ""

    def __bool__(self) -> bool:
        return self.holds


def _check_pair(i: Model, j: Model, formulas: Iterable[Formula]) -> None:
    if i.alphabet != j.alphabet:
        raise AlphabetMismatch("models use different alphabets")
    known = set(i.alphabet)
    for f in formulas:
        extra = set(var_order(f)) - known
        if extra:
            raise AlphabetMismatch(
                f"formula uses {sorted(v.name for v in extra)} outside the models' alphabet")


def leq_formula(i: Model, j: Model, f: Formula) -> bool:
    """``i <=_f j``: either ``i`` satisfies ``f`` or ``j`` does not."""
    _check_pair(i, j, (f,))
    return evaluate(f, i) or not evaluate(f, j)


def leq(i: Model, j: Model, s: RevisionSequence) -> bool:
    """``i <=_s j`` by the recursive definition over ``s``."""
    _check_pair(i, j, s.formulas)
    return _leq(i.values, j.values, s.formulas)


def _leq(vi, vj, formulas: tuple[Formula, ...]) -> bool:
    if not formulas:
        return True
    first = formulas[0]
    i_sat, j_sat = evaluate(first, vi), evaluate(first, vj)
    i_le_j = i_sat or not j_sat
    j_le_i = j_sat or not i_sat
    return i_le_j and (not j_le_i or _leq(vi, vj, formulas[1:]))


def compare(i: Model, j: Model, s: RevisionSequence) -> Order:
    forward, backward = leq(i, j, s), leq(j, i, s)
    if forward and backward:
        return Order.EQUIVALENT
    return Order.LESS if forward else Order.GREATER


def truth_vector(f: Formula, alphabet: Sequence[Var]) -> np.ndarray:
    """Truth value of ``f`` on every model of ``alphabet``, in enumeration order."""
    n = len(alphabet)
    index = np.arange(1 << n, dtype=np.int64)
    columns = {v: ((index >> (n - 1 - k)) & 1).astype(bool) for k, v in enumerate(alphabet)}

    def walk(g: Formula) -> np.ndarray:
        if isinstance(g, Var):
            try:
                return columns[g]
            except KeyError:
                raise AlphabetMismatch(f"variable {g.name} outside the alphabet") from None
        if isinstance(g, Const):
            return np.full(1 << n, g.value)
        if isinstance(g, Not):
            return ~walk(g.child)
        if isinstance(g, And):
            return np.logical_and.reduce([walk(c) for c in g.children])
        if isinstance(g, Or):
            return np.logical_or.reduce([walk(c) for c in g.children])
        if isinstance(g, Implies):
            return ~walk(g.lhs) | walk(g.rhs)
        if isinstance(g, Iff):
            return walk(g.lhs) == walk(g.rhs)
        raise TypeError(f"not a formula: {g!r}")

    return walk(f)


@functools.lru_cache(maxsize=4096)
def _leq_matrix(formulas: tuple[Formula, ...], alphabet: tuple[Var, ...]) -> np.ndarray:
    """Entry ``[i, j]`` is ``i <= j`` for the i-th and j-th enumerated models."""
    size = 1 << len(alphabet)
    result = np.ones((size, size), dtype=bool)
    for f in reversed(formulas):
        sat = truth_vector(f, alphabet)
        le = sat[:, None] | ~sat[None, :]
        result = le & (~le.T | result)
    result.flags.writeable = False
    return result


def _model_at(alphabet: tuple[Var, ...], k: int) -> Model:
    n = len(alphabet)
    return Model(alphabet, tuple(bool((k >> (n - 1 - b)) & 1) for b in range(n)))


def equivalent_bruteforce(s: RevisionSequence, r: RevisionSequence,
                          cap: int | None = None) -> Verdict:
    """Compare ``i <= j`` under both orders for every pair of models.

    The pair count ``2**(2n)`` must stay within ``2**cap``. On disagreement
    the witness is the first differing pair, scanning ``i`` then ``j`` in
    model enumeration order.
    """
    alphabet = common_alphabet(s, r)
    cap = max_vars() if cap is None else cap
    if 2 * len(alphabet) > cap:
        raise EnumerationCapError(
            f"{len(alphabet)} variables give 2^{2 * len(alphabet)} model pairs, "
            f"beyond the cap of 2^{cap}")
    differ = _leq_matrix(s.formulas, alphabet) != _leq_matrix(r.formulas, alphabet)
    if not differ.any():
        return Verdict(True, engine="bruteforce")
    i, j = divmod(int(np.argmax(differ)), differ.shape[1])
    return Verdict(False, Witness(_model_at(alphabet, i), _model_at(alphabet, j)),
                   engine="bruteforce")


def q_conjunction(s: RevisionSequence | Sequence[Formula], bits: Sequence[bool]) -> Formula:
    """Conjunction taking each formula of ``s`` positively or negated per ``bits``."""
    formulas = tuple(s)
    if len(formulas) != len(bits):
        raise ValueError(f"{len(bits)} bits for {len(formulas)} formulas")
    return conj(*(f if b else Not(f) for f, b in zip(formulas, bits)))


Entailment = Callable[[Formula, Formula], bool]


def redundant_last_by_conjunctions(s: RevisionSequence, entail: Entailment = solver.entails,
                                   cap: int = DEFAULT_CONJUNCTION_CAP) -> bool:
    """Whether the last formula of ``s`` is redundant, via conjunction cells.

    The last formula ``S_m`` is redundant iff every conjunction of the other
    formulas, each taken positively or negated, entails ``S_m`` or its
    negation. ``entail(premise, conclusion)`` decides entailment.
    """
    if not s.formulas:
        raise ValueError("sequence is empty")
    *rest, last = s.formulas
    if len(rest) > cap:
        raise EnumerationCapError(f"2^{len(rest)} conjunctions exceed the cap of 2^{cap}")
    negated = Not(last)
    for bits in itertools.product((True, False), repeat=len(rest)):
        q = q_conjunction(rest, bits)
        if not (entail(q, last) or entail(q, negated)):
            return False
    return True
