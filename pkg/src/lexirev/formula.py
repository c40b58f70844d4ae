"""Propositional formulas: AST, parser, printer, evaluation and clausal forms.

Formulas are immutable trees built from :class:`Const`, :class:`Var`,
:class:`Not`, :class:`And`, :class:`Or`, :class:`Implies` and :class:`Iff`.
The operators ``&``, ``|`` and ``~`` build conjunctions, disjunctions and
negations, so ``a & ~b`` is ``And((a, Not(b)))``.

Clausal form uses :class:`Literal`, :class:`Clause` and :class:`Cnf`.
Truth assignments over a fixed alphabet are :class:`Model` values.
"""

from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence, Union

__all__ = [
    "Formula", "Const", "Var", "Not", "And", "Or", "Implies", "Iff",
    "TRUE", "FALSE", "conj", "disj",
    "Literal", "Clause", "Cnf", "Model",
    "FormulaSyntaxError", "UnboundVariableError", "EnumerationCapError",
    "parse_formula", "to_text", "evaluate", "rename", "variables",
    "var_order", "size", "to_cnf", "to_cnf_equivalent", "is_horn",
    "cnf_to_formula", "formula_as_cnf", "enumerate_models", "max_vars",
]

DEFAULT_MAX_VARS = 20
EQUIVALENT_CNF_MAX_VARS = 12
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_KEYWORDS = frozenset({"true", "false"})


class FormulaSyntaxError(ValueError):
    """Malformed formula text; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {self.line}, column {self.column}")


class UnboundVariableError(KeyError):
    pass


class EnumerationCapError(ValueError):
    pass


def max_vars() -> int:
    """Enumeration cap, overridable through ``LEXIREV_MAX_VARS``."""
    raw = os.environ.get("LEXIREV_MAX_VARS")
    if not raw:
        return DEFAULT_MAX_VARS
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"LEXIREV_MAX_VARS must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError("LEXIREV_MAX_VARS must be non-negative")
    return value


# --------------------------------------------------------------------------
# AST
# --------------------------------------------------------------------------

class Formula:
    __slots__ = ()

    def __and__(self, other: Formula) -> Formula:
        return And((self, other))

    def __or__(self, other: Formula) -> Formula:
        return Or((self, other))

    def __invert__(self) -> Formula:
        return Not(self)

    def __str__(self) -> str:
        return to_text(self)

    def variables(self) -> frozenset[Var]:
        return variables(self)


@dataclass(frozen=True, slots=True)
class Const(Formula):
    value: bool

    def __repr__(self) -> str:
        return "TRUE" if self.value else "FALSE"


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True, slots=True)
class Var(Formula):
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not _IDENT.match(self.name):
            raise ValueError(f"invalid variable name {self.name!r}")
        if self.name in _KEYWORDS:
            raise ValueError(f"{self.name!r} is a constant, not a variable name")

    def __repr__(self) -> str:
        return f"Var({self.name!r})"

    def __hash__(self) -> int:
        return hash(self.name)

    def __lt__(self, other: Var) -> bool:
        return self.name < other.name


@dataclass(frozen=True, slots=True)
class Not(Formula):
    child: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    children: tuple[Formula, ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("And needs at least two children; use conj()")
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True, slots=True)
class Or(Formula):
    children: tuple[Formula, ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("Or needs at least two children; use disj()")
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    lhs: Formula
    rhs: Formula


def _fresh_var(name: str) -> Var:
    """Build a Var without validating ``name``; for generated names only."""
    v = object.__new__(Var)
    object.__setattr__(v, "name", name)
    return v


def conj(*parts: Formula) -> Formula:
    """Conjunction of any number of formulas; empty gives TRUE."""
    if not parts:
        return TRUE
    if len(parts) == 1:
        return parts[0]
    return And(parts)


def disj(*parts: Formula) -> Formula:
    """Disjunction of any number of formulas; empty gives FALSE."""
    if not parts:
        return FALSE
    if len(parts) == 1:
        return parts[0]
    return Or(parts)


def _children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (Const, Var)):
        return ()
    if isinstance(f, Not):
        return (f.child,)
    if isinstance(f, (And, Or)):
        return f.children
    return (f.lhs, f.rhs)


def var_order(f: Formula) -> list[Var]:
    """Variables of ``f`` in order of first (left-to-right) occurrence."""
    seen: dict[Var, None] = {}
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            seen.setdefault(node)
        else:
            stack.extend(reversed(_children(node)))
    return list(seen)


def variables(f: Formula) -> frozenset[Var]:
    return frozenset(var_order(f))


def size(f: Formula) -> int:
    """Number of nodes in the tree."""
    return 1 + sum(size(c) for c in _children(f))


# --------------------------------------------------------------------------
# Parsing and printing
# --------------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<iff><->)
  | (?P<imp>->)
  | (?P<op>[!&|()])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            if kind == "op" or kind == "iff" or kind == "imp":
                kind = value
            elif value.startswith("__"):
                raise FormulaSyntaxError(
                    f"identifier {value!r} uses the reserved '__' prefix", text, pos)
            tokens.append((kind, value, pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self, kind: str) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        if tok[0] != kind:
            found = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise FormulaSyntaxError(f"expected {kind!r}, found {found}", self.text, tok[2])
        self.i += 1
        return tok

    def formula(self) -> Formula:
        lhs = self.imp()
        while self.peek() == "<->":
            self.i += 1
            lhs = Iff(lhs, self.imp())
        return lhs

    def imp(self) -> Formula:
        lhs = self.disj()
        if self.peek() == "->":
            self.i += 1
            return Implies(lhs, self.imp())
        return lhs

    def disj(self) -> Formula:
        parts = [self.conj()]
        while self.peek() == "|":
            self.i += 1
            parts.append(self.conj())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conj(self) -> Formula:
        parts = [self.neg()]
        while self.peek() == "&":
            self.i += 1
            parts.append(self.neg())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def neg(self) -> Formula:
        if self.peek() == "!":
            self.i += 1
            return Not(self.neg())
        return self.atom()

    def atom(self) -> Formula:
        kind, value, pos = self.tokens[self.i]
        if kind == "ident":
            self.i += 1
            if value == "true":
                return TRUE
            if value == "false":
                return FALSE
            return Var(value)
        if kind == "(":
            self.i += 1
            inner = self.formula()
            self.take(")")
            return inner
        found = "end of input" if kind == "eof" else repr(value)
        raise FormulaSyntaxError(f"expected a formula, found {found}", self.text, pos)


def parse_formula(text: str) -> Formula:
    """Parse ``text`` into a formula.

    Precedence from tightest: ``!``, ``&``, ``|``, ``->`` (right-associative),
    ``<->`` (left-associative). ``#`` starts a comment running to end of line.

    >>> parse_formula("a -> b -> c")
    Implies(lhs=Var('a'), rhs=Implies(lhs=Var('b'), rhs=Var('c')))
    """
    parser = _Parser(text)
    result = parser.formula()
    parser.take("eof")
    return result


_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5}


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 6)


def to_text(f: Formula) -> str:
    """Render ``f`` in the parser's syntax; parsing the result gives back ``f``."""

    def wrap(child: Formula, needs_parens: bool) -> str:
        text = to_text(child)
        return f"({text})" if needs_parens else text

    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Not):
        return "!" + wrap(f.child, _prec(f.child) < 5)
    if isinstance(f, And):
        return " & ".join(wrap(c, _prec(c) <= 4) for c in f.children)
    if isinstance(f, Or):
        return " | ".join(wrap(c, _prec(c) <= 3) for c in f.children)
    if isinstance(f, Implies):
        return f"{wrap(f.lhs, _prec(f.lhs) <= 2)} -> {wrap(f.rhs, _prec(f.rhs) < 2)}"
    if isinstance(f, Iff):
        return f"{wrap(f.lhs, _prec(f.lhs) < 1)} <-> {wrap(f.rhs, _prec(f.rhs) <= 1)}"
    raise TypeError(f"not a formula: {f!r}")


# --------------------------------------------------------------------------
# Models and evaluation
# --------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Model:
    """Total truth assignment over an ordered alphabet."""

    alphabet: tuple[Var, ...]
    bits: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "bits", tuple(bool(b) for b in self.bits))
        if len(self.alphabet) != len(self.bits):
            raise ValueError("alphabet and values differ in length")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet contains duplicates")

    @classmethod
    def from_dict(cls, values: Mapping[Union[Var, str], bool],
                  alphabet: Sequence[Var] | None = None) -> Model:
        named = {(k if isinstance(k, Var) else Var(k)): bool(v) for k, v in values.items()}
        if alphabet is None:
            alphabet = tuple(named)
        alphabet = tuple(alphabet)
        if set(named) != set(alphabet):
            raise ValueError("values must cover exactly the alphabet")
        return cls(alphabet, tuple(named[v] for v in alphabet))

    @property
    def values(self) -> dict[Var, bool]:
        return dict(zip(self.alphabet, self.bits))

    def __getitem__(self, key: Union[Var, str]) -> bool:
        var = key if isinstance(key, Var) else Var(key)
        try:
            return self.bits[self.alphabet.index(var)]
        except ValueError:
            raise UnboundVariableError(var.name) from None

    def restrict(self, alphabet: Sequence[Var]) -> Model:
        values = self.values
        return Model(tuple(alphabet), tuple(values[v] for v in alphabet))

    def __str__(self) -> str:
        return " ".join(f"{v.name}:{int(b)}" for v, b in zip(self.alphabet, self.bits))


def evaluate(f: Formula, model: Union[Model, Mapping[Var, bool]]) -> bool:
    """Classical truth value of ``f`` under ``model``."""
    values = model.values if isinstance(model, Model) else model
    return _eval(f, values)


def _eval(f: Formula, values: Mapping[Var, bool]) -> bool:
    if isinstance(f, Var):
        try:
            return values[f]
        except KeyError:
            raise UnboundVariableError(f.name) from None
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return not _eval(f.child, values)
    if isinstance(f, And):
        return all(_eval(c, values) for c in f.children)
    if isinstance(f, Or):
        return any(_eval(c, values) for c in f.children)
    if isinstance(f, Implies):
        return (not _eval(f.lhs, values)) or _eval(f.rhs, values)
    if isinstance(f, Iff):
        return _eval(f.lhs, values) == _eval(f.rhs, values)
    raise TypeError(f"not a formula: {f!r}")


def enumerate_models(alphabet: Sequence[Var], cap: int | None = None) -> Iterator[Model]:
    """All models over ``alphabet`` by binary counting, first variable most significant.

    The first model is all-false and the last all-true.
    """
    alphabet = tuple(alphabet)
    cap = max_vars() if cap is None else cap
    if len(alphabet) > cap:
        raise EnumerationCapError(
            f"{len(alphabet)} variables exceed the enumeration cap of {cap}")
    for bits in itertools.product((False, True), repeat=len(alphabet)):
        yield Model(alphabet, bits)


def rename(f: Formula, mapping: Mapping[Var, Var]) -> Formula:
    """Substitute variables per ``mapping``; unmapped variables are kept.

    The substitution must be injective on the variables of ``f``.
    """
    mapped: dict[Var, Var] = {}
    kept: set[Var] = set()
    out = _rename(f, mapping, {}, mapped, kept)
    images = set(mapped.values())
    if len(images) != len(mapped) or images & kept:
        raise ValueError("renaming is not injective on the formula's variables")
    return out


def _rename(f: Formula, mapping: Mapping[Var, Var], memo: dict,
            mapped: dict, kept: set) -> Formula:
    hit = memo.get(id(f))
    if hit is not None and hit[0] is f:
        return hit[1]
    if isinstance(f, Var):
        out = mapping.get(f)
        if out is None:
            kept.add(f)
            out = f
        else:
            mapped[f] = out
    elif isinstance(f, Const):
        out = f
    elif isinstance(f, Not):
        out = Not(_rename(f.child, mapping, memo, mapped, kept))
    elif isinstance(f, (And, Or)):
        out = type(f)(tuple(_rename(c, mapping, memo, mapped, kept) for c in f.children))
    else:
        out = type(f)(_rename(f.lhs, mapping, memo, mapped, kept),
                      _rename(f.rhs, mapping, memo, mapped, kept))
    memo[id(f)] = (f, out)
    return out


# --------------------------------------------------------------------------
# Clausal form
# --------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Literal:
    var: Var
    positive: bool = True

    def __invert__(self) -> Literal:
        return Literal(self.var, not self.positive)

    def __str__(self) -> str:
        return self.var.name if self.positive else "!" + self.var.name

    def to_formula(self) -> Formula:
        return self.var if self.positive else Not(self.var)


def _as_literal(x: Union[Literal, Var, str]) -> Literal:
    if isinstance(x, Literal):
        return x
    if isinstance(x, Var):
        return Literal(x)
    if x.startswith(("!", "-", "~")):
        return Literal(Var(x[1:]), False)
    return Literal(Var(x))


@dataclass(frozen=True, slots=True)
class Clause:
    """Disjunction of literals. The empty clause is false.

    Accepts literals, variables, or strings such as ``"!x"``:
    ``Clause(["!a", "b"])``.
    """

    literals: frozenset[Literal] = frozenset()
    positives: frozenset[Var] = field(init=False, compare=False, repr=False)
    negatives: frozenset[Var] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        lits = frozenset(_as_literal(x) for x in self.literals)
        object.__setattr__(self, "literals", lits)
        object.__setattr__(self, "positives", frozenset(l.var for l in lits if l.positive))
        object.__setattr__(self, "negatives", frozenset(l.var for l in lits if not l.positive))

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.sorted_literals())

    def __len__(self) -> int:
        return len(self.literals)

    def __contains__(self, lit) -> bool:
        return _as_literal(lit) in self.literals

    def sorted_literals(self) -> list[Literal]:
        return sorted(self.literals, key=lambda l: (l.var.name, l.positive))

    def is_tautological(self) -> bool:
        return bool(self.positives & self.negatives)

    def variables(self) -> frozenset[Var]:
        return frozenset(l.var for l in self.literals)

    def to_formula(self) -> Formula:
        return disj(*(l.to_formula() for l in self.sorted_literals()))

    def __str__(self) -> str:
        return "{" + ", ".join(str(l) for l in self.sorted_literals()) + "}"


@dataclass(frozen=True, slots=True)
class Cnf:
    """Conjunction of clauses. No clauses is true; an empty member clause is false."""

    clauses: tuple[Clause, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(
            c if isinstance(c, Clause) else Clause(c) for c in self.clauses))

    @classmethod
    def of(cls, *clauses: Iterable) -> Cnf:
        """``Cnf.of(["x"], ["!x", "y"])`` is ``{{x}, {!x, y}}``."""
        return cls(tuple(Clause(c) for c in clauses))

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.clauses)

    def __len__(self) -> int:
        return len(self.clauses)

    def var_order(self) -> list[Var]:
        seen: dict[Var, None] = {}
        for clause in self.clauses:
            for lit in clause:
                seen.setdefault(lit.var)
        return list(seen)

    def variables(self) -> frozenset[Var]:
        return frozenset(self.var_order())

    def is_horn(self) -> bool:
        return is_horn(self)

    def to_formula(self) -> Formula:
        return cnf_to_formula(self)

    def same_clauses(self, other: Cnf) -> bool:
        return set(self.clauses) == set(other.clauses)

    def __str__(self) -> str:
        return "{" + ", ".join(str(c) for c in self.clauses) + "}"


def is_horn(c: Cnf) -> bool:
    """True iff every clause has at most one positive literal."""
    return all(len(clause.positives) <= 1 for clause in c.clauses)


def cnf_to_formula(c: Cnf) -> Formula:
    return conj(*(clause.to_formula() for clause in c.clauses))


def _literal_of(f: Formula) -> Literal | None:
    if isinstance(f, Var):
        return Literal(f)
    if isinstance(f, Not) and isinstance(f.child, Var):
        return Literal(f.child, False)
    return None


def _clause_of(f: Formula) -> Clause | None:
    if isinstance(f, Const) and not f.value:
        return Clause()
    lit = _literal_of(f)
    if lit is not None:
        return Clause((lit,))
    if isinstance(f, Or):
        lits = [_literal_of(c) for c in f.children]
        if all(l is not None for l in lits):
            return Clause(lits)
    return None


def formula_as_cnf(f: Formula) -> Cnf | None:
    """Read ``f`` as a clause set if it is syntactically in CNF, else ``None``."""
    if isinstance(f, Const) and f.value:
        return Cnf()
    parts = f.children if isinstance(f, And) else (f,)
    clauses = []
    for part in parts:
        if isinstance(part, Const) and part.value:
            continue
        clause = _clause_of(part)
        if clause is None:
            return None
        clauses.append(clause)
    return Cnf(tuple(clauses))


def simplify_constants(f: Formula) -> Formula:
    """Remove constants below the root; the result is a constant or constant-free."""
    return _simplify(f, {})


def _simplify(f: Formula, memo: dict) -> Formula:
    if isinstance(f, (Const, Var)):
        return f
    hit = memo.get(id(f))
    if hit is not None and hit[0] is f:
        return hit[1]
    out = _simplify_node(f, memo)
    memo[id(f)] = (f, out)
    return out


def _simplify_node(f: Formula, memo: dict) -> Formula:
    if isinstance(f, Not):
        child = _simplify(f.child, memo)
        if isinstance(child, Const):
            return Const(not child.value)
        return f if child is f.child else Not(child)
    if isinstance(f, (And, Or)):
        absorbing = isinstance(f, Or)
        kept = []
        for c in f.children:
            c = _simplify(c, memo)
            if isinstance(c, Const):
                if c.value == absorbing:
                    return Const(absorbing)
                continue
            kept.append(c)
        if len(kept) == len(f.children) and all(a is b for a, b in zip(kept, f.children)):
            return f
        return (disj if absorbing else conj)(*kept)
    lhs, rhs = _simplify(f.lhs, memo), _simplify(f.rhs, memo)
    if isinstance(f, Implies):
        if isinstance(lhs, Const):
            return rhs if lhs.value else TRUE
        if isinstance(rhs, Const):
            return TRUE if rhs.value else _simplify(Not(lhs), memo)
    else:
        if isinstance(lhs, Const):
            lhs, rhs = rhs, lhs
        if isinstance(rhs, Const):
            if isinstance(lhs, Const):
                return Const(lhs.value == rhs.value)
            return lhs if rhs.value else _simplify(Not(lhs), memo)
    if lhs is f.lhs and rhs is f.rhs:
        return f
    return type(f)(lhs, rhs)


class _ConstantFound(Exception):
    pass


class _Tseitin:
    """Definitional clausification into integer clauses.

    Each non-literal subformula gets one fresh variable equivalent to it.
    A top-level conjunct ``v <-> g`` with ``v`` a variable reuses ``v`` as the
    definition variable of ``g``. Subformulas are shared by object identity.
    """

    def __init__(self, aux_prefix: str = "__t"):
        self.index: dict[Var, int] = {}
        self.names: list[Var] = []
        self.clauses: list[list[int]] = []
        self.memo: dict[tuple[int, int], tuple[Formula, int]] = {}
        self.aux_prefix = aux_prefix
        self.n_aux = 0

    def var(self, v: Var) -> int:
        i = self.index.get(v)
        if i is None:
            self.names.append(v)
            i = self.index[v] = len(self.names)
        return i

    def fresh(self) -> int:
        while True:
            self.n_aux += 1
            v = _fresh_var(f"{self.aux_prefix}{self.n_aux}")
            if v not in self.index:
                return self.var(v)

    def lit(self, f: Formula, sub: dict[Var, Var] | None = None) -> int:
        """Literal equivalent to ``f``, reading each leaf ``x`` as ``sub[x]`` if given."""
        if isinstance(f, Var):
            return self.var(f if sub is None else sub[f])
        if isinstance(f, Not):
            return -self.lit(f.child, sub)
        key = (id(f), id(sub))
        hit = self.memo.get(key)
        if hit is not None and hit[0] is f:
            return hit[1]
        out = self.fresh()
        self.define(f, out, sub)
        self.memo[key] = (f, out)
        return out

    def define(self, f: Formula, out: int, sub: dict[Var, Var] | None = None) -> None:
        """Add clauses forcing literal ``out`` to be equivalent to ``f``."""
        add = self.clauses.append
        lit = self.lit
        if isinstance(f, (Var, Not)):
            x = lit(f, sub)
            add([-out, x])
            add([out, -x])
        elif isinstance(f, And):
            xs = [lit(c, sub) for c in f.children]
            for x in xs:
                add([-out, x])
            add([out] + [-x for x in xs])
        elif isinstance(f, Or):
            xs = [lit(c, sub) for c in f.children]
            for x in xs:
                add([out, -x])
            add([-out] + xs)
        elif isinstance(f, Implies):
            p, q = lit(f.lhs, sub), lit(f.rhs, sub)
            add([-out, -p, q])
            add([out, p])
            add([out, -q])
        elif isinstance(f, Iff):
            p, q = lit(f.lhs, sub), lit(f.rhs, sub)
            add([-out, -p, q])
            add([-out, p, -q])
            add([out, p, q])
            add([out, -p, -q])
        elif isinstance(f, Const):
            raise _ConstantFound
        else:
            raise TypeError(f"unexpected node {f!r}")

    def require(self, f: Formula) -> None:
        if isinstance(f, And):
            for c in f.children:
                self.require(c)
            return
        if isinstance(f, Const):
            if not f.value:
                self.clauses.append([])
            return
        if isinstance(f, Or) and all(_literal_of(c) is not None for c in f.children):
            self.clauses.append([self.lit(c) for c in f.children])
            return
        if isinstance(f, Not) and isinstance(f.child, Or):
            for c in f.child.children:
                self.require(Not(c))
            return
        if isinstance(f, Not) and isinstance(f.child, Not):
            self.require(f.child.child)
            return
        if (isinstance(f, Iff) and isinstance(f.lhs, Var)
                and not isinstance(f.rhs, (Var, Not)) and (id(f.rhs), id(None)) not in self.memo):
            out = self.var(f.lhs)
            self.define(f.rhs, out)
            self.memo[(id(f.rhs), id(None))] = (f.rhs, out)
            return
        self.clauses.append([self.lit(f)])


def _tseitin_ints(f: Formula, order: Sequence[Var] = (), prefetch: bool = True,
                  keep_tautologies: bool = False) -> tuple[list[list[int]], list[Var]]:
    """Equisatisfiable integer clauses for ``f`` plus the index -> variable table.

    Variables listed in ``order`` receive the lowest indices, then (with
    ``prefetch``) the remaining variables of ``f`` by first occurrence, then
    auxiliaries. Duplicate literals are removed; tautological clauses are
    dropped unless ``keep_tautologies``.
    """
    try:
        t = _run_tseitin(f, order, prefetch)
    except _ConstantFound:
        t = _run_tseitin(simplify_constants(f), order, prefetch)
    return _clean_clauses(t.clauses, keep_tautologies), t.names


def _clean_clauses(raw: list[list[int]], keep_tautologies: bool = False) -> list[list[int]]:
    """Remove repeated literals, and tautological clauses unless asked to keep them."""
    clauses = []
    for clause in raw:
        n = len(clause)
        if n == 2:
            clean = clause[0] != clause[1] and clause[0] != -clause[1]
        else:
            clean = n < 2 or len(set(map(abs, clause))) == n
        if not clean:
            clause = list(dict.fromkeys(clause))
            if not keep_tautologies and any(-x in clause for x in clause):
                continue
        clauses.append(clause)
    return clauses


def _run_tseitin(f: Formula, order: Sequence[Var], prefetch: bool) -> _Tseitin:
    t = _Tseitin()
    for v in order:
        t.var(v)
    if prefetch:
        for v in var_order(f):
            t.var(v)
    if isinstance(f, Const) or not isinstance(f, And):
        t.require(simplify_constants(f))
    else:
        t.require(f)
    return t


def _ints_to_cnf(clauses: list[list[int]], names: list[Var]) -> Cnf:
    return Cnf(tuple(
        Clause(Literal(names[abs(x) - 1], x > 0) for x in clause) for clause in clauses))


def to_cnf(f: Formula) -> Cnf:
    """Equisatisfiable CNF using fresh definition variables named ``__t<k>``.

    Models of the result restricted to the variables of ``f`` satisfy ``f``,
    and every model of ``f`` extends to a model of the result. Literals and
    conjunctions of clauses pass through without auxiliary variables;
    tautological clauses are kept.
    """
    return _ints_to_cnf(*_tseitin_ints(f, keep_tautologies=True))


def _nnf(f: Formula, positive: bool = True) -> Formula:
    if isinstance(f, Var):
        return f if positive else Not(f)
    if isinstance(f, Const):
        return Const(f.value == positive)
    if isinstance(f, Not):
        return _nnf(f.child, not positive)
    if isinstance(f, (And, Or)):
        kids = tuple(_nnf(c, positive) for c in f.children)
        return And(kids) if isinstance(f, And) == positive else Or(kids)
    if isinstance(f, Implies):
        return _nnf(Or((Not(f.lhs), f.rhs)), positive)
    both = And((f.lhs, f.rhs))
    neither = And((Not(f.lhs), Not(f.rhs)))
    return _nnf(Or((both, neither)), positive)


def _distribute(f: Formula) -> list[frozenset[Literal]]:
    if isinstance(f, Const):
        return [] if f.value else [frozenset()]
    lit = _literal_of(f)
    if lit is not None:
        return [frozenset((lit,))]
    if isinstance(f, And):
        return [c for child in f.children for c in _distribute(child)]
    result = [frozenset()]
    for child in f.children:
        result = [a | b for a in result for b in _distribute(child)]
    return result


def to_cnf_equivalent(f: Formula) -> Cnf:
    """Logically equivalent CNF by distribution, without fresh variables.

    Exponential in the worst case, so limited to formulas with at most
    12 variables. Tautological and subsumed-duplicate clauses are removed.
    """
    n = len(variables(f))
    if n > EQUIVALENT_CNF_MAX_VARS:
        raise EnumerationCapError(
            f"{n} variables exceed the limit of {EQUIVALENT_CNF_MAX_VARS} for distribution")
    clauses = []
    seen = set()
    for lits in _distribute(_nnf(simplify_constants(f))):
        clause = Clause(lits)
        if clause.is_tautological() or clause in seen:
            continue
        seen.add(clause)
        clauses.append(clause)
    return Cnf(tuple(clauses))
