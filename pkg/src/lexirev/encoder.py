"""Propositional encoding of order non-equivalence.

Two models over the original alphabet ``X`` are represented by one model
over two fresh copies ``Y`` and ``Z``. For each formula of a sequence,
selector variables record whether the ``Y`` model is strictly below the ``Z``
model (``m``/``n``) or tied with it (``e``/``f``); ``a`` and ``b`` capture
``Y <= Z`` under each sequence. The conjunction with ``a xor b`` is
satisfiable exactly when the two sequences order some pair differently.

Fresh variables use reserved ``__`` prefixes, which the parser refuses for
user identifiers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .formula import (
    And, Cnf, Const, Formula, Iff, Model, Not, Or, TRUE, Var, rename, simplify_constants,
    _clean_clauses, _ints_to_cnf, _Tseitin, _tseitin_ints,
)
from .semantics import RevisionSequence, Verdict, Witness, common_alphabet
from .solver import _solve_ints, export_dimacs

__all__ = [
    "EncodingContext", "DiffEncoding", "strict_formula", "equiv_formula",
    "order_formula", "pad", "build_diff", "diff_cnf", "diff_dimacs", "check_equivalence", "check_redundant_last",
]


@dataclass(frozen=True)
class EncodingContext:
    x_vars: tuple[Var, ...]
    y_vars: tuple[Var, ...]
    z_vars: tuple[Var, ...]
    m_vars: tuple[Var, ...] = ()
    e_vars: tuple[Var, ...] = ()
    n_vars: tuple[Var, ...] = ()
    f_vars: tuple[Var, ...] = ()
    a_var: Var = Var("__a")
    b_var: Var = Var("__b")

    @classmethod
    def create(cls, alphabet: Sequence[Var], length: int = 0) -> EncodingContext:
        x = tuple(alphabet)
        if any(v.name.startswith("__") for v in x):
            raise ValueError("original variables must not use the reserved '__' prefix")

        def family(prefix: str) -> tuple[Var, ...]:
            return tuple(Var(f"__{prefix}_{k}") for k in range(1, length + 1))

        return cls(
            x_vars=x,
            y_vars=tuple(Var(f"__y_{v.name}") for v in x),
            z_vars=tuple(Var(f"__z_{v.name}") for v in x),
            m_vars=family("m"), e_vars=family("e"),
            n_vars=family("n"), f_vars=family("f"),
        )

    @property
    def to_y(self) -> dict[Var, Var]:
        return dict(zip(self.x_vars, self.y_vars))

    @property
    def to_z(self) -> dict[Var, Var]:
        return dict(zip(self.x_vars, self.z_vars))

    def decode(self, model: Model) -> Witness:
        """Read the ``Y`` and ``Z`` parts of ``model`` back as two models over ``X``."""
        values = model.values
        i = Model(self.x_vars, tuple(values.get(y, False) for y in self.y_vars))
        j = Model(self.x_vars, tuple(values.get(z, False) for z in self.z_vars))
        return Witness(i, j)

    def encode_pair(self, i: Model, j: Model) -> dict[Var, bool]:
        """Assignment over ``Y`` and ``Z`` representing the pair ``(i, j)``."""
        vi, vj = i.values, j.values
        out = {y: vi[x] for x, y in zip(self.x_vars, self.y_vars)}
        out.update({z: vj[x] for x, z in zip(self.x_vars, self.z_vars)})
        return out


@dataclass(frozen=True)
class DiffEncoding:
    formula: Formula
    context: EncodingContext


def strict_formula(s_i: Formula, ctx: EncodingContext) -> Formula:
    """``S_i`` on the ``Y`` copy and not on the ``Z`` copy."""
    return _strict(rename(s_i, ctx.to_y), rename(s_i, ctx.to_z))


def equiv_formula(s_i: Formula, ctx: EncodingContext) -> Formula:
    return _equiv(rename(s_i, ctx.to_y), rename(s_i, ctx.to_z))


def _strict(on_y: Formula, on_z: Formula) -> Formula:
    return And((on_y, Not(on_z)))


def _equiv(on_y: Formula, on_z: Formula) -> Formula:
    return Iff(on_y, on_z)


def order_formula(m: Sequence[Var], e: Sequence[Var]) -> Formula:
    """``m_1 | (e_1 & (m_2 | (e_2 & ...)))``; the innermost level is ``m_k | e_k``."""
    if len(m) != len(e):
        raise ValueError(f"selector lists differ in length: {len(m)} and {len(e)}")
    if not m:
        return TRUE
    result: Formula = Or((m[-1], e[-1]))
    for mi, ei in zip(reversed(m[:-1]), reversed(e[:-1])):
        result = Or((mi, And((ei, result))))
    return result


def pad(s: RevisionSequence, length: int) -> RevisionSequence:
    """Extend ``s`` to ``length`` formulas by repeating its last one (``true`` if empty)."""
    if length <= len(s):
        return s
    last = s.formulas[-1] if s.formulas else TRUE
    return RevisionSequence(s.formulas + (last,) * (length - len(s)), s.alphabet)


def build_diff(s: RevisionSequence, r: RevisionSequence) -> DiffEncoding:
    """The non-equivalence formula for ``s`` and ``r`` over their joint alphabet."""
    alphabet = common_alphabet(s, r)
    length = max(len(s), len(r))
    s, r = pad(s, length), pad(r, length)
    ctx = EncodingContext.create(alphabet, length)
    to_y, to_z = ctx.to_y, ctx.to_z
    # one shared renaming per distinct formula object, so clausification
    # defines each copy once
    copies: dict[int, tuple[Formula, Formula]] = {}
    for f in s.formulas + r.formulas:
        if id(f) not in copies:
            copies[id(f)] = (rename(f, to_y), rename(f, to_z))
    parts: list[Formula] = []
    parts += [Iff(m, _strict(*copies[id(f)])) for m, f in zip(ctx.m_vars, s)]
    parts += [Iff(e, _equiv(*copies[id(f)])) for e, f in zip(ctx.e_vars, s)]
    parts.append(Iff(ctx.a_var, order_formula(ctx.m_vars, ctx.e_vars)))
    parts += [Iff(n, _strict(*copies[id(f)])) for n, f in zip(ctx.n_vars, r)]
    parts += [Iff(f_, _equiv(*copies[id(f)])) for f_, f in zip(ctx.f_vars, r)]
    parts.append(Iff(ctx.b_var, order_formula(ctx.n_vars, ctx.f_vars)))
    parts.append(Not(Iff(ctx.a_var, ctx.b_var)))
    return DiffEncoding(And(tuple(parts)), ctx)


def diff_cnf(encoding: DiffEncoding) -> Cnf:
    """Clausal form of the encoding."""
    ctx = encoding.context
    return _ints_to_cnf(*_tseitin_ints(encoding.formula, ctx.y_vars + ctx.z_vars))


def diff_dimacs(encoding: DiffEncoding) -> str:
    """DIMACS text of :func:`diff_cnf`, numbering the ``Y`` then ``Z`` copies first."""
    cnf = diff_cnf(encoding)
    order = list(encoding.context.y_vars + encoding.context.z_vars)
    seen = set(order)
    order += [v for v in cnf.var_order() if v not in seen]
    return export_dimacs(cnf, {v: k for k, v in enumerate(order, 1)})


def _diff_ints(s: RevisionSequence, r: RevisionSequence
               ) -> tuple[EncodingContext, list[list[int]], list[Var]]:
    """Integer clauses of the difference formula, numbered ``Y`` then ``Z`` first.

    Gives the definitions that clausifying :func:`build_diff` would, but maps
    the leaves of each formula onto the ``Y`` or ``Z`` copy while clausifying
    instead of building renamed copies first. Constant formulas become a
    literal fixed to true, and ``a xor b`` is the two clauses ``a | b`` and
    ``!a | !b``.
    """
    alphabet = common_alphabet(s, r)
    length = max(len(s), len(r))
    s, r = pad(s, length), pad(r, length)
    ctx = EncodingContext.create(alphabet, length)
    t = _Tseitin()
    for v in ctx.y_vars + ctx.z_vars:
        t.var(v)
    to_y, to_z = ctx.to_y, ctx.to_z
    add = t.clauses.append
    top: list[int] = []
    copies: dict[int, tuple[int, int]] = {}

    def pair(f: Formula) -> tuple[int, int]:
        hit = copies.get(id(f))
        if hit is None:
            g = simplify_constants(f)
            if isinstance(g, Const):
                if not top:
                    top.append(t.fresh())
                    add([top[0]])
                hit = (top[0], top[0]) if g.value else (-top[0], -top[0])
            else:
                hit = (t.lit(g, to_y), t.lit(g, to_z))
            copies[id(f)] = hit
        return hit

    def selectors(seq: RevisionSequence, strict: tuple[Var, ...], tie: tuple[Var, ...]) -> None:
        for f, sv, tv in zip(seq, strict, tie):
            y, z = pair(f)
            m, e = t.var(sv), t.var(tv)
            add([-m, y])
            add([-m, -z])
            add([m, -y, z])
            add([-e, -y, z])
            add([-e, y, -z])
            add([e, y, z])
            add([e, -y, -z])

    selectors(s, ctx.m_vars, ctx.e_vars)
    selectors(r, ctx.n_vars, ctx.f_vars)
    a, b = t.var(ctx.a_var), t.var(ctx.b_var)
    if length:
        t.define(order_formula(ctx.m_vars, ctx.e_vars), a)
        t.define(order_formula(ctx.n_vars, ctx.f_vars), b)
    else:
        add([a])
        add([b])
    add([a, b])
    add([-a, -b])
    return ctx, _clean_clauses(t.clauses), t.names


def check_equivalence(s: RevisionSequence, r: RevisionSequence,
                      budget: int | None = None) -> Verdict:
    """Decide ``s == r`` by solving the clausified difference formula.

    Unsatisfiable means equivalent; otherwise the satisfying assignment is
    decoded into a witness pair.
    """
    ctx, clauses, names = _diff_ints(s, r)
    model = _solve_ints(clauses, names, budget)
    if model is None:
        return Verdict(True, engine="sat")
    return Verdict(False, ctx.decode(model), engine="sat")


def check_redundant_last(s: RevisionSequence, budget: int | None = None) -> Verdict:
    """Whether dropping the last formula of ``s`` leaves the order unchanged."""
    if not s.formulas:
        raise ValueError("sequence is empty")
    return check_equivalence(s, s.without(len(s)), budget)
