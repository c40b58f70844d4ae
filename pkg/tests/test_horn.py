import itertools
import random
import time

import pytest
from hypothesis import given, settings

from lexirev.encoder import check_redundant_last
from lexirev.formula import (
    Clause, Cnf, Literal, Var, cnf_to_formula, is_horn, to_cnf_equivalent,
)
from lexirev.horn import (
    NotHornError, PRIME_SUFFIX, SELECTOR_NAME, build_hardness_instance, entailed_by_negvar,
    entails_var, horn_entails, horn_entails_clause, horn_equiv, horn_neg_equiv, horn_sat,
    horn_tautological, least_model, negativize, percent_remove, redundant_two_horn,
)
from lexirev.semantics import RevisionSequence
from lexirev.solver import solve

from oracles import (
    assignments, clause_holds, cnf_sat_by_enumeration, horn_pair, mirrored_horn, names_for,
    random_cnf, random_horn,
)
from strategies import horn_cnfs

a, b, x = Var("a"), Var("b"), Var("x")


def holds(cnf, env):
    return all(clause_holds(cl, env) for cl in cnf.clauses)


def names_of(*cnfs):
    return sorted({l.var.name for f in cnfs for cl in f.clauses for l in cl.literals})


# --- satisfiability and entailment --------------------------------------------------

def test_horn_sat_examples():
    assert horn_sat(Cnf.of(["!a", "b"], ["a"]))
    assert not horn_sat(Cnf.of(["a"], ["!a"]))
    assert horn_sat(Cnf())
    assert not horn_sat(Cnf.of([]))


def test_non_horn_rejected():
    with pytest.raises(NotHornError):
        horn_sat(Cnf.of(["a", "b"]))
    with pytest.raises(NotHornError):
        horn_neg_equiv(Cnf.of(["a"]), Cnf.of(["a", "b"]))
    with pytest.raises(NotHornError):
        redundant_two_horn(Cnf.of(["a", "b"]), Cnf.of(["a"]))


def test_least_model():
    assert least_model(Cnf.of(["!a", "b"], ["a"], ["!b", "!c"])) == {a, b}
    assert least_model(Cnf.of(["!a", "b"]), facts=[a]) == {a, b}
    assert least_model(Cnf.of(["!a"]), facts=[a]) is None


def test_horn_sat_agrees_with_solver():
    rng = random.Random(1)
    for _ in range(300):
        f = random_horn(rng, rng.randint(1, 6), rng.randint(0, 10))
        assert horn_sat(f) == solve(f).satisfiable == cnf_sat_by_enumeration(f)


@given(horn_cnfs())
def test_least_model_is_a_model_below_all_models(f):
    model = least_model(f)
    names = names_of(f)
    models = [env for env in assignments(names) if holds(f, env)]
    if model is None:
        assert not models
        return
    env = {n: Var(n) in model for n in names}
    assert holds(f, env)
    for other in models:
        assert all(other[n] for n in names if env[n])


def test_entails_clause_examples():
    assert horn_entails_clause(Cnf.of(["a"]), Clause(["a", "b"]))
    assert horn_entails_clause(Cnf.of(["!a", "b"], ["a"]), Clause(["b"]))
    assert not horn_entails_clause(Cnf(), Clause(["a"]))


def test_horn_equiv_examples():
    assert horn_equiv(Cnf.of(["a"], ["!a", "b"]), Cnf.of(["a"], ["b"]))
    assert not horn_equiv(Cnf.of(["a"]), Cnf.of(["b"]))
    f = Cnf.of(["!a", "b"], ["!b"])
    assert horn_equiv(f, f)


@settings(max_examples=150)
@given(horn_cnfs(), horn_cnfs())
def test_entailment_matches_truth_table(f, g):
    names = names_of(f, g)
    expected = all(holds(g, env) for env in assignments(names) if holds(f, env))
    assert horn_entails(f, g) == expected


# --- variable elimination -----------------------------------------------------------

def test_percent_remove_examples():
    assert percent_remove(Cnf.of(["x"], ["!x"]), x).same_clauses(Cnf.of([]))
    assert percent_remove(Cnf.of(["x", "a"], ["!x", "b"]), x).same_clauses(Cnf.of(["b"]))
    f = Cnf.of(["a", "!b"])
    assert percent_remove(f, x) == f


def test_single_variable_tests():
    assert entails_var(Cnf.of(["x"]), x)
    assert entailed_by_negvar(Cnf.of(["!x", "a"], ["!x"]), x)
    assert not entailed_by_negvar(Cnf.of(["!x", "a"], ["b"]), x)


def test_remove_literal_soundness_exhaustive():
    # every Horn clause set over {x, a, b} with at most two clauses
    vs = (x, a, b)
    pool = []
    for signs in itertools.product((None, True, False), repeat=3):
        lits = [Literal(v, s) for v, s in zip(vs, signs) if s is not None]
        if sum(1 for s in signs if s) <= 1:
            pool.append(Clause(lits))
    names = ["x", "a", "b"]
    for k in range(3):
        for combo in itertools.combinations(pool, k):
            f = Cnf(combo)
            rest = percent_remove(f, x)
            for env in assignments(names):
                if entails_var(f, x):
                    assert holds(f, env) == (env["x"] and holds(rest, env))
                if entailed_by_negvar(f, x):
                    assert holds(f, env) == ((not env["x"]) or holds(rest, env))


def test_horn_tautological_examples():
    assert horn_tautological(Cnf.of(["x", "!x"]))
    assert horn_tautological(Cnf())
    assert not horn_tautological(Cnf.of(["x"]))


# --- models of Horn formulas --------------------------------------------------------

def test_models_closed_under_intersection():
    rng = random.Random(3)
    for _ in range(150):
        n = rng.randint(1, 6)
        f = random_horn(rng, n, rng.randint(1, 8))
        names = names_for(n)
        models = [env for env in assignments(names) if holds(f, env)]
        for m1, m2 in itertools.combinations(models, 2):
            assert holds(f, {k: m1[k] and m2[k] for k in names})


def test_positive_clause_entailed_through_a_literal():
    rng = random.Random(4)
    checked = 0
    for _ in range(400):
        n = rng.randint(2, 5)
        f = random_horn(rng, n, rng.randint(1, 7))
        if not horn_sat(f):
            continue
        chosen = rng.sample(names_for(n), rng.randint(2, n))
        c = Clause(Literal(Var(v)) for v in chosen)
        if horn_entails_clause(f, c):
            checked += 1
            assert any(horn_entails_clause(f, Clause((l,))) for l in c.literals)
    assert checked > 20


# --- negated equivalence ----------------------------------------------------------

def test_neg_equiv_examples():
    assert horn_neg_equiv(Cnf.of(["a"]), Cnf.of(["!a"]))
    assert horn_neg_equiv(Cnf.of(["!x"]), Cnf.of(["x"]))
    assert not horn_neg_equiv(Cnf.of(["a"]), Cnf.of(["b"]))


def test_neg_equiv_with_tautological_clauses():
    # a tautological clause must not count as containing !x
    assert horn_neg_equiv(Cnf.of(["a"], ["x", "!x"]), Cnf.of(["!a"]))
    assert horn_neg_equiv(Cnf(), Cnf.of([]))
    assert horn_neg_equiv(Cnf.of(["x", "!x"]), Cnf.of(["a"], ["!a"]))


def test_neg_equiv_exhaustive_pool():
    vs = (a, b, Var("c"))
    pool = [Clause(lits) for lits in (
        ["a"], ["!a"], ["!a", "b"], ["!b", "c"], ["!a", "!b"], ["b"], ["!c"], ["!a", "!b", "c"],
    )]
    sets = [Cnf(combo) for k in range(4) for combo in itertools.combinations(pool, k)]
    names = [v.name for v in vs]
    for f1, f2 in itertools.product(sets, repeat=2):
        expected = all(holds(f1, env) != holds(f2, env) for env in assignments(names))
        assert horn_neg_equiv(f1, f2) == expected, (f1, f2)


@settings(max_examples=300)
@given(horn_cnfs(max_clauses=4), horn_cnfs(max_clauses=4))
def test_neg_equiv_matches_truth_table(f1, g):
    names = names_of(f1, g)
    expected = all(holds(f1, env) != holds(g, env) for env in assignments(names))
    assert horn_neg_equiv(f1, g) == expected


def test_mirrored_instances_are_negations():
    rng = random.Random(6)
    for _ in range(5):
        f1, f2 = mirrored_horn(rng, n=12, m=14, core_size=4)
        assert is_horn(f1) and is_horn(f2)
        assert horn_neg_equiv(f1, f2) and horn_neg_equiv(f2, f1)
        names = names_of(f1, f2)
        assert all(holds(f1, env) != holds(f2, env) for env in assignments(names))


# --- two-formula redundancy -------------------------------------------------------

def test_redundant_two_examples():
    assert redundant_two_horn(Cnf.of(["a"]), Cnf.of(["b"], ["!b"]))
    assert redundant_two_horn(Cnf.of(["a"]), Cnf.of(["!a"]))
    assert not redundant_two_horn(Cnf.of(["a"]), Cnf.of(["a", "!a"], ["b"]))


def test_redundant_two_agrees_with_encoder():
    rng = random.Random(7)
    for _ in range(1000):
        n = rng.randint(1, 6)
        s1, s2 = horn_pair(rng, n)
        alphabet = tuple(Var(v) for v in names_for(n))
        s = RevisionSequence((cnf_to_formula(s1), cnf_to_formula(s2)), alphabet)
        assert redundant_two_horn(s1, s2) == bool(check_redundant_last(s)), (s1, s2)


def _best_of(runs, fn):
    best = float("inf")
    for _ in range(runs):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def test_near_linear_scaling():
    rng = random.Random(9)
    small = mirrored_horn(rng, n=100, m=100, core_size=10)
    large = mirrored_horn(rng, n=200, m=200, core_size=10)
    t_small = _best_of(3, lambda: redundant_two_horn(*small))
    t_large = _best_of(3, lambda: redundant_two_horn(*large))
    assert redundant_two_horn(*small) and redundant_two_horn(*large)
    assert t_large <= 4 * t_small + 0.01


# --- hardness instances -----------------------------------------------------------

def test_negativize_example():
    xp = Var("x" + PRIME_SUFFIX)
    assert negativize(Cnf.of(["x"])).same_clauses(
        Cnf((Clause((Literal(xp, False),)), Clause((Literal(x, False), Literal(xp, False))))))


def test_negativize_is_horn_and_preserves_satisfiability():
    rng = random.Random(10)
    for _ in range(150):
        n = rng.randint(1, 5)
        f = random_cnf(rng, n, rng.randint(1, 10))
        g = negativize(f)
        assert is_horn(g)
        assert not any(l.positive for cl in g.clauses for l in cl.literals)
        link = tuple(Clause((Literal(v), Literal(Var(v.name + PRIME_SUFFIX))))
                     for v in f.var_order())
        assert solve(Cnf(g.clauses + link)).satisfiable == solve(f).satisfiable


def test_negativize_rejects_name_clash():
    with pytest.raises(ValueError):
        negativize(Cnf.of(["x", "x" + PRIME_SUFFIX]))


def test_hardness_instance_shape():
    inst = build_hardness_instance(Cnf.of(["x", "z"], ["!x"]))
    s = inst.sequence
    assert len(s) == 4
    assert s.formulas[-1] == Var(SELECTOR_NAME)
    for f in s.formulas:
        assert is_horn(to_cnf_equivalent(f))


def test_hardness_examples():
    assert check_redundant_last(build_hardness_instance(Cnf.of(["x"], ["!x"])).sequence)
    assert not check_redundant_last(build_hardness_instance(Cnf.of(["x"])).sequence)


def test_hardness_reduction_random():
    rng = random.Random(12)
    for _ in range(40):
        f = random_cnf(rng, 3, rng.randint(2, 14))
        seq = build_hardness_instance(f).sequence
        assert bool(check_redundant_last(seq)) == (not solve(f).satisfiable)


def test_hardness_rejects_selector_clash():
    with pytest.raises(ValueError):
        build_hardness_instance(Cnf.of([SELECTOR_NAME]))
