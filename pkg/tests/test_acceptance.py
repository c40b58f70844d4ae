"""Acceptance criteria, one test per criterion.

Each criterion prints a single PASS/FAIL line (also collected into the
pytest terminal summary). Run directly with ``python3 tests/test_acceptance.py``
to get just the nine lines.
"""

from __future__ import annotations

import contextlib
import io
import itertools
import random
import sys
import time
from pathlib import Path


from lexirev import cli
from lexirev.encoder import check_equivalence, check_redundant_last
from lexirev.formula import Cnf, cnf_to_formula
from lexirev.horn import horn_neg_equiv, redundant_two_horn
from lexirev.redundancy import equivalent, is_redundant_at
from lexirev.semantics import (
    RevisionSequence, equivalent_bruteforce, leq, redundant_last_by_conjunctions,
)
from lexirev.solver import export_dimacs, solve

import structural
from oracles import (
    assignments, clause_holds, horn_pair, pool_sequences, random_cnf, random_horn,
    mirrored_horn, random_mixed_cnf, random_sequence, sparse_horn,
)

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script outside pytest
    ACCEPTANCE_LINES = []


def report(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def random_pairs(seed: int = 3, count: int = 500):
    rng = random.Random(seed)
    pairs = []
    for _ in range(count):
        n = rng.randint(1, 4)
        s = random_sequence(rng, n, rng.randint(0, 4))
        if rng.random() < 0.3:
            # near misses: drop, repeat or negate one formula of s
            formulas = list(s.formulas)
            if formulas:
                k = rng.randrange(len(formulas))
                choice = rng.random()
                if choice < 0.4:
                    del formulas[k]
                elif choice < 0.7:
                    formulas.append(formulas[k])
                else:
                    formulas.insert(k + 1, formulas[k])
            r = RevisionSequence(tuple(formulas), s.alphabet)
        else:
            r = random_sequence(rng, n, rng.randint(0, 4))
        pairs.append((s, r))
    return pairs


# ---------------------------------------------------------------------------

def test_criterion_1_worked_example():
    start = time.perf_counter()
    s = RevisionSequence.parse("a & b", "a & !b", "!a & b", "!a & !b")
    r = RevisionSequence.parse("a", "b")
    sat = equivalent(s, r, "sat")
    brute = equivalent(s, r, "bruteforce")
    elapsed = time.perf_counter() - start
    ok = bool(sat) and bool(brute) and elapsed < 1.0
    report(1, ok, f"sat={sat.holds} bruteforce={brute.holds} in {elapsed:.3f}s (< 1s)")
    assert ok


def test_criterion_2_counterexample():
    start = time.perf_counter()
    short = RevisionSequence.parse("a", "!a | b")
    longer = RevisionSequence.parse("a", "!a | b", "a & b")
    v1 = is_redundant_at(short, 2)
    v2 = is_redundant_at(longer, 2)
    b1 = is_redundant_at(short, 2, "bruteforce")
    b2 = is_redundant_at(longer, 2, "bruteforce")
    elapsed = time.perf_counter() - start
    w = v1.witness
    witness_ok = (w is not None and w.i["a"] and w.j["a"] and w.i["b"] != w.j["b"]
                  and leq(w.i, w.j, short) != leq(w.i, w.j, short.without(2)))
    ok = (not v1 and witness_ok and bool(v2) and not b1 and bool(b2) and elapsed < 1.0)
    report(2, ok, f"[a,!a|b] pos 2 irredundant with witness i=({w.i if w else None}) "
                  f"j=({w.j if w else None}); [a,!a|b,a&b] pos 2 redundant={v2.holds}; "
                  f"{elapsed:.3f}s (< 1s)")
    assert ok


def test_criterion_3_oracle_agreement():
    start = time.perf_counter()
    seqs = pool_sequences(3)
    disagreements = 0
    checked = 0
    for s in seqs:
        for r in seqs:
            disagreements += check_equivalence(s, r).holds != equivalent_bruteforce(s, r).holds
            checked += 1
    pool_count = checked
    for s, r in random_pairs():
        sat = check_equivalence(s, r)
        disagreements += sat.holds != equivalent_bruteforce(s, r).holds
        if not sat.holds:
            w = sat.witness
            disagreements += leq(w.i, w.j, s) == leq(w.i, w.j, r)
        checked += 1
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and elapsed < 60
    report(3, ok, f"{pool_count} pool pairs + {checked - pool_count} random pairs, "
                  f"{disagreements} disagreements, {elapsed:.1f}s (< 60s)")
    assert ok


def test_criterion_4_q_conjunctions():
    start = time.perf_counter()
    seqs = [s for s in pool_sequences(3) if len(s)]
    seqs += [s for s, _ in random_pairs() if len(s)]
    disagreements = 0
    redundant = 0
    for s in seqs:
        expected = equivalent_bruteforce(s, s.without(len(s))).holds
        redundant += expected
        disagreements += redundant_last_by_conjunctions(s) != expected
    elapsed = time.perf_counter() - start
    ok = disagreements == 0
    report(4, ok, f"{len(seqs)} sequences ({redundant} redundant), "
                  f"{disagreements} disagreements, {elapsed:.1f}s")
    assert ok


def _large_horn_instances(rng):
    """Ten pairs with 200 clauses over 100 variables each.

    Dense random sets (usually inconsistent), sparse random sets (usually
    consistent) and mirrored pairs where one side is the negation of the
    other, which drives the variable elimination through every variable.
    """
    out = [(random_horn(rng, 100, 200), random_horn(rng, 100, 200)) for _ in range(3)]
    out += [(sparse_horn(rng), sparse_horn(rng)) for _ in range(3)]
    out += [mirrored_horn(rng)[::-1] for _ in range(4)]
    return out


def test_criterion_5_horn_fast_path():
    rng = random.Random(5)
    disagreements = 0
    redundant = 0
    pairs = 1000
    for _ in range(pairs):
        s1, s2 = horn_pair(rng, rng.randint(1, 6))
        fast = redundant_two_horn(s1, s2)
        seq = RevisionSequence((cnf_to_formula(s1), cnf_to_formula(s2)))
        disagreements += fast != check_redundant_last(seq).holds
        redundant += fast
    slowest = 0.0
    for s1, s2 in _large_horn_instances(random.Random(55)):
        start = time.perf_counter()
        redundant_two_horn(s1, s2)
        slowest = max(slowest, time.perf_counter() - start)
    ok = disagreements == 0 and slowest < 1.0
    report(5, ok, f"{pairs} random Horn pairs ({redundant} redundant), {disagreements} "
                  f"disagreements; slowest 200-clause/100-variable instance {slowest:.3f}s (< 1s)")
    assert ok


HORN_POOL = (
    (), ("a",), ("!a",), ("b",), ("!b", "c"), ("!a", "!b"), ("!a", "b"),
    ("!c",), ("!b", "!c", "a"), ("c",), ("c", "!c"), ("!a", "!c"),
)


def _mask(clauses, names=("a", "b", "c")):
    bits = 0
    for k, env in enumerate(assignments(names)):
        if all(any(env[l.lstrip("!")] != l.startswith("!") for l in c) for c in clauses):
            bits |= 1 << k
    return bits


def test_criterion_6_negated_equivalence():
    start = time.perf_counter()
    formulas = [combo for size in range(4) for combo in itertools.combinations(HORN_POOL, size)]
    cnfs = [Cnf.of(*combo) for combo in formulas]
    masks = [_mask(combo) for combo in formulas]
    full = (1 << 8) - 1
    disagreements = 0
    positives = 0
    for c1, m1 in zip(cnfs, masks):
        for c2, m2 in zip(cnfs, masks):
            expected = m1 == full & ~m2
            positives += expected
            disagreements += horn_neg_equiv(c1, c2) != expected
    elapsed = time.perf_counter() - start
    ok = disagreements == 0
    report(6, ok, f"{len(cnfs) ** 2} Horn pairs over 3 variables ({positives} with F1 == !F2), "
                  f"{disagreements} disagreements, {elapsed:.1f}s")
    assert ok


def test_criterion_7_hardness_reduction(tmp_path: Path):
    start = time.perf_counter()
    rng = random.Random(7)
    disagreements = 0
    unsat = 0
    instances = 200
    for k in range(instances):
        n = rng.randint(1, 6)
        m = rng.randint(1, 5 * n + 3)
        source = random_cnf(rng, n, m)
        src_path = tmp_path / f"f{k}.cnf"
        out_path = tmp_path / f"f{k}.seq"
        src_path.write_text(export_dimacs(source))
        with contextlib.redirect_stdout(io.StringIO()):
            if cli.main(["gen-hard", str(src_path), "-o", str(out_path)]) != 0:
                disagreements += 1
                continue
            code = cli.main(["redundant", str(out_path)])
        source_unsat = not solve(source).satisfiable
        unsat += source_unsat
        disagreements += (code == 0) != source_unsat
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and elapsed < 60
    report(7, ok, f"{instances} random 3-CNFs ({unsat} unsatisfiable), {disagreements} "
                  f"disagreements, {elapsed:.1f}s (< 60s)")
    assert ok


def test_criterion_8_structural_suites():
    start = time.perf_counter()
    failures = {}
    for k, (name, check) in enumerate(structural.SUITES.items()):
        bad = check(random.Random(800 + k), 200)
        if bad:
            failures[name] = len(bad)
    elapsed = time.perf_counter() - start
    ok = not failures
    detail = "all zero violations" if ok else f"violations {failures}"
    report(8, ok, f"{len(structural.SUITES)} suites x 200 random cases over 3 variables, "
                  f"{detail}, {elapsed:.1f}s")
    assert ok


def test_criterion_9_solver():
    start = time.perf_counter()
    rng = random.Random(9)
    disagreements = 0
    bad_models = 0
    sat_count = 0
    for _ in range(500):
        n = rng.randint(1, 4)
        cnf = random_mixed_cnf(rng, n, rng.randint(0, 10))
        names = sorted({l.var.name for c in cnf.clauses for l in c.literals})
        expected = any(all(clause_holds(c, env) for c in cnf.clauses)
                       for env in assignments(names))
        result = solve(cnf)
        disagreements += result.satisfiable != expected
        if result.satisfiable:
            sat_count += 1
            env = {v.name: b for v, b in result.model.values.items()}
            bad_models += not all(clause_holds(c, env) for c in cnf.clauses)
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and bad_models == 0
    report(9, ok, f"500 random CNFs ({sat_count} satisfiable), {disagreements} disagreements, "
                  f"{bad_models} models failing a clause, {elapsed:.1f}s")
    assert ok


if __name__ == "__main__":
    import tempfile

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for test in tests:
        try:
            if "tmp_path" in test.__code__.co_varnames[:test.__code__.co_argcount]:
                with tempfile.TemporaryDirectory() as d:
                    test(Path(d))
            else:
                test()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
