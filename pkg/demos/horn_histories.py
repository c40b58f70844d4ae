"""
Histories of Horn revisions
===========================

When both revisions of a two-step history are Horn clause sets, deciding
whether the older one can be forgotten takes polynomial time. Three
revisions are already enough to encode unsatisfiability of an arbitrary
CNF, so longer Horn histories fall back to the SAT encoding.
"""

import random
import time

from lexirev import (
    Clause, Cnf, Literal, Var, build_hardness_instance, check_redundant_last,
    check_redundant_two, horn_neg_equiv, import_dimacs, parse_formula, redundant_two_horn,
    solve,
)

# Two-formula histories, routed through the Horn procedure when possible.
for first, second in [("a", "!a"), ("a", "b & !b"), ("a", "(a | !a) & b"),
                      ("a & (!a | b)", "!a | !b")]:
    verdict = check_redundant_two(parse_formula(first), parse_formula(second))
    print(f"[{first}, {second}] second formula redundant: {verdict}")

# A larger pair where the second set is the negation of the first: the
# first set is one long clause and its weakenings, the second its units.
rng = random.Random(0)
names = [Var(f"x{k}") for k in range(1, 201)]
core = [Literal(v, False) for v in names[:9]] + [Literal(names[9])]
f1 = Cnf(tuple(Clause(core + [Literal(v, False) for v in rng.sample(names[10:], 3)])
               for _ in range(199)) + (Clause(core),))
f2 = Cnf(tuple(Clause((~l,)) for l in core))
start = time.perf_counter()
print("200-clause pair, f1 == !f2:", horn_neg_equiv(f1, f2),
      "| redundant:", redundant_two_horn(f2, f1),
      f"| {time.perf_counter() - start:.3f}s")

# The hardness construction turns any CNF into a Horn history whose oldest
# formula is redundant exactly when the CNF is unsatisfiable.
for text in ("p cnf 1 2\n1 0\n-1 0\n", "p cnf 2 2\n1 2 0\n-1 0\n"):
    source = import_dimacs(text)
    instance = build_hardness_instance(source)
    print(f"source {len(source.clauses)} clauses, satisfiable={solve(source).satisfiable}: "
          f"history of {len(instance.sequence)} Horn formulas, oldest redundant="
          f"{bool(check_redundant_last(instance.sequence))}")
