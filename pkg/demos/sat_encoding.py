"""
Comparing orders with a SAT solver
==================================

Two revision histories induce the same order unless some pair of models is
ordered differently. The encoder describes such a pair with two copies of
the alphabet, so the question becomes satisfiability of one formula: no
model means the histories are equivalent, and any model decodes into a
witness pair.
"""

from lexirev import RevisionSequence, build_diff, check_equivalence, diff_cnf, diff_dimacs, leq

s = RevisionSequence.parse("a", "!a | b", "a & b")
r = RevisionSequence.parse("a", "a & b")
t = RevisionSequence.parse("a", alphabet=["a", "b"])

encoding = build_diff(s, t)
cnf = diff_cnf(encoding)
print(f"difference formula for s vs t: {len(cnf.variables())} variables, "
      f"{len(cnf.clauses)} clauses")

# The first lines of the DIMACS text name the two model copies.
text = diff_dimacs(encoding)
print("\n".join(text.splitlines()[:6]))

for name, other in (("r", r), ("t", t)):
    verdict = check_equivalence(s, other)
    print(f"s == {name}: {bool(verdict)}")
    if not verdict:
        i, j = verdict.witness.i, verdict.witness.j
        print(f"  i = {i}, j = {j}: i <= j under s is {leq(i, j, s)}, "
              f"under {name} is {leq(i, j, other)}")
