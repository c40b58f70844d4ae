"""
Forgetting old revisions
========================

An agent that revises its beliefs lexicographically keeps the whole history
of revisions. Each revision is a formula; the most recent one is listed
first and dominates, and older ones only break ties. Some old revisions
may be dropped without changing what the agent believes or how it would
react to future revisions.
"""

from lexirev import RevisionSequence, equivalent, is_redundant_at, leq, minimize

# Four revisions that each single out one model of {a, b} induce the same
# order as the two revisions [a, b].
cells = RevisionSequence.parse("a & b", "a & !b", "!a & b", "!a & !b")
print("cells == [a, b]:", bool(equivalent(cells, RevisionSequence.parse("a", "b"))))

# Whether a revision can be forgotten depends on what came before it.
# Alone after `a`, the revision `!a | b` still matters:
short = RevisionSequence.parse("a", "!a | b")
verdict = is_redundant_at(short, 2)
print("[a, !a | b] drop position 2:", bool(verdict))
i, j = verdict.witness.i, verdict.witness.j
print("  witness i =", i, " j =", j)
print("  with the revision:", leq(i, j, short), " without:", leq(i, j, short.without(2)))

# With an even older `a & b` underneath, the same revision adds nothing.
longer = RevisionSequence.parse("a", "!a | b", "a & b")
print("[a, !a | b, a & b] drop position 2:", bool(is_redundant_at(longer, 2)))

# minimize scans from the oldest revision to the newest and keeps dropping
# until nothing else can go.
for s in (RevisionSequence.parse("a", "a", "a"), longer, cells):
    report = minimize(s)
    kept = ", ".join(str(f) for f in report.minimized)
    print(f"minimize: {len(s)} -> {len(report.minimized)} formulas [{kept}]"
          f" after {report.checks_performed} checks")
