"""Minimum-cost homomorphism end to end.

Builds a ValHom instance (two digraphs plus an arc-pair cost map),
solves it by the coloring-enumeration algorithm backed by exact SA(2,3)
self-reduction, and cross-checks the answer against brute force.
"""

import itertools

from homlab import ArcCostMap, DiGraph, ExtRational, ValHomInstance, valhom_solve
from homlab.rational import INF

# Directed C9 into the cyclically oriented triangle: every arc costs 1, a
# homomorphism winds three times, total cost 9.
C9 = DiGraph(9, [(i, i % 9 + 1) for i in range(1, 10)])
C3 = DiGraph(3, [(1, 2), (2, 3), (3, 1)])
inst = ValHomInstance(C9, C3, ArcCostMap(ExtRational(1)))
report = valhom_solve(inst)
print("C9 -> C3 value:", report.answer)
print("witness:", report.witness)
print("stats:", {k: v for k, v in report.stats.items() if k != "millis"})
assert inst.cost_of(report.witness) == report.answer

# Mixed finite/infinite costs with a brute-force cross-check.
G = DiGraph(4, [(1, 2), (2, 3), (3, 4), (4, 1)])
H = DiGraph(3, [(1, 2), (2, 1), (2, 3), (3, 2), (1, 1)])
eta = ArcCostMap(ExtRational(2), {
    ((1, 2), (1, 2)): ExtRational(0),
    ((2, 3), (2, 1)): INF,
    ((3, 4), (1, 2)): ExtRational(1, 2),
})
inst2 = ValHomInstance(G, H, eta)
report2 = valhom_solve(inst2)
best = INF
for combo in itertools.product(range(1, 4), repeat=4):
    c = inst2.cost_of({v: combo[v - 1] for v in range(1, 5)})
    if c < best:
        best = c
print("mixed-cost instance: solver =", report2.answer, "brute force =", best)
assert report2.answer == best
