"""The randomized odd-cycle decision algorithm.

Each trial samples one of three vertex lists per vertex (S with
probability (2k-1)/(2k+1), A and B with 1/(2k+1)), builds the {0,inf}
list-homomorphism relaxation, and accepts iff its optimum is zero. YES
answers are always sound; repeating ceil(ln(1/2)/ln(1-alpha_k^-n)) + 1
trials bounds the false-NO probability below one half.
"""

from homlab import Graph, alpha_interval, make_trial_plan, odd_cycle_solve
from homlab.solvers import algorithm_b_trial, derive_trial_seed

print("exponent bases (rigorous upper bounds):")
for k in (3, 4, 5, 6):
    _, hi = alpha_interval(k)
    print(f"  alpha_{k} < {float(hi):.6f}")

# C9 with three pendant edges: homomorphisms into C7 exist.
edges = [(i, i + 1) for i in range(1, 9)] + [(1, 9), (2, 10), (5, 11), (8, 12)]
g = Graph(12, edges)
plan = make_trial_plan(3, g.n, master_seed=2024)
print(f"\nn={g.n}, k=3: planned trials = {plan.trials} "
      f"(per-trial success bound {float(plan.alpha_hi) ** -g.n:.4f})")

report = odd_cycle_solve(g, 3, master_seed=2024)
print("decision:", "YES" if report.answer else "NO",
      f"after {report.stats['trials_run']} trial(s)")

# Empirical acceptance rate over seeded trials.
trials = 400
yes = sum(
    algorithm_b_trial(g, 3, derive_trial_seed(2024, t)) for t in range(trials)
)
print(f"empirical per-trial YES rate: {yes / trials:.3f} over {trials} trials")

# A graph containing K4 maps into no odd cycle; every trial answers NO.
k4 = Graph(5, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (4, 5)])
report = odd_cycle_solve(k4, 3, master_seed=7, trials=40)
print("K4-containing control:", "YES" if report.answer else "NO",
      f"({report.stats['trials_run']} trials, all NO)")
