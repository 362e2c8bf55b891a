import itertools
import random

import pytest

from homlab.graphs import Coloring, DiGraph, Graph
from homlab.generators import cycle_graph, random_valhom
from homlab.rational import INF, ExtRational
from homlab.solvers import (
    algorithm_b_trial,
    alpha_interval,
    brute_force_hom,
    derive_trial_seed,
    make_trial_plan,
    odd_cycle_solve,
    sample_lists,
    strip_isolated,
    unif_solve,
    valhom_solve,
)
from homlab.vcsp import (
    ArcCostMap,
    BudgetExceeded,
    CostFunction,
    ValHomInstance,
    VcspInstance,
    brute_force_opt,
)

NEQ2 = CostFunction.from_finite_entries(
    2, 2, {(1, 2): ExtRational(0), (2, 1): ExtRational(0)}
)


def test_brute_force_hom_examples():
    c5, c3 = cycle_graph(5), cycle_graph(3)
    found, witness = brute_force_hom(c5, c3)
    assert found
    for u, v in c5.edges:
        assert c3.has_edge(witness[u], witness[v])
    assert brute_force_hom(c3, c5)[0] is False
    g = Graph(4, [(1, 2), (3, 4)])
    assert brute_force_hom(g, g)[0] is True
    with pytest.raises(BudgetExceeded):
        brute_force_hom(cycle_graph(9), cycle_graph(9), budget=10)


def test_unif_solve_infeasible_branch():
    inst = VcspInstance(2, 2, [
        (CostFunction.from_finite_entries(2, 2, {}), (1, 2)),
    ])
    res = unif_solve(inst)
    assert res.status == "assignment"
    assert res.cost == INF


def test_unif_solve_unique_optimum():
    fn = CostFunction.from_finite_entries(
        2, 2, {(1, 2): ExtRational(1), (2, 1): ExtRational(3)}
    )
    inst = VcspInstance(2, 2, [(fn, (1, 2))])
    res = unif_solve(inst)
    assert res.status == "assignment"
    assert res.cost == ExtRational(1)
    assert res.assignment == {1: 1, 2: 2}
    assert inst.cost(res.assignment) == res.cost


def test_unif_solve_never_suboptimal():
    rng = random.Random(19)
    from homlab.generators import random_track_layout_graph, random_valuation_instance

    layout = random_track_layout_graph(rng, 5, 2, edge_p=0.9)
    for _ in range(10):
        inst = random_valuation_instance(
            rng, layout.graph, layout.coloring, rng.randint(3, 5), density=0.8
        )
        res = unif_solve(inst)
        opt, _ = brute_force_opt(inst)
        if res.status == "assignment":
            assert res.cost == inst.cost(res.assignment)
            assert res.cost >= opt  # never better than the optimum...
            if not opt.is_infinite:
                assert res.cost == opt  # ...and on triple languages equal.


def test_strip_isolated():
    G = DiGraph(4, [(2, 3)])
    inst = ValHomInstance(G, DiGraph(1, [(1, 1)]), ArcCostMap())
    stripped, mapping = strip_isolated(inst)
    assert stripped.G.n == 2
    assert mapping == {2: 1, 3: 2}


def test_valhom_spec_examples():
    G = DiGraph(2, [(1, 2)])
    H = DiGraph(2, [(1, 2)])
    report = valhom_solve(ValHomInstance(G, H, ArcCostMap()))
    assert report.answer == ExtRational(0)

    C3 = DiGraph(3, [(1, 2), (2, 3), (3, 1)])
    P2 = DiGraph(2, [(1, 2)])
    assert valhom_solve(ValHomInstance(C3, P2, ArcCostMap())).answer == INF

    C9 = DiGraph(9, [(i, i % 9 + 1) for i in range(1, 10)])
    C3d = DiGraph(3, [(1, 2), (2, 3), (3, 1)])
    report = valhom_solve(ValHomInstance(C9, C3d, ArcCostMap(ExtRational(1))))
    assert report.answer == ExtRational(9)


def test_valhom_empty_H():
    G = DiGraph(1, [(1, 1)])
    H = DiGraph(0)
    assert valhom_solve(ValHomInstance(G, H, ArcCostMap())).answer == INF


def test_valhom_isolated_only():
    G = DiGraph(3)
    H = DiGraph(2, [(1, 2)])
    report = valhom_solve(ValHomInstance(G, H, ArcCostMap()))
    assert report.answer == ExtRational(0)
    assert set(report.witness) == {1, 2, 3}


def test_valhom_oracle_small():
    rng = random.Random(4242)
    for _ in range(8):
        inst = random_valhom(rng, rng.randint(2, 5), rng.randint(1, 4))
        best = INF
        if inst.H.n > 0:
            for combo in itertools.product(range(1, inst.H.n + 1), repeat=inst.G.n):
                c = inst.cost_of({v: combo[v - 1] for v in inst.G.vertices})
                if c < best:
                    best = c
        report = valhom_solve(inst)
        assert report.answer == best
        if not best.is_infinite:
            assert inst.cost_of(report.witness) == best


def test_valhom_budget():
    rng = random.Random(1)
    inst = random_valhom(rng, 6, 5)
    with pytest.raises(BudgetExceeded):
        valhom_solve(inst, subproblem_budget=1)


def test_valhom_with_hint():
    # Hinted coloring: a proper 2-coloring of the single-arc H.
    G = DiGraph(2, [(1, 2)])
    H = DiGraph(2, [(1, 2)])
    hint = Coloring(H.underlying_graph(), {1: 1, 2: 2})
    report = valhom_solve(ValHomInstance(G, H, ArcCostMap()), coloring_hint=hint)
    assert report.answer == ExtRational(0)
    assert report.stats["k_reached"] == 2


def test_sample_lists_distribution():
    g = Graph(1)
    counts = {"S": 0, "A": 0, "B": 0}
    for seed in range(3000):
        counts[sample_lists(g, 2, seed)[1]] += 1
    # p(S) = 3/5, p(A) = p(B) = 1/5 for k = 2.
    assert abs(counts["S"] / 3000 - 0.6) < 0.05
    assert abs(counts["A"] / 3000 - 0.2) < 0.04
    assert abs(counts["B"] / 3000 - 0.2) < 0.04


def test_algorithm_b_trial_pc_equals_lp():
    rng = random.Random(500)
    from homlab.generators import random_graph

    for trial in range(25):
        g = random_graph(rng, rng.randint(2, 6), 0.5)
        k = rng.randint(1, 3)
        seed = rng.randrange(2 ** 32)
        assert algorithm_b_trial(g, k, seed) == algorithm_b_trial(
            g, k, seed, use_lp=True
        ), (trial, k, seed)


def test_algorithm_b_edgeless_always_yes():
    g = Graph(4)
    assert all(algorithm_b_trial(g, 2, seed) for seed in range(10))


def test_algorithm_b_soundness_k3():
    # YES on K3 with k=1 implies a homomorphism into C3 exists (it does:
    # K3 = C3); on K4 every trial must say NO for every k.
    k4 = Graph(4, list(itertools.combinations(range(1, 5), 2)))
    for k in (1, 2, 3):
        for seed in range(30):
            assert not algorithm_b_trial(k4, k, seed)


def test_trial_plan_counts():
    plan = make_trial_plan(3, 12, 7)
    assert plan.trials == 30
    assert float(plan.alpha_hi) < 1.365
    assert plan.trials >= 1
    assert make_trial_plan(3, 0, 7).trials == 1


def test_alpha_intervals_are_tight():
    for k, limit in [(3, 1.365), (4, 1.313), (5, 1.274), (6, 1.244)]:
        lo, hi = alpha_interval(k)
        assert lo <= hi
        assert float(hi) < limit
        assert float(hi) - float(lo) < 1e-20


def test_odd_cycle_solve_deterministic():
    g = cycle_graph(9)
    a = odd_cycle_solve(g, 3, master_seed=11)
    b = odd_cycle_solve(g, 3, master_seed=11)
    assert a.answer == b.answer
    assert a.stats["transcript"] == b.stats["transcript"]
    c = odd_cycle_solve(g, 3, master_seed=12)
    assert c.stats["seed"] != a.stats["seed"]


def test_odd_cycle_solve_finds_identity_hom():
    g = cycle_graph(7)
    report = odd_cycle_solve(g, 3, master_seed=3)
    assert report.answer is True


def test_odd_cycle_solve_no_on_k4():
    k4 = Graph(4, list(itertools.combinations(range(1, 5), 2)))
    report = odd_cycle_solve(k4, 2, master_seed=0, trials=25)
    assert report.answer is False
    assert report.stats["trials_run"] == 25


def test_derive_trial_seed_stable():
    assert derive_trial_seed(5, 0) == derive_trial_seed(5, 0)
    assert derive_trial_seed(5, 0) != derive_trial_seed(5, 1)
    assert derive_trial_seed(5, 0) != derive_trial_seed(6, 0)
