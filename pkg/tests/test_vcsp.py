import itertools
import random

import pytest

from homlab.graphs import Coloring, DiGraph, Graph
from homlab.rational import INF, ExtRational
from homlab.vcsp import (
    ArcCostMap,
    BudgetExceeded,
    CostFunction,
    OddCycleFamily,
    ValHomInstance,
    VcspInstance,
    brute_force_opt,
    crisp_language_of_coloring,
    odd_cycle_language,
    pin_function,
    valhom_to_vcsp,
)


def test_cost_function_totality():
    with pytest.raises(ValueError):
        CostFunction(2, 1, {(1,): ExtRational(0)})
    fn = CostFunction.from_finite_entries(2, 1, {(1,): ExtRational(1)})
    assert fn((2,)) == INF
    assert fn.feasibility() == frozenset({(1,)})


def test_crisp_language_single_edge():
    g = Graph(2, [(1, 2)])
    lang = crisp_language_of_coloring(g, Coloring(g, {1: 1, 2: 2}))
    assert lang.relations["R_1_2"] == frozenset({(1, 2)})
    assert lang.relations["R_2_1"] == frozenset({(2, 1)})
    assert lang.relations["R_1_1"] == frozenset()
    assert lang.relations["R_2_2"] == frozenset()


def test_crisp_language_p3():
    g = Graph(3, [(1, 2), (2, 3)])
    lang = crisp_language_of_coloring(g, Coloring(g, {1: 1, 2: 2, 3: 1}))
    assert lang.relations["R_1_2"] == frozenset({(1, 2), (3, 2)})
    assert lang.relations["R_2_1"] == frozenset({(2, 1), (2, 3)})


def test_crisp_language_rejects_improper():
    g = Graph(2, [(1, 2)])
    with pytest.raises(Exception):
        crisp_language_of_coloring(g, Coloring(g, {1: 1, 2: 1}))


def test_odd_cycle_family_sets():
    fam = OddCycleFamily(4)
    assert fam.S == frozenset(range(2, 10))
    assert fam.A == frozenset({1, 3, 5, 7, 9})
    assert fam.B == frozenset({1, 2, 4, 6, 8})
    fam1 = OddCycleFamily(1)
    assert fam1.S == frozenset({2, 3})
    assert fam1.A == frozenset({1, 3})
    assert fam1.B == frozenset({1, 2})


def test_odd_cycle_language_relations():
    lang, fam = odd_cycle_language(1)
    assert len(lang.relations) == 6
    assert lang.relations["R_AA"] == frozenset({(1, 3), (3, 1)})
    # every relation is a set of cycle edges within the two lists
    cyc = fam.cycle()
    for name, rel in lang.sorted_items():
        for a, b in rel:
            assert cyc.has_edge(a, b)


def test_no_bad_triples_in_family():
    # A bad triple contains 1 alongside two vertices > 1 of mixed parity;
    # no list of the family contains one (checked for k <= 8).
    for k in range(1, 9):
        fam = OddCycleFamily(k)
        for _, s in fam.sets():
            for trip in itertools.combinations(sorted(s), 3):
                if 1 not in trip:
                    continue
                others = [v for v in trip if v != 1]
                evens = sum(1 for v in others if v % 2 == 0)
                assert evens != 1, (k, trip)


def test_brute_force_opt_examples():
    assert brute_force_opt(VcspInstance(3, 2, []))[0] == ExtRational(0)
    unary = CostFunction.from_finite_entries(2, 1, {(1,): ExtRational(1)})
    opt, arg = brute_force_opt(VcspInstance(2, 1, [(unary, (1,))]))
    assert opt == ExtRational(1) and arg == {1: 1}
    with pytest.raises(BudgetExceeded):
        brute_force_opt(VcspInstance(10, 9, []), budget=10 ** 8)


def test_brute_force_vectorized_matches_slow():
    rng = random.Random(3)
    for _ in range(10):
        D, n = rng.randint(2, 3), rng.randint(6, 8)
        terms = []
        for _ in range(rng.randint(1, 5)):
            scope = tuple(rng.randint(1, n) for _ in range(2))
            finite = {}
            for t in itertools.product(range(1, D + 1), repeat=2):
                if rng.random() < 0.8:
                    finite[t] = ExtRational(rng.randint(0, 5), rng.randint(1, 3))
            terms.append((CostFunction.from_finite_entries(D, 2, finite), scope))
        inst = VcspInstance(D, n, terms)
        fast_opt, fast_arg = brute_force_opt(inst)
        # force the slow path by shrinking the vector threshold
        slow_best = INF
        for combo in itertools.product(range(1, D + 1), repeat=n):
            c = inst.cost({x: combo[x - 1] for x in range(1, n + 1)})
            if c < slow_best:
                slow_best = c
        assert fast_opt == slow_best
        if not fast_opt.is_infinite:
            assert inst.cost(fast_arg) == fast_opt


def _tiny_valhom():
    G = DiGraph(2, [(1, 2)])
    H = DiGraph(2, [(1, 2)])
    return ValHomInstance(G, H, ArcCostMap(ExtRational(3)))


def test_valhom_to_vcsp_single_arc():
    inst = _tiny_valhom()
    gamma_h = Coloring(inst.H.underlying_graph(), {1: 1, 2: 2})
    enc = valhom_to_vcsp(inst, {1: 1, 2: 2}, gamma_h)
    opt, arg = brute_force_opt(enc)
    assert opt == ExtRational(3)
    assert arg == {1: 1, 2: 2}
    # color mismatch: both endpoints colored like H-vertex 1
    enc2 = valhom_to_vcsp(inst, {1: 1, 2: 1}, gamma_h)
    assert brute_force_opt(enc2)[0] == INF


def test_valhom_to_vcsp_roundtrip_property():
    # Finite-cost assignments decode exactly to compliant homomorphisms of
    # equal cost; exhaustive over |V(H)|^{|V(G)|} assignments.
    rng = random.Random(11)
    from homlab.generators import random_valhom
    from homlab.graphs import enumerate_proper_colorings

    checked = 0
    for _ in range(25):
        inst = random_valhom(rng, rng.randint(2, 4), rng.randint(2, 3))
        if any(inst.G.is_isolated(v) for v in inst.G.vertices):
            continue
        h_u = inst.H.underlying_graph()
        k = 2
        colorings = list(enumerate_proper_colorings(h_u, k))
        if not colorings:
            continue
        gamma_h = Coloring(h_u, colorings[0], k)
        for gamma_g_combo in itertools.product(range(1, k + 1), repeat=inst.G.n):
            gamma_g = {v: gamma_g_combo[v - 1] for v in inst.G.vertices}
            enc = valhom_to_vcsp(inst, gamma_g, gamma_h)
            for combo in itertools.product(range(1, inst.H.n + 1), repeat=inst.G.n):
                alpha = {x: combo[x - 1] for x in range(1, inst.G.n + 1)}
                cost = enc.cost(alpha)
                if not cost.is_infinite:
                    g_map = dict(alpha)
                    assert inst.cost_of(g_map) == cost
                    assert all(
                        gamma_h.color[g_map[v]] == gamma_g[v] for v in inst.G.vertices
                    )
                    checked += 1
    assert checked > 20


def test_valhom_to_vcsp_rejects_isolated():
    G = DiGraph(2, [(1, 1)])
    H = DiGraph(1, [(1, 1)])
    inst = ValHomInstance(G, H, ArcCostMap())
    gamma_h = Coloring(H.underlying_graph(), {1: 1})
    with pytest.raises(ValueError):
        valhom_to_vcsp(inst, {1: 1, 2: 1}, gamma_h)


def test_pin_function():
    pin = pin_function(3, 2)
    assert pin((2,)) == ExtRational(0)
    assert pin((1,)) == INF
