import itertools
import random
from fractions import Fraction

import pytest

from homlab.graphs import Coloring, Graph
from homlab.rational import INF, ExtRational
from homlab.sherali_adams import (
    assignment_to_lambda,
    build_sa,
    lambda_point_cost,
    lambda_point_is_feasible,
    lp_solve_exact,
    solve_sa,
)
from homlab.vcsp import CostFunction, VcspInstance, brute_force_opt

NEQ2 = CostFunction.from_finite_entries(
    2, 2, {(1, 2): ExtRational(0), (2, 1): ExtRational(0)}
)


def k3_to_k2():
    return VcspInstance(2, 3, [(NEQ2, (1, 2)), (NEQ2, (2, 3)), (NEQ2, (1, 3))])


def test_levels_must_be_ordered():
    with pytest.raises(ValueError):
        build_sa(k3_to_k2(), 3, 2)


def test_trivial_instance():
    unary = CostFunction.from_finite_entries(1, 1, {(1,): ExtRational(0)})
    inst = VcspInstance(1, 1, [(unary, (1,))])
    rlp, res = solve_sa(inst)
    assert res.is_optimal and res.optimum == ExtRational(0)
    assert res.solution[(rlp.term_block[0], (1,))] == Fraction(1)


def test_k3_to_k2_infeasible_both_routes():
    rlp, res = solve_sa(k3_to_k2())
    assert res.status == "infeasible" and res.optimum == INF
    # Independent route: the literal program without presolve.
    res2 = lp_solve_exact(rlp, presolve=False, float_assist=False)
    assert res2.status == "infeasible"


def test_p2_to_k2_zero():
    inst = VcspInstance(2, 2, [(NEQ2, (1, 2))])
    rlp, res = solve_sa(inst)
    assert res.is_optimal and res.optimum == ExtRational(0)
    res2 = lp_solve_exact(rlp, presolve=False, float_assist=False)
    assert res2.is_optimal and res2.optimum == ExtRational(0)


def test_scope_merging_and_blocks():
    # Two terms on the same pair merge into one block; zero blocks cover
    # every subset of the touched variables up to size 3.
    inst = VcspInstance(2, 4, [(NEQ2, (1, 2)), (NEQ2, (2, 1)), (NEQ2, (3, 4))])
    rlp = build_sa(inst)
    scopes = [b.scope for b in rlp.blocks]
    assert scopes.count((1, 2)) == 1
    assert rlp.term_block[0] == rlp.term_block[1]
    touched = (1, 2, 3, 4)
    for size in (1, 2, 3):
        for sub in itertools.combinations(touched, size):
            assert sub in scopes
    assert (1, 2, 3, 4) not in scopes


def test_repeated_variable_tuple():
    loop = CostFunction.from_finite_entries(2, 2, {(1, 1): ExtRational(5)})
    inst = VcspInstance(2, 1, [(loop, (1, 1))])
    rlp, res = solve_sa(inst)
    assert res.optimum == ExtRational(5)
    assert rlp.blocks[rlp.term_block[0]].scope == (1,)


def test_untouched_variables_do_not_matter():
    inst_small = VcspInstance(2, 2, [(NEQ2, (1, 2))])
    inst_big = VcspInstance(2, 6, [(NEQ2, (1, 2))])
    assert solve_sa(inst_small)[1].optimum == solve_sa(inst_big)[1].optimum


def test_integral_assignment_rounds_to_feasible_point():
    rng = random.Random(9)
    from homlab.generators import random_track_layout_graph, random_valuation_instance

    layout = random_track_layout_graph(rng, 5, 2, edge_p=0.9)
    for _ in range(8):
        inst = random_valuation_instance(
            rng, layout.graph, layout.coloring, rng.randint(3, 5), density=0.8
        )
        opt, arg = brute_force_opt(inst)
        if opt.is_infinite:
            continue
        rlp = build_sa(inst)
        point = assignment_to_lambda(rlp, arg)
        assert lambda_point_is_feasible(rlp, point)
        assert lambda_point_cost(rlp, point) == opt.frac


def test_relaxation_soundness_random():
    # SA(2,3) optimum never exceeds the true optimum (exact comparison).
    rng = random.Random(21)
    for _ in range(25):
        D, n = rng.randint(2, 3), rng.randint(2, 4)
        terms = []
        for _ in range(rng.randint(1, 4)):
            scope = (rng.randint(1, n), rng.randint(1, n))
            finite = {}
            for t in itertools.product(range(1, D + 1), repeat=2):
                if rng.random() < 0.7:
                    finite[t] = ExtRational(rng.randint(0, 5), rng.randint(1, 2))
            terms.append((CostFunction.from_finite_entries(D, 2, finite), scope))
        inst = VcspInstance(D, n, terms)
        _, res = solve_sa(inst)
        opt, _ = brute_force_opt(inst)
        if res.status == "infeasible":
            # Every feasible assignment lifts to a feasible LP point.
            assert opt.is_infinite
        elif not opt.is_infinite:
            assert res.optimum <= opt


def test_presolve_agrees_with_literal_lp():
    rng = random.Random(33)
    for _ in range(15):
        D, n = rng.randint(2, 3), rng.randint(2, 4)
        terms = []
        for _ in range(rng.randint(1, 4)):
            scope = (rng.randint(1, n), rng.randint(1, n))
            finite = {}
            for t in itertools.product(range(1, D + 1), repeat=2):
                if rng.random() < 0.6:
                    finite[t] = ExtRational(rng.randint(0, 4))
            terms.append((CostFunction.from_finite_entries(D, 2, finite), scope))
        inst = VcspInstance(D, n, terms)
        rlp = build_sa(inst)
        a = lp_solve_exact(rlp, presolve=True, float_assist=False)
        b = lp_solve_exact(rlp, presolve=False, float_assist=False)
        assert a.status == b.status
        assert a.optimum == b.optimum


def test_solution_is_exactly_feasible():
    # The primal solution of an optimal solve satisfies normalization and
    # every marginalization constraint exactly, and re-evaluates to the
    # reported optimum.
    rng = random.Random(41)
    from homlab.generators import random_track_layout_graph, random_valuation_instance

    layout = random_track_layout_graph(rng, 6, 2, edge_p=0.9)
    checked = 0
    for _ in range(6):
        inst = random_valuation_instance(
            rng, layout.graph, layout.coloring, rng.randint(3, 6), density=0.9
        )
        rlp, res = solve_sa(inst)
        if not res.is_optimal:
            continue
        assert lambda_point_is_feasible(rlp, res.solution)
        assert lambda_point_cost(rlp, res.solution) == res.optimum.frac
        checked += 1
    assert checked >= 3


def test_dump_mentions_every_variable():
    inst = VcspInstance(2, 2, [(NEQ2, (1, 2))])
    rlp = build_sa(inst)
    text = rlp.dump()
    assert text.count("normalize") == len(rlp.blocks)
    assert "minimize" in text
    assert "marginal" in text
