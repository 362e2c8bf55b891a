import itertools
import random

import pytest

from homlab.graphs import Coloring, Graph, GraphError, Layering, TrackLayout, bfs_layering
from homlab.polymorphisms import (
    ALL_PERMUTATIONS,
    OperationTable,
    Triple,
    clique_permutation,
    cohen_on_subset,
    cohen_triple,
    distance2_coloring,
    extend_after_deletion,
    is_polymorphism,
    odd_cycle_majority,
    search_triple,
    shadow_combine,
    triple_from_track_layout,
    verify_persistent_triple,
)
from homlab.vcsp import CrispLanguage, crisp_language_of_coloring, odd_cycle_language


def naive_verify(lang: CrispLanguage, F: Triple) -> bool:
    """Independent check via the coordinate-permutation formulation."""
    if F.f1.is_majority() is not None:
        return False
    for t in itertools.product(F.domain, repeat=3):
        if not any(F.apply(*t) == pi.apply(t) for pi in ALL_PERMUTATIONS):
            return False
    for _, rel in lang.sorted_items():
        tuples = sorted(rel)
        for t1, t2, t3 in itertools.product(tuples, repeat=3):
            heads = (t1[0], t2[0], t3[0])
            tails = (t1[1], t2[1], t3[1])
            if not any(
                F.apply(*heads) == pi.apply(heads) and F.apply(*tails) == pi.apply(tails)
                for pi in ALL_PERMUTATIONS
            ):
                return False
    return True


def random_triple(rng, D):
    tables = []
    for _ in range(3):
        tables.append(OperationTable.from_function(
            range(1, D + 1), lambda a, b, c: rng.choice((a, b, c))
        ))
    return Triple(*tables)


def test_verifier_agrees_with_naive():
    rng = random.Random(77)
    agreements = 0
    for _ in range(120):
        D = rng.randint(2, 5)
        rels = {}
        for ri in range(rng.randint(1, 3)):
            pairs = [
                t for t in itertools.product(range(1, D + 1), repeat=2)
                if rng.random() < 0.3
            ]
            rels[f"R{ri}"] = pairs
        lang = CrispLanguage(D, rels)
        F = random_triple(rng, D)
        ok, _ = verify_persistent_triple(lang, F)
        assert ok == naive_verify(lang, F)
        agreements += 1
    assert agreements == 120


def test_verify_reports_counterexamples():
    g = Graph(2, [(1, 2)])
    lang = crisp_language_of_coloring(g, Coloring(g, {1: 1, 2: 2}))
    bad = Triple.from_functions([1, 2], lambda a, b, c: a, lambda a, b, c: b,
                                lambda a, b, c: c)
    ok, witness = verify_persistent_triple(lang, bad)
    assert not ok and witness[0] == "majority"


def test_track_layout_triple_examples():
    g = Graph(3, [(1, 2), (2, 3)])
    layout = TrackLayout(Coloring(g, {1: 1, 2: 2, 3: 1}), [1, 2, 3])
    F = triple_from_track_layout(layout)
    assert F.f1(1, 3, 3) == 3
    lang = crisp_language_of_coloring(g, layout.coloring)
    assert verify_persistent_triple(lang, F) == (True, None)
    # single vertex: all tables constant
    g1 = Graph(1)
    layout1 = TrackLayout(Coloring(g1, {1: 1}), [1])
    F1 = triple_from_track_layout(layout1)
    assert F1.apply(1, 1, 1) == (1, 1, 1)


def test_distance2_coloring_examples():
    c5 = Graph(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
    gamma = distance2_coloring(c5)
    assert gamma.k <= 5
    assert len(set(gamma.color.values())) == 5
    edgeless = Graph(4)
    assert distance2_coloring(edgeless).k == 1
    star = Graph(4, [(1, 2), (1, 3), (1, 4)])
    gs = distance2_coloring(star)
    assert gs.k <= 10
    assert len({gs.color[v] for v in (2, 3, 4)}) == 3


def test_cohen_triple_examples():
    c5 = Graph(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
    gamma = distance2_coloring(c5)
    F = cohen_triple(c5.vertices, gamma)
    assert F.f3(1, 1, 2) == 2  # minority
    assert F.f1(1, 2, 3) == 1
    lang = crisp_language_of_coloring(c5, gamma)
    assert verify_persistent_triple(lang, F) == (True, None)


def test_cohen_triple_rejects_non_distance2():
    p3 = Graph(3, [(1, 2), (2, 3)])
    with pytest.raises(GraphError):
        cohen_triple(p3.vertices, Coloring(p3, {1: 1, 2: 2, 3: 1}))


def test_extension_examples():
    p3 = Graph(3, [(1, 2), (2, 3)])
    mu, base = cohen_on_subset(p3, [1, 2, 3])
    gamma, F = extend_after_deletion(p3, [], mu, base)
    assert gamma.k == max(mu.values())
    assert verify_persistent_triple(crisp_language_of_coloring(p3, gamma), F) == (True, None)

    g = Graph(4, [(1, 2), (2, 3)])
    mu, base = cohen_on_subset(g, [1, 2, 3])
    gamma, F = extend_after_deletion(g, [4], mu, base)
    assert gamma.k == max(mu.values()) + 1
    assert verify_persistent_triple(crisp_language_of_coloring(g, gamma), F) == (True, None)

    g2 = Graph(4, [(1, 2), (2, 3), (1, 4), (2, 4), (3, 4)])
    mu, base = cohen_on_subset(g2, [1, 2, 3])
    gamma, F = extend_after_deletion(g2, [4], mu, base)
    assert verify_persistent_triple(crisp_language_of_coloring(g2, gamma), F) == (True, None)


def test_monotonicity_under_subgraphs():
    # A triple verified for the language of (G, gamma) also verifies for
    # the language of any subgraph under the restricted coloring.
    rng = random.Random(13)
    from homlab.generators import random_track_layout_graph

    for _ in range(10):
        layout = random_track_layout_graph(rng, rng.randint(4, 8), 3)
        g = layout.graph
        F = triple_from_track_layout(layout)
        lang = crisp_language_of_coloring(g, layout.coloring)
        assert verify_persistent_triple(lang, F)[0]
        kept_edges = [e for e in sorted(g.edges) if rng.random() < 0.6]
        sub = Graph(g.n, kept_edges)
        sub_lang = crisp_language_of_coloring(sub, Coloring(sub, layout.coloring.color))
        assert verify_persistent_triple(sub_lang, F)[0]


def test_clique_permutation_examples():
    g = Graph(3, [(1, 2), (2, 3)])
    layout = TrackLayout(Coloring(g, {1: 1, 2: 2, 3: 1}), [1, 2, 3])
    F = triple_from_track_layout(layout)
    pi = clique_permutation(g, layout.coloring, F, ([1], [1], [1]))
    assert pi.is_identity
    # No monochromatic triple with two distinct vertices: identity tie-break.
    pi2 = clique_permutation(g, layout.coloring, F, ([1], [2], [2]))
    assert pi2.is_identity
    with pytest.raises(GraphError):
        clique_permutation(g, layout.coloring, F, ([1, 3], [2], [2]))


def test_clique_permutation_matches_sort():
    # Three singleton cliques of one color with the median/min/max triple:
    # the permutation realizes the sort of the three vertices.
    g = Graph(3)
    coloring = Coloring(g, {1: 1, 2: 1, 3: 1})
    layout = TrackLayout(coloring, [2, 3, 1])
    F = triple_from_track_layout(layout)
    pi = clique_permutation(g, coloring, F, ([1], [2], [3]))
    assert pi.apply((1, 2, 3)) == F.apply(1, 2, 3)


def test_shadow_combine_trees_and_cliques():
    p3 = Graph(3, [(1, 2), (2, 3)])
    gamma, F = shadow_combine(p3, bfs_layering(p3, 1))
    assert gamma.k <= 12
    assert verify_persistent_triple(crisp_language_of_coloring(p3, gamma), F) == (True, None)

    t7 = Graph(7, [(1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)])
    gamma7, F7 = shadow_combine(t7, bfs_layering(t7, 1))
    assert verify_persistent_triple(crisp_language_of_coloring(t7, gamma7), F7) == (True, None)

    rng = random.Random(8)
    from homlab.generators import clique_layered_graph

    g, layering = clique_layered_graph(rng, [2, 3, 2])
    gamma_c, F_c = shadow_combine(g, layering)
    assert verify_persistent_triple(crisp_language_of_coloring(g, gamma_c), F_c) == (True, None)


def test_shadow_combine_single_layer_matches_local():
    # Base case: one layer, the output partitions vertices like the local
    # coloring does.
    k3 = Graph(3, [(1, 2), (2, 3), (1, 3)])
    gamma, F = shadow_combine(k3, Layering(k3, [[1, 2, 3]]))
    mu, _ = cohen_on_subset(k3, [1, 2, 3])
    classes = {}
    for v, c in gamma.color.items():
        classes.setdefault(c, set()).add(v)
    local_classes = {}
    for v, c in mu.items():
        local_classes.setdefault(c, set()).add(v)
    assert sorted(map(sorted, classes.values())) == sorted(map(sorted, local_classes.values()))
    assert verify_persistent_triple(crisp_language_of_coloring(k3, gamma), F) == (True, None)


def test_shadow_combine_rejects_bad_layering():
    c5 = Graph(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
    with pytest.raises(GraphError):
        shadow_combine(c5, bfs_layering(c5, 1))  # BFS of C5 is not shadow-complete


def test_odd_cycle_majority_examples():
    f = odd_cycle_majority(4)
    assert f(3, 5, 7) == 5
    assert f(5, 3, 2) == 5
    for k in (1, 2, 5):
        fk = odd_cycle_majority(k)
        assert fk.is_majority() is None
        for a in fk.domain:
            for b in fk.domain:
                assert fk(a, a, b) == a


def test_odd_cycle_majority_is_polymorphism_audit():
    for k in range(1, 7):
        lang, _ = odd_cycle_language(k)
        op = odd_cycle_majority(k)
        ok, counterexample = is_polymorphism(op, lang)
        assert ok, (k, counterexample)


def test_odd_cycle_majority_symmetric():
    f = odd_cycle_majority(3)
    rng = random.Random(1)
    for _ in range(200):
        t = tuple(rng.randint(1, 7) for _ in range(3))
        vals = {f(*p) for p in itertools.permutations(t)}
        assert len(vals) == 1


def test_search_triple_on_track_language():
    g = Graph(4, [(1, 2), (2, 3), (3, 4)])
    layout = TrackLayout(Coloring(g, {1: 1, 2: 2, 3: 1, 4: 2}), [1, 2, 3, 4])
    lang = crisp_language_of_coloring(g, layout.coloring)
    F = search_triple(lang)
    assert F is not None
    assert verify_persistent_triple(lang, F) == (True, None)


def test_search_triple_empty_language():
    lang = CrispLanguage(3, {"R": []})
    F = search_triple(lang)
    assert F is not None
    assert verify_persistent_triple(lang, F) == (True, None)


def test_search_triple_budget():
    from homlab.vcsp import BudgetExceeded

    lang = CrispLanguage(13, {"R": []})
    with pytest.raises(BudgetExceeded):
        search_triple(lang)


def test_search_triple_agrees_with_enumeration_d2():
    # Complete cross-check against raw enumeration of all majority- and
    # permutation-consistent triples over a two-element domain.
    from homlab.polymorphisms import _candidates

    def all_candidate_triples(D):
        variables = list(itertools.product(range(1, D + 1), repeat=3))
        cand = [_candidates(t) for t in variables]
        for combo in itertools.product(*cand):
            sol = dict(zip(variables, combo))
            yield Triple(*[
                OperationTable(range(1, D + 1), {t: sol[t][i] for t in variables})
                for i in range(3)
            ])

    rng = random.Random(55)
    for _ in range(30):
        rels = {}
        for ri in range(rng.randint(1, 2)):
            rels[f"R{ri}"] = [
                t for t in itertools.product((1, 2), repeat=2) if rng.random() < 0.6
            ]
        lang = CrispLanguage(2, rels)
        found = search_triple(lang)
        brute = any(
            verify_persistent_triple(lang, T)[0] for T in all_candidate_triples(2)
        )
        assert (found is not None) == brute
        if found is not None:
            assert verify_persistent_triple(lang, found)[0]


def test_equality_relation_needs_no_special_case():
    # Any verified triple satisfies the multiset condition on the equality
    # relation automatically (condition over equal heads and tails).
    g = Graph(4, [(1, 2), (2, 3), (3, 4)])
    layout = TrackLayout(Coloring(g, {1: 1, 2: 2, 3: 1, 4: 2}), [1, 2, 3, 4])
    F = triple_from_track_layout(layout)
    lang = crisp_language_of_coloring(g, layout.coloring)
    assert verify_persistent_triple(lang, F)[0]
    eq_lang = CrispLanguage(4, {"EQ": [(v, v) for v in range(1, 5)]})
    assert verify_persistent_triple(eq_lang, F)[0]
