"""Random and structured instance generators for benchmarks and tests."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .graphs import Coloring, DiGraph, Graph, Layering, TrackLayout, bfs_layering
from .polymorphisms import (
    Triple,
    cohen_on_subset,
    cohen_triple,
    distance2_coloring,
    extend_after_deletion,
    shadow_combine,
    triple_from_track_layout,
)
from .rational import INF, ExtRational
from .vcsp import (
    ArcCostMap,
    CostFunction,
    ValHomInstance,
    VcspInstance,
    crisp_language_of_coloring,
)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [
        (u, v)
        for u in range(1, n + 1)
        for v in range(u + 1, n + 1)
        if rng.random() < p
    ]
    return Graph(n, edges)


def random_connected_graph(rng: random.Random, n: int, p: float) -> Graph:
    """Random spanning tree plus density-p extra edges."""
    edges = set()
    for v in range(2, n + 1):
        edges.add((rng.randrange(1, v), v))
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() < p:
                edges.add((u, v))
    return Graph(n, edges)


def random_bounded_degree_graph(rng: random.Random, n: int, max_degree: int) -> Graph:
    edges = set()
    deg = {v: 0 for v in range(1, n + 1)}
    candidates = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    rng.shuffle(candidates)
    for u, v in candidates:
        if deg[u] < max_degree and deg[v] < max_degree and rng.random() < 0.5:
            edges.add((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph(n, edges)


def random_digraph(rng: random.Random, n: int, p: float, loops: bool = True) -> DiGraph:
    arcs = []
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            if u == v and not loops:
                continue
            if rng.random() < p:
                arcs.append((u, v))
    return DiGraph(n, arcs)


def random_valhom(
    rng: random.Random,
    n: int,
    h: int,
    arc_p: float = 0.4,
    inf_prob: float = 0.25,
    max_cost: int = 6,
) -> ValHomInstance:
    """Random ValHom instance with mixed finite and infinite arc-pair costs."""
    G = random_digraph(rng, n, arc_p, loops=False)
    H = random_digraph(rng, h, arc_p + 0.15, loops=True)
    overrides = {}
    for garc in G.arcs:
        for harc in H.arcs:
            if rng.random() < 0.5:
                if rng.random() < inf_prob:
                    overrides[(garc, harc)] = INF
                else:
                    overrides[(garc, harc)] = ExtRational(
                        Fraction(rng.randint(0, max_cost), rng.randint(1, 3))
                    )
    return ValHomInstance(G, H, ArcCostMap(ExtRational(0), overrides))


def random_track_layout_graph(
    rng: random.Random, n: int, tracks: int, edge_p: float = 0.5
) -> TrackLayout:
    """Layout-first generation: the returned layout is valid by construction."""
    while True:
        color = {v: rng.randint(1, tracks) for v in range(1, n + 1)}
        if len(set(color.values())) >= min(2, tracks):
            break
    order = list(range(1, n + 1))
    rng.shuffle(order)
    rank = {v: i for i, v in enumerate(order)}
    edges: List[Tuple[int, int]] = []

    def crossing(e1, e2) -> bool:
        for u1, u2 in (e1, (e1[1], e1[0])):
            for v1, v2 in (e2, (e2[1], e2[0])):
                if color[u1] == color[v1] and color[u2] == color[v2]:
                    if rank[u1] < rank[v1] and rank[v2] < rank[u2]:
                        return True
        return False

    candidates = [
        (u, v)
        for u in range(1, n + 1)
        for v in range(u + 1, n + 1)
        if color[u] != color[v]
    ]
    rng.shuffle(candidates)
    for cand in candidates:
        if rng.random() >= edge_p:
            continue
        if any(crossing(cand, e) for e in edges):
            continue
        edges.append(cand)
    g = Graph(n, edges)
    return TrackLayout(Coloring(g, color), order)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(1, v) for v in range(2, leaves + 2)])


def random_tree(rng: random.Random, n: int) -> Graph:
    return Graph(n, [(rng.randrange(1, v), v) for v in range(2, n + 1)])


def clique_layered_graph(
    rng: random.Random, layer_sizes: List[int], inter_p: float = 0.6
) -> Tuple[Graph, Layering]:
    """Connected graph whose layers induce cliques; always shadow-complete.

    Every shadow is a subset of the previous layer, which is a clique, so
    shadow-completeness holds by construction.
    """
    layers: List[List[int]] = []
    nxt = 1
    for size in layer_sizes:
        layers.append(list(range(nxt, nxt + size)))
        nxt += size
    n = nxt - 1
    edges = set()
    for layer in layers:
        for u, v in itertools.combinations(layer, 2):
            edges.add((u, v))
    for i in range(1, len(layers)):
        for v in layers[i]:
            for u in layers[i - 1]:
                if rng.random() < inter_p:
                    edges.add((u, v))
        # Keep the graph connected layer by layer.
        anchor = layers[i][0]
        if not any((u, anchor) in edges for u in layers[i - 1]):
            edges.add((layers[i - 1][0], anchor))
    g = Graph(n, sorted(edges))
    return g, Layering(g, layers)


class ConstructionCase:
    """One corpus item: a coloring/triple pair plus its color-count bound."""

    def __init__(self, kind: str, name: str, graph: Graph, coloring: Coloring,
                 triple: Triple, color_bound: Optional[int]):
        self.kind = kind
        self.name = name
        self.graph = graph
        self.coloring = coloring
        self.triple = triple
        self.color_bound = color_bound

    def __repr__(self):
        return f"ConstructionCase({self.kind}, {self.name})"


def construction_corpus(seed: int = 20240601, min_cases: int = 100) -> List[ConstructionCase]:
    """Generated corpus covering all four triple constructions, n <= 12."""
    rng = random.Random(seed)
    cases: List[ConstructionCase] = []

    def add_track(name: str, layout: TrackLayout):
        cases.append(ConstructionCase(
            "track_layout", name, layout.graph, layout.coloring,
            triple_from_track_layout(layout), None,
        ))

    def add_cohen(name: str, g: Graph):
        gamma = distance2_coloring(g)
        cases.append(ConstructionCase(
            "cohen", name, g, gamma, cohen_triple(g.vertices, gamma),
            g.max_degree() ** 2 + 1,
        ))

    def add_extension(name: str, g: Graph, removed: List[int]):
        kept = sorted(set(g.vertices) - set(removed))
        mu, base = cohen_on_subset(g, kept)
        gamma, triple = extend_after_deletion(g, removed, mu, base)
        cases.append(ConstructionCase("extension", name, g, gamma, triple, None))

    def add_combine(name: str, g: Graph, layering: Layering):
        gamma, triple = shadow_combine(g, layering)
        local_max = 0
        shadow_max = 0
        from .graphs import connected_components, shadow as shadow_of
        for i, layer in enumerate(layering.layers):
            for comp in connected_components(g, layer):
                sub, _ = g.induced(comp)
                local_max = max(local_max, distance2_coloring(sub).k)
                if i > 0:
                    shadow_max = max(shadow_max, len(shadow_of(g, layering, comp, i)))
        bound = 3 * (local_max + 1) ** (shadow_max + 1)
        cases.append(ConstructionCase("shadow_combine", name, g, gamma, triple, bound))

    # Named small cases first.
    for n in (2, 3, 5, 7, 9, 12):
        p = path_graph(n)
        color = {v: (2 - v % 2) for v in p.vertices}
        add_track(f"path{n}", TrackLayout(Coloring(p, color), list(p.vertices)))
    for leaves in (3, 5, 8):
        s = star_graph(leaves)
        color = {1: 1, **{v: 2 for v in range(2, leaves + 2)}}
        add_track(f"star{leaves}", TrackLayout(Coloring(s, color), list(s.vertices)))
    for i in range(22):
        n = rng.randint(4, 12)
        add_track(f"random{i}", random_track_layout_graph(rng, n, rng.randint(2, 4)))

    for n in (3, 5, 8, 12):
        add_cohen(f"path{n}", path_graph(n))
    for n in (4, 5, 7, 9, 11):
        add_cohen(f"cycle{n}", cycle_graph(n))
    for i in range(8):
        add_cohen(f"tree{i}", random_tree(rng, rng.randint(4, 12)))
    for i in range(14):
        n = rng.randint(4, 12)
        add_cohen(f"bounded{i}", random_bounded_degree_graph(rng, n, rng.randint(2, 4)))

    for i in range(16):
        g = random_connected_graph(rng, rng.randint(4, 11), 0.35)
        removed = sorted(rng.sample(range(1, g.n + 1), rng.randint(1, min(3, g.n - 1))))
        add_extension(f"extend{i}", g, removed)
    trivial = path_graph(4)
    mu, base = cohen_on_subset(trivial, [1, 2, 3, 4])
    gamma, triple = extend_after_deletion(trivial, [], mu, base)
    cases.append(ConstructionCase("extension", "empty_w", trivial, gamma, triple, None))

    for n in (3, 5, 7):
        t = path_graph(n)
        add_combine(f"path{n}", t, bfs_layering(t, 1))
    for i in range(10):
        t = random_tree(rng, rng.randint(4, 12))
        add_combine(f"tree{i}", t, bfs_layering(t, 1))
    for i in range(12):
        depth = rng.randint(2, 4)
        sizes = [rng.randint(1, 3) for _ in range(depth)]
        while sum(sizes) > 12:
            sizes.pop()
        g, layering = clique_layered_graph(rng, sizes)
        add_combine(f"cliques{i}", g, layering)

    i = 0
    while len(cases) < min_cases:
        add_cohen(f"fill{i}", random_bounded_degree_graph(rng, rng.randint(4, 12), 3))
        i += 1
    return cases


def random_valuation_instance(
    rng: random.Random,
    g: Graph,
    gamma: Coloring,
    num_vars: int,
    density: float = 0.7,
    inf_inside_prob: float = 0.15,
    max_cost: int = 8,
    plant: bool = True,
) -> VcspInstance:
    """Random VCSP over a valuation of the coloring language of (g, gamma).

    Every term's feasible set lies inside one relation R_ij. With
    plant=True a hidden assignment (variables to vertices) is drawn first
    and each term's relation is chosen to contain the planted pair, which
    keeps the instance feasible; without planting relations are chosen
    freely and instances are frequently infeasible.
    """
    D = g.n
    planted = {x: rng.randint(1, D) for x in range(1, num_vars + 1)}
    lang = crisp_language_of_coloring(g, gamma)
    rel_items = [(name, sorted(rel)) for name, rel in lang.sorted_items() if rel]
    terms = []
    for u in range(1, num_vars + 1):
        for v in range(u + 1, num_vars + 1):
            if rng.random() >= density or not rel_items:
                continue
            if plant:
                a, b = planted[u], planted[v]
                if not g.has_edge(a, b):
                    continue
                keep = (a, b)
                rel = sorted(
                    lang.relations[f"R_{gamma.color[a]}_{gamma.color[b]}"]
                )
                scope = (u, v)
            else:
                _, rel = rel_items[rng.randrange(len(rel_items))]
                keep = None
                scope = (u, v) if rng.random() < 0.5 else (v, u)
            finite = {}
            for t in rel:
                if t != keep and rng.random() < inf_inside_prob:
                    continue
                finite[t] = ExtRational(
                    Fraction(rng.randint(0, max_cost), rng.randint(1, 4))
                )
            terms.append((CostFunction.from_finite_entries(D, 2, finite), scope))
    return VcspInstance(D, num_vars, terms)
