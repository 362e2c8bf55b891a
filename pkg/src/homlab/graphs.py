"""Graphs, digraphs, colorings, layerings, track layouts, tree decompositions.

Vertices are integers 1..n everywhere; undirected edges are stored as
ordered pairs (min, max). All structures are immutable after construction
and validate their defining invariants eagerly.
"""

from __future__ import annotations

import itertools
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple


class GraphError(ValueError):
    """Raised when a structure violates one of its defining invariants."""


def _norm_edge(u: int, v: int) -> Tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph on vertices 1..n."""

    __slots__ = ("n", "edges", "_adj")

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]] = ()):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        seen = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphError(f"edge ({u},{v}) out of range 1..{n}")
            e = _norm_edge(u, v)
            if e in seen:
                raise GraphError(f"duplicate edge ({u},{v})")
            seen.add(e)
        self.n = n
        self.edges = frozenset(seen)
        adj: Dict[int, set] = {v: set() for v in range(1, n + 1)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(nb) for v, nb in adj.items()}

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(nb) for nb in self._adj.values()), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def induced(self, vertices: Iterable[int]) -> Tuple["Graph", Dict[int, int]]:
        """Induced subgraph with vertices relabeled 1..m; returns (sub, old->new)."""
        vs = sorted(set(vertices))
        relabel = {v: i + 1 for i, v in enumerate(vs)}
        sub_edges = [
            (relabel[u], relabel[v])
            for u, v in self.edges
            if u in relabel and v in relabel
        ]
        return Graph(len(vs), sub_edges), relabel

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = sorted(set(vertices))
        return all(self.has_edge(u, v) for u, v in itertools.combinations(vs, 2))

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"


class DiGraph:
    """Directed graph on vertices 1..n; loops are permitted, arcs distinct."""

    __slots__ = ("n", "arcs", "_out", "_in")

    def __init__(self, n: int, arcs: Iterable[Tuple[int, int]] = ()):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        seen = set()
        for u, v in arcs:
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphError(f"arc ({u},{v}) out of range 1..{n}")
            if (u, v) in seen:
                raise GraphError(f"duplicate arc ({u},{v})")
            seen.add((u, v))
        self.n = n
        self.arcs = frozenset(seen)
        out: Dict[int, set] = {v: set() for v in range(1, n + 1)}
        inn: Dict[int, set] = {v: set() for v in range(1, n + 1)}
        for u, v in self.arcs:
            out[u].add(v)
            inn[v].add(u)
        self._out = {v: frozenset(s) for v, s in out.items()}
        self._in = {v: frozenset(s) for v, s in inn.items()}

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def out_neighbors(self, v: int) -> FrozenSet[int]:
        return self._out[v]

    def in_neighbors(self, v: int) -> FrozenSet[int]:
        return self._in[v]

    def is_isolated(self, v: int) -> bool:
        return not self._out[v] and not self._in[v]

    def underlying_graph(self) -> Graph:
        edges = {(min(u, v), max(u, v)) for u, v in self.arcs if u != v}
        return Graph(self.n, edges)

    def __eq__(self, other):
        return (
            isinstance(other, DiGraph)
            and self.n == other.n
            and self.arcs == other.arcs
        )

    def __hash__(self):
        return hash((self.n, self.arcs))

    def __repr__(self):
        return f"DiGraph(n={self.n}, m={len(self.arcs)})"


def connected_components(g: Graph, within: Optional[Iterable[int]] = None) -> List[FrozenSet[int]]:
    """Components of g (or of the subgraph induced by `within`), sorted by min vertex."""
    if within is None:
        pool = set(g.vertices)
    else:
        pool = set(within)
    comps = []
    remaining = set(pool)
    while remaining:
        root = min(remaining)
        comp = {root}
        stack = [root]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if w in pool and w not in comp:
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
        remaining -= comp
    return sorted(comps, key=min)


def is_connected(g: Graph) -> bool:
    return g.n == 0 or len(connected_components(g)) == 1


class Coloring:
    """Vertex coloring of a graph with colors in 1..k."""

    __slots__ = ("graph", "color", "k")

    def __init__(self, graph: Graph, color: Dict[int, int], k: Optional[int] = None):
        if set(color) != set(graph.vertices):
            raise GraphError("coloring must assign a color to every vertex")
        if any(c < 1 for c in color.values()):
            raise GraphError("colors must be positive integers")
        self.graph = graph
        self.color = dict(color)
        self.k = k if k is not None else max(color.values(), default=0)
        if any(c > self.k for c in color.values()):
            raise GraphError("color exceeds declared color count")

    def is_proper(self) -> bool:
        return all(self.color[u] != self.color[v] for u, v in self.graph.edges)

    def require_proper(self) -> "Coloring":
        for u, v in sorted(self.graph.edges):
            if self.color[u] == self.color[v]:
                raise GraphError(f"edge ({u},{v}) is monochromatic")
        return self

    def is_distance2(self) -> bool:
        """True iff vertices joined by a path of length <= 2 get distinct colors."""
        g = self.graph
        for v in g.vertices:
            nearby = set(g.neighbors(v))
            for u in g.neighbors(v):
                nearby |= g.neighbors(u)
            nearby.discard(v)
            if any(self.color[u] == self.color[v] for u in nearby):
                return False
        return True

    def classes(self) -> Dict[int, FrozenSet[int]]:
        out: Dict[int, set] = {}
        for v, c in self.color.items():
            out.setdefault(c, set()).add(v)
        return {c: frozenset(s) for c, s in out.items()}

    def __repr__(self):
        return f"Coloring(k={self.k}, n={self.graph.n})"


class Layering:
    """Ordered partition (V_0,...,V_t) with every edge inside or between consecutive layers."""

    __slots__ = ("graph", "layers", "layer_of")

    def __init__(self, graph: Graph, layers: Sequence[Iterable[int]]):
        layer_sets = [frozenset(layer) for layer in layers]
        flat = [v for layer in layer_sets for v in layer]
        if len(flat) != len(set(flat)) or set(flat) != set(graph.vertices):
            raise GraphError("layers must partition the vertex set")
        layer_of = {}
        for i, layer in enumerate(layer_sets):
            for v in layer:
                layer_of[v] = i
        for u, v in sorted(graph.edges):
            if abs(layer_of[u] - layer_of[v]) > 1:
                raise GraphError(f"edge ({u},{v}) skips a layer")
        self.graph = graph
        self.layers = tuple(layer_sets)
        self.layer_of = layer_of

    @property
    def depth(self) -> int:
        return len(self.layers)

    def tail_vertices(self, i: int) -> FrozenSet[int]:
        """V_{>=i}."""
        return frozenset().union(*self.layers[i:]) if i < len(self.layers) else frozenset()

    def __repr__(self):
        return f"Layering(t={len(self.layers) - 1}, n={self.graph.n})"


def shadow(g: Graph, layering: Layering, component: Iterable[int], i: int) -> FrozenSet[int]:
    """Vertices of V_{i-1} with a neighbor in the given connected subgraph of G_{>=i}."""
    prev = layering.layers[i - 1]
    out = set()
    for v in component:
        out |= g.neighbors(v) & prev
    return frozenset(out)


def is_shadow_complete(g: Graph, layering: Layering):
    """Check that every shadow of every component of every G_{>=i} induces a clique.

    Returns (True, None) or (False, witness) where witness is a tuple
    (layer index, component, shadow, non-adjacent pair).
    """
    for i in range(1, len(layering.layers)):
        tail = layering.tail_vertices(i)
        for comp in connected_components(g, tail):
            sh = shadow(g, layering, comp, i)
            for u, v in itertools.combinations(sorted(sh), 2):
                if not g.has_edge(u, v):
                    return False, (i, comp, sh, (u, v))
    return True, None


def bfs_layering(g: Graph, root: int) -> Layering:
    """Layering by BFS distance from root. Requires a connected graph.

    Validity as a layering is automatic; shadow-completeness is not
    guaranteed and must be checked by the caller.
    """
    if not (1 <= root <= g.n):
        raise GraphError(f"root {root} out of range")
    dist = {root: 0}
    frontier = [root]
    layers = [[root]]
    while frontier:
        nxt = []
        for v in frontier:
            for w in sorted(g.neighbors(v)):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    nxt.append(w)
        if nxt:
            layers.append(nxt)
        frontier = nxt
    if len(dist) != g.n:
        raise GraphError("graph is disconnected; split into components first")
    return Layering(g, layers)


class TrackLayout:
    """Proper coloring plus a vertex order with no same-track-pair crossing edges."""

    __slots__ = ("coloring", "order", "rank")

    def __init__(self, coloring: Coloring, order: Sequence[int]):
        g = coloring.graph
        if sorted(order) != list(g.vertices):
            raise GraphError("order must be a permutation of the vertex set")
        coloring.require_proper()
        self.coloring = coloring
        self.order = tuple(order)
        self.rank = {v: i for i, v in enumerate(order)}
        bad = self.first_crossing()
        if bad is not None:
            raise GraphError(f"edges {bad[0]} and {bad[1]} cross within their tracks")

    def first_crossing(self):
        """First pair of same-track-pair crossing edges, or None. O(|E|^2)."""
        color = self.coloring.color
        rank = self.rank
        edges = sorted(self.coloring.graph.edges)
        for e1, e2 in itertools.combinations(edges, 2):
            for u1, u2 in (e1, (e1[1], e1[0])):
                for v1, v2 in (e2, (e2[1], e2[0])):
                    if color[u1] == color[v1] and color[u2] == color[v2]:
                        if rank[u1] < rank[v1] and rank[v2] < rank[u2]:
                            return (e1, e2)
        return None

    @property
    def graph(self) -> Graph:
        return self.coloring.graph

    def __repr__(self):
        return f"TrackLayout(tracks={self.coloring.k}, n={self.graph.n})"


def search_track_layout(g: Graph, max_tracks: int = 4) -> Optional[TrackLayout]:
    """Backtracking search for a track layout with at most max_tracks tracks.

    The vertex order is fixed to 1..n and colors are assigned greedily with
    backtracking; intended for small test graphs, not a general algorithm.
    """
    order = list(g.vertices)
    rank = {v: i for i, v in enumerate(order)}
    color: Dict[int, int] = {}

    def crosses(v: int, c: int) -> bool:
        # Check new edges at v against already fully colored edges.
        for w in g.neighbors(v):
            if w not in color:
                continue
            for x, y in g.edges:
                if x not in color or y not in color:
                    continue
                if (x, y) == _norm_edge(v, w):
                    continue
                for u1, u2 in ((v, w), (w, v)):
                    for v1, v2 in ((x, y), (y, x)):
                        cu1 = c if u1 == v else color[u1]
                        cu2 = c if u2 == v else color[u2]
                        if cu1 == color[v1] and cu2 == color[v2]:
                            if rank[u1] < rank[v1] and rank[v2] < rank[u2]:
                                return True
                            if rank[v1] < rank[u1] and rank[u2] < rank[v2]:
                                return True
        return False

    def assign(idx: int) -> bool:
        if idx == len(order):
            return True
        v = order[idx]
        for c in range(1, max_tracks + 1):
            if any(color.get(w) == c for w in g.neighbors(v)):
                continue
            if crosses(v, c):
                continue
            color[v] = c
            if assign(idx + 1):
                return True
            del color[v]
        return False

    if g.n == 0:
        return None
    if assign(0):
        return TrackLayout(Coloring(g, color), order)
    return None


class TreeDecomposition:
    """Tree T over decomposition nodes plus bags beta: V(T) -> 2^{V(G)}."""

    __slots__ = ("tree", "bags")

    def __init__(self, tree: Graph, bags: Dict[int, Iterable[int]]):
        if set(bags) != set(tree.vertices):
            raise GraphError("bags must be indexed by the tree nodes")
        if tree.n > 0:
            if len(tree.edges) != tree.n - 1 or not is_connected(tree):
                raise GraphError("decomposition tree must be a tree")
        self.tree = tree
        self.bags = {x: frozenset(b) for x, b in bags.items()}

    def validate(self, g: Graph) -> None:
        for x, bag in self.bags.items():
            if any(not (1 <= v <= g.n) for v in bag):
                raise GraphError(f"bag {x} contains an unknown vertex")
        for u, v in sorted(g.edges):
            if not any({u, v} <= bag for bag in self.bags.values()):
                raise GraphError(f"edge ({u},{v}) is not covered by any bag")
        for v in g.vertices:
            nodes = {x for x, bag in self.bags.items() if v in bag}
            if not nodes:
                raise GraphError(f"vertex {v} appears in no bag")
            comp = connected_components(self.tree, nodes)
            if len(comp) != 1:
                raise GraphError(f"occupancy of vertex {v} is not connected")

    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=1) - 1

    def adhesions(self) -> List[Tuple[Tuple[int, int], FrozenSet[int]]]:
        out = []
        for x, y in sorted(self.tree.edges):
            out.append(((x, y), self.bags[x] & self.bags[y]))
        return out

    def is_k_rich(self, g: Graph, k: int):
        """Check every adhesion induces a clique of size <= k; returns (bool, witness)."""
        for (x, y), adh in self.adhesions():
            if len(adh) > k:
                return False, ((x, y), adh, "too large")
            if not g.is_clique(adh):
                return False, ((x, y), adh, "not a clique")
        return True, None

    def __repr__(self):
        return f"TreeDecomposition(nodes={self.tree.n}, width={self.width()})"


def make_rich_supergraph(g: Graph, td: TreeDecomposition) -> Tuple[Graph, TreeDecomposition, int]:
    """Complete every adhesion of td into a clique.

    Returns (G', td, k) where G' is g plus all edges inside adhesions, td
    is unchanged (it remains a valid decomposition of G'), and k is the
    maximum adhesion size, so that td is k-rich over G'.
    """
    td.validate(g)
    new_edges = set(g.edges)
    k = 0
    for _, adh in td.adhesions():
        k = max(k, len(adh))
        for u, v in itertools.combinations(sorted(adh), 2):
            new_edges.add(_norm_edge(u, v))
    g_prime = Graph(g.n, new_edges)
    td.validate(g_prime)
    ok, witness = td.is_k_rich(g_prime, k)
    assert ok, witness
    return g_prime, td, k


def exact_treewidth_decomposition(g: Graph, max_n: int = 10) -> TreeDecomposition:
    """Optimal-width tree decomposition by dynamic programming over subsets.

    Test scaffolding only: refuses graphs with more than max_n vertices.
    """
    if g.n > max_n:
        raise GraphError(f"brute-force decomposition limited to n <= {max_n}")
    if g.n == 0:
        return TreeDecomposition(Graph(1), {1: frozenset()})
    verts = list(g.vertices)
    index = {v: i for i, v in enumerate(verts)}
    full = (1 << g.n) - 1

    def q_size(eliminated: int, v: int) -> FrozenSet[int]:
        # Neighbors of v in the remaining graph after contracting the
        # eliminated set: vertices reachable from v through eliminated ones.
        seen = {v}
        stack = [v]
        out = set()
        while stack:
            x = stack.pop()
            for w in g.neighbors(x):
                if w in seen:
                    continue
                seen.add(w)
                if eliminated >> index[w] & 1:
                    stack.append(w)
                else:
                    out.add(w)
        return frozenset(out)

    # f[S] = min over elimination orders of S (eliminated first) of the
    # max back-degree; choice[S] records the first vertex to eliminate.
    import functools

    @functools.lru_cache(maxsize=None)
    def f(eliminated: int) -> Tuple[int, int]:
        if eliminated == full:
            return (0, -1)
        best = None
        best_v = -1
        for v in verts:
            if eliminated >> index[v] & 1:
                continue
            deg = len(q_size(eliminated, v))
            rest, _ = f(eliminated | (1 << index[v]))
            cand = max(deg, rest)
            if best is None or cand < best:
                best, best_v = cand, v
        return (best, best_v)

    order = []
    state = 0
    while state != full:
        _, v = f(state)
        order.append(v)
        state |= 1 << index[v]

    # Build bags from the elimination order, rooted at the last vertex.
    bags: Dict[int, FrozenSet[int]] = {}
    parent: Dict[int, int] = {}
    pos = {v: i for i, v in enumerate(order)}
    elim = 0
    for v in order:
        q = q_size(elim, v)
        bags[v] = frozenset({v} | q)
        if q:
            parent[v] = min(q, key=lambda u: pos[u])
        elim |= 1 << index[v]
    node_id = {v: i + 1 for i, v in enumerate(order)}
    edges = []
    for v in order[:-1]:
        p = parent.get(v, order[-1])
        edges.append((node_id[v], node_id[p]))
    tree = Graph(len(order), edges)
    td = TreeDecomposition(tree, {node_id[v]: bags[v] for v in order})
    td.validate(g)
    return td


def enumerate_proper_colorings(g: Graph, k: int, fix_first: bool = True):
    """Yield all proper colorings V -> [k] as dicts, first vertex fixed to color 1.

    Fixing the first vertex is a symmetry reduction used by the
    homomorphism enumeration solver; correctness is unaffected because
    compliance is invariant under simultaneous color renaming.
    """
    verts = list(g.vertices)
    if not verts:
        yield {}
        return
    color: Dict[int, int] = {}

    def rec(idx: int):
        if idx == len(verts):
            yield dict(color)
            return
        v = verts[idx]
        choices = range(1, 2 if (fix_first and idx == 0) else k + 1)
        for c in choices:
            if any(color.get(w) == c for w in g.neighbors(v)):
                continue
            color[v] = c
            yield from rec(idx + 1)
            del color[v]

    yield from rec(0)
