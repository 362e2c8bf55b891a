"""Operation tables, persistent majority triples, and their constructions.

A persistent majority triple for a binary crisp language is a tuple
F = (f1, f2, f3) of ternary operations such that f1 is majority, the
componentwise outputs on any three domain elements form exactly the input
multiset, and the same holds for any three tuples of any relation of the
language. This module verifies the property exhaustively, searches for
triples by complete constraint propagation, and builds them from track
layouts, distance-2 colorings, vertex re-additions, and shadow-complete
layerings.
"""

from __future__ import annotations

import bisect
import itertools
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .graphs import (
    Coloring,
    Graph,
    GraphError,
    Layering,
    TrackLayout,
    connected_components,
    is_connected,
    is_shadow_complete,
    shadow,
)
from .vcsp import BudgetExceeded, CrispLanguage, crisp_language_of_coloring

Tup3 = Tuple[int, int, int]

_SIGMAS: Tuple[Tup3, ...] = (
    (1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1),
)


class CoordinatePermutation:
    """pi(a1,a2,a3) = (a_{sigma(1)}, a_{sigma(2)}, a_{sigma(3)})."""

    __slots__ = ("sigma",)

    def __init__(self, sigma: Tup3):
        if sorted(sigma) != [1, 2, 3]:
            raise ValueError("sigma must be a permutation of {1,2,3}")
        self.sigma = tuple(sigma)

    def apply(self, t: Tuple) -> Tuple:
        return (t[self.sigma[0] - 1], t[self.sigma[1] - 1], t[self.sigma[2] - 1])

    @property
    def is_identity(self) -> bool:
        return self.sigma == (1, 2, 3)

    def __eq__(self, other):
        return isinstance(other, CoordinatePermutation) and self.sigma == other.sigma

    def __hash__(self):
        return hash(self.sigma)

    def __repr__(self):
        return f"CoordinatePermutation{self.sigma}"


ALL_PERMUTATIONS: Tuple[CoordinatePermutation, ...] = tuple(
    CoordinatePermutation(s) for s in _SIGMAS
)


class OperationTable:
    """Total operation D^3 -> D stored densely over a sorted domain."""

    __slots__ = ("domain", "_index", "table")

    def __init__(self, domain: Sequence[int], table: Dict[Tup3, int]):
        self.domain = tuple(sorted(domain))
        if len(set(self.domain)) != len(self.domain):
            raise ValueError("domain elements must be distinct")
        self._index = {a: i for i, a in enumerate(self.domain)}
        d = len(self.domain)
        flat = [0] * (d * d * d)
        count = 0
        for (a, b, c), v in table.items():
            ia, ib, ic = self._index[a], self._index[b], self._index[c]
            if v not in self._index:
                raise ValueError(f"value {v} outside domain")
            flat[(ia * d + ib) * d + ic] = self._index[v]
            count += 1
        if count != d ** 3:
            raise ValueError("table must be total over D^3")
        self.table = flat

    @classmethod
    def from_function(cls, domain: Sequence[int], fn) -> "OperationTable":
        dom = sorted(domain)
        return cls(dom, {
            t: fn(*t) for t in itertools.product(dom, repeat=3)
        })

    def __call__(self, a: int, b: int, c: int) -> int:
        d = len(self.domain)
        i = (self._index[a] * d + self._index[b]) * d + self._index[c]
        return self.domain[self.table[i]]

    def is_majority(self) -> Optional[Tuple[int, int]]:
        """None if majority; otherwise the first violating pair (a, b)."""
        for a in self.domain:
            for b in self.domain:
                if (
                    self(b, a, a) != a
                    or self(a, b, a) != a
                    or self(a, a, b) != a
                ):
                    return (a, b)
        return None

    def __repr__(self):
        return f"OperationTable(|D|={len(self.domain)})"


class Triple:
    """Candidate persistent majority triple F = (f1, f2, f3)."""

    __slots__ = ("f1", "f2", "f3")

    def __init__(self, f1: OperationTable, f2: OperationTable, f3: OperationTable):
        if not (f1.domain == f2.domain == f3.domain):
            raise ValueError("the three tables must share a domain")
        self.f1, self.f2, self.f3 = f1, f2, f3

    @property
    def domain(self) -> Tuple[int, ...]:
        return self.f1.domain

    def apply(self, a: int, b: int, c: int) -> Tup3:
        return (self.f1(a, b, c), self.f2(a, b, c), self.f3(a, b, c))

    def apply_tuples(self, t1: Tuple, t2: Tuple, t3: Tuple) -> Tuple[Tuple, ...]:
        """Componentwise application to equal-arity tuples."""
        out = []
        for f in (self.f1, self.f2, self.f3):
            out.append(tuple(f(x, y, z) for x, y, z in zip(t1, t2, t3)))
        return tuple(out)

    @classmethod
    def from_functions(cls, domain: Sequence[int], g1, g2, g3) -> "Triple":
        return cls(
            OperationTable.from_function(domain, g1),
            OperationTable.from_function(domain, g2),
            OperationTable.from_function(domain, g3),
        )

    def __repr__(self):
        return f"Triple(|D|={len(self.domain)})"


def verify_persistent_triple(lang: CrispLanguage, F: Triple):
    """Exhaustive check of the three defining conditions.

    Returns (True, None) or (False, counterexample). The counterexample is
    ("majority", (a, b)), ("domain", (a1, a2, a3)), or
    ("relation", name, (t1, t2, t3)).
    """
    if set(F.domain) != set(range(1, lang.domain_size + 1)):
        raise ValueError("triple domain does not match the language domain")
    bad = F.f1.is_majority()
    if bad is not None:
        return False, ("majority", bad)
    for t in itertools.product(F.domain, repeat=3):
        if sorted(F.apply(*t)) != sorted(t):
            return False, ("domain", t)
    for name, rel in lang.sorted_items():
        tuples = sorted(rel)
        for t1, t2, t3 in itertools.product(tuples, repeat=3):
            out = F.apply_tuples(t1, t2, t3)
            if sorted(out) != sorted((t1, t2, t3)):
                return False, ("relation", name, (t1, t2, t3))
    return True, None


def triple_from_track_layout(layout: TrackLayout) -> Triple:
    """The (median, min, max) triple of the layout order.

    Guaranteed to verify against the language of the layout coloring.
    """
    rank = layout.rank
    domain = sorted(layout.graph.vertices)

    def med(a, b, c):
        return sorted((a, b, c), key=rank.__getitem__)[1]

    def lo(a, b, c):
        return min((a, b, c), key=rank.__getitem__)

    def hi(a, b, c):
        return max((a, b, c), key=rank.__getitem__)

    return Triple.from_functions(domain, med, lo, hi)


def distance2_coloring(g: Graph) -> Coloring:
    """Greedy proper distance-2 coloring with at most max_degree^2 + 1 colors."""
    color: Dict[int, int] = {}
    for v in g.vertices:
        blocked = set()
        for u in g.neighbors(v):
            if u in color:
                blocked.add(color[u])
            for w in g.neighbors(u):
                if w != v and w in color:
                    blocked.add(color[w])
        c = 1
        while c in blocked:
            c += 1
        color[v] = c
    coloring = Coloring(g, color) if g.n else Coloring(g, {})
    assert coloring.k <= g.max_degree() ** 2 + 1
    assert coloring.is_distance2()
    return coloring


def _minority(u: int, v: int, w: int) -> int:
    # The element with multiplicity one; callers ensure exactly two are equal.
    if u == v:
        return w
    if u == w:
        return v
    return u


def cohen_triple(domain: Iterable[int], gamma: Coloring) -> Triple:
    """The first/second/minority triple for a distance-2 coloring."""
    dom = sorted(domain)
    if dom != sorted(gamma.graph.vertices):
        raise ValueError("domain must be the vertex set of the colored graph")
    if not gamma.is_distance2():
        raise GraphError("coloring is not a distance-2 coloring")

    def g1(u, v, w):
        return u if v != w else w

    def g2(u, v, w):
        return v if u != w else w

    def g3(u, v, w):
        return _minority(u, v, w) if len({u, v, w}) == 2 else w

    return Triple.from_functions(dom, g1, g2, g3)


def extend_after_deletion(
    g: Graph,
    new_vertices: Iterable[int],
    base_color: Dict[int, int],
    base_triple: Triple,
) -> Tuple[Coloring, Triple]:
    """Extend a coloring and triple of g minus `new_vertices` to all of g.

    Each re-added vertex receives its own fresh color; the extended triple
    acts as the base triple on old triples, as the identity when the last
    two arguments differ, and swaps the outer arguments otherwise. Uses
    exactly base colors + |new_vertices| colors.
    """
    new = sorted(set(new_vertices))
    old = sorted(set(g.vertices) - set(new))
    if list(base_triple.domain) != old:
        raise ValueError("base triple domain must be the retained vertex set")
    if sorted(base_color) != old:
        raise ValueError("base coloring must cover exactly the retained vertices")
    for u, v in g.edges:
        if u in base_color and v in base_color and base_color[u] == base_color[v]:
            raise GraphError(f"base coloring is not proper on edge ({u},{v})")
    next_color = max(base_color.values(), default=0)
    color = dict(base_color)
    for v in new:
        next_color += 1
        color[v] = next_color
    old_set = set(old)

    def extended(f_index):
        def fn(u, v, w):
            if u in old_set and v in old_set and w in old_set:
                return base_triple.apply(u, v, w)[f_index]
            if v != w:
                return (u, v, w)[f_index]
            return (w, v, u)[f_index]

        return fn

    domain = sorted(g.vertices)
    triple = Triple.from_functions(
        domain, extended(0), extended(1), extended(2)
    )
    return Coloring(g, color), triple


def clique_permutation(
    g: Graph,
    gamma: Coloring,
    F: Triple,
    cliques: Tuple[Iterable[int], Iterable[int], Iterable[int]],
) -> CoordinatePermutation:
    """Coordinate permutation agreeing with F on all monochromatic clique triples.

    Ties (no constraining triple) resolve to the identity. Existence is
    guaranteed when F verifies against the coloring language and the three
    sets induce cliques.
    """
    sets = [sorted(set(c)) for c in cliques]
    for s in sets:
        if not g.is_clique(s):
            raise GraphError(f"vertex set {s} does not induce a clique")
    mono = _monochromatic_triples(gamma.color, sets)
    return _permutation_on(mono, lambda u, v, w: F.apply(u, v, w))


def _monochromatic_triples(color: Dict[int, int], sets: List[List[int]]) -> List[Tup3]:
    by_color = []
    for s in sets:
        d: Dict[int, int] = {}
        for v in s:
            if color[v] in d:
                raise GraphError("clique contains two vertices of one color")
            d[color[v]] = v
        by_color.append(d)
    shared = sorted(set(by_color[0]) & set(by_color[1]) & set(by_color[2]))
    return [(by_color[0][c], by_color[1][c], by_color[2][c]) for c in shared]


def _permutation_on(mono: List[Tup3], apply_f) -> CoordinatePermutation:
    for pi in ALL_PERMUTATIONS:
        if all(apply_f(*m) == pi.apply(m) for m in mono):
            return pi
    raise GraphError("no coordinate permutation matches all monochromatic triples")


def cohen_on_subset(g: Graph, vertices: Iterable[int]) -> Tuple[Dict[int, int], Triple]:
    """Distance-2 coloring and Cohen triple of g[vertices], in original labels."""
    vs = sorted(set(vertices))
    sub, relabel = g.induced(vs)
    back = {new: old for old, new in relabel.items()}
    local = distance2_coloring(sub)
    mu = {back[v]: local.color[v] for v in sub.vertices}
    sub_triple = cohen_triple(sub.vertices, local)
    triple = Triple.from_functions(
        vs,
        lambda u, v, w: back[sub_triple.f1(relabel[u], relabel[v], relabel[w])],
        lambda u, v, w: back[sub_triple.f2(relabel[u], relabel[v], relabel[w])],
        lambda u, v, w: back[sub_triple.f3(relabel[u], relabel[v], relabel[w])],
    )
    return mu, triple


def cohen_layer_data(g: Graph, layering: Layering):
    """Per-layer component data from greedy distance-2 colorings (always valid)."""
    data = []
    for layer in layering.layers:
        entries = [
            cohen_on_subset(g, comp) for comp in connected_components(g, layer)
        ]
        data.append(entries)
    return data


def shadow_combine(
    g: Graph,
    layering: Layering,
    layer_data: Optional[List[List[Tuple[Dict[int, int], Triple]]]] = None,
) -> Tuple[Coloring, Triple]:
    """Combine per-layer colorings and triples along a shadow-complete layering.

    Colors are keyed by (local color, layer index mod 3, signature of the
    parent clique); the combined triple follows the inductive cases: lower
    levels keep their values, equal-parent-clique triples inside one
    component use the component triple, equal-clique cross-component
    triples use an identity/reversal rule, and unequal-clique triples are
    routed through the coordinate permutation of their parent cliques.
    The color count is at most 3(c+1)^(s+1) for local color bound c and
    maximum shadow size s.
    """
    if not is_connected(g):
        raise GraphError("graph must be connected; split components upstream")
    ok, witness = is_shadow_complete(g, layering)
    if not ok:
        raise GraphError(f"layering is not shadow-complete: {witness}")
    if not layering.layers or not layering.layers[0]:
        raise GraphError("layering must have a non-empty first layer")
    if layer_data is None:
        layer_data = cohen_layer_data(g, layering)

    comps: List[List[FrozenSet[int]]] = []
    comp_of: Dict[int, Tuple[int, int]] = {}
    for i, layer in enumerate(layering.layers):
        cs = connected_components(g, layer)
        comps.append(cs)
        for ci, comp in enumerate(cs):
            for v in comp:
                comp_of[v] = (i, ci)
    if len(comps[0]) != 1:
        raise GraphError("layer 0 must be connected for a shadow-complete layering")

    mu: Dict[int, int] = {}
    triples: Dict[Tuple[int, int], Triple] = {}
    for i, entries in enumerate(layer_data):
        if len(entries) != len(comps[i]):
            raise GraphError(
                f"layer {i}: expected data for {len(comps[i])} components"
            )
        for ci, (local_mu, local_triple) in enumerate(entries):
            comp = comps[i][ci]
            if set(local_mu) != set(comp):
                raise GraphError(f"layer {i} component {ci}: coloring mismatch")
            if list(local_triple.domain) != sorted(comp):
                raise GraphError(f"layer {i} component {ci}: triple domain mismatch")
            mu.update(local_mu)
            triples[(i, ci)] = local_triple

    kappa: Dict[Tuple[int, int], FrozenSet[int]] = {}
    for i in range(len(comps)):
        for ci, comp in enumerate(comps[i]):
            kappa[(i, ci)] = (
                frozenset() if i == 0 else shadow(g, layering, comp, i)
            )
            if i > 0 and not kappa[(i, ci)]:
                raise GraphError(
                    "empty parent clique above layer 0; layering is inconsistent"
                )

    def signature(vs: FrozenSet[int]) -> Tuple[int, ...]:
        return tuple(sorted({mu[v] for v in vs}))

    c_used = max(mu.values(), default=1)
    s_max = max((len(k) for k in kappa.values()), default=0)
    keys = {
        v: (mu[v], layering.layer_of[v] % 3, signature(kappa[comp_of[v]]))
        for v in g.vertices
    }
    palette = {key: i + 1 for i, key in enumerate(sorted(set(keys.values())))}
    gamma = Coloring(g, {v: palette[keys[v]] for v in g.vertices})
    assert gamma.k <= 3 * (c_used + 1) ** (s_max + 1)
    gamma.require_proper()

    layer_of = layering.layer_of
    mono_cache: Dict[Tup3, Tup3] = {}
    perm_cache: Dict[Tuple[FrozenSet[int], FrozenSet[int], FrozenSet[int]], CoordinatePermutation] = {}

    def mono_value(u: int, v: int, w: int) -> Tup3:
        t = (u, v, w)
        got = mono_cache.get(t)
        if got is not None:
            return got
        top = max(layer_of[u], layer_of[v], layer_of[w])
        if top == 0:
            out = triples[(0, 0)].apply(u, v, w)
        else:
            ku, kv, kw = (kappa[comp_of[x]] for x in t)
            if not (ku == kv == kw):
                out = perm_for(ku, kv, kw).apply(t)
            elif comp_of[u] == comp_of[v] == comp_of[w]:
                out = triples[comp_of[u]].apply(u, v, w)
            else:
                # The first position whose component holds exactly one of
                # the three entries picks the reference component X; the
                # choice depends only on the positional component pattern,
                # which keeps case (ii.c) consistent along relation tuples.
                pattern = [comp_of[x] for x in t]
                ref = next(
                    pattern[p] for p in range(3) if pattern.count(pattern[p]) == 1
                )
                out = t if pattern[0] != ref else (w, v, u)
        mono_cache[t] = out
        return out

    def perm_for(k1: FrozenSet[int], k2: FrozenSet[int], k3: FrozenSet[int]) -> CoordinatePermutation:
        # The permutation must agree with the lower-level triple on every
        # monochromatic triple of the clique product, and its first
        # coordinate must respect the repeat pattern of the cliques: a
        # target triple (u,u,v) can only arise when the first two cliques
        # coincide, and majority then pins the first output coordinate to
        # one of the repeated positions. Constraining monochromatic
        # triples, when they exist, already satisfy the pattern filter.
        key = (k1, k2, k3)
        got = perm_cache.get(key)
        if got is None:
            if k1 == k2 != k3:
                allowed_first = (1, 2)
            elif k1 == k3 != k2:
                allowed_first = (1, 3)
            elif k2 == k3 != k1:
                allowed_first = (2, 3)
            else:
                allowed_first = (1, 2, 3)
            mono = _monochromatic_triples(gamma.color, [sorted(k1), sorted(k2), sorted(k3)])
            got = None
            for pi in ALL_PERMUTATIONS:
                if pi.sigma[0] not in allowed_first:
                    continue
                if all(mono_value(*m) == pi.apply(m) for m in mono):
                    got = pi
                    break
            if got is None:
                raise GraphError("no coordinate permutation fits the parent cliques")
            perm_cache[key] = got
        return got

    color = gamma.color

    def combined(f_index):
        def fn(u, v, w):
            if color[u] == color[v] == color[w]:
                return mono_value(u, v, w)[f_index]
            if v != w:
                return (u, v, w)[f_index]
            return (w, v, u)[f_index]

        return fn

    domain = sorted(g.vertices)
    triple = Triple.from_functions(domain, combined(0), combined(1), combined(2))
    return gamma, triple


def odd_cycle_majority(k: int) -> OperationTable:
    """The majority polymorphism of the odd-cycle list language.

    Over D = 1..2k+1: invariant under argument permutation, the median
    when all arguments share a parity, and otherwise the clamp of
    2k+3-c between the two same-parity arguments (c the odd one out).
    """
    if k < 1:
        raise ValueError("k must be positive")
    n = 2 * k + 1

    def clamp(val, lo, hi):
        if val > hi:
            return hi
        if val < lo:
            return lo
        return val

    def f(a, b, c):
        pa, pb, pc = a % 2, b % 2, c % 2
        if pa == pb == pc:
            return sorted((a, b, c))[1]
        if pa == pb:
            pair, odd_one = (a, b), c
        elif pa == pc:
            pair, odd_one = (a, c), b
        else:
            pair, odd_one = (b, c), a
        return clamp(n + 2 - odd_one, min(pair), max(pair))

    return OperationTable.from_function(range(1, n + 1), f)


def is_polymorphism(op: OperationTable, lang: CrispLanguage):
    """Exhaustive polymorphism check; returns (bool, first counterexample)."""
    for name, rel in lang.sorted_items():
        tuples = sorted(rel)
        for t1, t2, t3 in itertools.product(tuples, repeat=3):
            out = tuple(op(x, y, z) for x, y, z in zip(t1, t2, t3))
            if out not in rel:
                return False, (name, (t1, t2, t3), out)
    return True, None


# -- complete search for persistent majority triples -----------------------


def _candidates(t: Tup3) -> List[Tup3]:
    a, b, c = t
    if a == b == c:
        return [t]
    perms = sorted(set(itertools.permutations(t)))
    if len({a, b, c}) == 2:
        maj = a if (a == b or a == c) else b
        return [p for p in perms if p[0] == maj]
    return perms


def search_triple(lang: CrispLanguage, max_domain: int = 12) -> Optional[Triple]:
    """Complete backtracking search for a persistent majority triple.

    Returns a verified triple or None; None is a proof that no triple
    exists (k = 1 supports). One output-tuple decision is made per ordered
    argument triple, constrained to majority-respecting permutations of
    the inputs; every (t1,t2,t3) in R^3 of every relation links the head
    and tail triples through a shared coordinate permutation. Search is
    backtracking over lexicographic variables and values with full arc
    consistency maintained after each assignment.
    """
    D = lang.domain_size
    if D > max_domain:
        raise BudgetExceeded(f"domain size {D} exceeds search budget {max_domain}")
    values = list(range(1, D + 1))
    variables: List[Tup3] = list(itertools.product(values, repeat=3))
    var_index = {t: i for i, t in enumerate(variables)}
    domains: List[List[Tup3]] = [_candidates(t) for t in variables]

    # pair_allowed[(x, y)] with x < y: intersected allowed value pairs.
    pair_allowed: Dict[Tuple[int, int], Set[Tuple[Tup3, Tup3]]] = {}
    self_constrained: Dict[int, Set[Tup3]] = {}
    for _, rel in lang.sorted_items():
        tuples = sorted(rel)
        for t1, t2, t3 in itertools.product(tuples, repeat=3):
            h = (t1[0], t2[0], t3[0])
            l = (t1[1], t2[1], t3[1])
            hv, lv = var_index[h], var_index[l]
            allowed = {
                (pi.apply(h), pi.apply(l))
                for pi in ALL_PERMUTATIONS
            }
            if hv == lv:
                ok = {vh for vh, vl in allowed if vh == vl}
                prev = self_constrained.get(hv)
                self_constrained[hv] = ok if prev is None else (prev & ok)
                continue
            if hv < lv:
                key, pairs = (hv, lv), allowed
            else:
                key, pairs = (lv, hv), {(b, a) for a, b in allowed}
            prev = pair_allowed.get(key)
            pair_allowed[key] = pairs if prev is None else (prev & pairs)

    for xv, ok in self_constrained.items():
        domains[xv] = [v for v in domains[xv] if v in ok]
        if not domains[xv]:
            return None

    # Directed support tables restricted to the candidate domains.
    supports: Dict[Tuple[int, int], Dict[Tup3, Set[Tup3]]] = {}
    neighbors: Dict[int, List[int]] = {}
    for (x, y), pairs in pair_allowed.items():
        dx, dy = set(domains[x]), set(domains[y])
        fwd: Dict[Tup3, Set[Tup3]] = {}
        bwd: Dict[Tup3, Set[Tup3]] = {}
        for a, b in pairs:
            if a in dx and b in dy:
                fwd.setdefault(a, set()).add(b)
                bwd.setdefault(b, set()).add(a)
        supports[(x, y)] = fwd
        supports[(y, x)] = bwd
        neighbors.setdefault(x, []).append(y)
        neighbors.setdefault(y, []).append(x)

    trail: List[Tuple[int, Tup3]] = []

    def remove_value(x: int, v: Tup3) -> None:
        domains[x].remove(v)
        trail.append((x, v))

    def revise(x: int, y: int) -> Tuple[bool, bool]:
        """Prune dom[x] against dom[y]; returns (changed, wiped_out)."""
        supp = supports[(x, y)]
        dy = domains[y]
        changed = False
        for v in list(domains[x]):
            sv = supp.get(v)
            if sv is None or not any(u in sv for u in dy):
                remove_value(x, v)
                changed = True
        return changed, not domains[x]

    def propagate(seed: Optional[int]) -> bool:
        if seed is None:
            queue = [(x, y) for x in neighbors for y in neighbors[x]]
        else:
            queue = [(y, seed) for y in neighbors.get(seed, ())]
        queue_set = set(queue)
        while queue:
            x, y = queue.pop()
            queue_set.discard((x, y))
            changed, wiped = revise(x, y)
            if wiped:
                return False
            if changed:
                for z in neighbors.get(x, ()):
                    if z != y and (z, x) not in queue_set:
                        queue.append((z, x))
                        queue_set.add((z, x))
        return True

    if not propagate(None):
        return None

    order = sorted(range(len(variables)))

    def assign(pos: int) -> bool:
        while pos < len(order) and len(domains[order[pos]]) == 1:
            pos += 1
        if pos == len(order):
            return True
        x = order[pos]
        for v in list(domains[x]):
            mark = len(trail)
            for other in list(domains[x]):
                if other != v:
                    remove_value(x, other)
            if propagate(x) and assign(pos + 1):
                return True
            while len(trail) > mark:
                xx, vv = trail.pop()
                bisect.insort(domains[xx], vv)
        return False

    if not assign(0):
        return None
    solution = {variables[i]: domains[i][0] for i in range(len(variables))}
    tables = []
    for pos in range(3):
        tables.append(OperationTable(values, {
            t: solution[t][pos] for t in variables
        }))
    found = Triple(*tables)
    ok, witness = verify_persistent_triple(lang, found)
    assert ok, f"search produced an invalid triple: {witness}"
    return found
