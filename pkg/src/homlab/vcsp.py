"""Valued CSP instances, crisp languages, and the ValHom encoding.

Cost functions are dense tables over D^r with values in Q ∪ {inf}; a VCSP
instance is a sum of such terms applied to variable tuples. Crisp
languages collect the binary relations induced by a vertex coloring, and
the odd-cycle list family provides the three-set language driving the
randomized cycle algorithm.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .graphs import Coloring, DiGraph, Graph, GraphError
from .rational import INF, ExtRational


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive operation would exceed its configured budget."""


class CostFunction:
    """Dense cost table D^r -> Q ∪ {inf} over domain values 1..domain_size."""

    __slots__ = ("domain_size", "arity", "table")

    def __init__(self, domain_size: int, arity: int, table: Dict[Tuple[int, ...], ExtRational]):
        expected = domain_size ** arity
        if len(table) != expected:
            raise ValueError(
                f"table must be total: expected {expected} entries, got {len(table)}"
            )
        for t in table:
            if len(t) != arity or any(not (1 <= d <= domain_size) for d in t):
                raise ValueError(f"tuple {t} out of domain")
        self.domain_size = domain_size
        self.arity = arity
        self.table = dict(table)

    @classmethod
    def from_finite_entries(
        cls,
        domain_size: int,
        arity: int,
        finite: Dict[Tuple[int, ...], ExtRational],
        default: ExtRational = INF,
    ) -> "CostFunction":
        table = {}
        for t in itertools.product(range(1, domain_size + 1), repeat=arity):
            table[t] = finite.get(t, default)
        return cls(domain_size, arity, table)

    def __call__(self, t: Tuple[int, ...]) -> ExtRational:
        return self.table[t]

    def feasibility(self) -> FrozenSet[Tuple[int, ...]]:
        return frozenset(t for t, v in self.table.items() if not v.is_infinite)

    def __repr__(self):
        return f"CostFunction(D={self.domain_size}, arity={self.arity})"


def pin_function(domain_size: int, value: int) -> CostFunction:
    """Unary cost function that is 0 at `value` and inf elsewhere."""
    return CostFunction.from_finite_entries(
        domain_size, 1, {(value,): ExtRational(0)}
    )


class VcspInstance:
    """Variables x_1..x_n over a common domain plus a list of cost-function terms."""

    __slots__ = ("domain_size", "num_vars", "terms")

    def __init__(
        self,
        domain_size: int,
        num_vars: int,
        terms: Iterable[Tuple[CostFunction, Tuple[int, ...]]] = (),
    ):
        self.domain_size = domain_size
        self.num_vars = num_vars
        self.terms: List[Tuple[CostFunction, Tuple[int, ...]]] = []
        for fn, scope in terms:
            self._check_term(fn, scope)
            self.terms.append((fn, tuple(scope)))

    def _check_term(self, fn: CostFunction, scope: Sequence[int]) -> None:
        if fn.domain_size != self.domain_size:
            raise ValueError("term domain size does not match the instance")
        if len(scope) != fn.arity:
            raise ValueError("scope length must equal the function arity")
        if any(not (1 <= x <= self.num_vars) for x in scope):
            raise ValueError(f"scope {tuple(scope)} references an unknown variable")

    def with_term(self, fn: CostFunction, scope: Sequence[int]) -> "VcspInstance":
        return VcspInstance(
            self.domain_size, self.num_vars, list(self.terms) + [(fn, tuple(scope))]
        )

    def cost(self, assignment: Dict[int, int]) -> ExtRational:
        total = ExtRational(0)
        for fn, scope in self.terms:
            total = total + fn(tuple(assignment[x] for x in scope))
            if total.is_infinite:
                return INF
        return total

    def __repr__(self):
        return f"VcspInstance(D={self.domain_size}, n={self.num_vars}, m={len(self.terms)})"


def brute_force_opt(
    inst: VcspInstance, budget: int = 10 ** 8
) -> Tuple[ExtRational, Dict[int, int]]:
    """Exact optimum by exhaustive enumeration of all |D|^n assignments.

    Returns (optimum, argmin assignment); (inf, all-ones) when nothing is
    feasible. Integer arithmetic over a common denominator keeps the fast
    vectorized path exact; it falls back to a rational loop if the scaled
    values would not fit in int64.
    """
    D, n = inst.domain_size, inst.num_vars
    total = D ** n
    if total > budget:
        raise BudgetExceeded(f"|D|^n = {total} exceeds budget {budget}")
    default = {x: 1 for x in range(1, n + 1)}
    if n == 0 or D == 0:
        return (inst.cost({}) if n == 0 else INF), {}
    if not inst.terms:
        return ExtRational(0), default

    scaled = _try_scale_int64(inst)
    if scaled is not None and total > 4096:
        lcm, tables = scaled
        best_idx, best_num = _vector_opt(inst, tables, total)
        if best_idx is None:
            return INF, default
        assignment = _decode_assignment(best_idx, D, n)
        value = ExtRational(Fraction(int(best_num), lcm))
        assert inst.cost(assignment) == value
        return value, assignment

    best: Optional[ExtRational] = None
    best_assignment = default
    for combo in itertools.product(range(1, D + 1), repeat=n):
        assignment = {x: combo[x - 1] for x in range(1, n + 1)}
        c = inst.cost(assignment)
        if not c.is_infinite and (best is None or c < best):
            best, best_assignment = c, assignment
    if best is None:
        return INF, default
    return best, best_assignment


def _try_scale_int64(inst: VcspInstance):
    denoms = set()
    for fn, _ in inst.terms:
        for v in fn.table.values():
            if not v.is_infinite:
                denoms.add(v.frac.denominator)
    lcm = 1
    for d in denoms:
        lcm = lcm * d // math.gcd(lcm, d)
        if lcm > 10 ** 9:
            return None
    tables = []
    bound = 0
    for fn, scope in inst.terms:
        flat = np.zeros(inst.domain_size ** fn.arity, dtype=np.int64)
        mask = np.zeros(inst.domain_size ** fn.arity, dtype=bool)
        for t, v in fn.table.items():
            idx = 0
            for d in t:
                idx = idx * inst.domain_size + (d - 1)
            if v.is_infinite:
                mask[idx] = True
            else:
                num = v.frac.numerator * (lcm // v.frac.denominator)
                if abs(num) > 10 ** 12:
                    return None
                flat[idx] = num
                bound = max(bound, abs(num))
        tables.append((flat, mask, scope))
    if bound * max(len(inst.terms), 1) > 2 ** 62:
        return None
    return lcm, tables


def _vector_opt(inst, tables, total):
    D, n = inst.domain_size, inst.num_vars
    chunk = 1 << 20
    best_idx, best_num = None, None
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.int64)
        digits = np.empty((stop - start, n), dtype=np.int64)
        rem = idx.copy()
        for pos in range(n - 1, -1, -1):
            digits[:, pos] = rem % D
            rem //= D
        cost = np.zeros(stop - start, dtype=np.int64)
        infeasible = np.zeros(stop - start, dtype=bool)
        for flat, mask, scope in tables:
            t_idx = np.zeros(stop - start, dtype=np.int64)
            for x in scope:
                t_idx = t_idx * D + digits[:, x - 1]
            infeasible |= mask[t_idx]
            cost += flat[t_idx]
        if (~infeasible).any():
            local = np.where(~infeasible)[0]
            pos = local[np.argmin(cost[local])]
            if best_num is None or cost[pos] < best_num or (
                cost[pos] == best_num and start + pos < best_idx
            ):
                best_num = int(cost[pos])
                best_idx = int(start + pos)
    return best_idx, best_num


def _decode_assignment(idx: int, D: int, n: int) -> Dict[int, int]:
    out = {}
    for x in range(n, 0, -1):
        out[x] = idx % D + 1
        idx //= D
    return out


class CrispLanguage:
    """Named finite set of binary relations over domain values 1..domain_size."""

    __slots__ = ("domain_size", "relations")

    def __init__(self, domain_size: int, relations: Dict[str, Iterable[Tuple[int, int]]]):
        self.domain_size = domain_size
        rels = {}
        for name, pairs in relations.items():
            ps = frozenset((int(a), int(b)) for a, b in pairs)
            for a, b in ps:
                if not (1 <= a <= domain_size and 1 <= b <= domain_size):
                    raise ValueError(f"pair ({a},{b}) in {name} out of domain")
            rels[name] = ps
        self.relations = rels

    def sorted_items(self):
        return sorted(self.relations.items())

    def __repr__(self):
        return f"CrispLanguage(D={self.domain_size}, relations={len(self.relations)})"


def crisp_language_of_coloring(g: Graph, gamma: Coloring) -> CrispLanguage:
    """The language {R_ij} with R_ij = edges of g directed from color i to color j.

    Empty relations are included, one per ordered color pair; the coloring
    must be proper (so every R_ii is empty).
    """
    if gamma.graph is not g and gamma.graph != g:
        raise ValueError("coloring must color the given graph")
    gamma.require_proper()
    k = gamma.k
    rels: Dict[str, set] = {
        f"R_{i}_{j}": set() for i in range(1, k + 1) for j in range(1, k + 1)
    }
    for u, v in g.edges:
        cu, cv = gamma.color[u], gamma.color[v]
        rels[f"R_{cu}_{cv}"].add((u, v))
        rels[f"R_{cv}_{cu}"].add((v, u))
    return CrispLanguage(g.n, rels)


class OddCycleFamily:
    """The three vertex lists S_k, S_k^A, S_k^B of the odd cycle C_{2k+1}."""

    __slots__ = ("k", "S", "A", "B")

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("k must be positive")
        self.k = k
        n = 2 * k + 1
        self.S = frozenset(range(2, n + 1))
        self.A = frozenset(v for v in range(1, n + 1) if v % 2 == 1)
        self.B = frozenset(v for v in range(1, n + 1) if v % 2 == 0) | {1}

    @property
    def cycle_order(self) -> int:
        return 2 * self.k + 1

    def sets(self) -> List[Tuple[str, FrozenSet[int]]]:
        return [("S", self.S), ("A", self.A), ("B", self.B)]

    def cycle(self) -> Graph:
        n = self.cycle_order
        edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
        return Graph(n, edges)


def odd_cycle_language(k: int) -> Tuple[CrispLanguage, OddCycleFamily]:
    """The six list relations of C_{2k+1} over the family {S_k, S_k^A, S_k^B}.

    One relation per unordered pair of lists (the transpose carries the
    same polymorphisms); R_{U1 U2} holds the edge pairs directed from U1
    into U2.
    """
    fam = OddCycleFamily(k)
    cyc = fam.cycle()
    rels = {}
    named = fam.sets()
    for i, (n1, u1) in enumerate(named):
        for n2, u2 in named[i:]:
            rels[f"R_{n1}{n2}"] = {
                (a, b) for a in u1 for b in u2 if cyc.has_edge(a, b)
            }
    return CrispLanguage(fam.cycle_order, rels), fam


class ArcCostMap:
    """Total cost map A(G) x A(H) -> Q ∪ {inf}, stored as overrides + default."""

    __slots__ = ("default", "overrides")

    def __init__(
        self,
        default: ExtRational = ExtRational(0),
        overrides: Optional[Dict[Tuple[Tuple[int, int], Tuple[int, int]], ExtRational]] = None,
    ):
        self.default = default
        self.overrides = dict(overrides or {})

    def __call__(self, g_arc: Tuple[int, int], h_arc: Tuple[int, int]) -> ExtRational:
        return self.overrides.get((g_arc, h_arc), self.default)


class ValHomInstance:
    """Directed graphs G, H plus an arc-pair cost map eta."""

    __slots__ = ("G", "H", "eta")

    def __init__(self, G: DiGraph, H: DiGraph, eta: ArcCostMap):
        self.G = G
        self.H = H
        self.eta = eta

    def cost_of(self, g_map: Dict[int, int]) -> ExtRational:
        """Cost of a vertex map, inf if it is not a homomorphism."""
        total = ExtRational(0)
        for (u, v) in self.G.arcs:
            image = (g_map[u], g_map[v])
            if image not in self.H.arcs:
                return INF
            total = total + self.eta((u, v), image)
            if total.is_infinite:
                return INF
        return total

    def table_size(self) -> int:
        return len(self.G.arcs) * len(self.H.arcs)

    def __repr__(self):
        return f"ValHomInstance(n={self.G.n}, h={self.H.n})"


def valhom_to_vcsp(
    inst: ValHomInstance,
    gamma_g: Dict[int, int],
    gamma_h: Coloring,
) -> VcspInstance:
    """Encode the color-compliant minimum-cost homomorphism problem as a VCSP.

    One variable per G-vertex over domain V(H); one binary term per arc
    (v_i, v_j) of G whose cost at (u, w) is eta((v_i,v_j),(u,w)) when
    (u, w) is an arc of H with matching colors on both sides, inf
    otherwise. Feasible assignments are exactly the finite-cost compliant
    homomorphisms.
    """
    gamma_h.require_proper()
    G, H = inst.G, inst.H
    for v in G.vertices:
        if G.is_isolated(v):
            raise ValueError(
                f"vertex {v} of G is isolated; strip isolated vertices before encoding"
            )
    if set(gamma_g) != set(G.vertices):
        raise ValueError("gamma_g must color every vertex of G")
    terms = []
    h = H.n
    for (vi, vj) in sorted(G.arcs):
        finite: Dict[Tuple[int, int], ExtRational] = {}
        ci, cj = gamma_g[vi], gamma_g[vj]
        for (u, w) in H.arcs:
            if (gamma_h.color[u], gamma_h.color[w]) == (ci, cj):
                val = inst.eta((vi, vj), (u, w))
                if not val.is_infinite:
                    finite[(u, w)] = val
        terms.append((CostFunction.from_finite_entries(h, 2, finite), (vi, vj)))
    return VcspInstance(h, G.n, terms)
