"""End-to-end decision and optimization procedures.

unif_solve realizes the self-reduction over SA(2,3): solve the relaxation
once, then pin variables value by value, keeping the first value that
preserves the optimum exactly; if no value does, the feasibility language
cannot have a persistent majority support. valhom_solve enumerates color
pairs and reduces to unif_solve. The odd-cycle decision algorithm samples
one of three vertex lists per vertex and accepts iff the resulting
{0, inf} relaxation has optimum zero; because the list language has a
majority polymorphism, that test is decided combinatorially by (2,3)-
consistency, with the literal LP route available for cross-checking.
"""

from __future__ import annotations

import hashlib
import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .graphs import DiGraph, Graph, enumerate_proper_colorings, Coloring
from .rational import INF, ExtRational
from .sherali_adams import solve_sa
from .vcsp import (
    ArcCostMap,
    BudgetExceeded,
    CostFunction,
    OddCycleFamily,
    ValHomInstance,
    VcspInstance,
    pin_function,
    valhom_to_vcsp,
)

NO_TRIPLE = "no_triple"


@dataclass
class UnifResult:
    status: str  # "assignment" or "no_triple"
    assignment: Optional[Dict[int, int]]
    cost: Optional[ExtRational]
    lp_solves: int


def unif_solve(inst: VcspInstance, float_assist: bool = True) -> UnifResult:
    """Self-reduction solver: a minimum-cost assignment or NO_TRIPLE.

    Solves SA(2,3) once; an infeasible relaxation certifies that every
    assignment has infinite cost and an arbitrary assignment is returned.
    Otherwise variables are fixed in index order, trying domain values in
    increasing order and keeping the first whose pinned relaxation keeps
    the optimum exactly. Any returned assignment has cost equal to the
    initial SA(2,3) optimum.
    """
    D, n = inst.domain_size, inst.num_vars
    _, res = solve_sa(inst, float_assist=float_assist)
    lp_solves = 1
    if not res.is_optimal:
        arbitrary = {x: 1 for x in range(1, n + 1)}
        return UnifResult("assignment", arbitrary, INF, lp_solves)
    s = res.optimum
    current = inst
    fixed: Dict[int, int] = {}
    for x in range(1, n + 1):
        chosen = None
        for a in range(1, D + 1):
            candidate = current.with_term(pin_function(D, a), (x,))
            _, r = solve_sa(candidate, float_assist=float_assist)
            lp_solves += 1
            if r.is_optimal and r.optimum == s:
                chosen = a
                current = candidate
                break
        if chosen is None:
            return UnifResult(NO_TRIPLE, None, None, lp_solves)
        fixed[x] = chosen
    assert inst.cost(fixed) == s
    return UnifResult("assignment", fixed, s, lp_solves)


@dataclass
class SolveReport:
    answer: Union[ExtRational, bool]
    witness: Optional[Dict[int, int]]
    stats: Dict[str, object] = field(default_factory=dict)


def graph_to_digraph(g: Graph) -> DiGraph:
    """Symmetric orientation; homomorphisms coincide with the undirected ones."""
    arcs = []
    for u, v in g.edges:
        arcs.append((u, v))
        arcs.append((v, u))
    return DiGraph(g.n, arcs)


def brute_force_hom(g, h, budget: int = 10 ** 8):
    """Exhaustive homomorphism test with backtracking; returns (bool, witness)."""
    if isinstance(g, Graph) != isinstance(h, Graph):
        raise ValueError("both structures must be of the same kind")
    if g.n > 0 and h.n == 0:
        return False, None
    if h.n ** g.n > budget:
        raise BudgetExceeded(f"{h.n}^{g.n} exceeds budget {budget}")
    directed = isinstance(g, DiGraph)
    assignment: Dict[int, int] = {}

    def consistent(v: int, image: int) -> bool:
        if directed:
            for w in g.out_neighbors(v):
                if w in assignment and (image, assignment[w]) not in h.arcs:
                    return False
            for w in g.in_neighbors(v):
                if w in assignment and (assignment[w], image) not in h.arcs:
                    return False
            if (v, v) in g.arcs and (image, image) not in h.arcs:
                return False
        else:
            for w in g.neighbors(v):
                if w in assignment and not h.has_edge(image, assignment[w]):
                    return False
        return True

    def rec(v: int) -> bool:
        if v > g.n:
            return True
        for image in range(1, h.n + 1):
            if consistent(v, image):
                assignment[v] = image
                if rec(v + 1):
                    return True
                del assignment[v]
        return False

    if rec(1):
        return True, dict(assignment)
    return False, None


def strip_isolated(inst: ValHomInstance):
    """Remove isolated G-vertices; returns (stripped instance, old->new map)."""
    kept = [v for v in inst.G.vertices if not inst.G.is_isolated(v)]
    mapping = {v: i + 1 for i, v in enumerate(kept)}
    arcs = [(mapping[u], mapping[v]) for u, v in inst.G.arcs]
    overrides = {}
    for (garc, harc), val in inst.eta.overrides.items():
        if garc[0] in mapping and garc[1] in mapping:
            overrides[((mapping[garc[0]], mapping[garc[1]]), harc)] = val
    g2 = DiGraph(len(kept), arcs)
    return ValHomInstance(g2, inst.H, ArcCostMap(inst.eta.default, overrides)), mapping


def _color_compatible(gamma_g: Sequence[int], g: DiGraph, arc_colors: set) -> bool:
    for (u, v) in g.arcs:
        if (gamma_g[u - 1], gamma_g[v - 1]) not in arc_colors:
            return False
    return True


def valhom_solve(
    inst: ValHomInstance,
    coloring_hint: Optional[Coloring] = None,
    subproblem_budget: int = 5_000_000,
    float_assist: bool = True,
) -> SolveReport:
    """Minimum-cost homomorphism by enumeration of color pairs.

    For k = 1, 2, ... and every proper coloring gamma_H of the underlying
    graph of H with k colors, every map gamma_G is paired with it and the
    compliant subproblem is relaxed exactly; the first gamma_H whose best
    subproblem survives the pinning extraction yields the answer. With a
    hint, only maps over the hint's colors are enumerated. The answer of
    every stop is witness-certified, so early stops cannot change the
    value. Raises BudgetExceeded past `subproblem_budget` subproblems.
    """
    t0 = time.perf_counter()
    stats: Dict[str, object] = {"subproblems": 0, "lp_solves": 0, "k_reached": 0}

    def report(answer, witness):
        stats["millis"] = round((time.perf_counter() - t0) * 1000, 3)
        return SolveReport(answer, witness, stats)

    G, H = inst.G, inst.H
    if G.n == 0:
        return report(ExtRational(0), {})
    if H.n == 0:
        return report(INF, None)
    stripped, mapping = strip_isolated(inst)
    if stripped.G.n == 0:
        # No arcs at all: every map is a homomorphism of cost zero.
        return report(ExtRational(0), {v: 1 for v in G.vertices})
    back = {new: old for old, new in mapping.items()}
    h_u = H.underlying_graph()

    def finish(assignment: Dict[int, int], value: ExtRational) -> SolveReport:
        witness = {back[x]: a for x, a in assignment.items()}
        for v in G.vertices:
            if v not in witness:
                witness[v] = 1
        assert inst.cost_of(witness) == value
        return report(value, witness)

    def run_colorings(colorings: Iterable[Dict[int, int]], k: int) -> Optional[SolveReport]:
        for gamma_h_map in colorings:
            gamma_h = Coloring(h_u, gamma_h_map, k)
            arc_colors = {
                (gamma_h_map[u], gamma_h_map[v]) for (u, v) in H.arcs
            }
            best_val: ExtRational = INF
            best_gamma: Optional[Tuple[int, ...]] = None
            for gamma_g in itertools.product(range(1, k + 1), repeat=stripped.G.n):
                stats["subproblems"] += 1
                if stats["subproblems"] > subproblem_budget:
                    raise BudgetExceeded(
                        f"subproblem budget {subproblem_budget} exhausted"
                    )
                if not _color_compatible(gamma_g, stripped.G, arc_colors):
                    continue
                enc = valhom_to_vcsp(
                    stripped, {x + 1: gamma_g[x] for x in range(len(gamma_g))}, gamma_h
                )
                _, res = solve_sa(enc, float_assist=float_assist)
                stats["lp_solves"] += 1
                if res.is_optimal and res.optimum < best_val:
                    best_val = res.optimum
                    best_gamma = gamma_g
            if best_gamma is None:
                # Every pairing is infeasible, hence no homomorphism exists:
                # each homomorphism would be compliant with the pair induced
                # by composing it with this gamma_H.
                return report(INF, None)
            enc = valhom_to_vcsp(
                stripped,
                {x + 1: best_gamma[x] for x in range(len(best_gamma))},
                gamma_h,
            )
            unif = unif_solve(enc, float_assist=float_assist)
            stats["lp_solves"] += unif.lp_solves
            if unif.status == "assignment":
                assert unif.cost == best_val
                return finish(unif.assignment, best_val)
        return None

    if coloring_hint is not None:
        coloring_hint.require_proper()
        stats["k_reached"] = coloring_hint.k
        out = run_colorings([dict(coloring_hint.color)], coloring_hint.k)
        if out is not None:
            return out
        raise RuntimeError("hinted coloring failed to produce an assignment")

    for k in range(1, H.n + 1):
        stats["k_reached"] = k
        out = run_colorings(enumerate_proper_colorings(h_u, k), k)
        if out is not None:
            return out
    raise AssertionError(
        "enumeration exhausted k = |V(H)|; the discrete coloring must succeed"
    )


# -- randomized odd-cycle algorithm -----------------------------------------


def _mpf_to_fraction(x) -> Fraction:
    import mpmath

    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    frac = Fraction(man) * (Fraction(2) ** exp)
    return -frac if sign else frac


def alpha_interval(k: int, prec: int = 160) -> Tuple[Fraction, Fraction]:
    """Rigorous enclosure of alpha_k = ((2k+1)/2)^(1/(2k+1)) ((2k+1)/(2k))^(2k/(2k+1))."""
    import mpmath

    iv = mpmath.iv
    old = iv.prec
    try:
        iv.prec = prec
        m = 2 * k + 1
        log_alpha = (
            iv.log(iv.mpf(m) / 2) + iv.mpf(2 * k) * iv.log(iv.mpf(m) / (2 * k))
        ) / m
        alpha = iv.exp(log_alpha)
        return _mpf_to_fraction(alpha.a), _mpf_to_fraction(alpha.b)
    finally:
        iv.prec = old


@dataclass
class TrialPlan:
    k: int
    n: int
    alpha_lo: Fraction
    alpha_hi: Fraction
    trials: int
    master_seed: int


def make_trial_plan(k: int, n: int, master_seed: int, prec: int = 160) -> TrialPlan:
    """Trial count ceil(ln(1/2)/ln(1 - alpha_k^-n)) + 1, rounded outward.

    Interval arithmetic guarantees the computed count is never below the
    exact expression.
    """
    import mpmath

    iv = mpmath.iv
    old = iv.prec
    try:
        iv.prec = prec
        m = 2 * k + 1
        log_alpha = (
            iv.log(iv.mpf(m) / 2) + iv.mpf(2 * k) * iv.log(iv.mpf(m) / (2 * k))
        ) / m
        if n == 0:
            trials = 1
        else:
            p = iv.exp(-iv.mpf(n) * log_alpha)
            ratio = iv.log(iv.mpf(1) / 2) / iv.log(iv.mpf(1) - p)
            upper = ratio.b
            trials = int(mpmath.ceil(upper)) + 1
        alpha = iv.exp(log_alpha)
        return TrialPlan(
            k, n, _mpf_to_fraction(alpha.a), _mpf_to_fraction(alpha.b),
            max(trials, 1), master_seed,
        )
    finally:
        iv.prec = old


def derive_trial_seed(master_seed: int, trial_index: int) -> int:
    """Stable 64-bit per-trial seed from the master seed and trial index."""
    digest = hashlib.sha256(f"{master_seed}:{trial_index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def sample_lists(g: Graph, k: int, seed: int) -> Dict[int, str]:
    """Independent per-vertex draws: S with prob (2k-1)/(2k+1), A and B with 1/(2k+1)."""
    rng = random.Random(seed)
    names = {}
    for v in range(1, g.n + 1):
        r = rng.randrange(2 * k + 1)
        names[v] = "S" if r < 2 * k - 1 else ("A" if r == 2 * k - 1 else "B")
    return names


def _list_instance(g: Graph, fam: OddCycleFamily, lists: Dict[int, str]) -> VcspInstance:
    cyc = fam.cycle()
    sets = dict(fam.sets())
    D = fam.cycle_order
    zero = ExtRational(0)
    terms = []
    for (u, v) in sorted(g.edges):
        finite = {
            (a, b): zero
            for a in sets[lists[u]]
            for b in sets[lists[v]]
            if cyc.has_edge(a, b)
        }
        terms.append((CostFunction.from_finite_entries(D, 2, finite), (u, v)))
    return VcspInstance(D, g.n, terms)


def _pc_feasible(g: Graph, fam: OddCycleFamily, lists: Dict[int, str]) -> bool:
    """(2,3)-consistency decision of the sampled list-homomorphism instance.

    The list language has a majority polymorphism, so a non-empty
    path-consistent closure is equivalent to satisfiability, which in turn
    is equivalent to the SA(2,3) relaxation having optimum zero.
    """
    n, d = g.n, fam.cycle_order
    if n == 0 or not g.edges:
        return True
    adj = np.zeros((d, d), dtype=bool)
    for a in range(1, d):
        adj[a - 1, a] = adj[a, a - 1] = True
    adj[0, d - 1] = adj[d - 1, 0] = True
    masks = {name: np.zeros(d, dtype=bool) for name, _ in fam.sets()}
    for name, s in fam.sets():
        for a in s:
            masks[name][a - 1] = True
    pair: Dict[Tuple[int, int], np.ndarray] = {}
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if g.has_edge(u, v):
                m = adj & masks[lists[u]][:, None] & masks[lists[v]][None, :]
            else:
                m = np.ones((d, d), dtype=bool)
            if not m.any():
                return False
            pair[(u, v)] = m

    def get(u, v):
        return pair[(u, v)] if u < v else pair[(v, u)].T

    def put(u, v, m):
        if u < v:
            pair[(u, v)] = m
        else:
            pair[(v, u)] = m.T

    changed = True
    while changed:
        changed = False
        for u in range(1, n + 1):
            for v in range(u + 1, n + 1):
                m = get(u, v)
                for w in range(1, n + 1):
                    if w == u or w == v:
                        continue
                    comp = (get(u, w).astype(np.uint8) @ get(w, v).astype(np.uint8)) > 0
                    m2 = m & comp
                    if not m2.any():
                        return False
                    if not np.array_equal(m2, m):
                        m = m2
                        changed = True
                put(u, v, m)
    return True


def algorithm_b_trial(g: Graph, k: int, seed: int, use_lp: bool = False) -> bool:
    """One randomized list trial: YES iff the sampled SA(2,3) optimum is zero.

    The default decision path is the consistency closure; use_lp=True runs
    the literal relaxation instead (same answer, used for cross-checks).
    """
    fam = OddCycleFamily(k)
    lists = sample_lists(g, k, seed)
    if use_lp:
        inst = _list_instance(g, fam, lists)
        _, res = solve_sa(inst)
        return res.is_optimal and res.optimum == ExtRational(0)
    return _pc_feasible(g, fam, lists)


def odd_cycle_solve(
    g: Graph,
    k: int,
    master_seed: int,
    trials: Optional[int] = None,
    use_lp: bool = False,
) -> SolveReport:
    """Repeated trials with one-sided error; YES iff any trial accepts.

    YES answers are always correct; when a homomorphism to C_{2k+1}
    exists, a NO answer is wrong with probability below 1/2 for the
    planned trial count.
    """
    t0 = time.perf_counter()
    plan = make_trial_plan(k, g.n, master_seed)
    count = trials if trials is not None else plan.trials
    transcript: List[bool] = []
    answer = False
    for t in range(count):
        outcome = algorithm_b_trial(g, k, derive_trial_seed(master_seed, t), use_lp=use_lp)
        transcript.append(outcome)
        if outcome:
            answer = True
            break
    stats = {
        "trials_planned": count,
        "trials_run": len(transcript),
        "transcript": transcript,
        "seed": master_seed,
        "alpha_upper": float(plan.alpha_hi),
        "millis": round((time.perf_counter() - t0) * 1000, 3),
    }
    return SolveReport(answer, None, stats)
