"""Construction and exact solution of the SA(k,l) relaxation of a VCSP.

The program has one lambda-block per term of the augmented objective: the
original terms plus one all-zero term for every distinct variable subset
of size at most l (tuples with equal variable sets induce identical
blocks, so they are deduplicated by scope). Blocks whose scopes are equal
sets of size at most k are forced pointwise equal by the marginalization
constraints and are therefore merged. Assignments of infinite cost are
pinned to zero, which we realize by omitting them from the block support.

Solving goes through a support-propagation presolve (the implied zeros of
the marginalization constraints, which also performs the arc-consistency
style pruning the relaxation enforces implicitly) and then the exact
rational simplex from homlab.lp.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .lp import INFEASIBLE, OPTIMAL, LinearProgram, LpSolution, solve_exact
from .rational import INF, ExtRational
from .vcsp import VcspInstance


class SaBlock:
    """One lambda-block: a distribution over assignments to a variable scope."""

    __slots__ = ("scope", "assignments", "cost", "term_ids")

    def __init__(
        self,
        scope: Tuple[int, ...],
        assignments: Sequence[Tuple[int, ...]],
        cost: Dict[Tuple[int, ...], Fraction],
        term_ids: Tuple[int, ...],
    ):
        self.scope = scope
        self.assignments = tuple(sorted(assignments))
        self.cost = cost
        self.term_ids = term_ids

    def __repr__(self):
        return f"SaBlock(scope={self.scope}, size={len(self.assignments)})"


class RationalLp:
    """The SA(k,l) program of a VCSP instance, in block form."""

    def __init__(
        self,
        domain_size: int,
        k: int,
        l: int,
        blocks: List[SaBlock],
        pairs: List[Tuple[int, int]],
        term_block: Dict[int, int],
    ):
        self.domain_size = domain_size
        self.k = k
        self.l = l
        self.blocks = blocks
        self.pairs = pairs  # (big block index, small block index), small scope <= k
        self.term_block = term_block

    def num_lambda(self) -> int:
        return sum(len(b.assignments) for b in self.blocks)

    def dump(self) -> str:
        """Textual form: variable legend, objective, one constraint per line."""
        lines = [f"sa {self.k} {self.l} domain {self.domain_size}"]
        names: Dict[Tuple[int, Tuple[int, ...]], str] = {}
        for bi, block in enumerate(self.blocks):
            scope = ",".join(str(v) for v in block.scope)
            for t in block.assignments:
                name = f"l{bi}_" + "_".join(str(d) for d in t)
                names[(bi, t)] = name
                lines.append(f"var {name} scope {scope} assignment "
                             + ",".join(str(d) for d in t))
        obj_terms = []
        for bi, block in enumerate(self.blocks):
            for t in block.assignments:
                c = block.cost.get(t, Fraction(0))
                if c != 0:
                    obj_terms.append(f"{c}*{names[(bi, t)]}")
        lines.append("minimize " + (" + ".join(obj_terms) if obj_terms else "0"))
        for bi, block in enumerate(self.blocks):
            lines.append(
                "normalize " + " + ".join(names[(bi, t)] for t in block.assignments)
                + " = 1"
            )
        for big, small in self.pairs:
            bb, sb = self.blocks[big], self.blocks[small]
            positions = [bb.scope.index(v) for v in sb.scope]
            for s in sb.assignments:
                terms = [
                    names[(big, t)]
                    for t in bb.assignments
                    if tuple(t[p] for p in positions) == s
                ]
                lines.append(
                    "marginal " + (" + ".join(terms) if terms else "0")
                    + f" - {names[(small, s)]} = 0"
                )
        for bi, block in enumerate(self.blocks):
            lines.append(
                f"nonneg block {bi} ({len(block.assignments)} variables) >= 0"
            )
        return "\n".join(lines) + "\n"


class LpResult:
    """Outcome of an exact SA solve."""

    def __init__(
        self,
        status: str,
        optimum: ExtRational,
        solution: Optional[Dict[Tuple[int, Tuple[int, ...]], Fraction]],
    ):
        self.status = status
        self.optimum = optimum
        self.solution = solution

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL

    def lambda_of_term(self, rlp: RationalLp, term_id: int, assignment: Tuple[int, ...]) -> Fraction:
        bi = rlp.term_block[term_id]
        if self.solution is None:
            raise ValueError("no solution available")
        return self.solution.get((bi, assignment), Fraction(0))

    def __repr__(self):
        return f"LpResult({self.status}, optimum={self.optimum})"


def build_sa(inst: VcspInstance, k: int = 2, l: int = 3) -> RationalLp:
    """Construct the SA(k,l) program of a VCSP instance.

    Variables untouched by any term are omitted: any solution over the
    touched variables extends by product distributions, so the optimum is
    unchanged.
    """
    if not (0 < k <= l):
        raise ValueError("levels must satisfy 0 < k <= l")
    D = inst.domain_size
    touched = sorted({v for _, scope in inst.terms for v in scope})
    blocks: List[SaBlock] = []
    by_scope: Dict[Tuple[int, ...], int] = {}
    term_block: Dict[int, int] = {}

    def term_table(fn, scope_tuple, scope_sorted):
        table = {}
        for asg in itertools.product(range(1, D + 1), repeat=len(scope_sorted)):
            valuation = dict(zip(scope_sorted, asg))
            table[asg] = fn(tuple(valuation[v] for v in scope_tuple))
        return table

    for term_id, (fn, scope_tuple) in enumerate(inst.terms):
        scope = tuple(sorted(set(scope_tuple)))
        table = term_table(fn, scope_tuple, scope)
        finite = {t: v.frac for t, v in table.items() if not v.is_infinite}
        if len(scope) <= k and scope in by_scope:
            bi = by_scope[scope]
            old = blocks[bi]
            support = [t for t in old.assignments if t in finite]
            cost = {
                t: old.cost.get(t, Fraction(0)) + finite[t] for t in support
            }
            blocks[bi] = SaBlock(scope, support, cost, old.term_ids + (term_id,))
        else:
            bi = len(blocks)
            blocks.append(SaBlock(scope, list(finite), dict(finite), (term_id,)))
            if len(scope) <= k:
                by_scope[scope] = bi
        term_block[term_id] = bi

    for size in range(1, min(l, len(touched)) + 1):
        for scope in itertools.combinations(touched, size):
            if size <= k and scope in by_scope:
                continue
            full = list(itertools.product(range(1, D + 1), repeat=size))
            bi = len(blocks)
            blocks.append(SaBlock(scope, full, {}, ()))
            if size <= k:
                by_scope[scope] = bi

    # Marginalization pairs (big, small): small scope strictly contained,
    # |small scope| <= k, skipping pairs implied transitively through an
    # intermediate block scope of size <= k.
    scope_set = {b.scope: True for b in blocks}
    pairs: List[Tuple[int, int]] = []
    small_by_scope: Dict[Tuple[int, ...], int] = {}
    for bi, b in enumerate(blocks):
        if len(b.scope) <= k:
            small_by_scope[b.scope] = bi
    for big, bb in enumerate(blocks):
        for size in range(1, min(k, len(bb.scope) - 1) + 1 if len(bb.scope) > 1 else 0):
            for sub in itertools.combinations(bb.scope, size):
                if sub not in small_by_scope:
                    continue
                implied = False
                for mid_size in range(size + 1, min(k, len(bb.scope) - 1) + 1):
                    for mid in itertools.combinations(bb.scope, mid_size):
                        if set(sub) <= set(mid) and mid in scope_set and mid != bb.scope:
                            implied = True
                            break
                    if implied:
                        break
                if not implied:
                    pairs.append((big, small_by_scope[sub]))
    return RationalLp(D, k, l, blocks, pairs, term_block)


def _restriction_positions(big_scope: Tuple[int, ...], small_scope: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(big_scope.index(v) for v in small_scope)


def propagate_supports(rlp: RationalLp) -> Optional[List[Set[Tuple[int, ...]]]]:
    """Implied-zero propagation over the marginalization structure.

    Returns per-block sets of surviving assignments, or None when some
    block support empties (the program is then infeasible). Every removed
    assignment provably takes value zero in all feasible solutions, so
    the LP optimum is unchanged.
    """
    alive: List[Set[Tuple[int, ...]]] = [set(b.assignments) for b in rlp.blocks]
    restrict: Dict[Tuple[int, int], Tuple[int, ...]] = {}
    groups: Dict[Tuple[int, int], Dict[Tuple[int, ...], Set[Tuple[int, ...]]]] = {}
    counts: Dict[Tuple[int, int], Dict[Tuple[int, ...], int]] = {}
    by_big: Dict[int, List[int]] = {}
    by_small: Dict[int, List[int]] = {}
    for big, small in rlp.pairs:
        restrict[(big, small)] = _restriction_positions(
            rlp.blocks[big].scope, rlp.blocks[small].scope
        )
        by_big.setdefault(big, []).append(small)
        by_small.setdefault(small, []).append(big)

    dead: List[Tuple[int, Tuple[int, ...]]] = []

    def kill(bi: int, t: Tuple[int, ...]) -> None:
        if t in alive[bi]:
            alive[bi].discard(t)
            dead.append((bi, t))

    for big, small in rlp.pairs:
        pos = restrict[(big, small)]
        g: Dict[Tuple[int, ...], Set[Tuple[int, ...]]] = {}
        for t in list(alive[big]):
            s = tuple(t[p] for p in pos)
            if s not in alive[small]:
                kill(big, t)
            else:
                g.setdefault(s, set()).add(t)
        groups[(big, small)] = g
        counts[(big, small)] = {s: len(ts) for s, ts in g.items()}
        for s in list(alive[small]):
            if not counts[(big, small)].get(s):
                kill(small, s)

    while dead:
        bi, t = dead.pop()
        # t died in block bi: update counts where bi is the big side ...
        for small in by_big.get(bi, ()):
            pos = restrict[(bi, small)]
            s = tuple(t[p] for p in pos)
            g = groups[(bi, small)].get(s)
            if g is not None and t in g:
                g.discard(t)
                cnt = counts[(bi, small)]
                cnt[s] -= 1
                if cnt[s] == 0 and s in alive[small]:
                    kill(small, s)
        # ... and remove its extensions where bi is the small side.
        for big in by_small.get(bi, ()):
            g = groups[(big, bi)].pop(t, None)
            if g:
                counts[(big, bi)].pop(t, None)
                for ext in list(g):
                    kill(big, ext)

    if any(not s for s in alive):
        return None
    return alive


def lp_solve_exact(
    rlp: RationalLp, presolve: bool = True, float_assist: bool = True
) -> LpResult:
    """Exact optimum of the SA program; deterministic given the input."""
    if presolve:
        alive = propagate_supports(rlp)
        if alive is None:
            return LpResult(INFEASIBLE, INF, None)
        supports = [sorted(alive[bi]) for bi in range(len(rlp.blocks))]
    else:
        supports = [list(b.assignments) for b in rlp.blocks]
        if any(not s for s in supports):
            return LpResult(INFEASIBLE, INF, None)

    # Singleton elimination (presolve mode only): a block with exactly one
    # surviving assignment has lambda = 1 there; its normalization row is
    # trivial, and any marginal row touching it duplicates either the
    # partner's normalization or another singleton. Its cost becomes a
    # constant. After propagation the big side of a pair can only be a
    # singleton if the small side is too.
    constant = Fraction(0)
    fixed_solution: Dict[Tuple[int, Tuple[int, ...]], Fraction] = {}
    if presolve:
        keep = [len(s) > 1 for s in supports]
        for bi, block in enumerate(rlp.blocks):
            if not keep[bi]:
                t = supports[bi][0]
                constant += block.cost.get(t, Fraction(0))
                fixed_solution[(bi, t)] = Fraction(1)
        for big, small in rlp.pairs:
            if not keep[big]:
                assert not keep[small], "singleton big side with free small side"
        pairs = [(b, s) for b, s in rlp.pairs if keep[b] and keep[s]]
        block_ids = [bi for bi in range(len(rlp.blocks)) if keep[bi]]
    else:
        pairs = list(rlp.pairs)
        block_ids = list(range(len(rlp.blocks)))

    if not block_ids:
        return LpResult(OPTIMAL, ExtRational(constant), fixed_solution)

    # Row layout: one normalization row per kept block, then one row per
    # (pair, small assignment). A row is created for every assignment that
    # survives on the small side or occurs as a restriction of a surviving
    # big-side assignment: when the small side is pinned to zero the row
    # still forces the big-side entries above it to zero. The last row of
    # each pair is implied by the others plus the two normalizations and
    # is dropped.
    norm_row = {}
    num_rows = 0
    for bi in block_ids:
        norm_row[bi] = num_rows
        num_rows += 1
    marg_row: Dict[Tuple[int, int, Tuple[int, ...]], int] = {}
    for big, small in pairs:
        pos = _restriction_positions(rlp.blocks[big].scope, rlp.blocks[small].scope)
        needed = set(supports[small])
        needed.update(tuple(t[p] for p in pos) for t in supports[big])
        ordered = sorted(needed)
        for s in ordered[:-1]:
            marg_row[(big, small, s)] = num_rows
            num_rows += 1

    lp = LinearProgram(num_rows)
    for bi in block_ids:
        lp.set_rhs(norm_row[bi], 1)
    col_key: List[Tuple[int, Tuple[int, ...]]] = []
    by_small_pairs: Dict[int, List[int]] = {}
    by_big_pairs: Dict[int, List[int]] = {}
    for big, small in pairs:
        by_big_pairs.setdefault(big, []).append(small)
        by_small_pairs.setdefault(small, []).append(big)

    for bi in block_ids:
        block = rlp.blocks[bi]
        for t in supports[bi]:
            entries = [(norm_row[bi], 1)]
            for small in by_big_pairs.get(bi, ()):
                pos = _restriction_positions(block.scope, rlp.blocks[small].scope)
                s = tuple(t[p] for p in pos)
                row = marg_row.get((bi, small, s))
                if row is not None:
                    entries.append((row, 1))
            for big in by_small_pairs.get(bi, ()):
                row = marg_row.get((big, bi, t))
                if row is not None:
                    entries.append((row, -1))
            cost = block.cost.get(t, Fraction(0))
            lp.add_variable(cost, entries)
            col_key.append((bi, t))

    sol = solve_exact(lp, float_assist=float_assist)
    if sol.status == INFEASIBLE:
        return LpResult(INFEASIBLE, INF, None)
    assert sol.status == OPTIMAL, f"unexpected LP status {sol.status}"
    solution = dict(fixed_solution)
    for j, key in enumerate(col_key):
        if sol.x[j] != 0:
            solution[key] = sol.x[j]
    return LpResult(OPTIMAL, ExtRational(sol.objective + constant), solution)


def solve_sa(
    inst: VcspInstance,
    k: int = 2,
    l: int = 3,
    presolve: bool = True,
    float_assist: bool = True,
) -> Tuple[RationalLp, LpResult]:
    rlp = build_sa(inst, k, l)
    return rlp, lp_solve_exact(rlp, presolve=presolve, float_assist=float_assist)


def assignment_to_lambda(
    rlp: RationalLp, assignment: Dict[int, int]
) -> Dict[Tuple[int, Tuple[int, ...]], Fraction]:
    """The integral lambda point of a full assignment (1 on matching rows)."""
    out = {}
    for bi, block in enumerate(rlp.blocks):
        t = tuple(assignment[v] for v in block.scope)
        out[(bi, t)] = Fraction(1)
    return out


def lambda_point_is_feasible(
    rlp: RationalLp, point: Dict[Tuple[int, Tuple[int, ...]], Fraction]
) -> bool:
    """Exact feasibility check of a lambda point against the SA constraints."""
    for bi, block in enumerate(rlp.blocks):
        total = sum(
            (point.get((bi, t), Fraction(0)) for t in block.assignments),
            Fraction(0),
        )
        if total != 1:
            return False
        if any(point.get((bi, t), Fraction(0)) < 0 for t in block.assignments):
            return False
    for big, small in rlp.pairs:
        bb, sb = rlp.blocks[big], rlp.blocks[small]
        pos = _restriction_positions(bb.scope, sb.scope)
        sums: Dict[Tuple[int, ...], Fraction] = {}
        for t in bb.assignments:
            val = point.get((big, t), Fraction(0))
            if val:
                s = tuple(t[p] for p in pos)
                sums[s] = sums.get(s, Fraction(0)) + val
        for s in sb.assignments:
            if sums.get(s, Fraction(0)) != point.get((small, s), Fraction(0)):
                return False
    return True


def lambda_point_cost(
    rlp: RationalLp, point: Dict[Tuple[int, Tuple[int, ...]], Fraction]
) -> Fraction:
    total = Fraction(0)
    for (bi, t), val in point.items():
        if val:
            total += rlp.blocks[bi].cost.get(t, Fraction(0)) * val
    return total
