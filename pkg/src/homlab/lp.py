"""Exact rational linear programming over standard form min c.x, Ax = b, x >= 0.

The solver is a revised primal simplex with a sparse LU factorization of
the basis, product-form eta updates between refactorizations, Dantzig
pricing with an automatic switch to Bland's rule under degeneracy (which
guarantees termination), and exact gmpy2 rationals throughout.

For large programs a floating-point solve (scipy/HiGHS) is used only to
propose a starting basis; every number that leaves this module is
certified by exact arithmetic: the proposed basis is verified (primal
feasibility and reduced costs) and repaired by exact pivoting when the
proposal is not exactly optimal. Results never depend on floating point
for correctness, only for speed.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_REFACTOR_EVERY = 64
_FLOAT_ASSIST_MIN_COLS = 120
_DEGENERATE_STREAK = 40

# Optional callback(simplex, iteration) for debugging long runs.
_DEBUG_HOOK = None


class LinearProgram:
    """Sparse-column equality-form LP. Rows are 0-indexed; b defaults to 0."""

    def __init__(self, num_rows: int):
        self.num_rows = num_rows
        self.cols: List[List[Tuple[int, mpq]]] = []
        self.costs: List[mpq] = []
        self.b: List[mpq] = [mpq(0)] * num_rows

    def set_rhs(self, row: int, value) -> None:
        self.b[row] = mpq(value)

    def add_variable(self, cost, entries: Sequence[Tuple[int, object]]) -> int:
        col = []
        seen = set()
        for row, val in entries:
            if not (0 <= row < self.num_rows):
                raise ValueError(f"row {row} out of range")
            if row in seen:
                raise ValueError(f"duplicate row {row} in column")
            seen.add(row)
            v = mpq(val)
            if v != 0:
                col.append((row, v))
        self.cols.append(col)
        self.costs.append(mpq(cost))
        return len(self.cols) - 1

    @property
    def num_cols(self) -> int:
        return len(self.cols)


class LpSolution:
    def __init__(self, status: str, objective: Optional[Fraction], x: Optional[List[Fraction]]):
        self.status = status
        self.objective = objective
        self.x = x

    def __repr__(self):
        return f"LpSolution({self.status}, obj={self.objective})"


class _Factorization:
    """Sparse LU of the current basis with eta updates.

    The basis is the list of column vectors in position order. ftran
    solves B x = v, btran solves B^T y = w; both take and return dense
    lists of mpq.
    """

    def __init__(self, columns: List[List[Tuple[int, mpq]]]):
        m = len(columns)
        self.m = m
        self.etas: List[Tuple[int, Dict[int, mpq], mpq]] = []
        # Right-looking elimination on a dict-of-dicts working copy.
        rows: List[Dict[int, mpq]] = [dict() for _ in range(m)]
        col_rows: List[set] = [set() for _ in range(m)]
        for pos, col in enumerate(columns):
            for r, v in col:
                rows[r][pos] = v
                col_rows[pos].add(r)
        self.ops: List[Tuple[int, List[Tuple[int, mpq]]]] = []
        self.pivots: List[Tuple[int, int, mpq]] = []  # (row, position, value)
        pivot_of_col: List[Optional[int]] = [None] * m
        for _ in range(m):
            # Markowitz pivot choice over the sparsest few columns, with a
            # strong preference for unit pivots (they keep a 0/±1 basis
            # integral); ties broken by index for determinism.
            cols_sorted = heapq.nsmallest(
                8,
                (
                    (len(col_rows[c]), c)
                    for c in range(m)
                    if pivot_of_col[c] is None and col_rows[c]
                ),
            )
            if not cols_sorted:
                raise _SingularBasis()
            best = None
            for cc_count, c in cols_sorted[:8]:
                for rr in col_rows[c]:
                    val = rows[rr][c]
                    unit = 0 if (val == 1 or val == -1) else 1
                    score = (unit, (len(rows[rr]) - 1) * (cc_count - 1), rr, c)
                    if best is None or score < best[0]:
                        best = (score, rr, c)
                if best is not None and best[0][0] == 0 and best[0][1] == 0:
                    break
            _, r, c = best
            pval = rows[r][c]
            pivot_of_col[c] = r
            self.pivots.append((r, c, pval))
            # Eliminate c from all other rows that contain it.
            targets = [rr for rr in col_rows[c] if rr != r]
            op_list = []
            prow = rows[r]
            for rr in targets:
                f = rows[rr][c] / pval
                op_list.append((rr, f))
                trow = rows[rr]
                for cc, vv in prow.items():
                    nv = trow.get(cc, mpq(0)) - f * vv
                    if nv == 0:
                        if cc in trow:
                            del trow[cc]
                            col_rows[cc].discard(rr)
                    else:
                        if cc not in trow:
                            col_rows[cc].add(rr)
                        trow[cc] = nv
            if op_list:
                self.ops.append((r, op_list))
            # Freeze the pivot row and column.
            for cc in prow:
                col_rows[cc].discard(r)
            col_rows[c] = set()
        self.urows: List[Dict[int, mpq]] = rows  # row r holds U entries by position
        self.ucols: List[List[Tuple[int, mpq]]] = [[] for _ in range(m)]
        for r in range(m):
            for c, v in rows[r].items():
                self.ucols[c].append((r, v))

    def _apply_ops(self, v: List[mpq]) -> None:
        for r, op_list in self.ops:
            vr = v[r]
            if vr == 0:
                continue
            for rr, f in op_list:
                v[rr] -= f * vr

    def _solve_u(self, v: List[mpq]) -> List[mpq]:
        # Back substitution over pivots in reverse order; output indexed by position.
        x = [mpq(0)] * self.m
        for r, c, pval in reversed(self.pivots):
            acc = v[r]
            for cc, vv in self.urows[r].items():
                if cc != c:
                    xc = x[cc]
                    if xc != 0:
                        acc -= vv * xc
            x[c] = acc / pval
        return x

    def _solve_ut(self, w: List[mpq]) -> List[mpq]:
        # Solve U^T z = w (w indexed by position, z by row), pivots forward.
        z = [mpq(0)] * self.m
        for r, c, pval in self.pivots:
            acc = w[c]
            for rr, vv in self.ucols[c]:
                if rr != r:
                    zr = z[rr]
                    if zr != 0:
                        acc -= vv * zr
            z[r] = acc / pval
        return z

    def _apply_ops_t(self, z: List[mpq]) -> None:
        for r, op_list in reversed(self.ops):
            acc = z[r]
            for rr, f in op_list:
                zr = z[rr]
                if zr != 0:
                    acc -= f * zr
            z[r] = acc

    def ftran(self, v: List[mpq]) -> List[mpq]:
        work = list(v)
        self._apply_ops(work)
        x = self._solve_u(work)
        for p, d, dp in self.etas:
            xp = x[p] / dp
            x[p] = xp
            if xp != 0:
                for i, di in d.items():
                    if i != p:
                        x[i] -= di * xp
        return x

    def btran(self, w: List[mpq]) -> List[mpq]:
        u = list(w)
        for p, d, dp in reversed(self.etas):
            acc = u[p]
            for i, di in d.items():
                if i != p:
                    ui = u[i]
                    if ui != 0:
                        acc -= di * ui
            u[p] = acc / dp
        z = self._solve_ut(u)
        self._apply_ops_t(z)
        return z

    def push_eta(self, pos: int, direction: List[mpq]) -> None:
        d = {i: v for i, v in enumerate(direction) if v != 0}
        self.etas.append((pos, d, direction[pos]))

    @property
    def needs_refactor(self) -> bool:
        return len(self.etas) >= _REFACTOR_EVERY


class _SingularBasis(Exception):
    pass


class _Simplex:
    """Primal simplex over an LP extended with artificial identity columns."""

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        self.m = lp.num_rows
        self.n = lp.num_cols
        # Flip rows so b >= 0, then append one artificial column per row.
        self.row_sign = [mpq(1) if lp.b[r] >= 0 else mpq(-1) for r in range(self.m)]
        self.b = [lp.b[r] * self.row_sign[r] for r in range(self.m)]
        self.cols: List[List[Tuple[int, mpq]]] = []
        for col in lp.cols:
            self.cols.append([(r, v * self.row_sign[r]) for r, v in col])
        for r in range(self.m):
            self.cols.append([(r, mpq(1))])
        self.basis: List[int] = list(range(self.n, self.n + self.m))
        self.in_basis = [False] * (self.n + self.m)
        for j in self.basis:
            self.in_basis[j] = True
        self.fact: Optional[_Factorization] = None
        self.x_b: List[mpq] = list(self.b)
        self.dropped_rows: set = set()

    # -- factorization plumbing -------------------------------------------

    def refactor(self) -> None:
        cols = [self._basis_column(p) for p in range(self.m)]
        self.fact = _Factorization(cols)
        self.x_b = self.fact.ftran(list(self.b))

    def _basis_column(self, pos: int) -> List[Tuple[int, mpq]]:
        return self.cols[self.basis[pos]]

    def column(self, j: int) -> List[Tuple[int, mpq]]:
        return self.cols[j]

    # -- simplex core ------------------------------------------------------

    def _reduced_cost(self, j: int, y: List[mpq], costs: List[mpq]) -> mpq:
        acc = costs[j]
        for r, v in self.cols[j]:
            yr = y[r]
            if yr != 0:
                acc -= yr * v
        return acc

    def run(self, costs: List[mpq], allow_enter) -> str:
        """Optimize `costs` over the current basis; returns OPTIMAL or UNBOUNDED."""
        if self.fact is None:
            self.refactor()
        bland = False
        degenerate_streak = 0
        scan_start = 0
        total = self.n + self.m
        iterations = 0
        while True:
            iterations += 1
            if iterations % 4096 == 0 and _DEBUG_HOOK is not None:
                _DEBUG_HOOK(self, iterations)
            if self.fact.needs_refactor:
                self.refactor()
            cost_b = [costs[self.basis[p]] for p in range(self.m)]
            y = self.fact.btran(cost_b)
            enter = -1
            if bland:
                for j in range(total):
                    if self.in_basis[j] or not allow_enter(j):
                        continue
                    if self._reduced_cost(j, y, costs) < 0:
                        enter = j
                        break
            else:
                best = mpq(0)
                count = 0
                j = scan_start
                scanned = 0
                chunk = max(200, total // 8)
                while scanned < total:
                    if not self.in_basis[j] and allow_enter(j):
                        rc = self._reduced_cost(j, y, costs)
                        if rc < best:
                            best = rc
                            enter = j
                            count += 1
                    j += 1
                    scanned += 1
                    if j >= total:
                        j = 0
                    if count and scanned >= chunk:
                        break
                scan_start = j
            if enter < 0:
                return OPTIMAL
            a_col = [mpq(0)] * self.m
            for r, v in self.cols[enter]:
                a_col[r] = v
            d = self.fact.ftran(a_col)
            leave_pos = -1
            theta = None
            for p in range(self.m):
                if p in self.dropped_rows:
                    continue
                dp = d[p]
                if dp > 0:
                    ratio = self.x_b[p] / dp
                    if (
                        theta is None
                        or ratio < theta
                        or (ratio == theta and self.basis[p] < self.basis[leave_pos])
                    ):
                        theta = ratio
                        leave_pos = p
            if leave_pos < 0:
                return UNBOUNDED
            if theta == 0:
                degenerate_streak += 1
                if degenerate_streak > _DEGENERATE_STREAK:
                    bland = True
            else:
                degenerate_streak = 0
            # Pivot: update basic values, basis bookkeeping, eta file.
            if theta != 0:
                for p in range(self.m):
                    dp = d[p]
                    if dp != 0:
                        self.x_b[p] -= theta * dp
            self.x_b[leave_pos] = theta if theta is not None else mpq(0)
            leaving = self.basis[leave_pos]
            self.in_basis[leaving] = False
            self.in_basis[enter] = True
            self.basis[leave_pos] = enter
            self.fact.push_eta(leave_pos, d)

    def run_dual(self, costs: List[mpq]) -> str:
        """Dual simplex repair from a dual-feasible basis (rc >= 0 verified).

        Restores primal feasibility or certifies infeasibility; entering
        candidates are real columns only. Returns "stalled" past a pivot
        cap so the caller can fall back to the two-phase method.
        """
        if self.fact is None:
            self.refactor()
        pivots = 0
        cap = max(300, self.m)
        while True:
            pivots += 1
            if pivots > cap:
                return "stalled"
            if self.fact.needs_refactor:
                self.refactor()
            leave_pos = -1
            worst = mpq(0)
            for p in range(self.m):
                if p in self.dropped_rows:
                    continue
                if self.x_b[p] < worst or (
                    self.x_b[p] == worst
                    and worst < 0
                    and (leave_pos < 0 or self.basis[p] < self.basis[leave_pos])
                ):
                    worst = self.x_b[p]
                    leave_pos = p
            if leave_pos < 0:
                return OPTIMAL
            e = [mpq(0)] * self.m
            e[leave_pos] = mpq(1)
            rho = self.fact.btran(e)
            cost_b = [costs[self.basis[p]] for p in range(self.m)]
            y = self.fact.btran(cost_b)
            enter = -1
            best_ratio = None
            for j in range(self.n):
                if self.in_basis[j]:
                    continue
                alpha = mpq(0)
                for r, v in self.cols[j]:
                    rr = rho[r]
                    if rr != 0:
                        alpha += rr * v
                if alpha >= 0:
                    continue
                rc = self._reduced_cost(j, y, costs)
                ratio = rc / (-alpha)
                if best_ratio is None or ratio < best_ratio or (
                    ratio == best_ratio and j < enter
                ):
                    best_ratio = ratio
                    enter = j
            if enter < 0:
                # The leaving row certifies infeasibility: every real column
                # has a nonnegative entry in this transformed row while the
                # transformed right-hand side is negative.
                return INFEASIBLE
            a_col = [mpq(0)] * self.m
            for r, v in self.cols[enter]:
                a_col[r] = v
            d = self.fact.ftran(a_col)
            theta = self.x_b[leave_pos] / d[leave_pos]
            for p in range(self.m):
                dp = d[p]
                if dp != 0:
                    self.x_b[p] -= theta * dp
            self.x_b[leave_pos] = theta
            leaving = self.basis[leave_pos]
            self.in_basis[leaving] = False
            self.in_basis[enter] = True
            self.basis[leave_pos] = enter
            self.fact.push_eta(leave_pos, d)

    def drive_out_artificials(self) -> None:
        """After phase 1, replace basic artificials by real columns or drop rows."""
        for p in range(self.m):
            if self.basis[p] < self.n or p in self.dropped_rows:
                continue
            assert self.x_b[p] == 0, "artificial basic at nonzero value"
            e = [mpq(0)] * self.m
            e[p] = mpq(1)
            rho = self.fact.btran(e)
            found = -1
            for j in range(self.n):
                if self.in_basis[j]:
                    continue
                acc = mpq(0)
                for r, v in self.cols[j]:
                    rr = rho[r]
                    if rr != 0:
                        acc += rr * v
                if acc != 0:
                    found = j
                    break
            if found < 0:
                # Row is linearly dependent on the others; neutralize it.
                self.dropped_rows.add(p)
                continue
            a_col = [mpq(0)] * self.m
            for r, v in self.cols[found]:
                a_col[r] = v
            d = self.fact.ftran(a_col)
            assert d[p] != 0
            leaving = self.basis[p]
            self.in_basis[leaving] = False
            self.in_basis[found] = True
            self.basis[p] = found
            self.fact.push_eta(p, d)
            if self.fact.needs_refactor:
                self.refactor()

    def solution(self) -> List[mpq]:
        x = [mpq(0)] * self.n
        for p in range(self.m):
            j = self.basis[p]
            if j < self.n:
                x[j] = self.x_b[p]
        return x


def _two_phase(lp: LinearProgram) -> LpSolution:
    m, n = lp.num_rows, lp.num_cols
    sx = _Simplex(lp)
    if m > 0:
        phase1 = [mpq(0)] * n + [mpq(1)] * m
        status = sx.run(phase1, allow_enter=lambda j: True)
        assert status == OPTIMAL, "phase 1 cannot be unbounded"
        infeas = sum((sx.x_b[p] for p in range(m) if sx.basis[p] >= n), mpq(0))
        if infeas != 0:
            return LpSolution(INFEASIBLE, None, None)
        sx.drive_out_artificials()
    phase2 = list(lp.costs) + [mpq(0)] * m
    status = sx.run(phase2, allow_enter=lambda j: j < n)
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED, None, None)
    return _finish(lp, sx)


def _finish(lp: LinearProgram, sx: _Simplex) -> LpSolution:
    x = sx.solution()
    obj = sum((lp.costs[j] * x[j] for j in range(lp.num_cols) if x[j] != 0), mpq(0))
    xs = [Fraction(int(v.numerator), int(v.denominator)) for v in x]
    return LpSolution(OPTIMAL, Fraction(int(obj.numerator), int(obj.denominator)), xs)


def _float_candidate_basis(lp: LinearProgram):
    """Propose a basis via a floating-point solve; None if scipy is unhelpful."""
    try:
        import numpy as np
        from scipy import sparse
        from scipy.optimize import linprog
    except ImportError:  # pragma: no cover
        return None
    m, n = lp.num_rows, lp.num_cols
    rows, cols, vals = [], [], []
    for j, col in enumerate(lp.cols):
        for r, v in col:
            rows.append(r)
            cols.append(j)
            vals.append(float(v))
    a_eq = sparse.csc_matrix(
        (vals, (rows, cols)), shape=(m, n), dtype=float
    )
    c = np.array([float(v) for v in lp.costs])
    b = np.array([float(v) for v in lp.b])
    res = linprog(c, A_eq=a_eq, b_eq=b, bounds=(0, None), method="highs")
    if res.status == 2:
        return "infeasible"
    if res.status != 0:
        return None
    x = res.x
    try:
        duals = res.eqlin.marginals
    except AttributeError:  # pragma: no cover
        duals = None
    if duals is not None:
        ax = a_eq.T.dot(duals)
        rc = c - ax
    else:  # pragma: no cover
        rc = np.zeros(n)
    order = []
    support = sorted(range(n), key=lambda j: -x[j])
    for j in support:
        if x[j] > 1e-9:
            order.append(j)
    tight = sorted(
        (j for j in range(n) if x[j] <= 1e-9 and abs(rc[j]) < 1e-7),
        key=lambda j: abs(rc[j]),
    )
    order.extend(tight)
    rest = [j for j in range(n) if x[j] <= 1e-9 and abs(rc[j]) >= 1e-7]
    order.extend(rest)
    return order


def _greedy_basis(lp: LinearProgram, order: List[int]) -> Tuple[List[int], List[int]]:
    """Maximal independent prefix-greedy column set, exactly.

    Returns (chosen columns, rows not reachable by any column). The
    unreachable rows are exactly those where every column of A reduces to
    zero, so they are redundant (rhs zero) or witness infeasibility.
    """
    m = lp.num_rows
    pivot_rows: Dict[int, Dict[int, mpq]] = {}
    pivot_order: List[int] = []
    chosen: List[int] = []
    for j in order:
        vec = {r: v for r, v in lp.cols[j]}
        for pr in pivot_order:
            if pr in vec:
                f = vec[pr] / pivot_rows[pr][pr]
                prow = pivot_rows[pr]
                for c, v in prow.items():
                    nv = vec.get(c, mpq(0)) - f * v
                    if nv == 0:
                        vec.pop(c, None)
                    else:
                        vec[c] = nv
        if vec:
            pr = min(vec)
            pivot_rows[pr] = vec
            pivot_order.append(pr)
            chosen.append(j)
            if len(chosen) == m:
                break
    missing = [r for r in range(m) if r not in pivot_rows]
    return chosen, missing


def solve_exact(lp: LinearProgram, float_assist: bool = True) -> LpSolution:
    """Solve the LP exactly; deterministic given the input."""
    m, n = lp.num_rows, lp.num_cols
    if n == 0:
        if all(v == 0 for v in lp.b):
            return LpSolution(OPTIMAL, Fraction(0), [])
        return LpSolution(INFEASIBLE, None, None)
    if m == 0:
        # No constraints: minimum at zero unless some cost is negative.
        if any(c < 0 for c in lp.costs):
            return LpSolution(UNBOUNDED, None, None)
        return LpSolution(OPTIMAL, Fraction(0), [Fraction(0)] * n)
    if not float_assist or n < _FLOAT_ASSIST_MIN_COLS or m < 3:
        return _two_phase(lp)
    candidate = _float_candidate_basis(lp)
    if candidate == "infeasible" or candidate is None:
        # Trust nothing: certify by the exact two-phase method.
        return _two_phase(lp)
    chosen, missing = _greedy_basis(lp, candidate)
    if len(chosen) + len(missing) != m:  # pragma: no cover - greedy is maximal
        return _two_phase(lp)
    sx = _Simplex(lp)
    # Unreachable rows are covered by their artificial columns, which then
    # behave exactly like dropped redundant rows: no real column has a
    # component there, so their basic values are invariant under pivots.
    basis = list(chosen) + [n + r for r in missing]
    sx.basis = basis
    sx.in_basis = [False] * (n + m)
    for j in basis:
        sx.in_basis[j] = True
    try:
        sx.refactor()
    except _SingularBasis:  # pragma: no cover - greedy guarantees independence
        return _two_phase(lp)
    for pos in range(m):
        if basis[pos] >= n:
            if sx.x_b[pos] != 0:
                return LpSolution(INFEASIBLE, None, None)
            sx.dropped_rows.add(pos)
    costs = list(lp.costs) + [mpq(0)] * m
    if all(v >= 0 for p, v in enumerate(sx.x_b) if p not in sx.dropped_rows):
        status = sx.run(costs, allow_enter=lambda j: j < n)
        if status == UNBOUNDED:
            return LpSolution(UNBOUNDED, None, None)
        return _finish(lp, sx)
    # Primal-infeasible proposal: check dual feasibility and repair.
    cost_b = [costs[sx.basis[p]] for p in range(m)]
    y = sx.fact.btran(cost_b)
    dual_ok = True
    for j in range(n):
        if not sx.in_basis[j] and sx._reduced_cost(j, y, costs) < 0:
            dual_ok = False
            break
    if dual_ok:
        status = sx.run_dual(costs)
        if status == INFEASIBLE:
            return LpSolution(INFEASIBLE, None, None)
        if status == OPTIMAL:
            # Dual pivots preserve rc >= 0, so the repaired point is optimal.
            return _finish(lp, sx)
    return _two_phase(lp)


def reference_dense_simplex(lp: LinearProgram) -> LpSolution:
    """Dense-tableau two-phase simplex with Bland's rule over Fractions.

    Independent of the production path; used to cross-check optima on
    small programs.
    """
    m, n = lp.num_rows, lp.num_cols
    if n == 0:
        if all(v == 0 for v in lp.b):
            return LpSolution(OPTIMAL, Fraction(0), [])
        return LpSolution(INFEASIBLE, None, None)
    # Tableau with artificials: rows x (n + m + 1); last column is rhs.
    tab = [[Fraction(0)] * (n + m + 1) for _ in range(m)]
    for j, col in enumerate(lp.cols):
        for r, v in col:
            tab[r][j] = Fraction(int(v.numerator), int(v.denominator))
    for r in range(m):
        rhs = Fraction(int(lp.b[r].numerator), int(lp.b[r].denominator))
        if rhs < 0:
            tab[r] = [-x for x in tab[r]]
            rhs = -rhs
        tab[r][n + r] = Fraction(1)
        tab[r][-1] = rhs
    basis = list(range(n, n + m))

    def pivot(r: int, c: int) -> None:
        pv = tab[r][c]
        tab[r] = [x / pv for x in tab[r]]
        for rr in range(m):
            if rr != r and tab[rr][c] != 0:
                f = tab[rr][c]
                tab[rr] = [a - f * b for a, b in zip(tab[rr], tab[r])]
        basis[r] = c

    def run(costs: List[Fraction], allowed) -> str:
        while True:
            y = [costs[basis[r]] for r in range(m)]
            enter = -1
            for j in range(n + m):
                if j in basis or not allowed(j):
                    continue
                rc = costs[j] - sum(y[r] * tab[r][j] for r in range(m))
                if rc < 0:
                    enter = j
                    break
            if enter < 0:
                return OPTIMAL
            leave = -1
            best = None
            for r in range(m):
                if tab[r][enter] > 0:
                    ratio = tab[r][-1] / tab[r][enter]
                    if best is None or ratio < best or (
                        ratio == best and basis[r] < basis[leave]
                    ):
                        best = ratio
                        leave = r
            if leave < 0:
                return UNBOUNDED
            pivot(leave, enter)

    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    run(phase1, lambda j: True)
    if sum(tab[r][-1] for r in range(m) if basis[r] >= n) != 0:
        return LpSolution(INFEASIBLE, None, None)
    for r in range(m):
        if basis[r] >= n:
            for j in range(n):
                if j not in basis and tab[r][j] != 0:
                    pivot(r, j)
                    break
    costs2 = [
        Fraction(int(c.numerator), int(c.denominator)) for c in lp.costs
    ] + [Fraction(0)] * m
    status = run(costs2, lambda j: j < n)
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED, None, None)
    x = [Fraction(0)] * n
    for r in range(m):
        if basis[r] < n:
            x[basis[r]] = tab[r][-1]
    obj = sum(costs2[j] * x[j] for j in range(n))
    return LpSolution(OPTIMAL, obj, x)
