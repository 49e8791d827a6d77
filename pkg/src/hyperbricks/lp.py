"""Exact rational simplex for ``min c.x  s.t.  A x = b, x >= 0``.

Two-phase tableau method over ``fractions.Fraction`` with Bland's rule, so it
terminates on degenerate problems. Infeasibility comes with a Farkas vector
``y`` satisfying ``A^T y >= 0`` and ``b.y < 0``, read off the phase-one duals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExceeded, TheoremViolation

Number = int | Fraction


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: list[Fraction] | None = None
    value: Fraction | None = None
    farkas: list[Fraction] | None = None
    basis: list[int] | None = None


class _Tableau:
    def __init__(self, A: list[list[Fraction]], b: list[Fraction]):
        self.m = len(A)
        self.n = len(A[0]) if A else 0
        width = self.n + self.m
        self.rows: list[list[Fraction]] = []
        self.rhs: list[Fraction] = []
        self.sign: list[int] = []
        for i, (row, bi) in enumerate(zip(A, b)):
            s = -1 if bi < 0 else 1
            r = [s * a for a in row] + [Fraction(0)] * self.m
            r[self.n + i] = Fraction(1)
            self.rows.append(r)
            self.rhs.append(s * bi)
            self.sign.append(s)
        self.basis = [self.n + i for i in range(self.m)]
        self.cost = [Fraction(0)] * width
        self.value = Fraction(0)
        self.pivots = 0

    def set_objective(self, c: Sequence[Fraction]):
        width = self.n + self.m
        cost = list(c) + [Fraction(0)] * (width - len(c))
        value = Fraction(0)
        for i, bv in enumerate(self.basis):
            cb = cost[bv]
            if cb:
                row = self.rows[i]
                for j in range(width):
                    if row[j]:
                        cost[j] -= cb * row[j]
                value -= cb * self.rhs[i]
        self.cost = cost
        self.value = value  # negated objective value, standard tableau convention

    def pivot(self, r: int, col: int):
        self.pivots += 1
        prow = self.rows[r]
        p = prow[col]
        if p != 1:
            inv = 1 / p
            for j in range(len(prow)):
                if prow[j]:
                    prow[j] *= inv
            self.rhs[r] *= inv
        nz = [j for j, a in enumerate(prow) if a]
        for i in range(self.m):
            if i == r:
                continue
            f = self.rows[i][col]
            if f:
                row = self.rows[i]
                for j in nz:
                    row[j] -= f * prow[j]
                self.rhs[i] -= f * self.rhs[r]
        f = self.cost[col]
        if f:
            for j in nz:
                self.cost[j] -= f * prow[j]
            self.value -= f * self.rhs[r]
        self.basis[r] = col

    def run(self, allowed: int, max_pivots: int) -> str:
        """Bland's rule iterations over columns ``< allowed``; returns 'optimal' or 'unbounded'."""
        while True:
            col = next((j for j in range(allowed) if self.cost[j] < 0), None)
            if col is None:
                return "optimal"
            best = None
            for i in range(self.m):
                a = self.rows[i][col]
                if a > 0:
                    key = (self.rhs[i] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            if self.pivots >= max_pivots:
                raise BudgetExceeded(f"simplex exceeded {max_pivots} pivots")
            self.pivot(best[1], col)


def solve(c: Sequence[Number] | None, A: Sequence[Sequence[Number]], b: Sequence[Number],
          max_pivots: int = 100_000) -> LPResult:
    """Minimize ``c.x`` over ``{x >= 0 : A x = b}``; ``c=None`` asks for any vertex."""
    A = [[Fraction(a) for a in row] for row in A]
    b = [Fraction(x) for x in b]
    m = len(A)
    n = len(A[0]) if A else (len(c) if c is not None else 0)
    if any(len(row) != n for row in A):
        raise ValueError("ragged constraint matrix")
    if m == 0:
        x = [Fraction(0)] * n
        if c is not None and any(Fraction(ci) < 0 for ci in c):
            return LPResult("unbounded")
        return LPResult("optimal", x, Fraction(0), basis=[])

    tab = _Tableau(A, b)
    tab.set_objective([Fraction(0)] * n + [Fraction(1)] * m)
    tab.run(n, max_pivots)
    if -tab.value > 0:
        # duals of phase one: y_i = cost_i - reduced cost of artificial i
        y = [1 - tab.cost[n + i] for i in range(m)]
        farkas = [-tab.sign[i] * y[i] for i in range(m)]
        _check_farkas(A, b, farkas)
        return LPResult("infeasible", farkas=farkas)

    # push zero-level artificials out of the basis where a structural pivot exists
    for r in range(m):
        if tab.basis[r] >= n:
            col = next((j for j in range(n) if tab.rows[r][j] != 0), None)
            if col is not None:
                tab.pivot(r, col)

    cvec = [Fraction(ci) for ci in c] if c is not None else [Fraction(0)] * n
    tab.set_objective(cvec)
    status = tab.run(n, max_pivots)
    if status == "unbounded":
        return LPResult("unbounded")
    x = [Fraction(0)] * n
    for i, bv in enumerate(tab.basis):
        if bv < n:
            x[bv] = tab.rhs[i]
    for row, bi in zip(A, b):
        if sum(a * xi for a, xi in zip(row, x) if a) != bi:
            raise TheoremViolation("simplex returned a point violating A x = b")
    value = sum((ci * xi for ci, xi in zip(cvec, x)), Fraction(0))
    return LPResult("optimal", x, value, basis=[bv for bv in tab.basis if bv < n])


def _check_farkas(A, b, y):
    for j in range(len(A[0])):
        if sum(A[i][j] * y[i] for i in range(len(A))) < 0:
            raise TheoremViolation("Farkas certificate fails A^T y >= 0")
    if sum(bi * yi for bi, yi in zip(b, y)) >= 0:
        raise TheoremViolation("Farkas certificate fails b.y < 0")


def verify_farkas(A, b, y) -> bool:
    """Independent check of an infeasibility certificate."""
    A = [[Fraction(a) for a in row] for row in A]
    y = [Fraction(v) for v in y]
    ok_cols = all(sum(A[i][j] * y[i] for i in range(len(A))) >= 0 for j in range(len(A[0]) if A else 0))
    return ok_cols and sum(Fraction(bi) * yi for bi, yi in zip(b, y)) < 0
