"""Exact linear programming over rationals: two-phase primal simplex with Bland's rule.

Small dense problems only (tens of variables).  Used to minimize polyhedral
norms over the probability simplex and to solve the matching dual programs.
All arithmetic stays in Fraction, so optimal values are exact and a
primal/dual pair can be cross-checked by equality instead of tolerance.
Variables are nonnegative; callers split free variables themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass
class LpResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: list[Fraction]
    value: Fraction | None


def _pivot(tableau, basis, row, col):
    piv = tableau[row][col]
    tableau[row] = [v / piv for v in tableau[row]]
    prow = tableau[row]
    for r in range(len(tableau)):
        if r != row and tableau[r][col] != 0:
            f = tableau[r][col]
            tableau[r] = [a - f * b for a, b in zip(tableau[r], prow)]
    basis[row] = col


def _run_simplex(tableau, basis, ncols) -> str:
    """Minimize the last tableau row; Bland's rule on both choices."""
    while True:
        obj = tableau[-1]
        col = next((j for j in range(ncols) if obj[j] < 0), None)
        if col is None:
            return "optimal"
        best_ratio = None
        best_row = None
        for i in range(len(tableau) - 1):
            a = tableau[i][col]
            if a > 0:
                ratio = tableau[i][-1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[best_row])
                ):
                    best_ratio, best_row = ratio, i
        if best_row is None:
            return "unbounded"
        _pivot(tableau, basis, best_row, col)


def solve_lp(c, a_ub=(), b_ub=(), a_eq=(), b_eq=(), maximize=False) -> LpResult:
    """min (or max) c.x subject to a_ub.x <= b_ub, a_eq.x == b_eq, x >= 0."""
    n = len(c)
    cost = [Fraction(v) for v in c]
    if maximize:
        cost = [-v for v in cost]

    rows: list[tuple[list[Fraction], bool, Fraction]] = []
    for row, b in zip(a_ub, b_ub):
        rows.append(([Fraction(v) for v in row], True, Fraction(b)))
    for row, b in zip(a_eq, b_eq):
        rows.append(([Fraction(v) for v in row], False, Fraction(b)))
    m = len(rows)
    nslack = sum(1 for _, has_slack, _ in rows if has_slack)
    total = n + nslack

    body: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    slack_basic: list[int | None] = []
    slack_at = 0
    for coeffs, has_slack, b in rows:
        row = coeffs + [Fraction(0)] * nslack
        col = None
        if has_slack:
            col = n + slack_at
            row[col] = Fraction(1)
            slack_at += 1
        if b < 0:
            row = [-v for v in row]
            b = -b
            col = None  # slack coefficient is now -1: not a ready basis column
        body.append(row)
        rhs.append(b)
        slack_basic.append(col)

    art_rows = [i for i in range(m) if slack_basic[i] is None]
    art_col = {i: total + k for k, i in enumerate(art_rows)}
    width = total + len(art_rows) + 1

    tableau: list[list[Fraction]] = []
    basis: list[int] = []
    for i in range(m):
        row = body[i] + [Fraction(0)] * len(art_rows) + [rhs[i]]
        if i in art_col:
            row[art_col[i]] = Fraction(1)
            basis.append(art_col[i])
        else:
            basis.append(slack_basic[i])
        tableau.append(row)

    # phase 1: minimize the sum of artificials
    if art_rows:
        obj = [Fraction(0)] * width
        for i in art_rows:
            obj[art_col[i]] = Fraction(1)
        for i in art_rows:
            obj = [a - b for a, b in zip(obj, tableau[i])]
        tableau.append(obj)
        status = _run_simplex(tableau, basis, width - 1)
        if status != "optimal" or tableau[-1][-1] != 0:
            return LpResult("infeasible", [], None)
        tableau.pop()
        # pivot remaining artificials out of the basis; drop redundant rows
        drop: list[int] = []
        for i in range(m):
            if basis[i] >= total:
                col = next((j for j in range(total) if tableau[i][j] != 0), None)
                if col is None:
                    drop.append(i)
                else:
                    _pivot(tableau, basis, i, col)
        for i in reversed(drop):
            tableau.pop(i)
            basis.pop(i)

    # phase 2 on structural + slack columns
    tableau = [row[:total] + [row[-1]] for row in tableau]
    obj = [Fraction(0)] * (total + 1)
    for j in range(n):
        obj[j] = cost[j]
    for i, bcol in enumerate(basis):
        if bcol < total and obj[bcol] != 0:
            f = obj[bcol]
            obj = [a - f * b for a, b in zip(obj, tableau[i])]
    tableau.append(obj)
    status = _run_simplex(tableau, basis, total)
    if status == "unbounded":
        return LpResult("unbounded", [], None)

    x = [Fraction(0)] * n
    for i, bcol in enumerate(basis):
        if bcol < n:
            x[bcol] = tableau[i][-1]
    value = sum((a * b for a, b in zip(cost, x)), Fraction(0))
    if maximize:
        value = -value
    return LpResult("optimal", x, value)
