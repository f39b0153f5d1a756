"""Exact rational linear feasibility by the simplex method.

Only feasibility is needed anywhere in the library (cone membership,
interior tests, recession cones), so the solver runs phase I of the
two-phase method on a dense tableau of Fractions.  Bland's rule keeps it
from cycling.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Matrix = Sequence[Sequence[Fraction]]


def nonneg_solution(A: Matrix, b: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """Return some x >= 0 with A x = b, or None when none exists."""
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * n
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        # artificial variable for row i sits in column n + i
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        rows.append(row + art + [rhs])
    basis = [n + i for i in range(m)]
    width = n + m
    # reduced cost row for "minimise the sum of artificials"
    cost = [Fraction(0)] * (width + 1)
    for row in rows:
        for j in range(n):
            cost[j] -= row[j]
        cost[width] -= row[width]

    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        leaving = None
        best = None
        for i, row in enumerate(rows):
            if row[entering] > 0:
                ratio = row[width] / row[entering]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving is None:
            # unbounded phase-I objective cannot happen (it is bounded below by 0)
            break
        _pivot(rows, cost, leaving, entering)
        basis[leaving] = entering

    if cost[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = rows[i][width]
    return x


def _pivot(rows: list[list[Fraction]], cost: list[Fraction], r: int, c: int) -> None:
    piv = rows[r][c]
    prow = [v / piv for v in rows[r]]
    rows[r] = prow
    for i, row in enumerate(rows):
        if i != r and row[c] != 0:
            f = row[c]
            rows[i] = [a - f * p for a, p in zip(row, prow)]
    if cost[c] != 0:
        f = cost[c]
        cost[:] = [a - f * p for a, p in zip(cost, prow)]


def feasible_point(
    A_eq: Matrix = (),
    b_eq: Sequence[Fraction] = (),
    A_ge: Matrix = (),
    b_ge: Sequence[Fraction] = (),
    n: Optional[int] = None,
    free: bool = True,
) -> Optional[list[Fraction]]:
    """Find x with A_eq x = b_eq and A_ge x >= b_ge.

    With ``free=True`` the variables are unrestricted in sign, otherwise
    x >= 0 is imposed as well.
    """
    if n is None:
        n = len(A_eq[0]) if A_eq else len(A_ge[0])
    n_slack = len(A_ge)

    def expand(row: Sequence[Fraction]) -> list[Fraction]:
        row = [Fraction(v) for v in row]
        return row + [-v for v in row] if free else row

    A: list[list[Fraction]] = []
    b: list[Fraction] = []
    for row, rhs in zip(A_eq, b_eq):
        A.append(expand(row) + [Fraction(0)] * n_slack)
        b.append(Fraction(rhs))
    for k, (row, rhs) in enumerate(zip(A_ge, b_ge)):
        slack = [Fraction(0)] * n_slack
        slack[k] = Fraction(-1)
        A.append(expand(row) + slack)
        b.append(Fraction(rhs))
    if not A:
        return [Fraction(0)] * n
    sol = nonneg_solution(A, b)
    if sol is None:
        return None
    if free:
        return [sol[i] - sol[n + i] for i in range(n)]
    return sol[:n]


def cone_combination(
    generators: Sequence[Sequence[int]], target: Sequence[int]
) -> Optional[list[Fraction]]:
    """Coefficients lambda >= 0 with sum(lambda_i * g_i) == target, or None."""
    dim = len(target)
    if not generators:
        return [] if all(t == 0 for t in target) else None
    A = [[Fraction(g[row]) for g in generators] for row in range(dim)]
    return nonneg_solution(A, [Fraction(t) for t in target])


def in_cone(generators: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    return cone_combination(generators, target) is not None


def in_cone_interior(generators: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    """Whether target is in the topological interior of Cone(generators).

    Uses: target is interior iff the generators span and
    t * target = sum(mu_i g_i) for some t >= 0 and all mu_i >= 1.
    """
    dim = len(target)
    if not generators or rank(generators) < dim:
        return False
    # substitute mu_i = 1 + nu_i; unknowns (nu_1..nu_m, t) >= 0
    A = []
    b = []
    for row in range(dim):
        A.append([Fraction(g[row]) for g in generators] + [Fraction(-target[row])])
        b.append(Fraction(-sum(g[row] for g in generators)))
    return nonneg_solution(A, b) is not None


def rank(vectors: Sequence[Sequence[int]]) -> int:
    """Rank over Q of a list of vectors."""
    rows = [[Fraction(v) for v in vec] for vec in vectors]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * p for a, p in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def solve_square(M: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """Unique solution of a square linear system, None when singular."""
    n = len(M)
    aug = [[Fraction(v) for v in M[i]] + [Fraction(rhs[i])] for i in range(n)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pivot is None:
            return None
        aug[c], aug[pivot] = aug[pivot], aug[c]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c] / aug[c][c]
                aug[i] = [a - f * p for a, p in zip(aug[i], aug[c])]
    return [aug[i][n] / aug[i][i] for i in range(n)]
