"""Generic dense linear algebra and a small exact simplex solver.

Matrices are lists of lists whose entries may be int/Fraction, ExactReal,
ExactComplex, or float/complex.  Zero tests dispatch through the scalar
helpers, so the same elimination code decides ranks exactly over Q(sqrt(d))
and tolerantly over floats.  The LP solver is a two-phase full-tableau
simplex with Bland's rule; with exact scalars it terminates and its answers
are exact, which is what the polyhedral kernel relies on.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import ExactComplex, ExactReal, ciszero, rsign

Matrix = list  # list of rows


def _zero_for(entries):
    for x in entries:
        if isinstance(x, ExactComplex):
            return ExactComplex(0)
        if isinstance(x, ExactReal):
            return ExactReal(0)
        if isinstance(x, complex):
            return 0j
        if isinstance(x, float):
            return 0.0
    return Fraction(0)


def mat_zero(rows: Matrix):
    return _zero_for(x for row in rows for x in row)


def rref(rows: Matrix, ncols: int | None = None):
    """Reduced row echelon form.  Returns (reduced rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    n = ncols if ncols is not None else len(m[0])
    zero = mat_zero(m)
    pivots = []
    r = 0
    for c in range(n):
        pr = None
        if isinstance(zero, (float, complex)):
            # float path: partial pivoting for stability
            best = 0.0
            for i in range(r, len(m)):
                if abs(m[i][c]) > best and not ciszero(m[i][c]):
                    best, pr = abs(m[i][c]), i
        else:
            for i in range(r, len(m)):
                if not ciszero(m[i][c]):
                    pr = i
                    break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and not ciszero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Matrix) -> int:
    if not rows:
        return 0
    _, pivots = rref(rows)
    return len(pivots)


def nullspace(rows: Matrix, n: int) -> list[list]:
    """Basis of {x : A x = 0} for the m x n matrix A."""
    if not rows:
        rows = []
    red, pivots = rref(rows, n) if rows else ([], [])
    zero = mat_zero(rows) if rows else Fraction(0)
    one = zero + 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * n
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(rows: Matrix, rhs: list):
    """One solution of A x = b, or None if inconsistent."""
    if not rows:
        return []
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, n)
    zero = mat_zero(rows)
    for row in red:
        if all(ciszero(x) for x in row[:n]) and not ciszero(row[n]):
            return None
    x = [zero] * n
    for r, pc in enumerate(pivots):
        x[pc] = red[r][n]
    return x


def dot(u, v):
    acc = None
    for a, b in zip(u, v):
        acc = a * b if acc is None else acc + a * b
    return acc if acc is not None else Fraction(0)


def mat_vec(rows: Matrix, v):
    return [dot(r, v) for r in rows]


# ---------------------------------------------------------------------------
# Exact LP: maximize c.x subject to A x <= b, E x = f, x free.
# ---------------------------------------------------------------------------


class LPResult:
    __slots__ = ("status", "value", "x")

    def __init__(self, status, value=None, x=None):
        self.status = status  # 'optimal' | 'infeasible' | 'unbounded'
        self.value = value
        self.x = x

    def __repr__(self):
        return f"LPResult({self.status}, value={self.value})"


def _simplex_standard(c, A, b):
    """max c.x s.t. A x <= b, x >= 0.  Bland's rule, two phases."""
    m, n = len(A), len(c)
    zero = _zero_for(list(c) + [x for row in A for x in row] + list(b))
    one = zero + 1
    # tableau over columns: n structural + m slack (+ 1 artificial in phase 1)
    T = [list(A[i]) + [one if j == i else zero for j in range(m)] for i in range(m)]
    rhs = list(b)
    basis = [n + i for i in range(m)]

    def pivot(row, col):
        piv = T[row][col]
        T[row] = [x / piv for x in T[row]]
        rhs[row] = rhs[row] / piv
        for i in range(m):
            if i != row and not ciszero(T[i][col]):
                f = T[i][col]
                T[i] = [a - f * p for a, p in zip(T[i], T[row])]
                rhs[i] = rhs[i] - f * rhs[row]
        basis[row] = col

    def run_phase(cost):
        # cost: list over current columns; maximize
        if not T:
            # no constraints remain: optimum is 0 at the origin unless some
            # structural cost is positive (then unbounded)
            for j in range(n):
                if rsign(cost[j]) > 0:
                    return "unbounded", None
            return "optimal", zero
        ncols = len(T[0])
        red = list(cost)
        off = zero
        for i, bi in enumerate(basis):
            if not ciszero(red[bi]):
                f = red[bi]
                red = [a - f * p for a, p in zip(red, T[i])]
                off = off + f * rhs[i]
        while True:
            enter = None
            for j in range(ncols):
                if rsign(red[j]) > 0:
                    enter = j
                    break
            if enter is None:
                return "optimal", off
            leave, best = None, None
            for i in range(m):
                if rsign(T[i][enter]) > 0:
                    ratio = rhs[i] / T[i][enter]
                    if (
                        best is None
                        or rsign(ratio - best) < 0
                        or (rsign(ratio - best) == 0 and basis[i] < basis[leave])
                    ):
                        best, leave = ratio, i
            if leave is None:
                return "unbounded", None
            pivot(leave, enter)
            f = red[enter]
            red = [a - f * p for a, p in zip(red, T[leave])]
            off = off + f * rhs[leave]

    # phase 1 if needed
    if any(rsign(v) < 0 for v in rhs):
        art = n + m
        for i in range(m):
            T[i].append(-one)
        worst = None
        for i in range(m):
            if rsign(rhs[i]) < 0 and (worst is None or rsign(rhs[i] - rhs[worst]) < 0):
                worst = i
        pivot(worst, art)
        cost1 = [zero] * (n + m) + [-one]
        status, val = run_phase(cost1)
        if status != "optimal" or rsign(val) < 0:
            return LPResult("infeasible")
        if art in basis:
            # artificial basic at level zero: pivot it out if possible
            row = basis.index(art)
            for j in range(n + m):
                if not ciszero(T[row][j]):
                    pivot(row, j)
                    break
        for i in range(m):
            T[i].pop()
        if art in basis:
            # its row is all zero: drop the redundant row
            row = basis.index(art)
            T.pop(row)
            rhs.pop(row)
            basis.pop(row)
            m -= 1

    cost2 = list(c) + [zero] * ((len(T[0]) - n) if T else 0)
    status, val = run_phase(cost2)
    if status == "unbounded":
        return LPResult("unbounded")
    x = [zero] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = rhs[i]
    return LPResult("optimal", val, x)


def lp_solve(c, A, b, E=None, f=None) -> LPResult:
    """Maximize c.x over {A x <= b, E x = f} with x free.

    Equalities are eliminated exactly first; the remaining free variables
    are split into nonnegative pairs for the standard-form simplex.
    """
    E = E or []
    f = f or []
    n = len(c)
    zero = _zero_for(
        list(c)
        + [x for row in A for x in row]
        + list(b)
        + [x for row in E for x in row]
        + list(f)
    )
    if E:
        x0 = solve([list(r) for r in E], list(f))
        if x0 is None:
            return LPResult("infeasible")
        N = nullspace([list(r) for r in E], n)
    else:
        x0 = [zero] * n
        N = [[zero + (1 if j == i else 0) for j in range(n)] for i in range(n)]
    k = len(N)
    if k == 0:
        # single candidate point
        for row, bi in zip(A, b):
            if rsign(dot(row, x0) - bi) > 0:
                return LPResult("infeasible")
        return LPResult("optimal", dot(c, x0), x0)
    # substitute x = x0 + N^T t (N rows are basis vectors)
    A2 = [[dot(row, N[j]) for j in range(k)] for row in A]
    b2 = [bi - dot(row, x0) for row, bi in zip(A, b)]
    c2 = [dot(c, N[j]) for j in range(k)]
    # split t = u - v, u, v >= 0
    c3 = c2 + [-x for x in c2]
    A3 = [row + [-x for x in row] for row in A2]
    res = _simplex_standard(c3, A3, b2)
    if res.status != "optimal":
        return res
    t = [res.x[j] - res.x[k + j] for j in range(k)]
    x = list(x0)
    for j in range(k):
        for i in range(n):
            x[i] = x[i] + t[j] * N[j][i]
    return LPResult("optimal", dot(c, x), x)


def feasible_point(A, b, E=None, f=None):
    """A point of {A x <= b, E x = f}, or None."""
    n = len(A[0]) if A else (len(E[0]) if E else 0)
    zero = _zero_for([x for row in A for x in row] + list(b))
    res = lp_solve([zero] * n, A, b, E, f)
    return res.x if res.status == "optimal" else None
