"""Small dense linear algebra: exact over fields, numeric with pivoting."""

from __future__ import annotations

from fractions import Fraction

import mpmath


def _is_zero(c) -> bool:
    return c == 0


def rref(m: list[list], ncols: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over an exact field; returns (rows, pivot columns)."""
    a = [list(r) for r in m]
    if not a:
        return a, []
    n = len(a[0]) if ncols is None else ncols
    pivots: list[int] = []
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, len(a)) if not _is_zero(a[i][col])), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = 1 / a[row][col] if not isinstance(a[row][col], int) else Fraction(1, a[row][col])
        a[row] = [v * inv for v in a[row]]
        for i in range(len(a)):
            if i != row and not _is_zero(a[i][col]):
                f = a[i][col]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
        if row == len(a):
            break
    return a, pivots


def nullspace(m: list[list], ncols: int) -> list[list]:
    """Basis of {v : m v = 0} over an exact field."""
    if not m:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    r, piv = rref(m, ncols)
    free = [j for j in range(ncols) if j not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -r[i][f]
        basis.append(v)
    return basis


def solve(a: list[list], b: list) -> list | None:
    """A particular solution of a x = b (free variables zero), or None."""
    n = len(a[0]) if a else 0
    aug = [list(r) + [bi] for r, bi in zip(a, b)]
    r, piv = rref(aug, n + 1)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, pc in enumerate(piv):
        x[pc] = r[i][n]
    return x


def det(m: list[list]):
    a = [list(r) for r in m]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d = d * a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f != 0:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def mat_mul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), 0 * a[0][0]) for j in range(len(b[0]))] for i in range(len(a))]


def identity(n: int, one=Fraction(1)):
    return [[one if i == j else 0 * one for j in range(n)] for i in range(n)]


def numeric_solve(a: list[list], b: list, tol=None):
    """Least-norm-free solve of a (possibly non-square) system with complete
    pivoting; free variables are set to zero.

    Returns (x, residual) where residual is the max |a x - b| relative to the
    scale of the data.  Rows whose pivot drops below ``tol`` are treated as
    dependent.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    A = [[mpmath.mpc(v) for v in row] + [mpmath.mpc(bi)] for row, bi in zip(a, b)]
    scale = max([abs(v) for row in A for v in row] + [mpmath.mpf(1)])
    if tol is None:
        tol = scale * mpmath.mpf(2) ** (-(mpmath.mp.prec * 3 // 4))
    perm = list(range(n))
    rank = 0
    for k in range(min(m, n)):
        best, bi, bj = mpmath.mpf(0), -1, -1
        for i in range(k, m):
            for j in range(k, n):
                v = abs(A[i][j])
                if v > best:
                    best, bi, bj = v, i, j
        if best <= tol:
            break
        A[k], A[bi] = A[bi], A[k]
        for row in A:
            row[k], row[bj] = row[bj], row[k]
        perm[k], perm[bj] = perm[bj], perm[k]
        piv = A[k][k]
        for i in range(k + 1, m):
            f = A[i][k] / piv
            if f != 0:
                Ai, Ak = A[i], A[k]
                for j in range(k, n + 1):
                    Ai[j] -= f * Ak[j]
        rank += 1
    y = [mpmath.mpc(0)] * n
    for k in range(rank - 1, -1, -1):
        s = A[k][n] - sum((A[k][j] * y[j] for j in range(k + 1, rank)), mpmath.mpc(0))
        y[k] = s / A[k][k]
    x = [mpmath.mpc(0)] * n
    for k in range(n):
        x[perm[k]] = y[k]
    res = mpmath.mpf(0)
    for row, bi in zip(a, b):
        r = abs(sum((mpmath.mpc(v) * xv for v, xv in zip(row, x)), mpmath.mpc(0)) - bi)
        res = max(res, r)
    return x, res / scale


def numeric_mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[mpmath.fsum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def numeric_inverse(a):
    return mpmath.matrix(a) ** -1
