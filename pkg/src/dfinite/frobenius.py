"""Frobenius bases at regular singular (or ordinary) points.

At a point the operator is written as sum_k t^k P_k(theta), theta = t d/dt.  A
solution t^rho sum_n t^n sum_j c[n][j] log(t)^j / j! is found coefficient by
coefficient: theta acts on the log-vector c as s + S with (S c)_j = c_{j+1}, so
that P_0(s + S) c_n = -sum_{k>=1} P_k(s - k + S) c_{n-k} with s = rho + n.  At
an exponent of multiplicity mu the first mu entries of c_n are free; all other
entries follow by back-substitution.  Setting exactly one free entry to 1 (and
every other free entry, including those at later resonances, to 0) gives the
canonical basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import mpmath

from .diffop.operator import as_diffop
from .diffop.points import AlgebraicPoint, IrregularSingularityError, local_delta_form, rational_part
from .exact.bigcomplex import to_mpc
from .exact.factor import factor_rational, squarefree_decomposition
from .exact.numberfield import NFElem, numeric_roots
from .exact.poly import Poly


class FrobeniusError(ValueError):
    pass


class TrustRadiusError(ValueError):
    pass


@dataclass(frozen=True)
class BranchSpec:
    """log(t) is taken with arg(t) in (center - pi, center + pi].

    center = 0 is the principal branch.  center = -pi/2 puts the negative real
    axis at arg -pi (approach from below the cut).
    """

    center: float = 0.0

    def log(self, t):
        t = mpmath.mpc(t)
        lg = mpmath.log(t)
        c = mpmath.mpf(self.center)
        k = mpmath.nint((c - lg.imag) / (2 * mpmath.pi))
        # principal log has arg in (-pi, pi]; shift into (c - pi, c + pi]
        lg = lg + 2j * mpmath.pi * k
        if lg.imag <= c - mpmath.pi:
            lg += 2j * mpmath.pi
        elif lg.imag > c + mpmath.pi:
            lg -= 2j * mpmath.pi
        return lg


PRINCIPAL = BranchSpec()


def _is_zero(c) -> bool:
    return c == 0


def _int_offset(a, b, tol=None):
    """a - b as an int if it is one (exactly, or within tol numerically), else None."""
    d = a - b
    if isinstance(d, Fraction):
        return int(d) if d.denominator == 1 else None
    if isinstance(d, NFElem):
        if d.is_rational() and d.as_fraction().denominator == 1:
            return int(d.as_fraction())
        return None
    d = mpmath.mpc(d)
    n = int(mpmath.nint(d.real))
    if abs(d - n) < (tol or mpmath.mpf(2) ** (-mpmath.mp.prec // 2)):
        return n
    return None


def _real_key(c):
    if isinstance(c, Fraction):
        return (float(c), 0.0)
    v = to_mpc(c)
    return (float(v.real), float(v.imag))


@dataclass
class IndicialRoots:
    roots: list  # [(root, multiplicity)]
    exact: bool


def indicial_roots(P0: Poly, prec: int = 128) -> IndicialRoots:
    """Roots of the indicial polynomial with multiplicities.

    Exact (Fraction) when all roots are rational, numeric (mpc) otherwise.
    """
    order = P0.degree()
    if all(isinstance(c, Fraction) for c in P0.coeffs):
        facs = factor_rational(P0)
        lin = [(-f[0], m) for f, m in facs if f.degree() == 1]
        if sum(m for _, m in lin) == order:
            return IndicialRoots(sorted(lin), True)
    else:
        rp = rational_part(P0)
        lin = []
        if rp.degree() > 0:
            for f, _ in factor_rational(rp):
                if f.degree() != 1:
                    continue
                rho = -f[0]
                m, q = 0, P0
                while True:
                    qq, r = divmod(q, Poly([-rho, 1]))
                    if r:
                        break
                    m, q = m + 1, qq
                lin.append((rho, m))
        if sum(m for _, m in lin) == order:
            return IndicialRoots(sorted(lin), True)
    # numeric: multiplicities from an exact squarefree decomposition
    out = []
    for f, m in squarefree_decomposition(P0):
        if all(isinstance(c, Fraction) for c in f.coeffs):
            rts = numeric_roots(f, prec)
        else:
            with mpmath.workprec(prec + 20):
                cs = [to_mpc(c, prec + 20) for c in reversed(f.coeffs)]
                rts = [mpmath.mpc(r) for r in mpmath.polyroots(cs, maxsteps=400, extraprec=2 * prec)]
        out.extend((r, m) for r in rts)
    out.sort(key=lambda rm: _real_key(rm[0]))
    return IndicialRoots(out, False)


@dataclass(frozen=True)
class LocalSolution:
    """t^exponent * sum_n sum_j coeffs[n][j] t^n log(t)^j at ``point``.

    t = x - x0 at a finite point, t = 1/x at infinity.
    """

    point: AlgebraicPoint
    exponent: object
    log_degree: int
    coeffs: tuple  # coeffs[n][j]
    exact: bool = True

    @property
    def N(self) -> int:
        return len(self.coeffs)

    def coefficient(self, n: int, j: int = 0):
        if n < len(self.coeffs) and j < len(self.coeffs[n]):
            return self.coeffs[n][j]
        return Fraction(0)

    def series(self, j: int = 0) -> list:
        return [row[j] if j < len(row) else Fraction(0) for row in self.coeffs]

    def numeric(self, prec: int = 128) -> "LocalSolution":
        with mpmath.workprec(prec):
            cs = tuple(tuple(to_mpc(c, prec) for c in row) for row in self.coeffs)
            e = to_mpc(self.exponent, prec)
        return LocalSolution(self.point, e, self.log_degree, cs, False)

    def scaled(self, c) -> "LocalSolution":
        return LocalSolution(
            self.point, self.exponent, self.log_degree, tuple(tuple(c * v for v in row) for row in self.coeffs), self.exact
        )

    def local_variable(self, x):
        x = mpmath.mpmathify(x)
        if self.point.is_infinite:
            return 1 / x
        return x - self.point.to_mpc(mpmath.mp.prec)

    def derivative(self) -> "LocalSolution":
        """d/dx of the solution, as a generalized series at the same point."""
        rho = self.exponent
        L = len(self.coeffs[0]) if self.coeffs else 1
        rows = []
        for n, row in enumerate(self.coeffs):
            new = []
            for j in range(L):
                v = (rho + n) * row[j]
                if j + 1 < L:
                    v = v + (j + 1) * row[j + 1]
                new.append(v)
            rows.append(tuple(new))
        if self.point.is_infinite:
            # d/dx = -t^2 d/dt
            return LocalSolution(
                self.point, rho + 1, self.log_degree, tuple(tuple(-v for v in r) for r in rows), self.exact
            )
        return LocalSolution(self.point, rho - 1, self.log_degree, tuple(rows), self.exact)

    def evaluate(self, x, branch: BranchSpec = PRINCIPAL, prec: int | None = None, trust: float | None = None):
        """Numeric value at x; returns (value, tail_estimate)."""
        prec = prec or mpmath.mp.prec
        with mpmath.workprec(prec + 20):
            t = self.local_variable(x)
            if trust is not None:
                if abs(t) > trust:
                    raise TrustRadiusError(f"|t| = {mpmath.nstr(abs(t), 5)} exceeds trust radius {trust}")
            if t == 0:
                e = to_mpc(self.exponent, prec)
                if e.real > 0:
                    return mpmath.mpc(0), mpmath.mpf(0)
                if e == 0 and self.log_degree == 0:
                    return to_mpc(self.coefficient(0, 0), prec), mpmath.mpf(0)
                raise ValueError("solution is not finite at its expansion point")
            lg = branch.log(t)
            logs = [mpmath.mpc(1)]
            for _ in range(self.log_degree + 1):
                logs.append(logs[-1] * lg)
            acc = mpmath.mpc(0)
            tn = mpmath.mpc(1)
            last = mpmath.mpf(0)
            for row in self.coeffs:
                term = mpmath.mpc(0)
                for j, c in enumerate(row):
                    if not _is_zero(c):
                        term += to_mpc(c, prec + 20) * logs[j]
                term *= tn
                acc += term
                if term != 0:
                    last = abs(term)
                tn *= t
            pref = mpmath.exp(to_mpc(self.exponent, prec + 20) * lg)
            val = acc * pref
            tail = last * abs(pref) * 2
        return +val, tail

    def __call__(self, x, branch: BranchSpec = PRINCIPAL):
        return self.evaluate(x, branch)[0]

    def leading_term(self) -> str:
        e = self.exponent
        return f"t^({e})" + (f"*log(t)^{self.log_degree}" if self.log_degree else "")


@dataclass(frozen=True)
class LocalBasis:
    point: AlgebraicPoint
    solutions: tuple
    order: int

    def __len__(self) -> int:
        return len(self.solutions)

    def __getitem__(self, i) -> LocalSolution:
        return self.solutions[i]

    @property
    def exponents(self) -> list:
        return [s.exponent for s in self.solutions]

    @property
    def exact(self) -> bool:
        return all(s.exact for s in self.solutions)

    def numeric(self, prec: int = 128) -> "LocalBasis":
        return LocalBasis(self.point, tuple(s.numeric(prec) for s in self.solutions), self.order)

    def frame_matrix(self, x, branch: BranchSpec = PRINCIPAL, prec: int = 128):
        """Matrix whose column j is (y_j, y_j', y_j''/2!, ...) at x (Taylor frame)."""
        r = self.order
        cols = []
        with mpmath.workprec(prec):
            for s in self.solutions:
                col, d = [], s
                for i in range(r):
                    col.append(d.evaluate(x, branch, prec)[0] / factorial(i))
                    d = d.derivative()
                cols.append(col)
            return mpmath.matrix([[cols[j][i] for j in range(r)] for i in range(r)])


def _solve_class(parts, order, rho0, offsets: dict, n_star: int, k: int, N: int, numeric_prec: int | None):
    """One canonical solution: free entry k at offset n_star set to 1.

    Returns rows c_n (log^j/j! convention) for n = n_star .. n_star + N - 1.
    """
    width = order + 1
    zero = Fraction(0) if numeric_prec is None else mpmath.mpc(0)
    one = Fraction(1) if numeric_prec is None else mpmath.mpc(1)
    K = len(parts) - 1
    rows: dict[int, list] = {}
    out = []
    for n in range(n_star, n_star + N):
        s = rho0 + n
        rhs = [zero] * width
        for kk in range(1, min(K, n - n_star) + 1):
            prev = rows[n - kk]
            if all(_is_zero(v) for v in prev):
                continue
            P = parts[kk]
            if not P:
                continue
            tay = P.taylor(s - kk)
            for j in range(width):
                acc = zero
                for i, a in enumerate(tay):
                    if j + i < width and not _is_zero(a):
                        v = prev[j + i]
                        if not _is_zero(v):
                            acc = acc + a * v
                rhs[j] = rhs[j] - acc
        mu = offsets.get(n, 0)
        a = parts[0].taylor(s)
        c = [zero] * width
        for j in range(mu):
            c[j] = one if (n == n_star and j == k) else zero
        for j in range(width - 1 - mu, -1, -1):
            acc = rhs[j]
            for i in range(mu + 1, len(a)):
                if j + i < width:
                    acc = acc - a[i] * c[j + i]
            c[j + mu] = acc / a[mu]
        rows[n] = c
        if n - K - 1 in rows:
            del rows[n - K - 1]
        out.append(c)
    return out


def frobenius_from_parts(parts, order: int, point: AlgebraicPoint, N: int, prec: int = 128,
                         numeric: bool = False) -> LocalBasis:
    """Canonical Frobenius basis from the sum_k t^k P_k(theta) data.

    With numeric=True (or when some exponent is irrational) coefficients are
    computed in floating point at ``prec`` bits; exact exponents are kept for
    display either way.
    """
    P0 = parts[0]
    if P0.degree() != order:
        raise IrregularSingularityError(f"{point} is an irregular singular point")
    info = indicial_roots(P0, prec)
    numeric_prec = None if (info.exact and not numeric) else prec
    ctx = mpmath.workprec(prec + 30) if numeric_prec else _nullctx()
    with ctx:
        if numeric_prec:
            parts = [Poly([to_mpc(c, prec + 30) for c in P.coeffs]) for P in parts]
        # group roots into classes modulo the integers
        classes: list[list] = []
        for rho, m in info.roots:
            for cl in classes:
                if _int_offset(rho, cl[0][0]) is not None:
                    cl.append((rho, m))
                    break
            else:
                classes.append([(rho, m)])
        sols = []
        for cl in classes:
            base_exact = min(cl, key=lambda rm: _int_offset(rm[0], cl[0][0]))[0]
            base = to_mpc(base_exact, prec + 30) if numeric_prec else base_exact
            offsets = {}
            for rho, m in cl:
                off = _int_offset(rho, base_exact)
                offsets[off] = offsets.get(off, 0) + m
            for n_star in sorted(offsets):
                for k in range(offsets[n_star]):
                    raw = _solve_class(parts, order, base, offsets, n_star, k, N, numeric_prec)
                    rho = base_exact + n_star
                    # convert log^j/j! coefficients to plain log^j and scale by k!
                    rows = []
                    logdeg = 0
                    for c in raw:
                        row = tuple(c[j] * _ratio(factorial(k), factorial(j), numeric_prec) for j in range(order))
                        for j in range(order - 1, -1, -1):
                            if not _is_zero(row[j]):
                                logdeg = max(logdeg, j)
                                break
                        rows.append(row)
                    if any(not _is_zero(c[order]) for c in raw):
                        raise FrobeniusError("log degree exceeds order - 1")
                    width = logdeg + 1
                    rows = tuple(tuple(r[:width]) for r in rows)
                    if numeric_prec and not info.exact:
                        rho = mpmath.mpc(rho)
                    sols.append(((_real_key(rho), k), LocalSolution(point, rho, logdeg, rows, numeric_prec is None)))
        sols.sort(key=lambda kv: (kv[0][0][0], kv[0][0][1], kv[0][1]))
    return LocalBasis(point, tuple(s for _, s in sols), order)


def _ratio(a: int, b: int, numeric_prec):
    return Fraction(a, b) if numeric_prec is None else mpmath.mpf(a) / b


class _nullctx:
    def __enter__(self):
        return self

    def __exit__(self, *a):
        return False


def local_basis(L, x0, N: int = 20, prec: int = 128, numeric: bool = False) -> LocalBasis:
    """Frobenius basis of L at x0 truncated to N terms (per solution).

    Coefficients are exact over the point's field unless ``numeric`` is set or
    an exponent is irrational.
    """
    L = as_diffop(L)
    if not isinstance(x0, AlgebraicPoint):
        x0 = AlgebraicPoint.parse(str(x0))
    F = local_delta_form(L, x0)
    if not F.regular():
        raise IrregularSingularityError(f"{x0} is an irregular singular point")
    return frobenius_from_parts(F.parts, F.order, x0, N, prec, numeric=numeric)


@dataclass(frozen=True)
class Constraint:
    """The coefficient of t^exponent log(t)^log_power must equal value."""

    exponent: object
    log_power: int
    value: object


def distinguished_solution(L, x0, constraints, N: int = 20, prec: int = 128, basis: LocalBasis | None = None) -> LocalSolution:
    """The unique combination of the local basis meeting the constraints."""
    from .exact.linalg import rref

    basis = basis or local_basis(L, x0, N, prec)
    cons = [c if isinstance(c, Constraint) else Constraint(*c) for c in constraints]
    r = len(basis)
    mat = []
    for c in cons:
        row = []
        for s in basis.solutions:
            n = _int_offset(c.exponent, s.exponent)
            row.append(s.coefficient(n, c.log_power) if n is not None and n >= 0 else Fraction(0))
        mat.append(row + [c.value])
    if basis.exact:
        red, piv = rref(mat, r + 1)
        if r in piv:
            raise FrobeniusError("constraints are unsatisfiable")
        if len(piv) < r:
            raise FrobeniusError("constraints do not determine a unique solution")
        lam = [red[i][r] for i in range(r)]
    else:
        A = mpmath.matrix([[to_mpc(v) for v in row[:r]] for row in mat])
        b = mpmath.matrix([to_mpc(row[r]) for row in mat])
        if A.rows != r:
            raise FrobeniusError("numeric mode needs exactly order constraints")
        lam = list(mpmath.lu_solve(A, b))
    return combine(basis, lam)


def combine(basis: LocalBasis, lam) -> LocalSolution:
    """sum_i lam_i basis_i as one generalized series (shares the smallest exponent)."""
    used = [(l, s) for l, s in zip(lam, basis.solutions) if not _is_zero(l)]
    if not used:
        raise FrobeniusError("zero combination")
    base = min(used, key=lambda ls: _real_key(ls[1].exponent))[1].exponent
    offsets = []
    for l, s in used:
        n = _int_offset(s.exponent, base)
        if n is None:
            raise FrobeniusError("combination mixes exponent classes")
        offsets.append(n)
    N = min(s.N + n for (l, s), n in zip(used, offsets))
    width = max(s.log_degree for _, s in used) + 1
    zero = Fraction(0) if all(s.exact for _, s in used) else mpmath.mpc(0)
    rows = [[zero] * width for _ in range(N)]
    for (l, s), n in zip(used, offsets):
        for m, row in enumerate(s.coeffs):
            if m + n >= N:
                break
            for j, v in enumerate(row):
                rows[m + n][j] = rows[m + n][j] + l * v
    logdeg = 0
    for row in rows:
        for j in range(width - 1, -1, -1):
            if not _is_zero(row[j]):
                logdeg = max(logdeg, j)
                break
    rows = tuple(tuple(r[: logdeg + 1]) for r in rows)
    exact = all(s.exact for _, s in used) and all(isinstance(l, (Fraction, int, NFElem)) for l in lam)
    return LocalSolution(basis.point, base, logdeg, rows, exact)


def residual_orders(L, sol: LocalSolution) -> list:
    """Coefficients of L applied term-by-term to sol; row n is the coefficient
    of t^(exponent + n) (as a log vector in the log^j/j! convention)."""
    F = local_delta_form(as_diffop(L), sol.point)
    parts = F.parts
    width = sol.log_degree + 2
    rho = sol.exponent
    # rebuild log^j/j! vectors
    vecs = [[(row[j] * factorial(j) if j < len(row) else 0 * rho) for j in range(width)] for row in sol.coeffs]
    out = []
    for n in range(len(vecs)):
        acc = [0 * rho] * width
        for k, P in enumerate(parts):
            if n - k < 0 or not P:
                continue
            tay = P.taylor(rho + n - k)
            prev = vecs[n - k]
            for j in range(width):
                for i, a in enumerate(tay):
                    if j + i < width:
                        acc[j] = acc[j] + a * prev[j + i]
        out.append(acc)
    return out


__all__ = [
    "BranchSpec",
    "Constraint",
    "FrobeniusError",
    "LocalBasis",
    "LocalSolution",
    "PRINCIPAL",
    "TrustRadiusError",
    "distinguished_solution",
    "frobenius_from_parts",
    "indicial_roots",
    "local_basis",
]
