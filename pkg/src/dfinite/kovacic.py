"""Kovacic's algorithm for z'' = r z with r in Q(x).

The search runs over every choice of local data at every pole (conjugate poles
are treated individually), pruning with a high-precision numeric test on the
degree bound d.  Candidates whose choice is the same across each conjugate
family, and whose square roots live in Q or in one quadratic field, are then
solved exactly and yield an exactly checkable witness.  A surviving candidate
that cannot be made exact raises :class:`KovacicInconclusive` instead of
producing a guess.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import mpmath

from .diffop.gauge import remove_subleading_derivative
from .diffop.operator import DiffOp, as_diffop
from .diffop.points import AlgebraicPoint, points_of_factor
from .exact.bigcomplex import to_mpc
from .exact.factor import factor_rational
from .exact.linalg import numeric_solve, rref
from .exact.numberfield import NFElem, numeric_roots, quadratic_field
from .exact.poly import Poly
from .exact.ratfunc import RatFunc, as_ratfunc

CASES = ("Case1", "Case2", "Case3", "Case4")
GALOIS_LABELS = ("Triangular", "Dihedral", "Finite", "SL2", "PSL2")
CASE3_UNKNOWN_CAP = 10_000


class KovacicInconclusive(ArithmeticError):
    """The search could not be completed with an exact certificate."""

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason


# -- local data ---------------------------------------------------------------


def _series_div(a: list, b: list, n: int) -> list:
    out = []
    for k in range(n):
        acc = a[k] if k < len(a) else 0 * b[0]
        for i in range(1, min(k, len(b) - 1) + 1):
            acc = acc - b[i] * out[k - i]
        out.append(acc / b[0])
    return out


def _series_sqrt(a: list, n: int, root0) -> list:
    """Power series q with q^2 = a and q[0] = root0."""
    q = [root0]
    for k in range(1, n):
        acc = a[k] if k < len(a) else 0 * root0
        for i in range(1, k):
            acc = acc - q[i] * q[k - i]
        q.append(acc / (2 * root0))
    return q


@dataclass(frozen=True)
class PoleData:
    """A pole of r (one representative per conjugate family).

    ``laurent`` lists the coefficients of (x-c)^-order, ..., (x-c)^-1 in the
    field of c; ``family`` is the rational irreducible factor vanishing at c.
    """

    point: AlgebraicPoint
    order: int
    laurent: tuple
    family: Poly

    def check(self, r) -> bool:
        """Re-expand r at the pole and compare."""
        return _laurent_at(as_ratfunc(r), _exact_center(self.point), self.order) == list(self.laurent)

    @property
    def degree(self) -> int:
        return self.family.degree()


def _exact_center(pt: AlgebraicPoint):
    return pt.value if pt.kind == "rational" else pt.field.gen()


def _laurent_at(r: RatFunc, c, m: int, extra: int = 0) -> list:
    s = r.num.taylor(c)
    t = r.den.taylor(c)
    if any(v != 0 for v in t[:m]) or len(t) <= m or t[m] == 0:
        raise ValueError("pole order mismatch")
    return _series_div(s, t[m:], m + extra)


def _numeric_laurent(r: RatFunc, c, m: int, extra: int, prec: int) -> list:
    with mpmath.workprec(prec + 40):
        num = r.num.map(lambda v: to_mpc(v, prec + 40))
        den = r.den.map(lambda v: to_mpc(v, prec + 40))
        s = num.taylor(c)
        t = den.taylor(c)
        t = (t + [mpmath.mpc(0)] * (m + 1))[m:]
        return _series_div(s, t, m + extra)


def pole_data(r) -> list[PoleData]:
    """Poles of r grouped by conjugate family, sorted by the real part."""
    r = as_ratfunc(r)
    out = []
    for f, m in factor_rational(r.den):
        for pt in points_of_factor(f)[:1]:
            out.append(PoleData(pt, m, tuple(_laurent_at(r, _exact_center(pt), m)), f))
    out.sort(key=lambda p: float(p.point.to_mpc().real))
    return out


def order_at_infinity(r) -> float:
    r = as_ratfunc(r)
    if not r:
        return float("inf")
    return r.den.degree() - r.num.degree()


def _infinity_series(r: RatFunc, n: int) -> list:
    """R_k with r = x^-o * sum_k R_k x^-k near infinity."""
    s = r.num.reverse()
    t = r.den.reverse()
    return _series_div(list(s.coeffs), list(t.coeffs), n)


# -- exact square roots ---------------------------------------------------------


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = m^2 * d with d squarefree (n > 0)."""
    m, d, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            m *= p
        if n % p == 0:
            n //= p
            d *= p
        p += 1
    return m, d * n


def _exact_sqrt(q):
    """(value, D): a square root of a rational q in Q (D = 1) or in Q(sqrt(D)),
    chosen so that it matches the principal numeric square root."""
    if isinstance(q, NFElem):
        if not q.is_rational():
            return None
        q = q.as_fraction()
    q = Fraction(q)
    if q == 0:
        return Fraction(0), 1
    a, b = q.numerator, q.denominator
    sign = 1 if a > 0 else -1
    m, d = _squarefree_split(abs(a) * b)
    d *= sign
    if d == 1:
        return Fraction(m, b), 1
    K = quadratic_field(d)
    return K.gen() * Fraction(m, b), d


# -- candidate search machinery -----------------------------------------------


@dataclass
class _Option:
    """One choice of local data at a single (numeric) pole."""

    label: object
    value: object  # alpha (Case 1) or e (Cases 2, 3), numeric
    sq: tuple = ()  # numeric [sqrt r] coefficients (Case 1)


@dataclass
class _Pole:
    c: object  # mpc
    order: int
    fam: int  # index of the conjugate family
    laurent: list = field(default_factory=list)


def _numeric_poles(r: RatFunc, data: list[PoleData], prec: int) -> list[_Pole]:
    out = []
    for k, pd in enumerate(data):
        roots = numeric_roots(pd.family, prec + 40)
        for c in roots:
            out.append(_Pole(c, pd.order, k, _numeric_laurent(r, c, pd.order, 0, prec)))
    return out


def _near_int(v, tol) -> int | None:
    v = mpmath.mpc(v)
    n = int(mpmath.nint(v.real))
    if abs(v - n) < tol:
        return n
    return None


@dataclass
class _Candidate:
    choice: tuple  # option per numeric pole
    inf: _Option
    d: int


def _enumerate(poles, options, inf_options, dfun, tol):
    for combo in itertools.product(*options):
        for io in inf_options:
            d = _near_int(dfun(combo, io), tol)
            if d is not None and d >= 0:
                yield _Candidate(combo, io, d)


def _uniform(poles, cand) -> bool:
    seen = {}
    for p, o in zip(poles, cand.choice):
        if seen.setdefault(p.fam, o.label) != o.label:
            return False
    return True


# -- linear solve for the polynomial P ------------------------------------------


def _solve_monic(coeffs: list[Poly], d: int, exact: bool, prec: int):
    """Monic P of degree d with sum_k coeffs[k] * P^(k) = 0, or None.

    ``coeffs`` are polynomials; unknowns are the d lower coefficients of P.
    """
    return _solve_linear(lambda basis: sum_apply(coeffs, basis), d, exact, prec)


def sum_apply(coeffs, P: Poly) -> Poly:
    out = Poly()
    Pk = P
    for a in coeffs:
        if a:
            out = out + a * Pk
        Pk = Pk.derivative()
    return out


def _solve_linear(apply, d: int, exact: bool, prec: int):
    """Solve apply(x^d + sum_{j<d} p_j x^j) = 0 where apply is linear."""
    one = Fraction(1) if exact else mpmath.mpc(1)
    images = [apply(Poly.monomial(j, one)) for j in range(d + 1)]
    rows = max((len(im.coeffs) for im in images), default=0)
    if rows == 0:
        return Poly.monomial(d, one)
    zero = 0 * one
    mat = [[(images[j].coeffs[i] if i < len(images[j].coeffs) else zero) for j in range(d)] +
           [-(images[d].coeffs[i] if i < len(images[d].coeffs) else zero)] for i in range(rows)]
    if exact:
        R, piv = rref(mat, d + 1)
        if d in piv:
            return None
        sol = [zero] * d
        for i, j in enumerate(piv):
            sol[j] = R[i][d]
        return Poly(sol + [one])
    if d == 0:
        res = max(abs(v) for row in mat for v in row)
        scale = max([abs(c) for im in images for c in im.coeffs] + [mpmath.mpf(1)])
        return Poly([one]) if res <= scale * mpmath.mpf(2) ** (-prec // 2) else None
    x, res = numeric_solve([row[:d] for row in mat], [row[d] for row in mat])
    return Poly(list(x) + [one]) if res <= mpmath.mpf(2) ** (-prec // 2) else None


# -- numeric rational functions on explicit pole lists --------------------------


def _numeric_r(r: RatFunc, prec: int):
    s = r.num.map(lambda v: to_mpc(v, prec + 40))
    t = r.den.map(lambda v: to_mpc(v, prec + 40))
    return s, t


def _polar(coef, c, k: int):
    """(numerator, denominator) of coef / (x - c)^k."""
    return Poly([coef]), Poly([-c, 1]) ** k


def _sum_fracs(terms, one):
    """Sum of (num, den) pairs over a common denominator (no reduction)."""
    num, den = Poly([0 * one]), Poly([one])
    for n, dd in terms:
        num = num * dd + n * den
        den = den * dd
    return num, den


# -- the three searches --------------------------------------------------------


@dataclass(frozen=True)
class KovacicResult:
    """case in CASES; witness is u (Case 1, a RatFunc) or the coefficients
    (lowest first, monic) of a polynomial in u (Cases 2 and 3), else None."""

    case: str
    witness: object = None
    n: int | None = None
    field_degree: int = 1

    @property
    def galois_label(self) -> str:
        return {"Case1": "Triangular", "Case2": "Dihedral", "Case3": "Finite", "Case4": "SL2"}[self.case]

    def to_json(self) -> dict:
        w = None
        if self.case == "Case1":
            w = {"u": self.witness.to_str()}
        elif self.witness is not None:
            w = {"n": self.n, "polynomial": [c.to_str() for c in self.witness]}
        return {"case": self.case, "witness": w, "galois_label": self.galois_label}


def _case1_options(p: _Pole, prec):
    m = p.order
    if m == 1:
        return [_Option("1", mpmath.mpc(1))]
    if m == 2:
        b = p.laurent[0]
        rt = mpmath.sqrt(1 + 4 * b)
        if abs(rt) < mpmath.mpf(2) ** (-prec // 2):
            return [_Option("0", mpmath.mpc(0.5))]
        return [_Option("+", 0.5 + rt / 2), _Option("-", 0.5 - rt / 2)]
    nu = m // 2
    q = _series_sqrt(p.laurent, nu, mpmath.sqrt(p.laurent[0]))
    sq = tuple(q[: nu - 1])
    return [_Option("+", nu / mpmath.mpf(2) + q[nu - 1], sq),
            _Option("-", nu / mpmath.mpf(2) - q[nu - 1], tuple(-v for v in sq))]


def _case1_inf_options(r: RatFunc, prec):
    o = order_at_infinity(r)
    if o > 2:
        return [_Option("+", mpmath.mpc(0)), _Option("-", mpmath.mpc(1))]
    R = [to_mpc(v, prec + 40) for v in _infinity_series(r, max(3, int(-o // 2) + 3))]
    if o == 2:
        rt = mpmath.sqrt(1 + 4 * R[0])
        if abs(rt) < mpmath.mpf(2) ** (-prec // 2):
            return [_Option("0", mpmath.mpc(0.5))]
        return [_Option("+", 0.5 + rt / 2), _Option("-", 0.5 - rt / 2)]
    nu = int(-o // 2)
    q = _series_sqrt(R, nu + 2, mpmath.sqrt(R[0]))
    sq = tuple(q[: nu + 1])
    return [_Option("+", -nu / mpmath.mpf(2) + q[nu + 1], sq),
            _Option("-", -nu / mpmath.mpf(2) - q[nu + 1], tuple(-v for v in sq))]


def _case1_possible(data, r) -> bool:
    o = order_at_infinity(r)
    if not all(p.order == 1 or p.order % 2 == 0 for p in data):
        return False
    return o > 2 or (o == int(o) and int(o) % 2 == 0)


def _omega1_numeric(poles, cand):
    """omega of a Case 1 candidate as (A, B) with mpc coefficients."""
    one = mpmath.mpc(1)
    terms = []
    for p, o in zip(poles, cand.choice):
        terms.append(_polar(o.value, p.c, 1))
        nu = p.order // 2
        for j, qj in enumerate(o.sq):
            terms.append(_polar(qj, p.c, nu - j))
    nu = len(cand.inf.sq) - 1
    if cand.inf.sq:
        terms.append((Poly([cand.inf.sq[nu - j] for j in range(nu + 1)]), Poly([one])))
    return _sum_fracs(terms, one)


def _case1_exact(r: RatFunc, data, poles, cand):
    """omega in K(x) for a uniform candidate, or None when not representable."""
    fams: dict[int, _Option] = {}
    for p, o in zip(poles, cand.choice):
        fams[p.fam] = o
    fields = set()
    terms = []

    def sqrt_of(q):
        res = _exact_sqrt(q)
        if res is None:
            return None
        v, D = res
        if D != 1:
            fields.add(D)
        return v

    for k, pd in enumerate(data):
        o = fams[k]
        f = pd.family.monic()
        if pd.order == 1:
            alpha = Fraction(1)
        elif pd.order == 2:
            b = pd.laurent[0]
            if isinstance(b, NFElem):
                if not b.is_rational():
                    return None
                b = b.as_fraction()
            rt = sqrt_of(1 + 4 * b)
            if rt is None:
                return None
            sign = {"+": 1, "-": -1, "0": 0}[o.label]
            alpha = Fraction(1, 2) + sign * rt / 2
        else:
            if pd.degree > 1:
                return None
            c = pd.point.value
            nu = pd.order // 2
            a0 = sqrt_of(pd.laurent[0])
            if a0 is None:
                return None
            q = _series_sqrt(list(pd.laurent), nu, a0)
            sign = 1 if o.label == "+" else -1
            alpha = Fraction(nu, 2) + sign * q[nu - 1]
            for j in range(nu - 1):
                terms.append(RatFunc(Poly([sign * q[j]]), Poly([-c, 1]) ** (nu - j)))
        terms.append(RatFunc(f.derivative() * alpha, f))
    o = order_at_infinity(r)
    if o <= 0:
        nu = int(-o // 2)
        R = _infinity_series(r, nu + 2)
        a0 = sqrt_of(R[0])
        if a0 is None:
            return None
        q = _series_sqrt(R, nu + 2, a0)
        sign = 1 if cand.inf.label == "+" else -1
        terms.append(RatFunc(Poly([sign * q[nu - j] for j in range(nu + 1)])))
    if len(fields) > 1:
        return None
    omega = as_ratfunc(0)
    for t in terms:
        omega = omega + t
    return omega


def _case1(r: RatFunc, data, poles, prec, tol):
    if not _case1_possible(data, r):
        return None
    options = [_case1_options(p, prec) for p in poles]
    inf_options = _case1_inf_options(r, prec)

    def dfun(combo, io):
        return io.value - sum((o.value for o in combo), mpmath.mpc(0))

    s, t = _numeric_r(r, prec)
    for cand in _enumerate(poles, options, inf_options, dfun, tol):
        if _uniform(poles, cand):
            omega = _case1_exact(r, data, poles, cand)
            if omega is not None:
                A, B = omega.num, omega.den
                tt, ss = r.den, r.num
                coeffs = [(A.derivative() * B - A * B.derivative()) * tt + A * A * tt - ss * B * B,
                          A * B * tt * 2, B * B * tt]
                P = _solve_monic(coeffs, cand.d, True, prec)
                if P is not None:
                    return KovacicResult("Case1", omega + RatFunc(P.derivative(), P))
                continue
        A, B = _omega1_numeric(poles, cand)
        coeffs = [(A.derivative() * B - A * B.derivative()) * t + A * A * t - s * B * B, A * B * t * 2, B * B * t]
        if _solve_monic(coeffs, cand.d, False, prec) is not None:
            raise KovacicInconclusive("inexact-candidate", "Case 1 solution not representable exactly")
    return None


def _e_options_order2(b, scale: Fraction, ks, prec):
    """Integers in {base + k * scale * sqrt(1+4b)}."""
    rt = mpmath.sqrt(1 + 4 * b)
    out = []
    for base, k in ks:
        v = base + k * scale * rt
        n = _near_int(v, mpmath.mpf(2) ** (-prec // 2))
        if n is not None and n not in [o.label for o in out]:
            out.append(_Option(n, mpmath.mpc(n)))
    return out


def _case2_options(p: _Pole, prec):
    if p.order == 1:
        return [_Option(4, mpmath.mpc(4))]
    if p.order == 2:
        return _e_options_order2(p.laurent[0], Fraction(2), [(2, 0), (2, 1), (2, -1)], prec)
    return [_Option(p.order, mpmath.mpc(p.order))]


def _case2_inf_options(r: RatFunc, prec):
    o = order_at_infinity(r)
    if o > 2:
        return [_Option(e, mpmath.mpc(e)) for e in (0, 2, 4)]
    if o == 2:
        b = to_mpc(_infinity_series(r, 1)[0], prec + 40)
        return _e_options_order2(b, Fraction(2), [(2, 0), (2, 1), (2, -1)], prec)
    return [_Option(int(o), mpmath.mpc(o))]


def _theta_numeric(poles, cand, scale):
    one = mpmath.mpc(1)
    return _sum_fracs([_polar(scale * o.value, p.c, 1) for p, o in zip(poles, cand.choice)], one)


def _theta_exact(data, poles, cand, scale):
    fams = {p.fam: o.label for p, o in zip(poles, cand.choice)}
    theta = as_ratfunc(0)
    for k, pd in enumerate(data):
        f = pd.family.monic()
        theta = theta + RatFunc(f.derivative() * (scale * fams[k]), f)
    return theta


def _case2_coeffs(A, B, s, t):
    A1, A2, B1, B2 = A.derivative(), A.derivative(2), B.derivative(), B.derivative(2)
    t2 = t * t
    B3 = B * B * B
    c3 = B3 * t2
    c2 = A * B * B * t2 * 3
    c1 = (A * A * B * 3 + (A1 * B - A * B1) * B * 3) * t2 - s * t * B3 * 4
    c0 = ((A2 * B * B - A1 * B1 * B * 2 - A * B2 * B + A * B1 * B1 * 2) * t2
          + A * (A1 * B - A * B1) * t2 * 3 + A * A * A * t2
          - s * A * B * B * t * 4 - (s.derivative() * t - s * t.derivative()) * B3 * 2)
    return [c0, c1, c2, c3]


def _case2(r: RatFunc, data, poles, prec, tol):
    if not any(p.order == 2 or (p.order % 2 == 1 and p.order > 2) for p in data):
        return None
    options = [_case2_options(p, prec) for p in poles]
    inf_options = _case2_inf_options(r, prec)

    def dfun(combo, io):
        return (io.value - sum((o.value for o in combo), mpmath.mpc(0))) / 2

    s, t = _numeric_r(r, prec)
    for cand in _enumerate(poles, options, inf_options, dfun, tol):
        if _uniform(poles, cand):
            theta = _theta_exact(data, poles, cand, Fraction(1, 2))
            coeffs = _case2_coeffs(theta.num, theta.den, r.num, r.den)
            P = _solve_monic(coeffs, cand.d, True, prec)
            if P is not None:
                phi = theta + RatFunc(P.derivative(), P)
                c0 = phi.derivative() / 2 + phi * phi / 2 - r
                return KovacicResult("Case2", (c0, -phi, as_ratfunc(1)), n=2)
            continue
        A, B = _theta_numeric(poles, cand, Fraction(1, 2))
        if _solve_monic(_case2_coeffs(A, B, s, t), cand.d, False, prec) is not None:
            raise KovacicInconclusive("inexact-candidate", "Case 2 solution not representable exactly")
    return None


def _case3_options(p: _Pole, n: int, prec):
    if p.order == 1:
        return [_Option(12, mpmath.mpc(12))]
    ks = [(6, k) for k in range(-n // 2, n // 2 + 1)]
    return _e_options_order2(p.laurent[0], Fraction(12, n), ks, prec)


def _case3_inf_options(r: RatFunc, n: int, prec):
    o = order_at_infinity(r)
    b = to_mpc(_infinity_series(r, 1)[0], prec + 40) if o == 2 else mpmath.mpc(0)
    ks = [(6, k) for k in range(-n // 2, n // 2 + 1)]
    return _e_options_order2(b, Fraction(12, n), ks, prec)


def _case3_chain(P: Poly, n: int, S: Poly, Stheta: Poly, S2r: Poly) -> list[Poly]:
    """P_n = -P, ..., P_{-1}; returns [P_{-1}, P_0, ..., P_n]."""
    Ps = {n: -P, n + 1: Poly()}
    S1 = S.derivative()
    for i in range(n, -1, -1):
        Ps[i - 1] = (-(S * Ps[i].derivative()) + (S1 * (n - i) - Stheta) * Ps[i]
                     - S2r * Ps[i + 1] * ((n - i) * (i + 1)))
    return [Ps[i] for i in range(-1, n + 1)]


def _case3(r: RatFunc, data, poles, prec, tol):
    if any(p.order > 2 for p in data) or order_at_infinity(r) < 2:
        return None
    # S = prod (x - c) over finite poles; S^2 r is a polynomial
    S = Poly([1])
    for pd in data:
        S = S * pd.family.monic()
    S2r_exact = RatFunc(S * S * r.num, r.den)
    assert S2r_exact.den.degree() == 0
    S2r = S2r_exact.num / S2r_exact.den.lc()
    one = mpmath.mpc(1)
    Sn = Poly([one])
    for p in poles:
        Sn = Sn * Poly([-p.c, one])
    S2rn = S2r.map(lambda v: to_mpc(v, prec + 40))
    for n in (4, 6, 12):
        options = [_case3_options(p, n, prec) for p in poles]
        inf_options = _case3_inf_options(r, n, prec)

        def dfun(combo, io, n=n):
            return (io.value - sum((o.value for o in combo), mpmath.mpc(0))) * n / 12

        for cand in _enumerate(poles, options, inf_options, dfun, tol):
            if cand.d > CASE3_UNKNOWN_CAP:
                raise KovacicInconclusive("inconclusive-case3", f"{cand.d} unknowns for n = {n}")
            if _uniform(poles, cand):
                theta = _theta_exact(data, poles, cand, Fraction(n, 12))
                Stheta = (RatFunc(S) * theta)
                Stheta = Stheta.num / Stheta.den.lc()
                P = _solve_linear(lambda Q: _case3_chain(Q, n, S, Stheta, S2r)[0], cand.d, True, prec)
                if P is not None:
                    chain = _case3_chain(P, n, S, Stheta, S2r)
                    poly = [RatFunc(S**i * chain[i + 1] * Fraction(1, factorial(n - i))) for i in range(n + 1)]
                    lead = poly[-1]
                    return KovacicResult("Case3", tuple(c / lead for c in poly), n=n)
                continue
            A, B = _theta_numeric(poles, cand, Fraction(n, 12))
            # B == Sn up to ordering, so S*theta = A
            sol = _solve_linear(lambda Q: _case3_chain(Q, n, Sn, A, S2rn)[0], cand.d, False, prec)
            if sol is not None:
                raise KovacicInconclusive("inexact-candidate", "Case 3 solution not representable exactly")
    return None


# -- public API ----------------------------------------------------------------


def r_of_operator(L) -> RatFunc:
    """r of the normal form z'' = r z of an order-2 operator."""
    L = as_diffop(L)
    return remove_subleading_derivative(L)[0]


def _as_r(r) -> RatFunc:
    if isinstance(r, DiffOp):
        return r_of_operator(r)
    r = as_ratfunc(r)
    if not all(isinstance(c, Fraction) for p in (r.num, r.den) for c in p.coeffs):
        raise ValueError("r must have rational coefficients")
    return r


def classify(r, prec: int = 192) -> KovacicResult:
    """Kovacic classification of z'' = r z (r a RatFunc, or an order-2 operator
    which is first put in normal form)."""
    r = _as_r(r)
    data = pole_data(r)
    with mpmath.workprec(prec + 40):
        poles = _numeric_poles(r, data, prec)
        tol = mpmath.mpf(2) ** (-prec // 2)
        for search in (_case1, _case2, _case3):
            res = search(r, data, poles, prec, tol)
            if res is not None:
                return res
    return KovacicResult("Case4")


def classify_sym_square(r, prec: int = 192) -> str:
    """Label of the group of the symmetric square: PSL2 exactly in Case 4."""
    res = classify(r, prec)
    return "PSL2" if res.case == "Case4" else res.galois_label


def _riccati_derivation(coeffs: list, r: RatFunc) -> list:
    """D(F) = sum c_i' U^i + (r - U^2) * sum i c_i U^(i-1)."""
    n = len(coeffs) - 1
    out = [as_ratfunc(0)] * (n + 2)
    for i, c in enumerate(coeffs):
        out[i] = out[i] + c.derivative()
        if i:
            out[i - 1] = out[i - 1] + r * c * i
            out[i + 1] = out[i + 1] - c * i
    return out


def _reduce_mod_monic(p: list, f: list) -> list:
    p = list(p)
    n = len(f) - 1
    for k in range(len(p) - 1, n - 1, -1):
        c = p[k]
        if c:
            for j in range(n + 1):
                p[k - n + j] = p[k - n + j] - c * f[j]
    return p[:n]


def verify_witness(r, w: KovacicResult) -> bool:
    """Exact check of the Riccati relation u' + u^2 = r (Case 1) or of the
    invariance of the witness polynomial under u' = r - u^2 (Cases 2, 3)."""
    r = _as_r(r)
    if w.witness is None:
        return False
    if w.case == "Case1":
        u = as_ratfunc(w.witness)
        return u.derivative() + u * u == r
    coeffs = [as_ratfunc(c) for c in w.witness]
    if len(coeffs) < 2 or coeffs[-1] != 1:
        return False
    rem = _reduce_mod_monic(_riccati_derivation(coeffs, r), coeffs)
    return all(not c for c in rem)


def normalized_pullback(r, phi) -> RatFunc:
    """r of the normal form of the pullback of z'' = r z along phi."""
    from .diffop.gauge import riccati_operator
    from .diffop.pullback import pullback

    return r_of_operator(pullback(riccati_operator(as_ratfunc(r)), phi))


def translate(r, c) -> RatFunc:
    """r(x + c)."""
    return as_ratfunc(r).compose(RatFunc(Poly([Fraction(c), 1])))
