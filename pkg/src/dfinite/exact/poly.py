"""Dense univariate polynomials over an exact (or numeric) coefficient field.

Coefficients are stored lowest degree first.  Any coefficient type supporting
the field operations and comparison with ``0`` works: ``Fraction``,
:class:`~dfinite.exact.numberfield.NFElem`, :class:`~dfinite.exact.ratfunc.RatFunc`
or ``mpmath.mpc``.  Python ints are promoted to ``Fraction`` on entry so that
division never silently produces floats.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import comb, gcd
from typing import Iterable, Sequence


def coerce(c):
    if isinstance(c, bool):
        return Fraction(int(c))
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    return c


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # construction helpers
    @classmethod
    def x(cls, one=Fraction(1)) -> "Poly":
        return cls([0 * one, one])

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        p = cls([1])
        for r in roots:
            p = p * cls([-coerce(r), 1])
        return p

    @classmethod
    def monomial(cls, n: int, c=Fraction(1)) -> "Poly":
        c = coerce(c)
        return cls([0 * c] * n + [c])

    # basic properties
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def lc(self):
        return self.coeffs[-1]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __iter__(self):
        return iter(self.coeffs)

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        raise ValueError("valuation of the zero polynomial")

    # arithmetic
    def __add__(self, other) -> "Poly":
        if getattr(other, "_absorbs_poly", False):
            return NotImplemented
        if not isinstance(other, Poly):
            other = Poly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        if getattr(other, "_absorbs_poly", False):
            return NotImplemented
        if not isinstance(other, Poly):
            other = Poly([other])
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if getattr(other, "_absorbs_poly", False):
            return NotImplemented
        if not isinstance(other, Poly):
            other = coerce(other)
            return Poly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [None] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                t = ai * bj
                k = i + j
                out[k] = t if out[k] is None else out[k] + t
        zero = a[0] * 0
        return Poly([zero if c is None else c for c in out])

    def __rmul__(self, other) -> "Poly":
        other = coerce(other)
        return Poly([other * c for c in self.coeffs])

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, c) -> "Poly":
        if getattr(c, "_absorbs_poly", False):
            return NotImplemented
        if isinstance(c, Poly):
            q, r = divmod(self, c)
            if r:
                raise ArithmeticError("inexact polynomial division")
            return q
        c = coerce(c)
        return Poly([x / c for x in self.coeffs])

    def __divmod__(self, other: "Poly"):
        if not isinstance(other, Poly):
            other = Poly([other])
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.coeffs)
        db = other.degree()
        lcb = other.lc()
        if len(r) - 1 < db:
            return Poly(), Poly(r)
        q = [None] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] / lcb
            q[k] = c
            if c != 0:
                for j, bj in enumerate(other.coeffs):
                    r[k + j] = r[k + j] - c * bj
        rem = r[:db]
        return Poly(q), Poly(rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            if self.degree() > 0:
                return False
            other = Poly([other])
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # calculus / evaluation
    def derivative(self, k: int = 1) -> "Poly":
        p = self
        for _ in range(k):
            p = Poly([i * c for i, c in enumerate(p.coeffs)][1:])
        return p

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a scalar, a Poly or a RatFunc."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return 0 * x if not isinstance(x, Poly) else Poly()
        if isinstance(x, Poly) and not isinstance(acc, Poly):
            return Poly([acc])
        return acc

    def shift(self, a) -> "Poly":
        """Return p(x + a) via synthetic division (Taylor shift)."""
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] = cs[j] + a * cs[j + 1]
        return Poly(cs)

    def taylor(self, a, k: int | None = None) -> list:
        """Coefficients of p(a + t) in t, lowest first (optionally first k only)."""
        cs = list(self.shift(a).coeffs)
        if k is not None:
            cs = cs[:k]
        return cs

    def scale(self, c) -> "Poly":
        """p(c x)."""
        out, pw = [], None
        for i, a in enumerate(self.coeffs):
            pw = Fraction(1) if i == 0 else pw * c
            out.append(a * pw)
        return Poly(out)

    def reverse(self, n: int | None = None) -> "Poly":
        """x^n p(1/x); n defaults to the degree."""
        if n is None:
            n = self.degree()
        cs = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return Poly(reversed(cs[: n + 1]))

    def monic(self) -> "Poly":
        if not self:
            return self
        return self / self.lc()

    def map(self, f) -> "Poly":
        return Poly([f(c) for c in self.coeffs])

    def truncate(self, n: int) -> "Poly":
        return Poly(self.coeffs[:n])

    # rational-coefficient helpers
    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)

    def denominator_lcm(self) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in self.coeffs), 1)

    def primitive(self) -> tuple[Fraction, "Poly"]:
        """Split a rational polynomial as content * primitive integer polynomial
        with positive leading coefficient."""
        if not self:
            return Fraction(0), self
        den = self.denominator_lcm()
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(gcd, ints)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), Poly([Fraction(i // g) for i in ints])

    def __repr__(self) -> str:
        return f"Poly({self.to_str()!r})"

    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            cs = str(c)
            if isinstance(c, Fraction):
                neg = c < 0
                mag = -c if neg else c
                cs = str(mag)
                if mono and mag == 1:
                    body = mono
                elif mono:
                    body = f"{cs}*{mono}"
                else:
                    body = cs
                terms.append(("-" if neg else "+", body))
            else:
                body = f"({cs})" + (f"*{mono}" if mono else "")
                terms.append(("+", body))
        s = ""
        for k, (sign, body) in enumerate(terms):
            if k == 0:
                s = ("-" if sign == "-" else "") + body
            else:
                s += f" {sign} {body}"
        return s

    __str__ = to_str


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over a field (Euclid)."""
    while b:
        a, b = b, a % b
    return a.monic() if a else a


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = Poly([1]), Poly()
    t0, t1 = Poly(), Poly([1])
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    lc = r0.lc()
    return r0 / lc, s0 / lc, t0 / lc


def poly_lcm(a: Poly, b: Poly) -> Poly:
    return (a * b // poly_gcd(a, b)).monic()


def falling(n, k: int):
    """n (n-1) ... (n-k+1) for scalar n."""
    out = Fraction(1)
    for i in range(k):
        out = out * (n - i)
    return out


def falling_poly(k: int) -> Poly:
    """The polynomial d(d-1)...(d-k+1) in d."""
    return Poly.from_roots(range(k))


def binomial_shift_matrix(n: int) -> list[list[int]]:
    return [[comb(i, j) for j in range(n)] for i in range(n)]


def resultant(a: Poly, b: Poly):
    """Resultant via the Euclidean algorithm over a field."""
    if not a or not b:
        return Fraction(0)
    res = Fraction(1)
    while b.degree() > 0:
        da, db = a.degree(), b.degree()
        r = a % b
        if not r:
            return Fraction(0)
        dr = r.degree()
        if (da * db) % 2:
            res = -res
        res = res * b.lc() ** (da - dr)
        a, b = b, r
    return res * b.lc() ** a.degree()


def squarefree_part(p: Poly) -> Poly:
    return (p // poly_gcd(p, p.derivative())).monic()


def interpolate(xs: Sequence, ys: Sequence) -> Poly:
    """Lagrange interpolation through the given nodes (exact)."""
    result = Poly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = Poly([yi])
        for j, xj in enumerate(xs):
            if j != i:
                term = term * Poly([-xj, 1]) / (xi - xj)
        result = result + term
    return result
