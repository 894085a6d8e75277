"""Gauge factors gamma = c * prod f_i^e_i and the change y = gamma z."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from ..exact.factor import factor_rational, squarefree_decomposition
from ..exact.poly import poly_xgcd
from ..exact.ratfunc import RatFunc, as_ratfunc
from .operator import DiffOp


class GaugeError(ArithmeticError):
    """The logarithmic derivative is not that of a finite power product."""


@dataclass(frozen=True)
class GaugeFactor:
    """c * prod base_i(x)^exp_i with monic, squarefree, pairwise coprime bases."""

    factors: tuple = ()  # ((Poly, Fraction), ...)
    constant: Fraction = Fraction(1)

    def log_derivative(self) -> RatFunc:
        out = as_ratfunc(0)
        for f, e in self.factors:
            out = out + RatFunc(f.derivative(), f) * e
        return out

    def __mul__(self, other: "GaugeFactor") -> "GaugeFactor":
        d: dict = {}
        for f, e in self.factors + other.factors:
            d[f] = d.get(f, Fraction(0)) + e
        return GaugeFactor(_sorted(d), self.constant * other.constant)

    def __pow__(self, k) -> "GaugeFactor":
        k = Fraction(k)
        const = self.constant**k if k.denominator == 1 else self.constant
        return GaugeFactor(_sorted({f: e * k for f, e in self.factors}), const)

    def inverse(self) -> "GaugeFactor":
        return GaugeFactor(tuple((f, -e) for f, e in self.factors), 1 / self.constant)

    def is_trivial(self) -> bool:
        return not self.factors

    def evaluate(self, x):
        """Principal-branch numeric value at a point."""
        x = mpmath.mpmathify(x)
        out = mpmath.mpf(self.constant.numerator) / self.constant.denominator
        for f, e in self.factors:
            fx = f.map(lambda c: mpmath.mpf(c.numerator) / c.denominator)(x)
            out = out * mpmath.power(fx, mpmath.mpf(e.numerator) / e.denominator)
        return out

    def __str__(self) -> str:
        if not self.factors:
            return str(self.constant)
        parts = []
        for f, e in self.factors:
            base = f.to_str() if f.degree() == 1 and f[0] == 0 else f"({f.to_str()})"
            parts.append(base if e == 1 else f"{base}^({e})")
        body = "*".join(parts)
        return body if self.constant == 1 else f"{self.constant}*{body}"


def _sorted(d: dict) -> tuple:
    items = [(f, e) for f, e in d.items() if e != 0]
    items.sort(key=lambda fe: (fe[0].degree(), [float(c) for c in fe[0].coeffs]))
    return tuple(items)


def gauge_from_logderivative(g: RatFunc) -> GaugeFactor:
    """GaugeFactor gamma with gamma'/gamma = g, up to a constant.

    Requires g to be a proper fraction with squarefree denominator whose
    residues are rational and constant along each irreducible factor.
    """
    g = as_ratfunc(g)
    if not g:
        return GaugeFactor()
    num, den = g.num, g.den
    if num.degree() >= den.degree():
        raise GaugeError("logarithmic derivative has a polynomial part")
    if any(m > 1 for _, m in squarefree_decomposition(den)):
        raise GaugeError("logarithmic derivative has a non-simple pole")
    dden = den.derivative()
    factors = []
    for f, _ in factor_rational(den):
        # residue at the roots of f is num/den' reduced mod f
        _, s, _ = poly_xgcd(dden % f, f)
        c = (num * s) % f
        if c.degree() > 0:
            raise GaugeError("residues along an irreducible factor are not constant")
        factors.append((f, c[0] if c else Fraction(0)))
    gamma = GaugeFactor(_sorted(dict(factors)))
    if gamma.log_derivative() != g:
        raise GaugeError("logarithmic derivative is not a sum of simple log terms")
    return gamma


def remove_subleading_derivative(L: DiffOp) -> tuple[RatFunc, GaugeFactor]:
    """For p2 y'' + p1 y' + p0 y = 0 return (r, gamma) with y = gamma z, z'' = r z."""
    if L.order != 2:
        raise ValueError("operator must have order 2")
    p0, p1, p2 = L.coeffs
    a0, a1 = RatFunc(p0, p2), RatFunc(p1, p2)
    g = -a1 / 2
    r = g * g - g.derivative() - a0
    gamma = gauge_from_logderivative(g)
    return r, gamma


def riccati_operator(r: RatFunc) -> DiffOp:
    """The operator of z'' = r z."""
    r = as_ratfunc(r)
    return DiffOp.from_ratfuncs([-r, 0, 1])


def gauge_transform(L: DiffOp, g: RatFunc) -> DiffOp:
    """Operator satisfied by w = y / gamma where gamma'/gamma = g.

    With gamma^(k) = gamma h_k, h_0 = 1, h_{k+1} = h_k' + g h_k, the
    coefficient of w^(j) is sum_i a_i C(i, j) h_(i-j).
    """
    from math import comb

    g = as_ratfunc(g)
    n = L.order
    a = [RatFunc(c, L.leading) for c in L.coeffs]
    h = [as_ratfunc(1)]
    for _ in range(n):
        h.append(h[-1].derivative() + g * h[-1])
    out = []
    for j in range(n + 1):
        acc = as_ratfunc(0)
        for i in range(j, n + 1):
            if a[i]:
                acc = acc + a[i] * h[i - j] * comb(i, j)
        out.append(acc)
    return DiffOp.from_ratfuncs(out)


def gauge_apply(L: DiffOp, gamma: GaugeFactor) -> DiffOp:
    """Operator annihilating y / gamma for every solution y of L."""
    return gauge_transform(L, gamma.log_derivative())
