"""Linear differential operators with polynomial coefficients.

``DiffOp`` uses the derivation d/dx, ``DeltaOp`` uses delta = x d/dx.  Both are
kept content-normalized, so two operators with the same monic normal form are
structurally equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd

from ..exact.poly import Poly, poly_gcd
from ..exact.ratfunc import RatFunc, as_ratfunc


@lru_cache(maxsize=None)
def stirling1(n: int, k: int) -> int:
    """Signed Stirling numbers of the first kind: falling(t, n) = sum s(n,k) t^k."""
    if n == k:
        return 1
    if n == 0 or k == 0:
        return 0
    return stirling1(n - 1, k - 1) - (n - 1) * stirling1(n - 1, k)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling numbers of the second kind: t^n = sum S(n,k) falling(t, k)."""
    if n == k:
        return 1
    if n == 0 or k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def _is_rational_poly(p: Poly) -> bool:
    return all(isinstance(c, Fraction) for c in p.coeffs)


def normalize_coeffs(coeffs) -> tuple[Poly, ...]:
    """Remove the polynomial gcd and the constant content.

    Over Q the result is a primitive integer tuple with positive leading
    coefficient of the top polynomial; over a number field the top polynomial
    is made monic.
    """
    coeffs = [c if isinstance(c, Poly) else Poly([c]) for c in coeffs]
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs.pop()
    if not coeffs or not coeffs[-1]:
        raise ValueError("operator with zero leading coefficient")
    nonzero = [c for c in coeffs if c]
    g = reduce(poly_gcd, nonzero)
    if g.degree() > 0:
        coeffs = [c // g for c in coeffs]
    if all(_is_rational_poly(c) for c in coeffs):
        den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator_lcm() for c in coeffs if c), 1)
        ints = [[int(x * den) for x in c.coeffs] for c in coeffs]
        content = reduce(gcd, (x for row in ints for x in row), 0)
        if ints[-1][-1] < 0:
            content = -content
        return tuple(Poly([Fraction(x, content) for x in row]) for row in ints)
    lc = coeffs[-1].lc()
    return tuple(c / lc for c in coeffs)


@dataclass(frozen=True)
class DiffOp:
    """sum_i coeffs[i](x) (d/dx)^i, content-normalized."""

    coeffs: tuple
    var: str = "x"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", normalize_coeffs(self.coeffs))

    @classmethod
    def from_ratfuncs(cls, rfs, var: str = "x") -> "DiffOp":
        """Clear denominators of a list of rational-function coefficients."""
        rfs = [as_ratfunc(r) for r in rfs]
        den = reduce(lambda a, b: (a * b) // poly_gcd(a, b), (r.den for r in rfs), Poly([1]))
        return cls(tuple(r.num * (den // r.den) for r in rfs), var)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Poly:
        return self.coeffs[-1]

    def monic_normal_form(self) -> tuple[RatFunc, ...]:
        lead = self.leading
        return tuple(RatFunc(c, lead) for c in self.coeffs)

    def equivalent(self, other: "DiffOp") -> bool:
        return self.monic_normal_form() == other.monic_normal_form()

    def is_rational(self) -> bool:
        return all(_is_rational_poly(c) for c in self.coeffs)

    def apply(self, f):
        """L(f) for a polynomial or rational function f."""
        f = as_ratfunc(f)
        out = RatFunc(Poly())
        d = f
        for c in self.coeffs:
            out = out + d * c
            d = d.derivative()
        return out

    def to_delta(self) -> "DeltaOp":
        """Multiply by x^order and rewrite x^i D^i as falling(delta, i)."""
        n = self.order
        q = [Poly() for _ in range(n + 1)]
        for i, p in enumerate(self.coeffs):
            shifted = p * Poly.monomial(n - i)
            for j in range(i + 1):
                s = stirling1(i, j)
                if s:
                    q[j] = q[j] + shifted * s
        return DeltaOp(tuple(q), self.var)

    def to_companion(self) -> "CompanionSystem":
        from .system import CompanionSystem

        return CompanionSystem.from_operator(self)

    def shift(self, a) -> "DiffOp":
        """The operator in t = x - a (coefficients over a's field)."""
        return DiffOp(tuple(c.shift(a) for c in self.coeffs), self.var)

    def map_coeffs(self, f) -> "DiffOp":
        return DiffOp(tuple(c.map(f) for c in self.coeffs), self.var)

    def __str__(self) -> str:
        parts = []
        for i in range(self.order, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            d = "" if i == 0 else ("D" if i == 1 else f"D^{i}")
            parts.append(f"({c.to_str(self.var)})" + (f"*{d}" if d else ""))
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "variable": self.var,
            "derivation": "d/dx",
            "coefficients": [[str(x) for x in c.coeffs] for c in self.coeffs],
        }


@dataclass(frozen=True)
class DeltaOp:
    """sum_j coeffs[j](x) delta^j with delta = x d/dx, content-normalized."""

    coeffs: tuple
    var: str = "x"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", normalize_coeffs(self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_x_theta(cls, parts: dict[int, Poly], var: str = "x") -> "DeltaOp":
        """Build from {k: P_k} meaning sum_k x^k P_k(delta)."""
        order = max(p.degree() for p in parts.values() if p)
        q = [Poly() for _ in range(order + 1)]
        for k, P in parts.items():
            for j, c in enumerate(P.coeffs):
                q[j] = q[j] + Poly.monomial(k, c)
        return cls(tuple(q), var)

    def x_theta(self) -> dict[int, Poly]:
        """Decompose as {k: P_k(theta)} with the operator = sum_k x^k P_k(delta)."""
        deg = max(c.degree() for c in self.coeffs)
        out = {}
        for k in range(deg + 1):
            P = Poly([c[k] for c in self.coeffs])
            if P:
                out[k] = P
        return out

    def to_diffop(self) -> DiffOp:
        """delta^j = sum_i S(j,i) x^i D^i."""
        n = self.order
        p = [Poly() for _ in range(n + 1)]
        for j, q in enumerate(self.coeffs):
            for i in range(j + 1):
                s = stirling2(j, i)
                if s:
                    p[i] = p[i] + q * Poly.monomial(i) * s
        return DiffOp(tuple(p), self.var)

    def to_companion(self) -> "CompanionSystem":
        from .system import CompanionSystem

        return CompanionSystem.from_delta(self)

    def __str__(self) -> str:
        parts = []
        for i in range(self.order, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            d = "" if i == 0 else ("delta" if i == 1 else f"delta^{i}")
            parts.append(f"({c.to_str(self.var)})" + (f"*{d}" if d else ""))
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "variable": self.var,
            "derivation": "delta",
            "coefficients": [[str(x) for x in c.coeffs] for c in self.coeffs],
        }


def from_json(data: dict):
    coeffs = tuple(Poly([Fraction(s) for s in c]) for c in data["coefficients"])
    var = data.get("variable", "x")
    if data.get("derivation", "d/dx") == "delta":
        return DeltaOp(coeffs, var)
    return DiffOp(coeffs, var)


def as_diffop(L) -> DiffOp:
    if isinstance(L, DeltaOp):
        return L.to_diffop()
    return L
