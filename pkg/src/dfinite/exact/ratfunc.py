"""Rational functions num/den over a coefficient field, kept in lowest terms."""

from __future__ import annotations

import ast
from fractions import Fraction

from .poly import Poly, coerce, poly_gcd


class RatFunc:
    __slots__ = ("num", "den")
    # Poly arithmetic defers to RatFunc rather than treating it as a scalar
    _absorbs_poly = True

    def __init__(self, num, den=None, *, reduced: bool = False):
        if not isinstance(num, Poly):
            num = Poly([num])
        if den is None:
            den = Poly([1])
        elif not isinstance(den, Poly):
            den = Poly([den])
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = Poly(), Poly([1])
            return
        if not reduced:
            g = poly_gcd(num, den)
            if g.degree() > 0:
                num, den = num // g, den // g
        lc = den.lc()
        if lc != 1:
            num, den = num / lc, den / lc
        self.num, self.den = num, den

    @classmethod
    def x(cls) -> "RatFunc":
        return cls(Poly([0, 1]))

    # arithmetic
    def _lift(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other, reduced=True)
        return RatFunc(Poly([coerce(other)]), reduced=True)

    def __add__(self, other) -> "RatFunc":
        o = self._lift(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        g = poly_gcd(self.den, o.den)
        a, b = self.den // g, o.den // g
        return RatFunc(self.num * b + o.num * a, self.den * b)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other) -> "RatFunc":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "RatFunc":
        return self._lift(other) - self

    def __mul__(self, other) -> "RatFunc":
        o = self._lift(other)
        if not self.num or not o.num:
            return RatFunc(Poly())
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        return RatFunc((self.num // g1) * (o.num // g2), (self.den // g2) * (o.den // g1), reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num, reduced=True)

    def __truediv__(self, other) -> "RatFunc":
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return self._lift(other) * self.inverse()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, reduced=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            try:
                other = self._lift(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __bool__(self) -> bool:
        return bool(self.num)

    # calculus / evaluation
    def derivative(self) -> "RatFunc":
        return RatFunc(self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den)

    def __call__(self, x):
        if isinstance(x, RatFunc):
            return self.compose(x)
        if isinstance(x, Poly):
            return self.compose(RatFunc(x, reduced=True))
        return self.num(x) / self.den(x)

    def compose(self, phi: "RatFunc") -> "RatFunc":
        """self(phi(x)) computed without nested fractions."""
        n, d = phi.num, phi.den
        deg = max(self.num.degree(), self.den.degree(), 0)

        def hom(p: Poly) -> Poly:
            out = Poly()
            npow = Poly([1])
            for i, c in enumerate(p.coeffs):
                out = out + npow * d ** (deg - i) * c
                npow = npow * n
            return out

        return RatFunc(hom(self.num), hom(self.den))

    def is_polynomial(self) -> bool:
        return self.den.degree() == 0

    def order_at_infinity(self) -> float:
        if not self.num:
            return float("inf")
        return self.den.degree() - self.num.degree()

    def map(self, f) -> "RatFunc":
        return RatFunc(self.num.map(f), self.den.map(f))

    def __repr__(self) -> str:
        return f"RatFunc({self.to_str()!r})"

    def to_str(self, var: str = "x") -> str:
        if self.den.degree() == 0:
            return self.num.to_str(var)
        return f"({self.num.to_str(var)})/({self.den.to_str(var)})"

    __str__ = to_str


def as_ratfunc(v) -> RatFunc:
    if isinstance(v, RatFunc):
        return v
    if isinstance(v, Poly):
        return RatFunc(v, reduced=True)
    return RatFunc(Poly([coerce(v)]), reduced=True)


ONE = RatFunc(Poly([Fraction(1)]))
ZERO = RatFunc(Poly())


_BINOPS = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b, ast.Mult: lambda a, b: a * b,
           ast.Div: lambda a, b: as_ratfunc(a) / b}


def parse_ratfunc(text: str, var: str = "x") -> RatFunc:
    """Parse an expression in ``var`` with + - * / ^ and rational constants."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Constant) and isinstance(node.value, float):
            return Fraction(str(node.value))
        if isinstance(node, ast.Name) and node.id == var:
            return RatFunc(Poly([0, 1]))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(b, Fraction) and b.denominator == 1):
                    raise ValueError("exponents must be integers")
                return as_ratfunc(a) ** int(b)
            if type(node.op) in _BINOPS:
                if isinstance(a, Fraction) and isinstance(b, Fraction):
                    return a / b if isinstance(node.op, ast.Div) else _BINOPS[type(node.op)](a, b)
                return _BINOPS[type(node.op)](as_ratfunc(a), b)
        raise ValueError(f"unsupported syntax in {text!r}")

    return as_ratfunc(ev(ast.parse(text.replace("^", "**"), mode="eval")))
