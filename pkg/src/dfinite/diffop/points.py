"""Points of the projective line: rational, algebraic (number-field) and infinity.

Also singular-point enumeration and local (delta-form) operators at a point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from ..exact.factor import factor_rational
from ..exact.numberfield import Box, NFElem, NumberField, isolating_boxes
from ..exact.poly import Poly, poly_gcd
from .operator import DiffOp, as_diffop


class IrregularSingularityError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class AlgebraicPoint:
    """kind is "rational", "algebraic" or "infinity"."""

    kind: str
    value: object = None  # Fraction | NFElem | None

    @classmethod
    def rational(cls, q) -> "AlgebraicPoint":
        return cls("rational", Fraction(q))

    @classmethod
    def algebraic(cls, field: NumberField) -> "AlgebraicPoint":
        """The embedded root of the field's defining polynomial."""
        if field.degree == 1:
            return cls.rational(-field.minpoly[0])
        return cls("algebraic", field.gen())

    @classmethod
    def infinity(cls) -> "AlgebraicPoint":
        return cls("infinity")

    @property
    def is_infinite(self) -> bool:
        return self.kind == "infinity"

    @property
    def field(self) -> NumberField | None:
        return self.value.field if self.kind == "algebraic" else None

    @property
    def minpoly(self) -> Poly:
        if self.kind == "rational":
            return Poly([-self.value, 1])
        if self.kind == "algebraic":
            return self.field.minpoly
        raise ValueError("infinity has no minimal polynomial")

    def to_mpc(self, prec: int = 53):
        if self.kind == "rational":
            return mpmath.mpc(mpmath.mpf(self.value.numerator) / self.value.denominator)
        if self.kind == "algebraic":
            return self.value.to_mpc(prec)
        raise ValueError("infinity has no finite value")

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraicPoint) or self.kind != other.kind:
            return False
        if self.kind == "infinity":
            return True
        if self.kind == "rational":
            return self.value == other.value
        return self.field == other.field

    def __hash__(self) -> int:
        if self.kind == "infinity":
            return hash("inf")
        if self.kind == "rational":
            return hash(self.value)
        return hash(self.field.minpoly.coeffs)

    def __str__(self) -> str:
        if self.kind == "infinity":
            return "inf"
        if self.kind == "rational":
            return str(self.value)
        if self.field.degree == 2:
            return str(self.value)
        return f"root of {self.field.minpoly.to_str('t')} near {mpmath.nstr(self.to_mpc(64), 10)}"

    __repr__ = __str__

    def spec(self) -> str:
        """Round-trippable string: rational, "inf" or "root:minpoly:box"."""
        if self.kind == "infinity":
            return "inf"
        if self.kind == "rational":
            return str(self.value)
        mp = ",".join(str(c) for c in self.field.minpoly.coeffs)
        box = ",".join(self.field.box.to_json())
        return f"root:{mp}:{box}"

    @classmethod
    def parse(cls, s: str) -> "AlgebraicPoint":
        """Parse a rational, "inf", "root:c0,c1,...:re_lo,re_hi,im_lo,im_hi" or
        "root:c0,c1,...:~approx" (root of the polynomial nearest a numeric value)."""
        s = s.strip()
        if s in ("inf", "infinity", "oo"):
            return cls.infinity()
        if s.startswith("root:"):
            _, mp, where = s.split(":", 2)
            poly = Poly([Fraction(c) for c in mp.split(",")])
            if where.startswith("~"):
                return point_near(poly, complex(where[1:].replace(" ", "")))
            box = Box.from_json(where.split(","))
            return cls.algebraic(NumberField(poly, box))
        return cls.rational(Fraction(s))

    def to_json(self):
        return self.spec()


def point_near(poly: Poly, approx) -> AlgebraicPoint:
    """The root of an irreducible rational polynomial closest to ``approx``."""
    if poly.degree() == 1:
        return AlgebraicPoint.rational(-poly[0] / poly[1])
    boxes = isolating_boxes(poly.monic())
    box, _ = min(boxes, key=lambda br: abs(br[1] - mpmath.mpc(approx)))
    return AlgebraicPoint.algebraic(NumberField(poly, box))


def points_of_factor(f: Poly) -> list[AlgebraicPoint]:
    """All roots of an irreducible rational polynomial as points."""
    if f.degree() == 1:
        return [AlgebraicPoint.rational(-f[0] / f[1])]
    return [AlgebraicPoint.algebraic(NumberField(f, box)) for box, _ in isolating_boxes(f.monic())]


def singular_points(L, include_infinity: bool = True) -> list[AlgebraicPoint]:
    """Roots of the leading coefficient (grouped by irreducible factor, sorted
    by real part within the list) plus infinity when it is singular."""
    L = as_diffop(L)
    pts: list[AlgebraicPoint] = []
    for f, _ in factor_rational(L.leading) if L.is_rational() else []:
        pts.extend(points_of_factor(f))
    pts.sort(key=lambda p: (float(p.to_mpc().real), float(p.to_mpc().imag)))
    if include_infinity and is_singular_at_infinity(L):
        pts.append(AlgebraicPoint.infinity())
    return pts


def singular_factors(L) -> list[Poly]:
    """Monic irreducible factors of the leading coefficient."""
    return [f for f, _ in factor_rational(as_diffop(L).leading)]


def is_singular_at_infinity(L) -> bool:
    from .pullback import at_infinity

    M = at_infinity(as_diffop(L))
    return M.leading[0] == 0


def is_ordinary(L, pt: AlgebraicPoint) -> bool:
    L = as_diffop(L)
    if pt.is_infinite:
        return not is_singular_at_infinity(L)
    if pt.kind == "rational":
        return L.leading(pt.value) != 0
    return (L.leading % pt.minpoly) != Poly()


def local_operator(L, pt: AlgebraicPoint) -> DiffOp:
    """The operator in the local variable t (x = x0 + t, or x = 1/t at infinity)."""
    L = as_diffop(L)
    if pt.is_infinite:
        from .pullback import at_infinity

        return at_infinity(L)
    if pt.kind == "rational" and pt.value == 0:
        return L
    return L.shift(pt.value)


@dataclass(frozen=True)
class LocalDeltaForm:
    """sum_k t^k P_k(theta) with theta = t d/dt, after removing the common
    t-power.  ``parts[k]`` is P_k (a polynomial over the point's field)."""

    parts: tuple
    order: int

    @property
    def indicial(self) -> Poly:
        return self.parts[0]

    def regular(self) -> bool:
        return self.parts[0].degree() == self.order


def local_delta_form(L, pt: AlgebraicPoint) -> LocalDeltaForm:
    M = local_operator(L, pt)
    D = M.to_delta()
    # valuation of each coefficient in t; indicial part is the lowest slice
    vals = [c.valuation() for c in D.coeffs if c]
    v = min(vals)
    deg = max(c.degree() for c in D.coeffs)
    parts = []
    for k in range(v, deg + 1):
        parts.append(Poly([c[k] for c in D.coeffs]))
    return LocalDeltaForm(tuple(parts), D.order)


def indicial_polynomial(L, pt: AlgebraicPoint) -> Poly:
    """Monic indicial polynomial at pt (coefficients rationalized when possible)."""
    F = local_delta_form(L, pt)
    if not F.regular():
        raise IrregularSingularityError(f"{pt} is an irregular singular point")
    return rationalize(F.indicial.monic())


def rationalize(p: Poly) -> Poly:
    """Replace rational NFElem coefficients by Fractions when all are rational."""
    cs = []
    for c in p.coeffs:
        if isinstance(c, NFElem):
            if not c.is_rational():
                return p
            cs.append(c.as_fraction())
        else:
            cs.append(c)
    return Poly(cs)


def coordinate_polys(p: Poly) -> list[Poly]:
    """For p with NFElem coefficients, the rational polynomials Q_j with
    p = sum_j t^j Q_j."""
    if all(isinstance(c, Fraction) for c in p.coeffs):
        return [p]
    deg = max((c.field.degree for c in p.coeffs if isinstance(c, NFElem)), default=1)
    out = []
    for j in range(deg):
        out.append(Poly([(c.rep[j] if isinstance(c, NFElem) else (c if j == 0 else Fraction(0))) for c in p.coeffs]))
    return out


def rational_part(p: Poly) -> Poly:
    """Monic gcd of the coordinate polynomials: its roots are the rational roots of p."""
    polys = [q for q in coordinate_polys(p) if q]
    g = polys[0]
    for q in polys[1:]:
        g = poly_gcd(g, q)
    return g.monic()

