"""Simple algebraic number fields Q[t]/(m(t)) with a chosen complex embedding.

The embedding is fixed by a rational box isolating one root of ``m``.  Elements
of two fields with the same minimal polynomial but different boxes are
different objects (conjugate embeddings) and do not mix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .poly import Poly, coerce, poly_xgcd


class IsolationError(ValueError):
    pass


@dataclass(frozen=True)
class Box:
    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction
    im_hi: Fraction

    def contains(self, z) -> bool:
        z = mpmath.mpc(z)
        return (
            self.re_lo <= _frac(z.real) <= self.re_hi
            and self.im_lo <= _frac(z.imag) <= self.im_hi
        )

    def center(self) -> complex:
        return complex(float((self.re_lo + self.re_hi) / 2), float((self.im_lo + self.im_hi) / 2))

    def to_json(self) -> list[str]:
        return [str(self.re_lo), str(self.re_hi), str(self.im_lo), str(self.im_hi)]

    @classmethod
    def from_json(cls, data) -> "Box":
        return cls(*(Fraction(s) for s in data))

    @classmethod
    def around(cls, z, radius) -> "Box":
        """Rational box of half-width ``radius`` around a numeric point."""
        z = mpmath.mpc(z)
        rad = Fraction(radius).limit_denominator(10**12) if not isinstance(radius, Fraction) else radius
        cr = _frac(z.real, 10**18)
        ci = _frac(z.imag, 10**18)
        return cls(cr - rad, cr + rad, ci - rad, ci + rad)


def _frac(x, maxden: int | None = None) -> Fraction:
    f = _mpf_to_fraction(x)
    return f.limit_denominator(maxden) if maxden else f


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    man = -int(man) if sign else int(man)
    return Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2 ** (-exp))


def numeric_roots(p: Poly, prec: int) -> list:
    """All complex roots of a rational polynomial at ``prec`` bits."""
    if p.degree() < 1:
        return []
    with mpmath.workprec(prec + 20):
        cs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(p.coeffs)]
        if p.degree() == 1:
            roots = [-cs[1] / cs[0]]
        else:
            roots = mpmath.polyroots(cs, maxsteps=400 + 20 * p.degree(), extraprec=2 * prec + 60)
        return [mpmath.mpc(r) for r in roots]


def isolating_boxes(p: Poly, prec: int = 128) -> list[tuple[Box, object]]:
    """Boxes isolating each root of a squarefree rational polynomial.

    Each box has half-width a third of the distance to the nearest other root,
    so boxes are pairwise disjoint.  Returned sorted by (real, imag).
    """
    roots = numeric_roots(p, prec)
    out = []
    for i, r in enumerate(roots):
        others = [abs(r - s) for j, s in enumerate(roots) if j != i]
        sep = min(others) if others else mpmath.mpf(1)
        rad = _mpf_to_fraction(sep / 3).limit_denominator(10**15)
        if rad == 0:
            raise IsolationError("roots too close to isolate")
        out.append((Box.around(r, rad), r))
    out.sort(key=lambda br: (float(br[1].real), float(br[1].imag)))
    return out


class NumberField:
    """Q[t]/(m) embedded in C by the unique root of ``m`` inside ``box``."""

    def __init__(self, minpoly: Poly, box: Box, name: str = "t"):
        minpoly = minpoly.monic()
        if minpoly.degree() < 1:
            raise ValueError("minimal polynomial must have positive degree")
        self.minpoly = minpoly
        self.box = box
        self.name = name
        self._root_cache: dict[int, object] = {}
        self.root(64)  # validates isolation

    @property
    def degree(self) -> int:
        return self.minpoly.degree()

    def root(self, prec: int):
        """The embedded root to within 2^-prec (cached per precision)."""
        if prec in self._root_cache:
            return self._root_cache[prec]
        roots = numeric_roots(self.minpoly, prec + 10)
        inside = [r for r in roots if self.box.contains(r)]
        if len(inside) != 1:
            raise IsolationError(
                f"box {self.box} contains {len(inside)} roots of {self.minpoly.to_str('t')}"
            )
        r = inside[0]
        # a few Newton steps at full precision tighten polyroots' output
        with mpmath.workprec(prec + 20):
            cs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(self.minpoly.coeffs)]
            dcs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(self.minpoly.derivative().coeffs)]
            r = mpmath.mpc(r)
            for _ in range(4):
                d = mpmath.polyval(dcs, r)
                if d == 0:
                    break
                r = r - mpmath.polyval(cs, r) / d
            if _real_root(self.minpoly, r):
                r = mpmath.mpc(r.real, 0)
        self._root_cache[prec] = r
        return r

    def key(self):
        return (self.minpoly.coeffs, self.box)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NumberField):
            return NotImplemented
        if self is other:
            return True
        if self.minpoly != other.minpoly:
            return False
        return abs(self.root(64) - other.root(64)) < mpmath.mpf(2) ** -40

    def __hash__(self) -> int:
        return hash(self.minpoly.coeffs)

    def gen(self) -> "NFElem":
        return NFElem(self, Poly([0, 1]))

    def __call__(self, c) -> "NFElem":
        if isinstance(c, NFElem):
            if c.field != self:
                raise ValueError("element of a different number field")
            return c
        if isinstance(c, Poly):
            return NFElem(self, c)
        return NFElem(self, Poly([coerce(c)]))

    def is_real(self) -> bool:
        return _real_root(self.minpoly, self.root(64))

    def __repr__(self) -> str:
        return f"NumberField({self.minpoly.to_str('t')}, root≈{mpmath.nstr(self.root(64), 12)})"

    def to_json(self) -> dict:
        return {"minpoly": [str(c) for c in self.minpoly.coeffs], "box": self.box.to_json()}

    @classmethod
    def from_json(cls, data) -> "NumberField":
        return cls(Poly([Fraction(c) for c in data["minpoly"]]), Box.from_json(data["box"]))


def _real_root(m: Poly, r) -> bool:
    """Whether the embedded root is real, decided by counting real roots."""
    if abs(mpmath.mpc(r).imag) > mpmath.mpf(10) ** -8 * (1 + abs(r)):
        return False
    # m has rational coefficients: a non-real root has its conjugate as a
    # distinct root nearby; a tiny imaginary part with no such partner is real.
    roots = numeric_roots(m, 64)
    partners = [s for s in roots if abs(s - mpmath.conj(r)) < mpmath.mpf(10) ** -8 and abs(s - r) > mpmath.mpf(10) ** -12]
    return not partners


class NFElem:
    """An element of a :class:`NumberField`, stored as a reduced polynomial in t."""

    __slots__ = ("field", "rep")

    def __init__(self, field: NumberField, rep):
        if not isinstance(rep, Poly):
            rep = Poly([coerce(rep)])
        if rep.degree() >= field.degree:
            rep = rep % field.minpoly
        self.field = field
        self.rep = rep

    def _other(self, o) -> "NFElem | None":
        if isinstance(o, NFElem):
            if o.field is not self.field and o.field != self.field:
                raise ValueError("mixing elements of different number fields")
            return o
        if isinstance(o, (int, Fraction)):
            return NFElem(self.field, Poly([coerce(o)]))
        return None

    def __add__(self, o):
        q = self._other(o)
        if q is None:
            return NotImplemented
        return NFElem(self.field, self.rep + q.rep)

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, -self.rep)

    def __sub__(self, o):
        q = self._other(o)
        if q is None:
            return NotImplemented
        return NFElem(self.field, self.rep - q.rep)

    def __rsub__(self, o):
        q = self._other(o)
        if q is None:
            return NotImplemented
        return NFElem(self.field, q.rep - self.rep)

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return NFElem(self.field, self.rep * coerce(o))
        q = self._other(o)
        if q is None:
            return NotImplemented
        return NFElem(self.field, (self.rep * q.rep) % self.field.minpoly)

    __rmul__ = __mul__

    def inverse(self) -> "NFElem":
        if not self.rep:
            raise ZeroDivisionError("inverse of zero in a number field")
        g, s, _ = poly_xgcd(self.rep, self.field.minpoly)
        if g.degree() != 0:
            raise ArithmeticError("minimal polynomial is not irreducible")
        return NFElem(self.field, s)

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return NFElem(self.field, self.rep / coerce(o))
        q = self._other(o)
        if q is None:
            return NotImplemented
        return self * q.inverse()

    def __rtruediv__(self, o):
        q = self._other(o)
        if q is None:
            return NotImplemented
        return q * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = NFElem(self.field, Poly([1]))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, o) -> bool:
        if isinstance(o, NFElem):
            return self.field == o.field and self.rep == o.rep
        if isinstance(o, (int, Fraction)):
            return self.rep == Poly([coerce(o)])
        return NotImplemented

    def __ne__(self, o) -> bool:
        r = self.__eq__(o)
        return r if r is NotImplemented else not r

    def __hash__(self) -> int:
        if self.rep.degree() <= 0:
            return hash(self.rep[0])
        return hash(self.rep)

    def __bool__(self) -> bool:
        return bool(self.rep)

    def is_rational(self) -> bool:
        return self.rep.degree() <= 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.rep[0]

    def to_mpc(self, prec: int = 53):
        """Value under the embedding, correct to about ``prec`` bits.

        The working precision is raised to cover cancellation between the
        coordinates (large coordinates summing to a small value).
        """
        if not self.rep:
            return mpmath.mpc(0)
        extra = 10
        for _ in range(8):
            wp = prec + extra
            with mpmath.workprec(wp):
                t = self.field.root(wp)
                acc = mpmath.mpc(0)
                big = mpmath.mpf(0)
                tp = mpmath.mpc(1)
                for c in self.rep.coeffs:
                    term = (mpmath.mpf(c.numerator) / c.denominator) * tp
                    big = max(big, abs(term))
                    acc += term
                    tp *= t
                if acc != 0:
                    lost = int(mpmath.log(big / abs(acc), 2)) + 1 if big > abs(acc) else 0
                    if lost + 10 <= extra:
                        return +acc
                    extra = lost + 20
                else:
                    extra = 2 * extra + wp
        return +acc

    def __complex__(self) -> complex:
        return complex(self.to_mpc(53))

    def mult_matrix(self) -> list[list[Fraction]]:
        n = self.field.degree
        cols = []
        for j in range(n):
            v = (self.rep * Poly.monomial(j)) % self.field.minpoly
            cols.append([v[i] for i in range(n)])
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def trace(self) -> Fraction:
        m = self.mult_matrix()
        return sum((m[i][i] for i in range(len(m))), Fraction(0))

    def norm(self) -> Fraction:
        from .linalg import det

        return det(self.mult_matrix())

    def quadratic_coords(self) -> tuple[Fraction, Fraction, int]:
        """For a quadratic field: (a, b, d) with value a + b*sqrt(d), d squarefree.

        sqrt(d) is the principal root (positive real or i*sqrt(|d|)); the sign of
        b follows from the embedding.
        """
        if self.field.degree != 2:
            raise ValueError("not a quadratic field")
        _, p, _ = self.field.minpoly.coeffs  # t^2 + p t + q
        q = self.field.minpoly[0]
        disc = p * p - 4 * q
        num, den = disc.numerator, disc.denominator
        # disc = num/den = (k^2 d) with d squarefree integer
        n = num * den
        sign = -1 if n < 0 else 1
        n = abs(n)
        k, d = 1, 1
        f = 2
        while f * f <= n:
            while n % (f * f) == 0:
                n //= f * f
                k *= f
            f += 1
        d = sign * n
        # sqrt(disc) = k/den * sqrt(d)
        scale = Fraction(k, den)
        # t = (-p +- sqrt(disc))/2 ; decide sign from embedding
        with mpmath.workprec(80):
            t = self.field.root(80)
            sq = mpmath.sqrt(mpmath.mpf(d)) if d > 0 else mpmath.mpc(0, mpmath.sqrt(-d))
            plus = (-mpmath.mpf(p.numerator) / p.denominator + float(scale) * sq) / 2
            s = 1 if abs(t - plus) < abs(t - (plus - float(scale) * sq)) else -1
        u, v = self.rep[0], self.rep[1]
        a = u - v * p / 2
        b = v * s * scale / 2
        return a, b, d

    def __repr__(self) -> str:
        return f"NFElem({self})"

    def __str__(self) -> str:
        if self.field.degree == 2:
            a, b, d = self.quadratic_coords()
            if b == 0:
                return str(a)
            root = f"sqrt({d})"
            bs = f"{abs(b)}*{root}" if abs(b) != 1 else root
            if a == 0:
                return ("-" if b < 0 else "") + bs
            return f"{a} {'-' if b < 0 else '+'} {bs}"
        return self.rep.to_str(self.field.name)

    def to_json(self) -> dict:
        d = self.field.to_json()
        d["rep"] = [str(c) for c in self.rep.coeffs]
        return d

    @classmethod
    def from_json(cls, data) -> "NFElem":
        field = NumberField.from_json(data)
        return cls(field, Poly([Fraction(c) for c in data["rep"]]))


@lru_cache(maxsize=None)
def quadratic_field(d: int, positive: bool = True) -> NumberField:
    """Q(sqrt(d)) with generator t = +sqrt(d) (or -sqrt(d))."""
    m = Poly([-d, 0, 1])
    boxes = isolating_boxes(m)
    if d > 0:
        box = boxes[1][0] if positive else boxes[0][0]
    else:
        box = boxes[1][0] if positive else boxes[0][0]
    return NumberField(m, box)


def nf_root_refine(elem: NFElem, target_precision: int):
    """Numeric value of ``elem`` within 2^-target_precision (as an mpc)."""
    with mpmath.workprec(target_precision + 20):
        return elem.to_mpc(target_precision + 20)
