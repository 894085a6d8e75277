"""Generalized hypergeometric series, their operators and rational pullbacks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .diffop.operator import DeltaOp, DiffOp
from .diffop.pullback import pullback
from .exact.bigcomplex import to_mpc
from .exact.numberfield import NFElem
from .exact.poly import Poly
from .exact.ratfunc import as_ratfunc


def _is_nonpositive_integer(b) -> bool:
    if isinstance(b, NFElem):
        if not b.is_rational():
            return False
        b = b.as_fraction()
    b = Fraction(b)
    return b.denominator == 1 and b <= 0


@dataclass(frozen=True)
class HypergeomParams:
    upper: tuple = ()
    lower: tuple = ()

    def __post_init__(self):
        up = tuple(a if isinstance(a, NFElem) else Fraction(a) for a in self.upper)
        lo = tuple(b if isinstance(b, NFElem) else Fraction(b) for b in self.lower)
        for b in lo:
            if _is_nonpositive_integer(b):
                raise ValueError(f"lower parameter {b} is a non-positive integer")
        object.__setattr__(self, "upper", up)
        object.__setattr__(self, "lower", lo)

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    def key(self) -> str:
        return f"hypergeom:{self.p}F{self.q}:" + ",".join(map(str, self.upper)) + ";" + ",".join(map(str, self.lower))


def hypergeom_operator(params: HypergeomParams) -> DeltaOp:
    """delta (delta + b_1 - 1) ... (delta + b_q - 1) - x (delta + a_1) ... (delta + a_p)."""
    P0 = Poly([0, 1])
    for b in params.lower:
        P0 = P0 * Poly([b - 1, 1])
    P1 = Poly([1])
    for a in params.upper:
        P1 = P1 * Poly([a, 1])
    return DeltaOp.from_x_theta({0: P0, 1: -P1})


def hypergeom_series(params: HypergeomParams, N: int) -> list:
    """First N coefficients (a)_n ... / ((1)_n (b)_n ...)."""
    out = []
    c = Fraction(1)
    for n in range(N):
        out.append(c)
        num = Fraction(1)
        for a in params.upper:
            num = (a + n) * num
        den = Fraction(n + 1)
        for b in params.lower:
            den = (b + n) * den
        c = c * num / den
    return out


def hypergeom_eval(params: HypergeomParams, x, N: int | None = None, prec: int = 128):
    """Numeric value of the series at x (|x| < 1 for p = q + 1), summed until
    terms drop below 2^-prec or N terms."""
    with mpmath.workprec(prec + 20):
        x = mpmath.mpmathify(x)
        up = [to_mpc(a) for a in params.upper]
        lo = [to_mpc(b) for b in params.lower]
        term = mpmath.mpc(1)
        acc = mpmath.mpc(0)
        eps = mpmath.mpf(2) ** (-prec - 10)
        n = 0
        while True:
            acc += term
            if N is not None and n + 1 >= N:
                break
            num = mpmath.mpc(1)
            for a in up:
                num *= a + n
            den = mpmath.mpf(n + 1)
            for b in lo:
                den *= b + n
            term = term * num / den * x
            n += 1
            if term == 0 or (N is None and abs(term) < eps * abs(acc) and n > 5):
                if term != 0:
                    acc += term
                break
            if n > 100000:
                raise ValueError("series does not converge fast enough")
        return +acc


def pullback_hypergeom(params: HypergeomParams, lam) -> DiffOp:
    """Operator annihilating pFq[a; b; lam(x)]; constant lam gives y' = 0."""
    lam = as_ratfunc(lam)
    if not lam.derivative():
        return DiffOp((Poly(), Poly([1])))
    return pullback(hypergeom_operator(params).to_diffop(), lam)
