"""Recurrences for power-series coefficients, and series at ordinary points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd

from ..exact.poly import Poly
from .operator import as_diffop
from .points import AlgebraicPoint, is_ordinary, local_delta_form


@dataclass(frozen=True)
class Recurrence:
    """sum_k coeffs[k](n) * a(n + 1 - k) = 0 for all n (a(m) = 0 for m < 0).

    coeffs[0] is the indicial polynomial shifted to n + 1.
    """

    coeffs: tuple

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def residual(self, seq, n: int):
        acc = Fraction(0)
        for k, c in enumerate(self.coeffs):
            m = n + 1 - k
            if 0 <= m < len(seq):
                acc = acc + c(n) * seq[m]
        return acc

    def check(self, seq) -> bool:
        """True when seq satisfies the recurrence wherever all terms are known."""
        return all(self.residual(seq, n) == 0 for n in range(-1, len(seq) - 1))

    def terms(self, N: int, initial: dict | None = None) -> list:
        """First N terms; ``initial`` fixes a(m) wherever the leading
        coefficient vanishes (default a(0) = 1, others 0)."""
        initial = {0: Fraction(1)} if initial is None else initial
        seq: list = []
        for m in range(N):
            n = m - 1
            lead = self.coeffs[0](n)
            if lead == 0:
                seq.append(Fraction(initial.get(m, 0)))
                continue
            acc = Fraction(0)
            for k in range(1, len(self.coeffs)):
                j = n + 1 - k
                if 0 <= j < len(seq):
                    acc = acc + self.coeffs[k](n) * seq[j]
            seq.append(-acc / lead)
        return seq

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            shift = 1 - k
            idx = "n" if shift == 0 else (f"n+{shift}" if shift > 0 else f"n-{-shift}")
            parts.append(f"({c.to_str('n')})*a({idx})")
        return " + ".join(parts) + " = 0"


def coefficient_recurrence(L) -> Recurrence:
    """Recurrence for series coefficients at 0 from the delta-form of L."""
    F = local_delta_form(as_diffop(L), AlgebraicPoint.rational(0))
    coeffs = [P.shift(1 - k) for k, P in enumerate(F.parts)]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if all(isinstance(c, Fraction) for p in coeffs for c in p.coeffs):
        den = reduce(lambda a, b: a * b // gcd(a, b), (p.denominator_lcm() for p in coeffs if p), 1)
        ints = [[int(c * den) for c in p.coeffs] for p in coeffs]
        g = reduce(gcd, (v for row in ints for v in row), 0)
        lead = next(v for v in reversed(ints[0]) if v)
        if lead < 0:
            g = -g
        coeffs = [Poly([Fraction(v, g) for v in row]) for row in ints]
    return Recurrence(tuple(coeffs))


def series_solutions_at_ordinary(L, x0, N: int, prec: int = 128) -> list[list]:
    """``order`` truncated series at an ordinary point; the j-th has
    y^(i)(x0) = delta_ij * i!, i.e. Taylor coefficients starting e_j."""
    from ..frobenius import local_basis

    L = as_diffop(L)
    if not isinstance(x0, AlgebraicPoint):
        x0 = AlgebraicPoint.rational(x0)
    if not is_ordinary(L, x0):
        raise ValueError(f"{x0} is a singular point")
    B = local_basis(L, x0, N, prec)
    out = []
    for s in B.solutions:
        shift = int(s.exponent)
        series = [Fraction(0)] * shift + [row[0] for row in s.coeffs]
        out.append(series[:N])
    return out
