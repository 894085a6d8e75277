"""First-order systems Y' = A Y over Q(x) and their cyclic-vector operators."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ..exact.linalg import rref
from ..exact.poly import Poly
from ..exact.ratfunc import RatFunc, as_ratfunc


class NotCyclicError(ArithmeticError):
    pass


@dataclass(frozen=True)
class CompanionSystem:
    """Y' = A Y (derivation "d/dx") or delta Y = A Y (derivation "delta")."""

    matrix: tuple  # tuple of tuples of RatFunc
    derivation: str = "d/dx"

    @property
    def size(self) -> int:
        return len(self.matrix)

    @classmethod
    def from_operator(cls, L) -> "CompanionSystem":
        """Companion matrix on (y, y', ..., y^(n-1))."""
        return cls(_companion(L.coeffs), "d/dx")

    @classmethod
    def from_delta(cls, L) -> "CompanionSystem":
        """Companion matrix on (y, delta y, ..., delta^(n-1) y)."""
        return cls(_companion(L.coeffs), "delta")

    def entry(self, i: int, j: int) -> RatFunc:
        return self.matrix[i][j]

    def at(self, x0):
        """Evaluate all entries at a point (entries must be finite there)."""
        return [[e(x0) for e in row] for row in self.matrix]

    def pullback(self, phi: RatFunc) -> "CompanionSystem":
        """Y(phi(x)) satisfies Y' = phi'(x) A(phi(x)) Y (d/dx systems only)."""
        if self.derivation != "d/dx":
            raise ValueError("pullback is defined on d/dx systems")
        phi = as_ratfunc(phi)
        dphi = phi.derivative()
        return CompanionSystem(tuple(tuple(e(phi) * dphi for e in row) for row in self.matrix), "d/dx")

    def to_operator(self, vector=None, seed: int = 0):
        """Scalar operator annihilating u = c . Y for a cyclic row vector c.

        Uses c = e_1 first; if it is not cyclic, tries seeded random rational
        vectors.
        """
        from .operator import DiffOp

        n = self.size
        candidates = []
        if vector is not None:
            candidates.append([as_ratfunc(v) for v in vector])
        else:
            candidates.append([as_ratfunc(int(i == 0)) for i in range(n)])
            rng = random.Random(seed)
            for _ in range(8):
                candidates.append([as_ratfunc(Fraction(rng.randint(-9, 9))) for _ in range(n)])
        for c in candidates:
            try:
                coeffs = self._cyclic_relation(c)
            except NotCyclicError:
                continue
            if self.derivation == "delta":
                return _delta_from_ratfuncs(coeffs)
            return DiffOp.from_ratfuncs(coeffs)
        raise NotCyclicError("no cyclic vector found")

    def _derive_row(self, v):
        """Row vector v -> v' + v A (or delta v + v A)."""
        n = self.size
        out = []
        for j in range(n):
            acc = v[j].derivative()
            if self.derivation == "delta":
                acc = acc * RatFunc.x()
            for i in range(n):
                a = self.matrix[i][j]
                if a and v[i]:
                    acc = acc + v[i] * a
            out.append(acc)
        return out

    def _cyclic_relation(self, c):
        n = self.size
        rows = [c]
        for _ in range(n):
            rows.append(self._derive_row(rows[-1]))
        # solve sum_{k<n} b_k rows[k] = rows[n]: columns are the rows
        mat = [[rows[k][j] for k in range(n)] + [rows[n][j]] for j in range(n)]
        red, piv = rref(mat, n + 1)
        if piv != list(range(n)):
            raise NotCyclicError("vector is not cyclic")
        b = [red[k][n] for k in range(n)]
        return [-bk for bk in b] + [as_ratfunc(1)]


def _companion(coeffs) -> tuple:
    n = len(coeffs) - 1
    lead = coeffs[-1]
    zero, one = as_ratfunc(0), as_ratfunc(1)
    rows = []
    for i in range(n - 1):
        rows.append(tuple(one if j == i + 1 else zero for j in range(n)))
    rows.append(tuple(-RatFunc(coeffs[j], lead) for j in range(n)))
    return tuple(rows)


def _delta_from_ratfuncs(rfs):
    from functools import reduce

    from ..exact.poly import poly_gcd
    from .operator import DeltaOp

    rfs = [as_ratfunc(r) for r in rfs]
    den = reduce(lambda a, b: (a * b) // poly_gcd(a, b), (r.den for r in rfs), Poly([1]))
    return DeltaOp(tuple(r.num * (den // r.den) for r in rfs))
