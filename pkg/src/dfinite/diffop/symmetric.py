"""Symmetric squares of order-2 operators and their inverse construction."""

from __future__ import annotations

from dataclasses import dataclass

from ..exact.ratfunc import RatFunc, as_ratfunc
from .gauge import GaugeFactor, gauge_from_logderivative, gauge_transform, riccati_operator
from .operator import DiffOp
from .system import CompanionSystem


def sym_square_system(L: DiffOp) -> CompanionSystem:
    """System for (y1 y2, y1' y2 + y1 y2', y1' y2') with y'' = -a1 y' - a0 y."""
    if L.order != 2:
        raise ValueError("symmetric square needs an order-2 operator")
    p0, p1, p2 = L.coeffs
    a0, a1 = RatFunc(p0, p2), RatFunc(p1, p2)
    z, one = as_ratfunc(0), as_ratfunc(1)
    m = (
        (z, one, z),
        (-2 * a0, -a1, as_ratfunc(2)),
        (z, -a0, -2 * a1),
    )
    return CompanionSystem(m, "d/dx")


def sym_square(L: DiffOp) -> DiffOp:
    """Order-3 operator annihilating all products of two solutions of L."""
    return sym_square_system(L).to_operator()


@dataclass(frozen=True)
class SymSquareRoot:
    """L3 = gauge * sym_square(operator) projectively, operator being z'' = r z."""

    r: RatFunc
    operator: DiffOp
    gauge: GaugeFactor


def sym_square_root(L3: DiffOp) -> SymSquareRoot | None:
    """Recognize L3 as a gauge-transformed symmetric square.

    After w = z / gamma with gamma'/gamma = -a2/3 the operator reads
    w''' + c1 w' + c0 w; it is a symmetric square iff c0 = c1'/2, and then
    w is a product of solutions of y'' = r y with r = -c1/4.  Solutions of L3
    are gamma times such products.
    """
    if L3.order != 3:
        raise ValueError("order-3 operator expected")
    a2 = RatFunc(L3.coeffs[2], L3.coeffs[3])
    g = -a2 / 3
    N = gauge_transform(L3, g)
    c = [RatFunc(p, N.leading) for p in N.coeffs]
    c0, c1 = c[0], c[1]
    if c0 != c1.derivative() / 2:
        return None
    r = -c1 / 4
    return SymSquareRoot(r, riccati_operator(r), gauge_from_logderivative(g))
