"""Pullbacks of operators by rational maps, through companion systems."""

from __future__ import annotations

from ..exact.ratfunc import RatFunc, as_ratfunc
from .operator import DiffOp, as_diffop


def pullback(L, phi, seed: int = 0) -> DiffOp:
    """Operator annihilating y(phi(x)) for every solution y of L.

    Substitutes into the companion system (Y(phi) solves Y' = phi' A(phi) Y)
    and returns to a scalar operator by a cyclic vector.
    """
    L = as_diffop(L)
    phi = as_ratfunc(phi)
    if not phi.derivative():
        raise ValueError("pullback by a constant map")
    if phi == RatFunc.x():
        return L
    return L.to_companion().pullback(phi).to_operator(seed=seed)


def at_infinity(L) -> DiffOp:
    """The operator in t = 1/x."""
    return pullback(as_diffop(L), RatFunc(1, RatFunc.x().num))

