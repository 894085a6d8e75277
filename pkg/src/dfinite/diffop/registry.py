"""Named operators and the JSON operator format."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from ..exact.poly import Poly
from .operator import DiffOp, from_json

X = Poly([0, 1])
M34 = Poly([1, -34, 1])  # x^2 - 34x + 1


def apery3() -> DiffOp:
    """Annihilator of the generating function of the Apery numbers."""
    return DiffOp((Poly([-5, 1]), Poly([1, -112, 7]), X * Poly([3, -153, 6]), X * X * M34))


def dwork2() -> DiffOp:
    """Dwork's order-2 operator whose symmetric square is apery3."""
    return DiffOp((Poly([Fraction(-10, 4), Fraction(1, 4)]), Poly([1, -51, 2]), X * M34))


def eq5() -> DiffOp:
    """dwork2 after removing its y' term: 4x^2 m^2 y'' + (x^4-44x^3+1206x^2-44x+1) y."""
    return DiffOp((Poly([1, -44, 1206, -44, 1]), Poly(), Poly([4]) * X * X * M34 * M34))


def eq7_sym2() -> DiffOp:
    from .symmetric import sym_square

    return sym_square(eq5())


def hypergeom_key(key: str) -> DiffOp:
    """"hypergeom:2F1:1/12,5/12;1" -> d/dx form of the hypergeometric operator."""
    from ..hypergeom import HypergeomParams, hypergeom_operator

    _, _, params = key.split(":", 2)
    upper, _, lower = params.partition(";")
    a = [Fraction(s) for s in upper.split(",") if s.strip()]
    b = [Fraction(s) for s in lower.split(",") if s.strip()]
    return hypergeom_operator(HypergeomParams(tuple(a), tuple(b))).to_diffop()


REGISTRY = {
    "apery3": apery3,
    "dwork2": dwork2,
    "eq5": eq5,
    "eq7-sym2": eq7_sym2,
}


def get_operator(key: str):
    """Registry key, "hypergeom:..." key, or path to a JSON operator file."""
    if key in REGISTRY:
        return REGISTRY[key]()
    if key.startswith("hypergeom:"):
        return hypergeom_key(key)
    p = Path(key)
    if p.exists():
        return from_json(json.loads(p.read_text()))
    raise KeyError(f"unknown operator {key!r}; known: {sorted(REGISTRY)} or hypergeom:pFq:a,..;b,..")


def dump_registry() -> dict:
    return {k: f().to_json() for k, f in REGISTRY.items()}
