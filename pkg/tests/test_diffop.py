from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from dfinite.diffop.gauge import remove_subleading_derivative, riccati_operator
from dfinite.diffop.operator import DiffOp, from_json
from dfinite.diffop.points import (
    AlgebraicPoint,
    indicial_polynomial,
    is_singular_at_infinity,
    singular_points,
)
from dfinite.diffop.pullback import at_infinity, pullback
from dfinite.diffop.recurrence import coefficient_recurrence
from dfinite.diffop.registry import apery3, dump_registry, dwork2, eq5, eq7_sym2, get_operator
from dfinite.diffop.symmetric import sym_square, sym_square_root
from dfinite.exact.poly import Poly
from dfinite.exact.ratfunc import RatFunc, parse_ratfunc

X = sympy.Symbol("x")


def sym(r: RatFunc):
    num = sum(sympy.Rational(c.numerator, c.denominator) * X**i for i, c in enumerate(r.num.coeffs))
    den = sum(sympy.Rational(c.numerator, c.denominator) * X**i for i, c in enumerate(r.den.coeffs))
    return num / den


def monic_sympy(L: DiffOp):
    lead = sym(RatFunc(L.leading))
    return [sympy.simplify(sym(RatFunc(c)) / lead) for c in L.coeffs]


def sym_square_oracle(L: DiffOp):
    """y''' + 3p y'' + (2p^2 + p' + 4q) y' + (4pq + 2q') y for y'' + p y' + q y."""
    q, p, _ = monic_sympy(L)
    return [sympy.simplify(e) for e in (4 * p * q + sympy.diff(q, X) * 2,
                                         2 * p**2 + sympy.diff(p, X) + 4 * q, 3 * p, sympy.Integer(1))]


def pullback_oracle(L: DiffOp, phi):
    """Monic coefficients of the order-2 operator for y(x) = f(phi(x))."""
    q, p, _ = monic_sympy(L)
    d1, d2 = sympy.diff(phi, X), sympy.diff(phi, X, 2)
    qq, pp = q.subs(X, phi), p.subs(X, phi)
    # y'' = f'' phi'^2 + f' phi'' with f'' = -p f' - q f
    return [sympy.simplify(e) for e in (qq * d1**2, pp * d1 - d2 / d1, sympy.Integer(1))]


def assert_matches(L: DiffOp, ref):
    got = monic_sympy(L)
    assert len(got) == len(ref)
    for g, r in zip(got, ref):
        assert sympy.simplify(g - r) == 0


def test_registry_operators():
    assert apery3().order == 3 and dwork2().order == 2 and eq5().order == 2
    assert eq7_sym2().order == 3
    assert get_operator("eq5") == eq5()
    H = get_operator("hypergeom:2F1:1/2,1/2;1")
    assert H.order == 2
    with pytest.raises(KeyError):
        get_operator("nope")
    dumped = dump_registry()
    assert from_json(dumped["apery3"]).equivalent(apery3())


def test_sym_square_of_dwork_is_apery():
    assert sym_square(dwork2()).equivalent(apery3())


@pytest.mark.parametrize("L", [dwork2(), eq5(), get_operator("hypergeom:2F1:1/3,2/3;1")])
def test_sym_square_matches_closed_form(L):
    assert_matches(sym_square(L), sym_square_oracle(L))


def test_sym_square_root_recovers_normal_form():
    root = sym_square_root(apery3())
    r, _ = remove_subleading_derivative(dwork2())
    assert root.r == r
    assert sym_square(root.operator).equivalent(sym_square(riccati_operator(r)))
    # a generic order-3 operator is not a symmetric square
    assert sym_square_root(DiffOp((Poly([0, 0, 1]), Poly([0, 1]), Poly([1]), Poly([0, 1])))) is None


def test_normal_form_of_dwork():
    r, gamma = remove_subleading_derivative(dwork2())
    m = Poly([1, -34, 1])
    assert -r == RatFunc(Poly([1, -44, 1206, -44, 1]), Poly([4]) * Poly([0, 0, 1]) * m * m)
    assert str(gamma) == "x^(-1/2)*(x^2 - 34*x + 1)^(-1/4)"
    assert riccati_operator(r).equivalent(eq5())


@pytest.mark.parametrize("phi", ["x^2", "x/(1 - x)", "4*x*(1 - x)", "(x^2 + 1)/(x - 2)"])
def test_pullback_matches_chain_rule(phi):
    L = get_operator("hypergeom:2F1:1/12,5/12;1")
    lam = parse_ratfunc(phi)
    assert_matches(pullback(L, lam), pullback_oracle(L, sym(lam)))


small_polys = st.lists(st.integers(-3, 3), min_size=2, max_size=3).map(Poly).filter(lambda p: p.degree() >= 1)


@given(small_polys, small_polys)
def test_pullback_composition_law(a, b):
    L = get_operator("hypergeom:2F1:1/2,1/3;1")
    phi, psi = RatFunc(a), RatFunc(b)
    lhs = pullback(pullback(L, phi), psi)
    rhs = pullback(L, phi.compose(psi))
    assert lhs.equivalent(rhs)


def test_pullback_rejects_constant():
    with pytest.raises(ValueError):
        pullback(eq5(), RatFunc(Poly([3])))


def test_at_infinity_of_apery_is_regular_singular():
    Linf = at_infinity(dwork2())
    P = indicial_polynomial(Linf, AlgebraicPoint.rational(0))
    assert P.degree() == 2
    assert is_singular_at_infinity(dwork2())


def test_singular_points_of_eq5():
    pts = singular_points(eq5())
    assert [p.kind for p in pts] == ["rational", "algebraic", "algebraic", "infinity"]
    assert pts[0].value == 0
    assert pts[1].minpoly == Poly([1, -34, 1])


def apery(n):
    return sum(comb(n, k) ** 2 * comb(n + k, k) ** 2 for k in range(n + 1))


def test_apery_recurrence_against_binomial_sum():
    rec = coefficient_recurrence(apery3())
    seq = rec.terms(30)
    assert seq == [apery(n) for n in range(30)]
    assert rec.check([Fraction(apery(n)) for n in range(30)])


@given(st.lists(st.integers(-4, 4), min_size=2, max_size=4))
def test_apply_annihilates_polynomial_solutions(cs):
    # D^k kills polynomials of degree < k
    p = Poly(cs)
    k = max(p.degree() + 1, 1)
    L = DiffOp(tuple([Poly()] * k + [Poly([1])]))
    assert not L.apply(p)
