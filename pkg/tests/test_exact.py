from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from dfinite.exact.factor import factor_rational, irreducible_over_q, rational_roots, squarefree_decomposition
from dfinite.exact.linalg import det, rref, solve
from dfinite.exact.numberfield import quadratic_field
from dfinite.exact.poly import Poly, poly_gcd, poly_xgcd, resultant
from dfinite.exact.ratfunc import RatFunc, parse_ratfunc

X = sympy.Symbol("x")

small_int = st.integers(-6, 6)
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)
polys = st.lists(fractions, min_size=1, max_size=6).map(Poly)
nonzero_polys = polys.filter(lambda p: bool(p))


def to_sympy(p: Poly):
    return sum(sympy.Rational(c.numerator, c.denominator) * X**i for i, c in enumerate(p.coeffs))


def test_poly_basic_arithmetic():
    p = Poly([1, 2, 1])
    q = Poly([1, 1])
    assert p // q == q
    assert p % q == Poly()
    assert p.derivative() == Poly([2, 2])
    assert p(3) == 16
    assert p.to_str() == "x^2 + 2*x + 1"


@given(nonzero_polys, nonzero_polys)
def test_divmod_identity(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree() < b.degree() or not r


@given(nonzero_polys, nonzero_polys)
def test_xgcd_bezout(a, b):
    g, s, t = poly_xgcd(a, b)
    assert s * a + t * b == g
    assert not a % g and not b % g


@given(nonzero_polys, nonzero_polys)
def test_gcd_matches_sympy(a, b):
    g = poly_gcd(a, b)
    ref = sympy.Poly(sympy.gcd(to_sympy(a), to_sympy(b)), X)
    assert g.degree() == ref.degree()


def test_resultant_of_shared_root_vanishes():
    assert resultant(Poly([-1, 1]), Poly([-1, 0, 1])) == 0
    assert resultant(Poly([-2, 1]), Poly([-1, 0, 1])) != 0


@given(st.lists(st.lists(small_int, min_size=2, max_size=4), min_size=1, max_size=3))
def test_factorization_product_and_sympy(raw):
    p = Poly([1])
    for cs in raw:
        q = Poly(cs)
        if q.degree() >= 1:
            p = p * q
    if p.degree() < 1:
        return
    facs = factor_rational(p)
    prod = Poly([1])
    for f, m in facs:
        assert irreducible_over_q(f)
        prod = prod * f**m
    assert prod == p.monic()
    ref = sympy.factor_list(to_sympy(p))[1]
    assert sorted((sympy.degree(f, X), m) for f, m in ref if sympy.degree(f, X) > 0) == \
        sorted((f.degree(), m) for f, m in facs)


def test_factor_known_cases():
    # x^4 + 1 is irreducible over Q but splits mod every prime
    assert irreducible_over_q(Poly([1, 0, 0, 0, 1]))
    facs = factor_rational(Poly([-1, 0, 0, 0, 1]))
    assert [f.degree() for f, _ in facs] == [1, 1, 2]
    assert rational_roots(Poly([2, -3, 1])) == [(1, 1), (2, 1)]
    sq = squarefree_decomposition(Poly([1, 1]) ** 3 * Poly([0, 1]))
    assert sorted(m for _, m in sq) == [1, 3]


def test_ratfunc_reduces_and_parses():
    r = RatFunc(Poly([-1, 0, 1]), Poly([-1, 1]))
    assert r == RatFunc(Poly([1, 1]))
    assert parse_ratfunc("(x^2 - 1)/(x - 1)") == r
    assert parse_ratfunc("1/2*x + 3") == RatFunc(Poly([3, Fraction(1, 2)]))
    assert parse_ratfunc("x^-1") == RatFunc(Poly([1]), Poly([0, 1]))
    with pytest.raises(ValueError):
        parse_ratfunc("sin(x)")


@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_ratfunc_derivative_quotient_rule(a, b, c):
    f = RatFunc(a, b)
    g = RatFunc(c)
    assert (f * g).derivative() == f.derivative() * g + f * g.derivative()


def test_linear_algebra_against_sympy():
    m = [[Fraction(2), Fraction(1), Fraction(-1)], [Fraction(-3), Fraction(-1), Fraction(2)],
         [Fraction(-2), Fraction(1), Fraction(2)]]
    assert det(m) == sympy.Matrix(m).det()
    assert solve(m, [8, -11, -3]) == [2, 3, -1]
    red, piv = rref([row[:] for row in m])
    assert piv == [0, 1, 2]


def test_quadratic_field_arithmetic():
    K = quadratic_field(2)
    s = K.gen()
    assert s * s == 2
    xp, xm = 17 + 12 * s, 17 - 12 * s
    assert xp * xm == 1
    assert xp + xm == 34
    with mpmath.workprec(100):
        assert abs(xp.to_mpc(100) - (17 + 12 * mpmath.sqrt(2))) < mpmath.mpf(2) ** -90
    assert (1 / xp) == xm
    assert xp.norm() == 1 and xp.trace() == 34


@given(fractions, fractions, fractions, fractions)
def test_number_field_field_axioms(a, b, c, d):
    K = quadratic_field(2)
    s = K.gen()
    u, v = a + b * s, c + d * s
    with mpmath.workprec(80):
        assert abs((u * v).to_mpc(80) - u.to_mpc(80) * v.to_mpc(80)) < 1e-20
    if u != 0:
        assert (v / u) * u == v
