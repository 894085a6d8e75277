from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dfinite.exact.poly import Poly
from dfinite.exact.ratfunc import parse_ratfunc
from dfinite.hypergeom import (
    HypergeomParams,
    hypergeom_eval,
    hypergeom_operator,
    hypergeom_series,
    pullback_hypergeom,
)

params = st.fractions(min_value=-3, max_value=3, max_denominator=12)
lower = params.filter(lambda b: not (b.denominator == 1 and b <= 0))


def test_series_first_terms():
    P = HypergeomParams((Fraction(1, 12), Fraction(5, 12)), (1,))
    assert hypergeom_series(P, 3) == [1, Fraction(5, 144), Fraction(1105, 82944)]
    assert P.key() == "hypergeom:2F1:1/12,5/12;1"


def test_rejects_nonpositive_integer_lower():
    with pytest.raises(ValueError):
        HypergeomParams((1,), (-2,))


@given(params, params, lower)
def test_operator_annihilates_series(a, b, c):
    P = HypergeomParams((a, b), (c,))
    L = hypergeom_operator(P).to_diffop()
    N = 12
    cs = hypergeom_series(P, N)
    # apply L to the truncated series: all coefficients below N - 1 vanish
    out = L.apply(Poly(cs))
    assert all(out.num[n] == 0 for n in range(N - 1)) and out.den.degree() == 0


@given(params, params, lower)
def test_eval_matches_mpmath(a, b, c):
    P = HypergeomParams((a, b), (c,))
    with mpmath.workprec(100):
        x = mpmath.mpf("0.3")
        ref = mpmath.hyp2f1(mpmath.mpf(a.numerator) / a.denominator, mpmath.mpf(b.numerator) / b.denominator,
                            mpmath.mpf(c.numerator) / c.denominator, x)
        assert abs(hypergeom_eval(P, x, prec=100) - ref) < mpmath.mpf(10) ** -25 * max(1, abs(ref))


def test_3f2_eval_matches_mpmath():
    P = HypergeomParams((Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)), (1, 1))
    with mpmath.workprec(100):
        x = mpmath.mpf("0.25")
        ref = mpmath.hyp3f2(0.5, 0.5, 0.5, 1, 1, x)
        assert abs(hypergeom_eval(P, x, prec=100) - ref) < 1e-14


@pytest.mark.parametrize("lam", ["x^2", "4*x*(1 - x)", "x/(x - 1)"])
def test_pullback_annihilates_composition(lam):
    P = HypergeomParams((Fraction(1, 12), Fraction(5, 12)), (1,))
    L = pullback_hypergeom(P, parse_ratfunc(lam))
    f = parse_ratfunc(lam)
    with mpmath.workprec(120):
        def y(x):
            return mpmath.hyp2f1(mpmath.mpf(1) / 12, mpmath.mpf(5) / 12, 1, f(x))

        x0 = mpmath.mpf("0.1")
        derivs = [mpmath.diff(y, x0, k) for k in range(L.order + 1)]
        val = sum(c(x0) * d for c, d in zip(L.coeffs, derivs))
        scale = max(abs(c(x0) * d) for c, d in zip(L.coeffs, derivs))
        assert abs(val) < mpmath.mpf(10) ** -20 * scale


def test_constant_pullback_is_first_order():
    L = pullback_hypergeom(HypergeomParams((Fraction(1, 2),), ()), parse_ratfunc("3"))
    assert L.order == 1
