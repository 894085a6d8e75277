from fractions import Fraction
from math import comb

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dfinite.diffop.points import AlgebraicPoint, indicial_polynomial, singular_points
from dfinite.diffop.registry import apery3, dwork2, eq5, get_operator
from dfinite.exact.bigcomplex import to_mpc
from dfinite.exact.poly import Poly
from dfinite.frobenius import (
    BranchSpec,
    Constraint,
    FrobeniusError,
    distinguished_solution,
    indicial_roots,
    local_basis,
    residual_orders,
)
from dfinite.hypergeom import HypergeomParams, hypergeom_series

ZERO = AlgebraicPoint.rational(0)


def xpm():
    pts = [p for p in singular_points(eq5()) if p.kind == "algebraic"]
    return pts[0], pts[1]


def test_indicial_at_zero_is_double_half():
    P = indicial_polynomial(eq5(), ZERO)
    assert P == Poly([Fraction(1, 4), -1, 1])
    R = indicial_roots(P)
    assert R.exact and R.roots == [(Fraction(1, 2), 2)]


def test_log_solution_at_zero():
    B = local_basis(eq5(), ZERO, 10)
    assert B.exponents == [Fraction(1, 2), Fraction(1, 2)]
    assert [s.log_degree for s in B.solutions] == [0, 1]
    # the log solution is nu*log(t) + (series without a t^(1/2) term)
    w = B.solutions[1]
    assert w.coefficient(0, 1) == 1 and w.coefficient(0, 0) == 0


def apery_gf(x, N=300):
    return sum(mpmath.mpf(sum(comb(n, k) ** 2 * comb(n + k, k) ** 2 for k in range(n + 1))) * x**n
               for n in range(N))


def test_nu_matches_apery_generating_function():
    # nu = x^(1/2) (x^2 - 34x + 1)^(1/4) sqrt(A(x)) with A the Apery generating function
    B = local_basis(eq5(), ZERO, 120, 128)
    with mpmath.workprec(128):
        x = mpmath.mpf(1) / 100
        ref = mpmath.sqrt(x) * (x * x - 34 * x + 1) ** (mpmath.mpf(1) / 4) * mpmath.sqrt(apery_gf(x))
        val = B.solutions[0].evaluate(x, prec=128)[0]
        assert abs(val - ref) < mpmath.mpf(10) ** -30


def test_local_exponents_at_x_plus_minus():
    xm, xp = xpm()
    for pt in (xm, xp):
        B = local_basis(eq5(), pt, 6)
        assert B.exponents == [Fraction(1, 4), Fraction(3, 4)]
        assert all(s.log_degree == 0 for s in B.solutions)


def test_galois_conjugate_bases():
    # x+ and x- share the minimal polynomial, so conjugate coefficients have equal representations
    xm, xp = xpm()
    Bm, Bp = local_basis(eq5(), xm, 12), local_basis(eq5(), xp, 12)
    for sm, sp in zip(Bm.solutions, Bp.solutions):
        for n in range(12):
            cm, cp = sm.coefficient(n), sp.coefficient(n)
            rm = cm.rep if hasattr(cm, "rep") else Poly([cm])
            rp = cp.rep if hasattr(cp, "rep") else Poly([cp])
            assert rm == rp


@pytest.mark.parametrize("key,pt", [("eq5", "0"), ("apery3", "0"), ("dwork2", "0"),
                                    ("eq5", "root:1,-34,1:~0.03"), ("hypergeom:2F1:1/2,1/2;1", "1")])
def test_residual_vanishes_to_truncation_order(key, pt):
    L = get_operator(key)
    B = local_basis(L, AlgebraicPoint.parse(pt), 15)
    for s in B.solutions:
        res = residual_orders(L, s)
        # rows below N are exact; the last rows feel the truncation
        for row in res[: s.N - L.order]:
            assert all(v == 0 for v in row)


def test_hypergeometric_basis_matches_series():
    P = HypergeomParams((Fraction(1, 12), Fraction(5, 12)), (Fraction(1),))
    L = get_operator("hypergeom:2F1:1/12,5/12;1")
    B = local_basis(L, ZERO, 12)
    f = B.solutions[0]
    assert f.exponent == 0 and f.log_degree == 0
    assert f.series() == hypergeom_series(P, 12)


def test_evaluate_against_mpmath_hyp2f1():
    L = get_operator("hypergeom:2F1:1/3,2/3;3/2")
    B = local_basis(L, ZERO, 80, 128)
    with mpmath.workprec(128):
        x = mpmath.mpf("0.2")
        ref = mpmath.hyp2f1(mpmath.mpf(1) / 3, mpmath.mpf(2) / 3, mpmath.mpf(3) / 2, x)
        f = next(s for s in B.solutions if s.exponent == 0)
        assert abs(f.evaluate(x, prec=128)[0] - ref) < mpmath.mpf(10) ** -30
        # the other solution is x^(-1/2) times a 2F1
        g = next(s for s in B.solutions if s.exponent != 0)
        ref2 = x ** (-mpmath.mpf(1) / 2) * mpmath.hyp2f1(-mpmath.mpf(1) / 6, mpmath.mpf(1) / 6, mpmath.mpf(1) / 2, x)
        assert abs(g.evaluate(x, prec=128)[0] / g.coefficient(0) - ref2) < mpmath.mpf(10) ** -30


def test_beta_is_the_distinguished_solution():
    b = distinguished_solution(dwork2(), ZERO, [Constraint(0, 0, 1), Constraint(0, 1, 0)], 8)
    assert b.log_degree == 0
    assert b.series()[:2] == [1, Fraction(5, 2)]
    with pytest.raises(FrobeniusError):
        distinguished_solution(dwork2(), ZERO, [Constraint(0, 0, 1)], 8)


def test_branch_spec_log():
    lower = BranchSpec(-float(mpmath.pi) / 2)
    assert mpmath.im(lower.log(-1)) == pytest.approx(-float(mpmath.pi))
    assert mpmath.im(BranchSpec().log(-1)) == pytest.approx(float(mpmath.pi))


def test_numeric_mode_agrees_with_exact():
    xm, _ = xpm()
    Be = local_basis(eq5(), xm, 30, 128)
    Bn = local_basis(eq5(), xm, 30, 128, numeric=True)
    with mpmath.workprec(128):
        for se, sn in zip(Be.solutions, Bn.solutions):
            for n in range(30):
                assert abs(to_mpc(se.coefficient(n), 128) - sn.coefficient(n)) < mpmath.mpf(2) ** -100 * \
                    max(1, abs(sn.coefficient(n)))


@given(st.fractions(min_value=Fraction(-3), max_value=Fraction(3), max_denominator=6),
       st.fractions(min_value=Fraction(1, 6), max_value=Fraction(3), max_denominator=6))
def test_hypergeometric_exponents_at_zero(a, b):
    # exponents of the 2F1 operator at 0 are 0 and 1 - c
    c = b if b.denominator != 1 else b + Fraction(1, 2)
    L = get_operator(f"hypergeom:2F1:{a},1/3;{c}")
    R = indicial_roots(indicial_polynomial(L, ZERO))
    assert sorted(r for r, _ in R.roots) == sorted({Fraction(0), 1 - c})


def test_apery3_at_zero_is_maximally_unipotent():
    B = local_basis(apery3(), ZERO, 6)
    assert [s.log_degree for s in B.solutions] == [0, 1, 2]
