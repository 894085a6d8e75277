from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dfinite.continuation import (
    ClearanceError,
    Path,
    auto_path,
    circle_path,
    connect_to_local,
    lasso,
    monodromy,
    seed_from_local,
    to_taylor_frame,
    transition,
)
from dfinite.diffop.operator import DiffOp
from dfinite.diffop.points import AlgebraicPoint, singular_points
from dfinite.diffop.registry import dwork2, eq5, get_operator
from dfinite.exact.poly import Poly
from dfinite.frobenius import TrustRadiusError, local_basis

PREC = 128
TOL = mpmath.mpf(2) ** (-PREC // 2)

# y'' + y = 0
HARMONIC = DiffOp((Poly([1]), Poly(), Poly([1])))


def max_dev(A, B):
    return max(abs(A[i, j] - B[i, j]) for i in range(A.rows) for j in range(A.cols))


def test_harmonic_oscillator_rotation():
    T = transition(HARMONIC, Path.of(0, "1.5"), PREC)
    with mpmath.workprec(PREC):
        h = mpmath.mpf("1.5")
        ref = mpmath.matrix([[mpmath.cos(h), mpmath.sin(h)], [-mpmath.sin(h), mpmath.cos(h)]])
        assert max_dev(T.matrix, ref) < TOL


def test_path_parse_and_closed():
    P = Path.parse("(0.1) (0.2+0.1j) (0.1)")
    assert len(P.waypoints) == 3 and P.is_closed()
    C = circle_path(0, Fraction(1, 2))
    assert C.is_closed() and C.winding_number(0) == 1
    assert C.reverse().winding_number(0) == -1


points = st.complex_numbers(min_magnitude=0, max_magnitude=0.012, allow_nan=False, allow_infinity=False)


@settings(max_examples=8)
@given(points, points)
def test_path_composition_and_inverse(u, v):
    # paths around 0.015 stay away from 0 and x- = 0.0294...
    a, b, c = mpmath.mpc(0.015), mpmath.mpc(0.015) + u, mpmath.mpc(0.015) + v
    L = dwork2()
    T1 = transition(L, Path.of(a, b), PREC)
    T2 = transition(L, Path.of(b, c), PREC)
    T12 = transition(L, Path.of(a, b, c), PREC)
    with mpmath.workprec(PREC):
        assert max_dev(T12.matrix, (T2 @ T1).matrix) < TOL * 100
        back = transition(L, Path.of(a, b).reverse(), PREC)
        assert max_dev(back.matrix * T1.matrix, mpmath.eye(2)) < TOL * 100


def abel_det(a, b):
    # W'/W = -p1/p2 for dwork2; integrate along the segment
    L = dwork2()
    p0, p1, p2 = L.coeffs
    f = lambda x: -p1(x) / p2(x)  # noqa: E731
    with mpmath.workprec(PREC):
        g = lambda s: f(a + s * (b - a)) * (b - a)  # noqa: E731
        return mpmath.exp(mpmath.quad(lambda s: g(s), [0, 1]))


@pytest.mark.parametrize("a,b", [("0.01", "0.02"), ("0.015", "0.01+0.01j"), ("0.05", "0.5+0.3j")])
def test_abel_det_conservation(a, b):
    a, b = mpmath.mpc(complex(a)), mpmath.mpc(complex(b))
    L = dwork2()
    T = transition(L, Path.of(a, b), PREC)
    with mpmath.workprec(PREC):
        assert abs(T.det() - abel_det(a, b)) < TOL * abs(abel_det(a, b)) * 10
    # eq5 has no y' term: every transition matrix is unimodular
    T5 = transition(eq5(), Path.of(a, b), PREC)
    assert abs(T5.det() - 1) < TOL


def test_hypergeometric_continuation_matches_mpmath():
    L = get_operator("hypergeom:2F1:1/3,2/3;3/2")
    B = local_basis(L, AlgebraicPoint.rational(0), 80, PREC)
    f = next(s for s in B.solutions if s.exponent == 0)
    with mpmath.workprec(PREC):
        a, b = mpmath.mpf("0.2"), mpmath.mpc("0.6", "0.7")
        y0 = mpmath.matrix(to_taylor_frame(seed_from_local(L, f, a, PREC)))
        y1 = transition(L, Path.of(a, b), PREC).matrix * y0
        A, Bp, C = mpmath.mpf(1) / 3, mpmath.mpf(2) / 3, mpmath.mpf(3) / 2
        assert abs(y1[0] - mpmath.hyp2f1(A, Bp, C, b)) < TOL
        assert abs(y1[1] - A * Bp / C * mpmath.hyp2f1(A + 1, Bp + 1, C + 1, b)) < TOL


def test_clearance_and_trust_errors():
    with pytest.raises(ClearanceError):
        transition(eq5(), Path.of("-0.01", "0.01"), PREC)
    B = local_basis(eq5(), AlgebraicPoint.rational(0), 20)
    with pytest.raises(TrustRadiusError):
        seed_from_local(eq5(), B.solutions[0], "0.025", PREC)


def test_auto_path_detours_around_singularity():
    P = auto_path(0, 2, [mpmath.mpc(1)], side=1)
    assert len(P.waypoints) == 4
    assert all(mpmath.im(w) >= 0 for w in P.waypoints)
    Q = auto_path(0, 2, [mpmath.mpc(1)], side=-1)
    assert any(mpmath.im(w) < 0 for w in Q.waypoints)
    assert P.winding_number(1) == 0


def x_minus():
    return [p for p in singular_points(eq5()) if p.kind == "algebraic"][0]


def test_local_monodromy_at_x_minus_has_eigenvalues_plus_minus_i():
    xm = x_minus()
    z = xm.to_mpc(PREC)
    loop = circle_path(z, Fraction(1, 100), mpmath.pi, 16)
    M = monodromy(eq5(), loop, local_basis(eq5(), xm, 60, PREC), PREC)
    with mpmath.workprec(PREC):
        # exponents 1/4 and 3/4: the local basis diagonalizes the loop
        assert abs(M.matrix[0, 0] - 1j) < TOL and abs(M.matrix[1, 1] + 1j) < TOL
        assert abs(M.matrix[0, 1]) < TOL and abs(M.matrix[1, 0]) < TOL
    # the same loop in the Taylor frame has the same spectrum
    T = monodromy(eq5(), loop, None, PREC)
    with mpmath.workprec(PREC):
        ev = sorted(mpmath.eig(T.matrix)[0], key=lambda e: float(mpmath.im(e)))
        assert abs(ev[0] + 1j) < TOL and abs(ev[1] - 1j) < TOL


def test_monodromy_at_zero_is_unipotent():
    B = local_basis(eq5(), AlgebraicPoint.rational(0), 60, PREC)
    M = monodromy(eq5(), circle_path(0, Fraction(1, 100)), B, PREC)
    with mpmath.workprec(PREC):
        assert abs(M.matrix[0, 0] + 1) < TOL and abs(M.matrix[1, 1] + 1) < TOL
        assert abs(M.matrix[1, 0]) < TOL
        assert abs(M.matrix[0, 1] + 2j * mpmath.pi) < TOL


def test_lasso_monodromy_is_conjugate_to_local():
    xm = x_minus()
    z = float(mpmath.re(xm.to_mpc()))
    loop = lasso(Fraction(1, 100), z - 0.01, z, n=16)
    assert loop.is_closed() and loop.winding_number(xm.to_mpc()) == 1 and loop.winding_number(0) == 0
    M = monodromy(eq5(), loop, None, PREC)
    with mpmath.workprec(PREC):
        assert abs(mpmath.mnorm(M.matrix, 1)) > 0
        tr = M.matrix[0, 0] + M.matrix[1, 1]
        assert abs(tr) < TOL and abs(M.det() - 1) < TOL


def test_connect_to_local_x_minus():
    xm = x_minus()
    B0 = local_basis(eq5(), AlgebraicPoint.rational(0), 80, PREC)
    B1 = local_basis(eq5(), xm, 120, PREC, numeric=True)
    z = xm.to_mpc(PREC)
    cc = connect_to_local(eq5(), B0.solutions[0], Path.of(Fraction(1, 100), z - Fraction(1, 100)), B1, PREC)
    # the g2 coordinate is the printed 0.5484(1+i); the g1 coordinate was computed here and frozen
    c1, c2 = cc.values
    assert abs(c1 - mpmath.mpc("0.35540223", "-0.35540223")) < 1e-7
    assert abs(c2 - mpmath.mpc("0.54846083", "0.54846083")) < 1e-7
