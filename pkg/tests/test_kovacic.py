from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dfinite.diffop.registry import eq5, get_operator
from dfinite.exact.poly import Poly
from dfinite.exact.ratfunc import RatFunc, parse_ratfunc
from dfinite.kovacic import (
    classify,
    classify_sym_square,
    order_at_infinity,
    pole_data,
    r_of_operator,
    translate,
    verify_witness,
)


def R(s: str) -> RatFunc:
    return parse_ratfunc(s)


def hyp_r(key: str) -> RatFunc:
    return r_of_operator(get_operator(key))


EQ5_R = r_of_operator(eq5())
DIHEDRAL = hyp_r("hypergeom:2F1:-1/6,1/6;1/2")
TETRAHEDRAL = hyp_r("hypergeom:2F1:-1/12,1/4;1/2")


def test_eq5_r_matches_normal_form():
    assert -EQ5_R == R("(x^4 - 44*x^3 + 1206*x^2 - 44*x + 1)/(4*x^2*(x^2 - 34*x + 1)^2)")


def test_pole_data_of_eq5():
    data = pole_data(EQ5_R)
    assert sorted(d.order for d in data) == [2, 2]
    assert sum(d.degree for d in data) == 3
    assert order_at_infinity(EQ5_R) == 2


@pytest.mark.parametrize("r,u", [
    ("1", "1"),
    ("0", "0"),
    ("x^2 + 1", "x"),
    ("x^2 - 1", "-x"),
    ("-1/(4*x^2)", "1/(2*x)"),
])
def test_case1_witness(r, u):
    res = classify(R(r))
    assert res.case == "Case1" and res.galois_label == "Triangular"
    assert res.witness == R(u)
    assert verify_witness(R(r), res)


@pytest.mark.parametrize("f", ["x^2 - 2", "x^3 + x + 1", "x*(x - 1)"])
def test_case1_from_log_derivative(f):
    # u = f'/(2f) gives r = u' + u^2
    F = R(f)
    u = F.derivative() / (2 * F)
    r = u.derivative() + u * u
    res = classify(r)
    assert res.case == "Case1"
    assert verify_witness(r, res)


def test_irrational_case1_witness():
    res = classify(R("2"))
    assert res.case == "Case1"
    assert verify_witness(R("2"), res)


def test_dihedral_case2():
    res = classify(DIHEDRAL)
    assert res.case == "Case2" and res.galois_label == "Dihedral" and res.n == 2
    assert verify_witness(DIHEDRAL, res)


def test_tetrahedral_case3():
    res = classify(TETRAHEDRAL)
    assert res.case == "Case3" and res.galois_label == "Finite" and res.n == 4
    assert verify_witness(TETRAHEDRAL, res)


@pytest.mark.parametrize("r", ["x", "x^2", "x^3 - x"])
def test_case4_polynomials(r):
    # odd-degree polynomials and non-square even ones have no Liouvillian solutions
    assert classify(R(r)).case == "Case4"


def test_generic_hypergeometric_is_case4():
    assert classify(hyp_r("hypergeom:2F1:1/3,1/5;1/7")).case == "Case4"


def test_eq5_is_sl2():
    res = classify(EQ5_R)
    assert res.case == "Case4" and res.galois_label == "SL2"
    assert res.to_json() == {"case": "Case4", "witness": None, "galois_label": "SL2"}
    assert classify(eq5()).case == "Case4"
    assert classify_sym_square(EQ5_R) == "PSL2"
    assert classify_sym_square(R("0")) == "Triangular"


def test_witness_verification_rejects_wrong_witness():
    res = classify(R("x^2 + 1"))
    bad = type(res)(res.case, R("x + 1"), res.n, res.field_degree)
    assert not verify_witness(R("x^2 + 1"), bad)


shifts = st.fractions(min_value=-2, max_value=2, max_denominator=5)


@settings(max_examples=6)
@given(shifts)
def test_case_invariant_under_translation_eq5(c):
    assert classify(translate(EQ5_R, c)).case == "Case4"


@settings(max_examples=6)
@given(shifts)
def test_case_invariant_under_translation_dihedral(c):
    res = classify(translate(DIHEDRAL, c))
    assert res.case == "Case2"
    assert verify_witness(translate(DIHEDRAL, c), res)


@settings(max_examples=10)
@given(shifts, st.sampled_from(["x^2 + 1", "-1/(4*x^2)", "1"]))
def test_case1_invariant_under_translation(c, r):
    rr = translate(R(r), c)
    res = classify(rr)
    assert res.case == "Case1" and verify_witness(rr, res)


def test_translate_is_composition():
    assert translate(R("x^2"), Fraction(1)) == RatFunc(Poly([1, 2, 1]))
