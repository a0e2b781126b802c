from hypothesis import given, strategies as st
from sympy import Poly, expand, symbols

from chromahom.polynomial import GradedPolynomial, evaluate_at_one_plus_q

coeff_lists = st.lists(st.integers(-20, 20), max_size=7)


def test_trimming_and_equality():
    assert GradedPolynomial((1, 2, 0, 0)).coeffs == (1, 2)
    assert GradedPolynomial((5,)) == 5
    assert GradedPolynomial() == 0
    assert GradedPolynomial.monomial(3, -2).coeffs == (0, 0, 0, -2)


def test_printing():
    assert str(GradedPolynomial((0, 2, -1, -2, 1))) == "q^4 - 2q^3 - q^2 + 2q"
    assert str(GradedPolynomial()) == "0"
    assert str(GradedPolynomial((-1,), "lambda")) == "-1"


def test_shift():
    p = GradedPolynomial((1, 1))
    assert p.shift(2).coeffs == (0, 0, 1, 1)
    assert p.shift(2).shift(-2) == p


@given(coeff_lists, coeff_lists, st.integers(-5, 5))
def test_ring_operations_evaluate_pointwise(a, b, x):
    p, q = GradedPolynomial(tuple(a)), GradedPolynomial(tuple(b))
    assert (p + q)(x) == p(x) + q(x)
    assert (p - q)(x) == p(x) - q(x)
    assert (p * q)(x) == p(x) * q(x)


@given(coeff_lists)
def test_one_plus_q_against_sympy(a):
    lam, q = symbols("lam q")
    expr = sum(c * lam**k for k, c in enumerate(a))
    expected = Poly(expand(expr.subs(lam, 1 + q)) if a else 0, q).all_coeffs()[::-1] if a else []
    got = evaluate_at_one_plus_q(GradedPolynomial(tuple(a), "lambda"))
    assert got == GradedPolynomial(tuple(int(c) for c in expected))
