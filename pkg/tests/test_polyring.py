import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies
from sympy import QQ, Symbol

from errors import DivByZero
from polyring import (
    Ordering,
    Poly,
    RatFunc,
    cauchy_bound,
    eventual_compare,
    eventual_sign,
    eventually_nonnegative,
    poly_divmod,
    poly_gcd,
    poly_lcm,
    substitute,
)

T = Poly.t()

coefficients = strategies.lists(strategies.integers(-20, 20), min_size=1, max_size=5)
polys = coefficients.map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def sign(x):
    return (x > 0) - (x < 0)


def test_arithmetic_and_normalisation():
    assert (T + 1) * (T - 1) == T * T - 1
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)
    assert Poly([0, 0]).is_zero() and Poly().degree == float("-inf")
    assert (T ** 3).degree == 3
    assert 2 - T == Poly([2, -1])


def test_divmod_exact_and_by_zero():
    q, r = divmod(T ** 3 + 1, T + 1)
    assert q == T * T - T + 1
    assert r.is_zero()
    with pytest.raises(DivByZero):
        poly_divmod(T, Poly())


@given(polys, nonzero_polys)
@settings(deadline=None, max_examples=60)
def test_division_identity(f, h):
    q, r = poly_divmod(f, h)
    assert q * h + r == f
    assert r.is_zero() or r.degree < h.degree


@given(polys, polys, strategies.integers(-50, 50))
@settings(deadline=None, max_examples=60)
def test_evaluation_is_a_ring_homomorphism(a, b, x):
    assert (a + b)(x) == a(x) + b(x)
    assert (a * b)(x) == a(x) * b(x)
    assert (a - b)(x) == a(x) - b(x)


def test_gcd_is_monic():
    assert poly_gcd((T - 1) * (T + 2) * 3, (T - 1) * (T - 5)) == T - 1
    assert poly_gcd(Poly(), Poly()).is_zero()


def test_lcm_is_monic():
    assert poly_lcm((T - 1) * 4, (T - 1) * (T + 2)) == (T - 1) * (T + 2)
    assert poly_lcm(Poly([3]), Poly([Fraction(1, 2)])) == Poly.one()
    assert poly_lcm(T, Poly()).is_zero()


def test_polynomials_are_sympy_polys_over_the_rationals():
    f = Poly([Fraction(1, 3), 0, 2])
    assert f.rep.domain == QQ
    assert f.rep.gens == (Symbol("t"),)
    assert Poly.wrap(f.rep * f.rep) == f * f
    assert (f * 3).coeffs == (1, 0, 6)
    assert all(isinstance(c, Fraction) for c in f.coeffs)


def test_ratfunc_cancels_a_common_quadratic_factor():
    r = RatFunc((T * T - 1) * (T + 3), (T - 1) * (T + 3) * 2)
    assert r.den == Poly.one()
    assert r.num == Poly([Fraction(1, 2), Fraction(1, 2)])
    q = RatFunc((T * T + 1) * (T - 2), (T * T + 1) * (T * 3 + 1))
    assert q.num == Poly([Fraction(-2, 3), Fraction(1, 3)])
    assert q.den == Poly([Fraction(1, 3), 1])


def test_ratfunc_canonical_form():
    r = RatFunc(T * T - 1, T * 2 - 2)
    assert r.is_polynomial()
    assert r == RatFunc(Poly([Fraction(1, 2), Fraction(1, 2)]))
    q = RatFunc(T * T + 1, T * 2)
    assert q.den == T
    assert q.num == Poly([Fraction(1, 2), 0, Fraction(1, 2)])


def test_ratfunc_arithmetic_and_pole():
    r = RatFunc(1, T)
    assert r + r == RatFunc(2, T)
    assert r * T == RatFunc.one()
    assert (RatFunc(T) / (T + 1))(3) == Fraction(3, 4)
    with pytest.raises(DivByZero):
        r(0)
    with pytest.raises(DivByZero):
        r / RatFunc.zero()


def test_limits():
    assert RatFunc(T * 2 + 1, T + 3).limit() == 2
    assert RatFunc(1, T).limit() == 0
    assert RatFunc(T * T, T).limit() == float("inf")
    assert RatFunc(-T * T, T + 1).limit() == float("-inf")


def test_compose_affine_and_substitute():
    f = T * T + 1
    g = f.compose_affine(3, 2)
    for s in range(10):
        assert g(s) == f(3 * s + 2)
    assert substitute(f, 3, 2) == g
    with pytest.raises(ValueError):
        substitute(f, 3, 3)
    back = g.compose_affine(Fraction(1, 3), Fraction(-2, 3))
    assert back == f


def test_integer_form_and_to_string():
    assert Poly([Fraction(1, 2), Fraction(1, 3)]).integer_form() == ((3, 2), 6)
    assert Poly([4, 0, 1]).to_string() == "t^2 + 4"
    assert Poly([1, -2]).to_string("s") == "-2*s + 1"
    assert Poly().to_string() == "0"


def test_eventual_sign_examples():
    assert eventual_sign(Poly([5, -1])) == (-1, 6)
    s, threshold = eventual_sign(T * T - T * 100)
    assert (s, threshold) == (1, 101)
    assert eventual_sign(Poly()) == (0, 0)
    assert eventual_sign(Poly([-7])) == (-1, 0)


def test_eventual_sign_of_ratfunc():
    s, threshold = eventual_sign(RatFunc(T - 10, T - 20))
    assert s == 1
    for t in range(threshold, threshold + 40):
        assert RatFunc(T - 10, T - 20)(t) > 0


def test_eventual_compare_examples():
    assert eventual_compare(T, T * T) == (Ordering.LT, 2)
    assert eventual_compare(T * T, T * T) == (Ordering.EQ, 0)
    order, _ = eventual_compare(RatFunc(T + 1, T * 2), Fraction(1, 2))
    assert order == Ordering.GT


@given(coefficients)
@settings(deadline=None, max_examples=100)
def test_eventual_sign_is_sound(cs):
    p = Poly(cs)
    s, threshold = eventual_sign(p)
    for t in range(threshold, threshold + 30):
        assert sign(p(t)) == s


@given(coefficients)
@settings(deadline=None, max_examples=100)
def test_eventually_nonnegative_is_sound(cs):
    p = Poly(cs)
    if p.lc < 0:
        p = -p
    threshold = eventually_nonnegative(p.coeffs)
    for t in range(threshold, threshold + 30):
        assert p(t) >= 0


@given(nonzero_polys.filter(lambda p: p.degree >= 1))
@settings(deadline=None, max_examples=60)
def test_cauchy_bound_exceeds_every_integer_root(p):
    bound = cauchy_bound(p.coeffs)
    for t in range(bound, bound + 20):
        assert p(t) != 0
    assert bound >= 1 + math.ceil(max(abs(c) for c in p.coeffs[:-1]) / abs(p.lc))


def test_eventually_nonnegative_rejects_negative_leading_coefficient():
    with pytest.raises(ValueError):
        eventually_nonnegative((0, -1))
