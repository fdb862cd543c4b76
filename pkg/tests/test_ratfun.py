import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from daha1.ratfun import (BiPoly, DenominatorVanishes, ONE, ParamPoint,
                          PoleAtQZero, Q, RatQT, T, U, V, ZERO, rat_eval,
                          rat_q0_limit)


def test_canonical_identity_cancels():
    f = (ONE - V * V) / (ONE - V * V)
    assert f == ONE


def test_q_t_powers():
    assert RatQT.q_power(Fraction(1, 4)) == U
    assert RatQT.q_power(1) == Q
    assert RatQT.t_power(Fraction(1, 2)) == V
    assert RatQT.t_power(-1) == ONE / T
    with pytest.raises(ValueError):
        RatQT.q_power(Fraction(1, 3))


def test_eval_u_squared():
    pt = ParamPoint(k=0.7, q=0.25)
    # u^2 = q^{1/2} = 0.5
    assert abs(rat_eval(U * U, pt) - 0.5) < 1e-14


def test_eval_denominator_vanishes():
    pt = ParamPoint(k=0.0, q=0.3)   # t = 1, so 1 - v^2 = 0
    with pytest.raises(DenominatorVanishes):
        rat_eval(ONE / (ONE - V * V), pt)


def test_q0_limit_examples():
    f = (V * V - ONE) / (ONE - U ** 4 * V * V)
    assert rat_q0_limit(f) == V * V - ONE
    g = U ** 4 / U ** 4
    assert rat_q0_limit(g) == ONE
    with pytest.raises(PoleAtQZero):
        rat_q0_limit(ONE / Q)


def test_q0_limit_e_minus_one_coeff():
    c = (ONE - T) / (ONE - Q * T)
    assert rat_q0_limit(c) == ONE - T


def test_q0_commutes_with_products():
    f = (ONE + Q * V) / (ONE - Q * T + V)
    g = (V - U ** 4) / (ONE + V ** 3)
    assert rat_q0_limit(f * g) == rat_q0_limit(f) * rat_q0_limit(g)


def test_subs_v_inv():
    f = (ONE - T) / (ONE - Q * T)   # t -> 1/t gives (1 - 1/t)/(1 - q/t) = (t-1)/(t-q) up to sign
    g = f.subs_v_inv()
    # check numerically
    pt = ParamPoint(k=0.6, q=0.3)
    t = pt.t
    expected = (1 - 1 / t) / (1 - pt.q / t)
    assert abs(rat_eval(g, pt) - expected) < 1e-13
    assert f.subs_v_inv().subs_v_inv() == f


def test_param_point_from_a():
    pt = ParamPoint(k=0.5, a=1.0)
    assert abs(pt.q - math.exp(-1.0)) < 1e-15
    assert abs(pt.qpow(2) - pt.q ** 2) < 1e-15
    with pytest.raises(ValueError):
        ParamPoint(k=0.5, q=1.5)
    with pytest.raises(ValueError):
        ParamPoint(k=0.5)


small_ints = st.integers(min_value=-4, max_value=4)


@st.composite
def bipolys(draw):
    n_terms = draw(st.integers(min_value=0, max_value=4))
    coeffs = {}
    for _ in range(n_terms):
        iu = draw(st.integers(min_value=0, max_value=3))
        iv = draw(st.integers(min_value=0, max_value=3))
        coeffs[(iu, iv)] = draw(small_ints)
    return BiPoly(coeffs)


@st.composite
def ratqts(draw):
    num = draw(bipolys())
    den = draw(bipolys().filter(lambda p: not p.is_zero()))
    return RatQT(num, den)


@given(ratqts(), ratqts(), ratqts())
@settings(max_examples=60, deadline=None)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a


@given(ratqts())
@settings(max_examples=40, deadline=None)
def test_multiplicative_inverse(a):
    if not a.is_zero():
        assert a * (ONE / a) == ONE


@given(ratqts(), ratqts(), ratqts())
@settings(max_examples=40, deadline=None)
def test_rat_eval_is_ring_homomorphism(f, g, h):
    pt = ParamPoint(k=0.37, q=0.41)
    try:
        lhs = rat_eval(f * g + h, pt)
        rhs = rat_eval(f, pt) * rat_eval(g, pt) + rat_eval(h, pt)
    except DenominatorVanishes:
        return
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs), abs(rhs))
