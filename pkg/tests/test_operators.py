import pytest

from daha1.laurent import GaussianTwisted, LaurentPoly
from daha1.operators import (NonDivisible, apply_generator, apply_word,
                             check_daha_relations, check_fourier_automorphism,
                             check_tau_plus_gaussian, divide_by_x2_minus_1,
                             p_inv_op, p_op, pi_op, s_op, t_op, x_inv_op, y_op,
                             y_inv_op)
from daha1.ratfun import ONE, RatQT, V

X = LaurentPoly.x_power
T12_INV = RatQT.v_power(-1)


def test_t_on_constants():
    assert t_op(LaurentPoly.one()) == LaurentPoly({0: V})


def test_t_on_x():
    # hand reduction: (s-1)X = -(X^2-1)/X, so T(X) = t^{-1/2} X^{-1}
    assert t_op(X(1)) == LaurentPoly({-1: T12_INV})


def test_y_on_constants():
    assert y_op(LaurentPoly.one()) == LaurentPoly({0: V})


def test_y_on_x_inverse():
    got = y_op(X(-1))
    want = LaurentPoly({-1: V * RatQT.u_power(2),
                        1: (V - T12_INV) * RatQT.u_power(-2)})
    assert got == want


def test_t_quadratic_on_x():
    # T^2(X) = X + (1 - t^{-1}) X^{-1}
    t2 = t_op(t_op(X(1)))
    assert t2 == LaurentPoly({1: ONE, -1: ONE - RatQT.v_power(-2)})


def test_division_exactness_guard():
    with pytest.raises(NonDivisible):
        divide_by_x2_minus_1(X(2))
    assert divide_by_x2_minus_1(X(2) - X(0)) == LaurentPoly.one()


def test_pi_squared_and_shift_conjugation():
    for m in range(-4, 5):
        f = X(m)
        assert pi_op(pi_op(f)) == f
        assert p_op(s_op(f)) == s_op(p_inv_op(f))


def test_inverses_compose():
    for m in range(-4, 5):
        f = X(m)
        assert y_inv_op(y_op(f)) == f
        assert y_op(y_inv_op(f)) == f
        assert x_inv_op(apply_generator("X", f)) == f


def test_txt_on_constants():
    assert apply_word(["T", "X", "T"], LaurentPoly.one()) == X(-1)


def test_relations_sweep():
    rep = check_daha_relations(3)
    assert rep.passed and rep.params["violations"] == []


def test_gaussian_rules():
    g = GaussianTwisted(LaurentPoly.one(), 1)
    pg = apply_generator("p", g)
    assert pg.power == 1
    assert pg.base == LaurentPoly({1: RatQT.u_power(1)})    # q^{1/4} X
    assert apply_generator("s", g).base == LaurentPoly.one()
    # T sees only s, so the Gaussian factors out
    gf = GaussianTwisted(X(2), 1)
    assert apply_generator("T", gf).base == t_op(X(2))


def test_tau_plus_conjugation_value():
    # gamma Y(1) = q^{-1/4} X Y(gamma): both sides t^{1/2} gamma
    g = GaussianTwisted(LaurentPoly.one(), 1)
    rhs = apply_generator("Y", g)
    rhs = GaussianTwisted(rhs.base.shift(1) * RatQT.u_power(-1), rhs.power)
    assert rhs.base == LaurentPoly({0: V})


def test_tau_plus_sweep():
    rep = check_tau_plus_gaussian(4)
    assert rep.passed and rep.params["violations"] == []


def test_fourier_image_on_constant():
    # image of TXT applied to 1 equals image of X^{-1} applied to 1
    lhs = apply_word(["T", "T", "Yinv", "Tinv", "T"], LaurentPoly.one())
    rhs = apply_word(["T", "Y", "Tinv"], LaurentPoly.one())
    assert lhs == rhs


def test_fourier_sweep():
    rep = check_fourier_automorphism(3)
    assert rep.passed and rep.params["violations"] == []
