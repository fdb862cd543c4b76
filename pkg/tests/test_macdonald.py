import pytest

from daha1.laurent import LaurentPoly
from daha1.macdonald import (epoly, epoly_numeric, eval_at_trho, eigenvalue,
                             ordered_basis, ppoly, ppoly_numeric)
from daha1.operators import y_op
from daha1.ratfun import ONE, ParamPoint, Q, RatQT, T, V, rat_eval

X = LaurentPoly.x_power


def test_e_zero_one():
    assert epoly(0).poly == LaurentPoly.one()
    assert epoly(1).poly == X(1)


def test_e_minus_one():
    want = LaurentPoly({-1: ONE, 1: (ONE - T) / (ONE - Q * T)})
    assert epoly(-1).poly == want


def test_e_minus_one_eval_numeric():
    pt = ParamPoint(k=0.7, q=0.3)
    c = epoly(-1).poly.coeff(1)
    expected = (1 - pt.t) / (1 - pt.q * pt.t)
    assert abs(rat_eval(c, pt) - expected) < 1e-13


@pytest.mark.parametrize("n", range(-5, 6))
def test_eigen_property(n):
    E = epoly(n)
    assert y_op(E.poly) == E.poly * E.eigenvalue


@pytest.mark.parametrize("n", range(-5, 6))
def test_triangular_support_and_monic(n):
    E = epoly(n)
    assert set(E.poly.c) <= set(ordered_basis(n))
    assert E.poly.coeff(n) == ONE


def test_distinct_eigenvalues():
    seen = {}
    for n in range(-8, 9):
        lam = eigenvalue(n)
        assert lam not in seen.values()
        seen[n] = lam


def test_p_zero_one():
    assert ppoly(0) == LaurentPoly.one()
    assert ppoly(1) == X(1) + X(-1)


@pytest.mark.parametrize("n", range(0, 6))
def test_p_symmetric_monic(n):
    P = ppoly(n)
    assert P.mirror() == P
    assert P.coeff(n) == ONE


def test_eval_at_trho():
    assert eval_at_trho(LaurentPoly.one(), -1) == ONE
    assert eval_at_trho(X(1), -1) == RatQT.v_power(-1)
    got = eval_at_trho(epoly(-1).poly, -1)
    want = V + (ONE - T) / (ONE - Q * T) * RatQT.v_power(-1)
    assert got == want


def test_numeric_matches_exact():
    pt = ParamPoint(k=0.45, q=0.37)
    for n in (-4, -1, 0, 3, 5):
        num = epoly_numeric(n, pt)
        exact = {m: rat_eval(r, pt) for m, r in epoly(n).poly.c.items()}
        assert set(num) == set(exact)
        for m in num:
            assert abs(num[m] - exact[m]) < 1e-11
    for n in (0, 2, 5):
        num = ppoly_numeric(n, pt)
        exact = {m: rat_eval(r, pt) for m, r in ppoly(n).c.items()}
        for m in exact:
            assert abs(num.get(m, 0) - exact[m]) < 1e-11
