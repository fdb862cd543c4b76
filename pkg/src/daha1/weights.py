"""The weight function mu, its normalized Laurent expansion mu_o, constant
terms, the CT inner product, numeric contour pairings with and without the
Gaussian, and the special factors entering the residue continuation.

Exact tier:  mu_o = mu / (mu)_CT  expands as

    mu_o = 1 + sum_{m>=1} c_m (X^{2m} + q^m X^{-2m}),
    c_m  = prod_{i=0}^{m-1} (t - q^i) / (1 - q^{i+1} t),

a bilateral-series summation, so CT pairings against mu_o are exact rational
functions of q, t.  The prefactor (mu)_CT itself is the infinite product

    (qt; q)_inf^2 / ((q t^2; q)_inf (q; q)_inf),

kept either as a numeric value or as a truncated power series in q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .laurent import LaurentPoly
from .macdonald import epoly
from .operators import t_op
from .qnumerics import (NoConvergence, PoleProximity, contour_pole_distance,
                        eval_table, gauss_kernel, mu_pole_distance,
                        qpochhammer_inf, theta_mass, trapezoid_periodic)
from .ratfun import ONE, Q, ParamPoint, RatQT, T, ZERO, rat_eval


class OddCase(ValueError):
    """f T(g) has odd X-degree terms where an even integrand is required."""


# ---------------------------------------------------------------------------
# exact tier
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def muo_coeff(m: int) -> RatQT:
    """c_m, the coefficient of X^{2m} (m >= 0) in mu_o."""
    if m == 0:
        return ONE
    prev = muo_coeff(m - 1)
    qp = RatQT.u_power(4 * (m - 1))     # q^{m-1}
    return prev * (T - qp) / (ONE - Q ** m * T)


@dataclass(frozen=True)
class MuSeries:
    """Truncated expansion of mu_o in the symmetric monomials
    X^{2m} + q^m X^{-2m}; coefficients[m] = c_m with c_0 = 1."""

    order: int
    coefficients: tuple

    def x_coeff(self, j: int) -> RatQT:
        """Laurent coefficient of X^j."""
        if j % 2:
            return ZERO
        m = abs(j) // 2
        if m > self.order:
            raise ValueError(f"series order {self.order} < requested |j|/2 = {m}")
        if j >= 0:
            return self.coefficients[m]
        return self.coefficients[m] * Q ** m


def muo_series(order: int) -> MuSeries:
    if order < 0:
        raise ValueError("order must be >= 0")
    return MuSeries(order=order, coefficients=tuple(muo_coeff(m) for m in range(order + 1)))


def muo_x_coeff(j: int) -> RatQT:
    if j % 2:
        return ZERO
    m = abs(j) // 2
    return muo_coeff(m) if j >= 0 else muo_coeff(m) * Q ** m


def ct_mu(h: LaurentPoly) -> RatQT:
    """CT(h mu_o): the constant term of h mu in units of (mu)_CT."""
    total = RatQT.from_int(0)
    for j, r in h.c.items():
        if j % 2 == 0:
            total = total + r * muo_x_coeff(-j)
    return total


def ct_pair(f: LaurentPoly, g: LaurentPoly) -> RatQT:
    """<f, g> = (f T(g) mu)_CT in units of (mu)_CT, exact."""
    return ct_mu(f * t_op(g))


def ct_pair_e(n: int, m: int) -> RatQT:
    """CT pairing of E_n and E_m (exact; zero off the diagonal)."""
    if (n + m) % 2:
        return ZERO
    return ct_pair(epoly(n).poly, epoly(m).poly)


# truncated power series in q with v-rational coefficients -------------------

def _series_mul(A, B, order):
    out = [RatQT.from_int(0)] * (order + 1)
    for i, a in enumerate(A):
        if a.is_zero():
            continue
        for j, b in enumerate(B):
            if i + j > order:
                break
            out[i + j] = out[i + j] + a * b
    return out


def _series_inv(A, order):
    if A[0].is_zero():
        raise ZeroDivisionError("series has no constant term")
    inv = [RatQT.from_int(0)] * (order + 1)
    inv[0] = ONE / A[0]
    for n in range(1, order + 1):
        acc = RatQT.from_int(0)
        for i in range(1, n + 1):
            if i < len(A) and not A[i].is_zero():
                acc = acc + A[i] * inv[n - i]
        inv[n] = -acc / A[0]
    return inv


def mu_ct_series(order: int):
    """(mu)_CT as an exact power series in q to the requested order;
    entry [i] is the coefficient of q^i, a rational function of t."""
    one = [ONE] + [RatQT.from_int(0)] * order
    num, den = list(one), list(one)
    for i in range(1, order + 1):
        for zpow, target in ((T, "num"), (T, "num"), (T * T, "den"), (ONE, "den")):
            fac = [ONE] + [RatQT.from_int(0)] * order
            fac[i] = -zpow
            if target == "num":
                num = _series_mul(num, fac, order)
            else:
                den = _series_mul(den, fac, order)
    return _series_mul(num, _series_inv(den, order), order)


def mu_ct_numeric(pt: ParamPoint) -> complex:
    q, t = pt.q, pt.t
    tol = pt.tail_tol
    return (qpochhammer_inf(q * t, q, tol) ** 2
            / (qpochhammer_inf(q * t * t, q, tol) * qpochhammer_inf(q, q, tol)))


# ---------------------------------------------------------------------------
# numeric weight and contour pairings
# ---------------------------------------------------------------------------

def pole_guard(pt: ParamPoint) -> float:
    return 1e-6 * 2.0 * math.pi * pt.a


def mu_numeric(x: complex, pt: ParamPoint) -> complex:
    """mu(x) = prod_i (1-q^{i+2x})(1-q^{i+1-2x}) / ((1-q^{i+k+2x})(1-q^{i+k+1-2x}))."""
    if mu_pole_distance(x, pt) < pole_guard(pt):
        raise PoleProximity(f"x={x} within guard of a pole of mu")
    q, t = pt.q, pt.t
    z = pt.qpow(2 * x)
    zi = pt.qpow(-2 * x)
    res = 1.0 + 0j
    qi = 1.0
    i = 0
    bound = max(abs(z), q * abs(zi)) * max(1.0, abs(t))
    while True:
        res *= (1 - qi * z) * (1 - qi * q * zi) / ((1 - t * qi * z) * (1 - t * qi * q * zi))
        qi *= q
        i += 1
        if i > 8 and qi * bound < pt.tail_tol:
            break
        if i > 10000:
            break
    return res


@dataclass(frozen=True)
class PairingContext:
    """Where a contour pairing lives: the abscissa eps of the vertical contour,
    whether the Gaussian is inserted, and the period multiple M (M in N/2,
    used only without the Gaussian)."""

    pt: ParamPoint
    epsilon: float = 0.25
    gaussian: bool = True
    period_multiple: float = 1.0

    def __post_init__(self):
        m2 = 2 * self.period_multiple
        if self.period_multiple <= 0 or abs(m2 - round(m2)) > 1e-12:
            raise ValueError("period_multiple must be a positive half-integer")


def _require_contour_clear(eps: float, pt: ParamPoint):
    if contour_pole_distance(eps, pt) < pole_guard(pt):
        raise PoleProximity(f"contour Re x = {eps} within guard of poles of mu "
                            f"(k = {pt.k})")


def gauss_pairing_table(table: dict, eps: float, pt: ParamPoint) -> complex:
    """(1/i) int_{eps+iR} F q^{-x^2} mu dx for a numeric coefficient table F,
    computed in the theta-periodized form over one full period."""
    _require_contour_clear(eps, pt)
    half = math.pi * pt.a

    def integrand(y):
        x = eps + 1j * y
        return eval_table(table, pt, x) * mu_numeric(x, pt) * gauss_kernel(x, pt)

    return trapezoid_periodic(integrand, half, pt.quad_tol, pt.max_nodes)


def period_average_table(table: dict, eps: float, M: float, pt: ParamPoint) -> complex:
    """(1/(2 pi a M i)) int over eps + [-pi a M i, pi a M i] of F mu dx."""
    _require_contour_clear(eps, pt)
    if (round(2 * M) % 2 == 1) and any(n % 2 for n in table):
        raise OddCase("half-integer period multiple requires an even integrand")
    half = math.pi * pt.a * M

    def integrand(y):
        x = eps + 1j * y
        return eval_table(table, pt, x) * mu_numeric(x, pt)

    return trapezoid_periodic(integrand, half, pt.quad_tol, pt.max_nodes) / (2 * math.pi * pt.a * M)


def contour_pair(f: LaurentPoly, g: LaurentPoly, ctx: PairingContext) -> complex:
    """Numeric contour pairing of f and g against mu (Gaussian optional)."""
    F = f * t_op(g)
    table = F.coeff_table(ctx.pt)
    if ctx.gaussian:
        return gauss_pairing_table(table, ctx.epsilon, ctx.pt)
    return period_average_table(table, ctx.epsilon, ctx.period_multiple, ctx.pt)


# ---------------------------------------------------------------------------
# special factors of the continuation formulas
# ---------------------------------------------------------------------------

def gauss_norm(pt: ParamPoint) -> complex:
    """G(k) = sqrt(pi a) prod_{j>=1} (1 - q^{k+j}) / (1 - q^{2k+j})."""
    q, t = pt.q, pt.t
    tol = pt.tail_tol
    return (math.sqrt(math.pi * pt.a)
            * qpochhammer_inf(q * t, q, tol) / qpochhammer_inf(q * t * t, q, tol))


def gauss_norm_inverse(pt: ParamPoint) -> complex:
    """1/G(k), regular everywhere (vanishes at the poles of G)."""
    q, t = pt.q, pt.t
    tol = pt.tail_tol
    return (qpochhammer_inf(q * t * t, q, tol)
            / (math.sqrt(math.pi * pt.a) * qpochhammer_inf(q * t, q, tol)))


def weight_ratio(j: int, sign: int, pt: ParamPoint) -> complex:
    """mu_bullet(+-(k+j)/2) / mu_bullet(-k/2) = t^{-j_pm} prod_{i=1}^{j_pm}
    (1-t^2 q^i)/(1-q^i), with j_+ = j-1 and j_- = j."""
    if j < 1 or sign not in (+1, -1):
        raise ValueError("need j >= 1 and sign +-1")
    q, t = pt.q, pt.t
    jp = j - 1 if sign > 0 else j
    w = t ** (-jp)
    for i in range(1, jp + 1):
        w *= (1 - t * t * q ** i) / (1 - q ** i)
    return w


def mu_bullet(point, pt: ParamPoint) -> complex:
    """Regularized value of mu at a residual point: the defining product with
    its vanishing factor deleted.  `point` is either the pair (j, sign) with
    j = 0 meaning -k/2, or a complex x-value that is classified first."""
    j, sign = _classify_point(point, pt)
    q, t = pt.q, pt.t
    if j == 0:
        z = 1.0 / t
        skip = ("lower", 0)
    elif sign > 0:
        z = t * q ** j
        skip = ("upper", j - 1)
    else:
        z = 1.0 / (t * q ** j)
        skip = ("lower", j)
    res = 1.0 + 0j
    qi = 1.0 + 0j
    i = 0
    bound = max(abs(z), q / abs(z)) * max(1.0, abs(t))
    while True:
        res *= (1 - qi * z) * (1 - qi * q / z)
        if skip != ("lower", i):
            res /= (1 - t * qi * z)
        if skip != ("upper", i):
            res /= (1 - t * qi * q / z)
        qi *= q
        i += 1
        if i > j + 8 and abs(qi) * bound < pt.tail_tol:
            break
        if i > 10000:
            break
    return res


def _classify_point(point, pt: ParamPoint):
    if isinstance(point, tuple):
        j, sign = point
        if j == 0:
            return 0, 0
        if j < 0 or sign not in (+1, -1):
            raise ValueError(f"bad residual point spec {point}")
        return j, sign
    x0 = complex(point)
    k = pt.k
    if abs(x0 - (-k / 2)) < 1e-9:
        return 0, 0
    for sign in (+1, -1):
        jval = sign * 2 * x0 - k
        if abs(jval.imag) < 1e-9 and abs(jval.real - round(jval.real)) < 1e-9:
            j = int(round(jval.real))
            if j >= 1:
                return j, sign
    raise PoleProximity(f"{x0} is not a residual point for k={k}")


def mu_bullet_over_g(pt: ParamPoint) -> complex:
    """mu_bullet(-k/2)/G(k) in cancelled form, regular at the poles of G:
    (t^{-1}; q)_inf / (sqrt(pi a) (q; q)_inf)."""
    q = pt.q
    tol = pt.tail_tol
    return (qpochhammer_inf(1.0 / pt.t, q, tol)
            / (math.sqrt(math.pi * pt.a) * qpochhammer_inf(q, q, tol)))


def special_factor(which: str, arg, pt: ParamPoint) -> complex:
    """Dispatch for the named special factors G, A, mu_bullet, weight_ratio."""
    if which == "G":
        return gauss_norm(pt)
    if which == "A":
        return theta_mass(arg, pt)
    if which == "mu_bullet":
        return mu_bullet(arg, pt)
    if which == "weight_ratio":
        j, sign = arg
        return 1.0 + 0j if j == 0 else weight_ratio(j, sign, pt)
    raise ValueError(f"unknown special factor {which!r}")
