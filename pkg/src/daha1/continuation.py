"""Analytic continuation of the Gaussian pairing to Re k < 0: residual points,
residue-corrected identities, the normalized invariant form, and the
degeneracy checks at the singular parameters k = -1/2 - m.

Conventions validated numerically at machine precision:

  * Phi_eps(f, g) = (1/i) int_{eps+iR} f T(g) q^{-x^2} mu dx, evaluated in the
    theta-periodized form over one full period.
  * For -1/2 < Re k < 0,
        Phi_{1/4} = Phi_0 + A(-k/2) mu_bullet(-k/2) F(-k/2),   F = f T(g),
    and for any non-wall Re k < 0 the correction extends over the residual
    points {-k/2} and {+-(k+j)/2 : 1 <= j <= floor(-Re k)} with the closed
    weight ratios from `weights.weight_ratio`.
  * The invariant normalization is {f, g} = Phi / (t^{1/2} G(k)), which makes
    {1, 1} = 1 for every non-wall k (the bare G(k) normalizes the pairing of
    the Gaussians only, leaving the t^{1/2} of T(1) behind).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .laurent import LaurentPoly
from .macdonald import epoly
from .operators import t_op
from .qnumerics import eval_table
from .ratfun import ParamPoint, rat_eval
from .reports import CheckReport, Timer, fmt_value, numeric_report
from .weights import (OddCase, ct_mu, gauss_norm, gauss_norm_inverse,
                      gauss_pairing_table, mu_bullet, mu_bullet_over_g,
                      mu_ct_numeric, period_average_table, theta_mass,
                      weight_ratio)

WALL_GUARD = 1e-3


class OnWall(ValueError):
    """Re k within guard of the walls -Z_+ (contour poles collide)."""


class SumDiverges(ArithmeticError):
    """Infinite residue sum failed the ratio test before reaching tail_tol."""


def wall_distance(k: complex) -> float:
    j = max(0, round(-k.real))
    return abs(k.real + j)


def require_off_wall(pt: ParamPoint):
    if pt.k.real < WALL_GUARD and wall_distance(pt.k) < WALL_GUARD:
        raise OnWall(f"Re k = {pt.k.real} within {WALL_GUARD} of a wall")


@dataclass(frozen=True)
class ResidualData:
    """Residual points for Re k < 0 and their Gaussian-weighted masses,
    computed both through the closed weight ratios and through direct
    regularized products of mu."""

    k: complex
    m: int
    points: tuple
    weights: tuple          # A(kt) * mu_bullet(kt), closed-ratio route
    weights_direct: tuple   # same via factor-deleted products
    agreement: float


def residual_point_list(k: complex, m: int):
    pts = [(-k / 2, 0, 0)]
    for j in range(1, m + 1):
        pts.append(((k + j) / 2, j, +1))
        pts.append((-(k + j) / 2, j, -1))
    return pts


def residual_points(pt: ParamPoint) -> ResidualData:
    """The 2m+1 residual points for Re k < 0, m = floor(-Re k), with weights."""
    k = pt.k
    if k.real >= 0:
        raise ValueError("residual points require Re k < 0")
    require_off_wall(pt)
    m = math.floor(-k.real)
    base = mu_bullet((0, 0), pt)
    pts = residual_point_list(k, m)
    weights, direct = [], []
    for (x0, j, sign) in pts:
        A = theta_mass(x0, pt)
        ratio = 1.0 + 0j if j == 0 else weight_ratio(j, sign, pt)
        weights.append(A * base * ratio)
        direct.append(A * mu_bullet((j, sign), pt))
    agreement = max(abs(w - d) / max(abs(w), 1e-300) for w, d in zip(weights, direct))
    return ResidualData(k=k, m=m, points=tuple(p for p, _, _ in pts),
                        weights=tuple(weights), weights_direct=tuple(direct),
                        agreement=agreement)


def _correction_sum(table: dict, pt: ParamPoint, gaussian: bool) -> complex:
    """sum over residual points of [A(kt)] * weight_ratio * F(kt),
    normalized by mu_bullet(-k/2)."""
    m = math.floor(-pt.k.real)
    total = 0j
    for (x0, j, sign) in residual_point_list(pt.k, m):
        w = 1.0 + 0j if j == 0 else weight_ratio(j, sign, pt)
        if gaussian:
            w *= theta_mass(x0, pt)
        total += w * eval_table(table, pt, x0)
    return total


def shapovalov_form(f: LaurentPoly, g: LaurentPoly, pt: ParamPoint,
                    branch: str = None) -> complex:
    """The invariant form {f, g}, normalized so that {1, 1} = 1.

    branch "quarter" integrates over Re x = 1/4 (valid for Re k > -1/2);
    branch "residue" uses Re x = 0 plus residual-point corrections (Re k < 0);
    by default the branch is chosen from Re k.  In the overlap strip both
    agree to quadrature tolerance.
    """
    if branch is None:
        branch = "quarter" if pt.k.real > -0.5 else "residue"
    F = f * t_op(g)
    table = F.coeff_table(pt)
    t12 = pt.qpow(pt.k / 2)
    if branch == "quarter":
        if pt.k.real <= -0.5:
            raise ValueError("quarter branch requires Re k > -1/2")
        return gauss_pairing_table(table, 0.25, pt) / (t12 * gauss_norm(pt))
    if branch != "residue":
        raise ValueError(f"unknown branch {branch!r}")
    if pt.k.real >= 0:
        raise ValueError("residue branch requires Re k < 0")
    require_off_wall(pt)
    if not F.is_even():
        raise OddCase("f T(g) has odd terms; the residue continuation "
                      "is implemented for even integrands only")
    # 1/G and mu_bullet/G in cancelled form stay finite at the poles of G
    plain = gauss_pairing_table(table, 0.0, pt) * gauss_norm_inverse(pt) / t12
    bullet_over = mu_bullet_over_g(pt) / t12
    return plain + bullet_over * _correction_sum(table, pt, gaussian=True)


def verify_ct_identity(F: LaurentPoly, pt: ParamPoint, M: float,
                       tol: float = 1e-8) -> CheckReport:
    """Constant-term identity: (F mu)_CT equals the period average of F mu
    plus, for Re k < 0, the residual-point corrections
    mu_bullet(-k/2) (F(-k/2) + sum_{j,pm} F(+-(k+j)/2) t^{-j_pm} prod ...)."""
    if not F.is_even():
        raise OddCase("F must lie in R[X^{+-2}]")
    with Timer() as tm:
        lhs = rat_eval(ct_mu(F), pt) * mu_ct_numeric(pt)
        table = F.coeff_table(pt)
        if pt.k.real < 0:
            require_off_wall(pt)
        rhs = period_average_table(table, 0.0, M, pt)
        if pt.k.real < 0:
            rhs += mu_bullet((0, 0), pt) * _correction_sum(table, pt, gaussian=False)
    rep = numeric_report(
        "ct-identity",
        {"q": pt.q, "k": fmt_value(pt.k), "M": M, "F": sorted(F.c)},
        lhs, rhs, tol, tm.ms)
    return rep


def _residue_tail_sum(table: dict, pt: ParamPoint, j_start: int) -> complex:
    """sum_{j >= j_start} F((k+j)/2) t^{1-j} prod_{i=1}^{j-1} (1-t^2 q^i)/(1-q^i),
    truncated at tail_tol with a ratio-test guard."""
    q, t = pt.q, pt.t
    prod = 1.0 + 0j
    for i in range(1, j_start):
        prod *= (1 - t * t * q ** i) / (1 - q ** i)
    total = 0j
    prev_mag = None
    growth = 0
    j = j_start
    while True:
        term = eval_table(table, pt, (pt.k + j) / 2) * t ** (1 - j) * prod
        total += term
        mag = abs(term)
        if prev_mag is not None and mag > prev_mag:
            growth += 1
            if growth > 8:
                raise SumDiverges(f"residue sum growing at j={j}")
        else:
            growth = 0
        if j > j_start + 4 and mag < pt.tail_tol * max(1.0, abs(total)):
            return total
        if j > 4000:
            raise SumDiverges("residue sum did not reach tail_tol by j=4000")
        prev_mag = mag
        prod *= (1 - t * t * q ** j) / (1 - q ** j)
        j += 1


def verify_residue_sum(F: LaurentPoly, pt: ParamPoint, m: int,
                       tol: float = 1e-8) -> CheckReport:
    """Pure-residue expressions for Re k < -m and F with X-valuation >= -2m:

    (a)  (F mu)_CT = mu_bullet(-k/2) sum_{j>=1} F((k+j)/2) t^{1-j} prod_{i<j} ...
    (b)  the half-period average of F mu equals
         mu_bullet(-k/2) (-F(-k/2) - sum_{j<=mm} F(-(k+j)/2) w_-(j)
                          + sum_{j>mm} F((k+j)/2) t^{1-j} prod ...),
    with mm = floor(-Re k)."""
    if pt.k.real >= -m:
        raise ValueError(f"need Re k < -{m}")
    require_off_wall(pt)
    if not F.is_even() or F.valuation() < -2 * m:
        raise OddCase(f"F must lie in q^{{-2m x}} R[q^{{2x}}] with m={m}")
    with Timer() as tm:
        table = F.coeff_table(pt)
        bullet = mu_bullet((0, 0), pt)
        lhs_a = rat_eval(ct_mu(F), pt) * mu_ct_numeric(pt)
        rhs_a = bullet * _residue_tail_sum(table, pt, 1)
        mm = math.floor(-pt.k.real)
        lhs_b = period_average_table(table, 0.0, 0.5, pt)
        neg = sum(eval_table(table, pt, -(pt.k + j) / 2) * weight_ratio(j, -1, pt)
                  for j in range(1, mm + 1))
        rhs_b = bullet * (-eval_table(table, pt, -pt.k / 2) - neg
                          + _residue_tail_sum(table, pt, mm + 1))
        err = max(abs(lhs_a - rhs_a), abs(lhs_b - rhs_b))
    return CheckReport(
        check_id="residue-sum",
        params={"q": pt.q, "k": fmt_value(pt.k), "m": m, "F": sorted(F.c),
                "err_ct": abs(lhs_a - rhs_a), "err_half_period": abs(lhs_b - rhs_b)},
        lhs=fmt_value(lhs_a), rhs=fmt_value(rhs_a),
        abs_err=err, tol=tol, passed=err <= tol, runtime_ms=tm.ms)


# ---------------------------------------------------------------------------
# degeneracy at the singular parameters k = -1/2 - m
# ---------------------------------------------------------------------------

def gram_window(pt: ParamPoint, size: int) -> np.ndarray:
    """Gram matrix [{X^{2i}, X^{2j}}] for 0 <= i, j < size."""
    mats = np.zeros((size, size), dtype=complex)
    for i in range(size):
        for j in range(size):
            mats[i, j] = shapovalov_form(LaurentPoly.x_power(2 * i),
                                         LaurentPoly.x_power(2 * j), pt)
    return mats


def radical_probe(m: int, pt: ParamPoint) -> complex:
    """{E_-(2m+1) X, X^2}: vanishes at k = -1/2 - m, where the kernel of the
    form is the ideal generated by the singular eigenpolynomial."""
    gen = epoly(-(2 * m + 1)).poly.shift(1)
    return shapovalov_form(gen, LaurentPoly.x_power(2), pt)


def radical_check(m: int, pt: ParamPoint,
                  singular_tol: float = 1e-6, control_floor: float = 1e-2,
                  probe_tol: float = 1e-8) -> CheckReport:
    """Rank collapse of the even Gram window at k = -1/2 - m, full rank at
    k +- 0.05, and vanishing of the radical probe."""
    k_target = -0.5 - m
    if abs(pt.k - k_target) > 1e-9:
        raise ValueError(f"expected k = {k_target}, got {pt.k}")
    size = 2 * m + 2
    with Timer() as tm:
        sing_min = np.linalg.svd(gram_window(pt, size), compute_uv=False)[-1]
        controls = []
        for dk in (-0.05, +0.05):
            pt2 = ParamPoint(k=k_target + dk, q=pt.q, tail_tol=pt.tail_tol,
                             quad_tol=pt.quad_tol, max_nodes=pt.max_nodes)
            controls.append(np.linalg.svd(gram_window(pt2, size), compute_uv=False)[-1])
        probe = abs(radical_probe(m, pt))
        pt_off = ParamPoint(k=k_target + 0.1, q=pt.q, tail_tol=pt.tail_tol,
                            quad_tol=pt.quad_tol, max_nodes=pt.max_nodes)
        probe_off = abs(radical_probe(m, pt_off))
        ok = (sing_min < singular_tol and min(controls) > control_floor
              and probe < probe_tol and probe_off > 1e-4)
    return CheckReport(
        check_id="radical-degeneracy",
        params={"q": pt.q, "m": m, "window": size,
                "sigma_min_singular": float(sing_min),
                "sigma_min_controls": [float(c) for c in controls],
                "probe": float(probe), "probe_off_singular": float(probe_off)},
        lhs=f"sigma_min = {sing_min:.3g}, probe = {probe:.3g}",
        rhs=f"< {singular_tol} and controls > {control_floor}",
        abs_err=float(max(sing_min, probe)),
        tol=singular_tol, passed=bool(ok), runtime_ms=tm.ms)


# ---------------------------------------------------------------------------
# wall crossing
# ---------------------------------------------------------------------------

def neville_to_zero(values, nodes):
    """Polynomial extrapolation of values(nodes) to 0."""
    tab = list(values)
    n = len(tab)
    for level in range(1, n):
        nxt = []
        for i in range(n - level):
            x0, x1 = nodes[i], nodes[i + level]
            nxt.append((x0 * tab[i + 1] - x1 * tab[i]) / (x0 - x1))
        tab = nxt
    return tab[0]


def wall_crossing_limits(f: LaurentPoly, g: LaurentPoly, q: float, wall: int,
                         deltas=(0.08, 0.04, 0.02, 0.01), quad_tol: float = 1e-11):
    """Extrapolated values of {f, g} as Re k approaches the wall -wall from
    below and from above; the residue corrections must make them agree."""
    if wall < 1:
        raise ValueError("wall must be a positive integer")
    below, above = [], []
    for d in deltas:
        pt_b = ParamPoint(k=-wall - d, q=q, quad_tol=quad_tol)
        pt_a = ParamPoint(k=-wall + d, q=q, quad_tol=quad_tol)
        below.append(shapovalov_form(f, g, pt_b, branch="residue"))
        above.append(shapovalov_form(f, g, pt_a, branch="residue"))
    return neville_to_zero(below, deltas), neville_to_zero(above, deltas)
