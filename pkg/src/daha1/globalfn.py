"""The global spherical function of the A1 theory: theta function, the q,t
c-function, the symmetric-polynomial series, its two-term c-function
expansion, and the recovery of the polynomials at the spectral points.

The series is

    phi(X, L) = sum_{n>=0} q^{n^2/4} t^{n/2} P_n(X) P_n(L) / N_n,

with N_n = CT(P_n P_n mu_o) = (P_n P_n mu)_CT / (mu)_CT, so each term is
computable from exact data.  On |X| < |t|^{1/2} |q|^{-1/2} it equals the
c-function expansion

    (mu)_CT/(1+t) [ sigma(L) theta(X L t^{-1/2}) S(X, L^{-2})
                  + sigma(L^{-1}) theta(X L^{-1} t^{-1/2}) S(X, L^{2}) ],

where S is the terminating-style basic hypergeometric sum

    S(X, w) = sum_{j>=0} (q/t)^j X^{2j}
              prod_{s=1}^{j} (1 - t q^{s-1})(1 - q^{s-1} t w) /
                             ((1 - q^s)(1 - q^s w)),

and sigma(L) = prod_{j>=0} (1 - t q^j L^2)/(1 - q^j L^2).  The 1/(1+t) is the
A1 Weyl-group Poincare normalization; it was pinned by direct comparison of
the two sides (they agree to machine precision with it, and differ by exactly
1+t without it).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .macdonald import ppoly_numeric
from .qnumerics import PoleProximity, qpochhammer_inf, theta_sum
from .ratfun import ParamPoint
from .reports import CheckReport, Timer
from .weights import mu_ct_numeric, muo_coeff
from . import weights
from .macdonald import ppoly
from .ratfun import rat_eval


class NormVanishes(ArithmeticError):
    """A series norm N_n fell below guard: special parameters."""


class OutsideDomain(ValueError):
    """X outside the convergence region |X| < |t|^{1/2} |q|^{-1/2}."""


@dataclass(frozen=True)
class GlobalSeriesParams:
    """Truncation settings for the global function and its expansion."""

    pt: ParamPoint
    n_terms: int = 64
    n_heine: int = 200
    tail_tol: float = None

    def tol(self) -> float:
        return self.tail_tol if self.tail_tol is not None else self.pt.tail_tol


def theta_eval(Z: complex, pt: ParamPoint) -> complex:
    """theta(Z) = sum_m q^{m^2/4} Z^m."""
    return theta_sum(Z, pt)


def sigma_c(L: complex, pt: ParamPoint) -> complex:
    """The q,t c-function sigma(L) = prod_{j>=0} (1 - t q^j L^2)/(1 - q^j L^2)."""
    L2 = L * L
    denom = qpochhammer_inf(L2, pt.q, pt.tail_tol)
    if abs(denom) < 1e-250:
        raise PoleProximity(f"sigma has a pole at L^2 = {L2}")
    return qpochhammer_inf(pt.t * L2, pt.q, pt.tail_tol) / denom


@lru_cache(maxsize=None)
def _series_norm(n: int, pt: ParamPoint) -> complex:
    """N_n = CT(P_n P_n mu_o) at pt, via the numeric symmetric polynomial."""
    P = ppoly_numeric(n, pt)
    P2 = {}
    for e1, c1 in P.items():
        for e2, c2 in P.items():
            P2[e1 + e2] = P2.get(e1 + e2, 0j) + c1 * c2
    total = 0j
    q = pt.q
    for e, c in P2.items():
        if e % 2:
            continue
        m = abs(e) // 2
        cm = rat_eval(muo_coeff(m), pt)
        total += c * (cm * q ** m if e > 0 else cm)
    return total


def _series_norm_exact(n: int, pt: ParamPoint) -> complex:
    """Independent route to N_n through the exact coefficient field."""
    P = ppoly(n)
    return rat_eval(weights.ct_mu(P * P), pt)


def phi_tilde_series(X: complex, L: complex, params: GlobalSeriesParams) -> complex:
    """The theta-normalized global series, truncated once its Gaussian tail
    drops below tail_tol."""
    pt = params.pt
    tol = params.tol()
    total = 0j
    small = 0
    for n in range(params.n_terms):
        norm = _series_norm(n, pt)
        if abs(norm) < 1e-250:
            raise NormVanishes(f"norm N_{n} vanished at q={pt.q}, k={pt.k}")
        P = ppoly_numeric(n, pt)
        PX = sum(c * X ** e for e, c in P.items())
        PL = sum(c * L ** e for e, c in P.items())
        term = pt.qpow(n * n / 4.0) * pt.qpow(n * pt.k / 2.0) * PX * PL / norm
        total += term
        if n > 2 and abs(term) < tol * max(1.0, abs(total)):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    return total


def _heine_sum(X: complex, w: complex, params: GlobalSeriesParams) -> complex:
    pt = params.pt
    q, t = pt.q, pt.t
    total = 1.0 + 0j
    term = 1.0 + 0j
    for s in range(1, params.n_heine):
        denom = (1 - q ** s) * (1 - q ** s * w)
        if abs(denom) < 1e-250:
            raise PoleProximity(f"expansion pole at q^{s} w = 1")
        term *= (q / t) * X * X
        term *= (1 - t * q ** (s - 1)) * (1 - q ** (s - 1) * t * w) / denom
        total += term
        if abs(term) < params.tol():
            break
    return total


def hc_expansion(X: complex, L: complex, params: GlobalSeriesParams) -> complex:
    """The two-term c-function expansion of the global series."""
    pt = params.pt
    if abs(X) >= abs(pt.t) ** 0.5 * pt.q ** -0.5:
        raise OutsideDomain(f"|X| = {abs(X):.4g} outside |t|^(1/2) |q|^(-1/2)")
    tm12 = pt.qpow(-pt.k / 2)
    branch1 = sigma_c(L, pt) * theta_sum(X * L * tm12, pt) * _heine_sum(X, L ** -2, params)
    branch2 = sigma_c(1 / L, pt) * theta_sum(X / L * tm12, pt) * _heine_sum(X, L ** 2, params)
    return mu_ct_numeric(pt) / (1 + pt.t) * (branch1 + branch2)


def recovery_check(n: int, params: GlobalSeriesParams,
                   x_exponents=(0.6, 0.9, 1.2), rel_tol: float = 1e-7) -> CheckReport:
    """At the spectral point L_n = t^{1/2} q^{n/2}, the ratio
    phi(X, L_n) / (theta(X) P_n(X)) is independent of X."""
    pt = params.pt
    with Timer() as tm:
        L = pt.qpow(pt.k / 2 + n / 2)
        ratios = []
        for xe in x_exponents:
            X = pt.qpow(xe)
            P = ppoly_numeric(n, pt)
            PX = sum(c * X ** e for e, c in P.items())
            ratios.append(phi_tilde_series(X, L, params) / (theta_sum(X, pt) * PX))
        spread = max(abs(r - ratios[0]) for r in ratios) / abs(ratios[0])
    return CheckReport(
        check_id="recovery-proportionality",
        params={"q": pt.q, "k": str(pt.k), "n": n,
                "x_exponents": list(x_exponents),
                "ratios": [str(r) for r in ratios]},
        lhs=f"relative spread {spread:.3g}",
        rhs="0",
        abs_err=float(spread), tol=rel_tol,
        passed=spread <= rel_tol, runtime_ms=tm.ms)
