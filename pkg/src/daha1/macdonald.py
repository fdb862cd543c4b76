"""Nonsymmetric Macdonald polynomials E_n, their symmetric companions P_n,
and special-point evaluations.

E_n is the monic Y-eigenvector with leading term X^n supported on the lower
monomials: X^m is lower than X^n iff |m| < |n| or m = -n > 0.  The spectral
exponent is n# = (n-k)/2 for n <= 0 and (n+k)/2 for n > 0, with
Y(E_n) = q^{-n#} E_n.  E_n is computed by a triangular solve of the
eigenproblem in the ordered monomial basis; numeric variants solve the same
system in complex arithmetic at a ParamPoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .laurent import LaurentPoly
from .operators import t_op, y_op
from .ratfun import ONE, ParamPoint, RatQT, V


class SingularSystem(ArithmeticError):
    """Coinciding formal eigenvalues in the triangular solve (arithmetic bug)."""


def ordered_basis(n: int):
    """Monomial exponents lower-or-equal X^n, lowest first."""
    basis = [0]
    for m in range(1, abs(n)):
        basis += [m, -m]
    if n > 0:
        basis.append(n)
    elif n < 0:
        basis += [abs(n), n]
    return basis


def eigenvalue(n: int) -> RatQT:
    """q^{-n#} as a monomial in u, v."""
    if n > 0:
        return RatQT.u_power(-2 * n) * RatQT.v_power(-1)
    return RatQT.u_power(-2 * n) * V


def sharp_exponent(n: int):
    """n# = c0 + c1*k as a pair of Fractions (c0, c1)."""
    if n > 0:
        return Fraction(n, 2), Fraction(1, 2)
    return Fraction(n, 2), Fraction(-1, 2)


@dataclass(frozen=True)
class EPoly:
    n: int
    poly: LaurentPoly
    sharp: tuple  # (c0, c1) with n# = c0 + c1 k

    @property
    def eigenvalue(self) -> RatQT:
        return eigenvalue(self.n)


@lru_cache(maxsize=None)
def epoly(n: int) -> EPoly:
    """Exact E_n via the triangular Y-eigenproblem."""
    basis = ordered_basis(n)
    size = len(basis)
    index = {m: i for i, m in enumerate(basis)}
    columns = []
    for m in basis:
        img = y_op(LaurentPoly.x_power(m))
        col = {}
        for e, r in img.c.items():
            if e not in index:
                raise SingularSystem(f"Y(X^{m}) leaves the lower-monomial span at X^{e}")
            col[index[e]] = r
        columns.append(col)
    lam = eigenvalue(n)
    coeffs = [None] * size
    coeffs[size - 1] = ONE
    for i in range(size - 2, -1, -1):
        acc = RatQT.from_int(0)
        for j in range(i + 1, size):
            a = columns[j].get(i)
            if a is not None:
                acc = acc + a * coeffs[j]
        diag = columns[i].get(i, RatQT.from_int(0)) - lam
        if diag.is_zero():
            raise SingularSystem(f"eigenvalue collision at X^{basis[i]} for n={n}")
        coeffs[i] = -acc / diag
    poly = LaurentPoly({basis[i]: coeffs[i] for i in range(size)})
    return EPoly(n=n, poly=poly, sharp=sharp_exponent(n))


@lru_cache(maxsize=None)
def ppoly(n: int) -> LaurentPoly:
    """Monic symmetric polynomial: the Hecke symmetrization of E_n."""
    if n < 0:
        raise ValueError("symmetric labels are nonnegative")
    if n == 0:
        return LaurentPoly.one()
    e = epoly(n).poly
    sym = e + t_op(e) * V           # (1 + t^{1/2} T) E_n, up to the 1/(1+t) scale
    lead = sym.coeff(n)
    return sym * (ONE / lead)


def eval_at_trho(f: LaurentPoly, sign: int) -> RatQT:
    """Exact substitution X -> t^{-1/2} (sign=-1) or X -> t^{+1/2} (sign=+1)."""
    if sign not in (-1, +1):
        raise ValueError("sign must be +1 or -1")
    total = RatQT.from_int(0)
    for m, r in f.c.items():
        total = total + r * RatQT.v_power(sign * m)
    return total


# ---------------------------------------------------------------------------
# numeric counterparts (same triangular solve in complex arithmetic)
# ---------------------------------------------------------------------------

def _t_num(h: dict, t12: complex) -> dict:
    delta = t12 - 1.0 / t12
    out = {}
    def add(e, c):
        out[e] = out.get(e, 0j) + c
    for m, c in h.items():
        add(-m, c * t12)
        if m > 0:
            for e in range(-m, m - 1, 2):
                add(e, -c * delta)
        elif m < 0:
            for e in range(m, -m - 1, 2):
                add(e, c * delta)
    return {e: c for e, c in out.items() if c != 0}


def _y_num(h: dict, pt: ParamPoint) -> dict:
    t12 = pt.qpow(pt.k / 2)
    th = _t_num(h, t12)
    return {-e: c * pt.qpow(e / 2) for e, c in th.items()}


def epoly_numeric(n: int, pt: ParamPoint) -> dict:
    """Numeric E_n coefficients {exponent: complex} at pt."""
    basis = ordered_basis(n)
    size = len(basis)
    index = {m: i for i, m in enumerate(basis)}
    cols = []
    for m in basis:
        img = _y_num({m: 1.0 + 0j}, pt)
        cols.append({index[e]: c for e, c in img.items()})
    c0, c1 = sharp_exponent(n)
    lam = pt.qpow(-(float(c0) + complex(c1) * pt.k))
    vec = [0j] * size
    vec[size - 1] = 1.0 + 0j
    for i in range(size - 2, -1, -1):
        acc = sum(cols[j].get(i, 0j) * vec[j] for j in range(i + 1, size))
        vec[i] = -acc / (cols[i].get(i, 0j) - lam)
    return {basis[i]: vec[i] for i in range(size) if vec[i] != 0}


def ppoly_numeric(n: int, pt: ParamPoint) -> dict:
    """Numeric monic symmetric polynomial at pt."""
    if n == 0:
        return {0: 1.0 + 0j}
    e = epoly_numeric(n, pt)
    t12 = pt.qpow(pt.k / 2)
    te = _t_num(e, t12)
    out = dict(e)
    for m, c in te.items():
        out[m] = out.get(m, 0j) + t12 * c
    lead = out[n]
    return {m: c / lead for m, c in out.items() if abs(c / lead) > 1e-300}
