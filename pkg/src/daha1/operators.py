"""The polynomial representation of the type-A1 double affine Hecke algebra.

Generators act on Laurent polynomials in X = q^x:

    s(X^n) = X^{-n},   p(X^n) = q^{n/2} X^n   (the half-period shift),
    pi = s o p,        T = t^{1/2} s + (t^{1/2}-t^{-1/2})/(X^2-1) (s - 1),
    Y = pi o T,        X = multiplication.

Relation checks reduce every operator identity to coefficient equality on
monomials, which is exact in Q(u, v).
"""

from __future__ import annotations

from .laurent import GaussianTwisted, LaurentPoly
from .ratfun import ONE, RatQT, U, V, ZERO
from .reports import CheckReport, Timer, exact_report


class NonDivisible(ArithmeticError):
    """(s-1)-image failed to divide by X^2 - 1: internal arithmetic bug."""


_T12 = V                    # t^{1/2}
_T12_INV = RatQT.v_power(-1)
_DELTA = _T12 - _T12_INV    # t^{1/2} - t^{-1/2}
_Q14 = U
_QINV_HALF = RatQT.u_power(-2)   # q^{-1/2}


def s_op(f: LaurentPoly) -> LaurentPoly:
    return f.mirror()


def p_op(f: LaurentPoly) -> LaurentPoly:
    return LaurentPoly({n: r * RatQT.u_power(2 * n) for n, r in f.c.items()})


def p_inv_op(f: LaurentPoly) -> LaurentPoly:
    return LaurentPoly({n: r * RatQT.u_power(-2 * n) for n, r in f.c.items()})


def pi_op(f: LaurentPoly) -> LaurentPoly:
    return s_op(p_op(f))


def x_op(f: LaurentPoly) -> LaurentPoly:
    return f.shift(1)


def x_inv_op(f: LaurentPoly) -> LaurentPoly:
    return f.shift(-1)


def divide_by_x2_minus_1(h: LaurentPoly) -> LaurentPoly:
    """Exact division by X^2 - 1 in the Laurent ring."""
    if h.is_zero():
        return h
    rem = dict(h.c)
    quo = {}
    floor = h.valuation()
    while rem:
        e = max(rem)
        if e < floor:
            raise NonDivisible(f"remainder of valuation {e} dividing by X^2-1")
        c = rem.pop(e)
        quo[e - 2] = quo.get(e - 2, ZERO) + c
        lower = rem.get(e - 2, ZERO) + c
        if lower.is_zero():
            rem.pop(e - 2, None)
        else:
            rem[e - 2] = lower
    return LaurentPoly(quo)



def t_op(f: LaurentPoly) -> LaurentPoly:
    sf = s_op(f)
    frac = divide_by_x2_minus_1(sf - f)
    return sf * _T12 + frac * _DELTA


def t_inv_op(f: LaurentPoly) -> LaurentPoly:
    # T^{-1} = T - (t^{1/2} - t^{-1/2})
    return t_op(f) - f * _DELTA


def y_op(f: LaurentPoly) -> LaurentPoly:
    return pi_op(t_op(f))


def y_inv_op(f: LaurentPoly) -> LaurentPoly:
    return t_inv_op(pi_op(f))


# ---- Gaussian-twisted action: s(gamma) = gamma, p(gamma) = q^{1/4} X gamma ----

def s_gauss(g: GaussianTwisted) -> GaussianTwisted:
    return GaussianTwisted(s_op(g.base), g.power)


def p_gauss(g: GaussianTwisted) -> GaussianTwisted:
    base = p_op(g.base).shift(g.power) * RatQT.u_power(g.power)
    return GaussianTwisted(base, g.power)


def pi_gauss(g: GaussianTwisted) -> GaussianTwisted:
    return s_gauss(p_gauss(g))


def t_gauss(g: GaussianTwisted) -> GaussianTwisted:
    return GaussianTwisted(t_op(g.base), g.power)


def y_gauss(g: GaussianTwisted) -> GaussianTwisted:
    return pi_gauss(t_gauss(g))


def x_gauss(g: GaussianTwisted) -> GaussianTwisted:
    return GaussianTwisted(g.base.shift(1), g.power)


_PLAIN = {
    "s": s_op,
    "p": p_op,
    "pinv": p_inv_op,
    "pi": pi_op,
    "T": t_op,
    "Tinv": t_inv_op,
    "X": x_op,
    "Xinv": x_inv_op,
    "Y": y_op,
    "Yinv": y_inv_op,
}

_GAUSS = {
    "s": s_gauss,
    "p": p_gauss,
    "pi": pi_gauss,
    "T": t_gauss,
    "X": x_gauss,
    "Y": y_gauss,
}

_ALIASES = {"π": "pi", "T^-1": "Tinv", "X^-1": "Xinv", "Y^-1": "Yinv"}


def apply_generator(gen: str, f):
    """Apply one generator to a LaurentPoly or GaussianTwisted element."""
    gen = _ALIASES.get(gen, gen)
    table = _GAUSS if isinstance(f, GaussianTwisted) else _PLAIN
    if gen not in table:
        raise KeyError(f"unknown generator {gen!r}")
    return table[gen](f)


def apply_word(word, f):
    """Apply a product of generators, leftmost acting last."""
    for gen in reversed(list(word)):
        f = apply_generator(gen, f)
    return f


# ---------------------------------------------------------------------------
# relation checks
# ---------------------------------------------------------------------------

def _quadratic_residue(f: LaurentPoly) -> LaurentPoly:
    # (T - t^{1/2})(T + t^{-1/2}) applied to f
    g = t_op(f) + f * _T12_INV
    return t_op(g) - g * _T12


def check_daha_relations(deg: int) -> CheckReport:
    """Exact verification of the defining relations on X^m, |m| <= deg:
    TXT = X^{-1}, T Y^{-1} T = Y, Y^{-1} X^{-1} Y X T^2 = q^{-1/2},
    and the quadratic relation for T."""
    violations = []
    with Timer() as tm:
        for m in range(-deg, deg + 1):
            f = LaurentPoly.x_power(m)
            if apply_word(["T", "X", "T"], f) != x_inv_op(f):
                violations.append(("TXT=X^-1", m))
            if apply_word(["T", "Yinv", "T"], f) != y_op(f):
                violations.append(("TY^-1T=Y", m))
            lhs = apply_word(["Yinv", "Xinv", "Y", "X", "T", "T"], f)
            if lhs != f * _QINV_HALF:
                violations.append(("Y^-1X^-1YXT^2=q^-1/2", m))
            if not _quadratic_residue(f).is_zero():
                violations.append(("(T-t^1/2)(T+t^-1/2)=0", m))
    return exact_report(
        "daha-relations",
        {"deg": deg, "violations": violations},
        equal=not violations,
        lhs="4 relations on all monomials",
        rhs="identity",
        runtime_ms=tm.ms,
    )


def check_tau_plus_gaussian(deg: int) -> CheckReport:
    """Conjugation by the Gaussian multiplier sends Y to q^{-1/4} X Y and
    fixes T: gamma Y(f) = q^{-1/4} X Y(gamma f), T(gamma f) = gamma T(f)."""
    violations = []
    q14_inv = RatQT.u_power(-1)
    with Timer() as tm:
        for m in range(-deg, deg + 1):
            f = LaurentPoly.x_power(m)
            gf = GaussianTwisted(f, 1)
            lhs = GaussianTwisted(y_op(f), 1)
            rhs_g = y_gauss(gf)
            rhs = GaussianTwisted(rhs_g.base.shift(1) * q14_inv, rhs_g.power)
            if lhs.power != rhs.power or lhs.base != rhs.base:
                violations.append(("gamma.Y = q^-1/4 X Y gamma", m))
            if t_gauss(gf).base != t_op(f):
                violations.append(("T commutes with gamma", m))
    return exact_report(
        "tau-plus-gaussian",
        {"deg": deg, "violations": violations},
        equal=not violations,
        lhs="Gaussian conjugation of Y and T",
        rhs="q^-1/4 X Y and T",
        runtime_ms=tm.ms,
    )


# Generator images under the Fourier automorphism Y -> X^{-1}, X -> T Y^{-1} T^{-1}.
_FOURIER = {
    "T": ["T"],
    "Tinv": ["Tinv"],
    "X": ["T", "Yinv", "Tinv"],
    "Xinv": ["T", "Y", "Tinv"],
    "Y": ["Xinv"],
    "Yinv": ["X"],
}


def _fourier_word(word):
    out = []
    for gen in word:
        out.extend(_FOURIER[gen])
    return out


def check_fourier_automorphism(deg: int) -> CheckReport:
    """Substituting the Fourier images into each defining relation yields an
    exact operator identity on X^m, |m| <= deg."""
    violations = []
    with Timer() as tm:
        for m in range(-deg, deg + 1):
            f = LaurentPoly.x_power(m)
            lhs = apply_word(_fourier_word(["T", "X", "T"]), f)
            if lhs != apply_word(_fourier_word(["Xinv"]), f):
                violations.append(("image of TXT=X^-1", m))
            lhs = apply_word(_fourier_word(["T", "Yinv", "T"]), f)
            if lhs != apply_word(_fourier_word(["Y"]), f):
                violations.append(("image of TY^-1T=Y", m))
            lhs = apply_word(_fourier_word(["Yinv", "Xinv", "Y", "X", "T", "T"]), f)
            if lhs != f * _QINV_HALF:
                violations.append(("image of Y^-1X^-1YXT^2=q^-1/2", m))
            if not _quadratic_residue(f).is_zero():
                violations.append(("image of quadratic relation", m))
    return exact_report(
        "fourier-automorphism",
        {"deg": deg, "violations": violations},
        equal=not violations,
        lhs="relations in Fourier images",
        rhs="identity",
        runtime_ms=tm.ms,
    )
