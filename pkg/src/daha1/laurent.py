"""Laurent polynomials in X over the exact coefficient field Q(u, v).

These are the elements of the polynomial representation.  A GaussianTwisted
element carries an extra formal multiplier gamma^g, gamma standing for
q^{x^2}, which the operators rewrite algebraically (no analytic Gaussian in
the exact tier).
"""

from __future__ import annotations

from dataclasses import dataclass

from .ratfun import ONE, ParamPoint, RatQT, ZERO, _coerce, rat_eval


class LaurentPoly:
    """Finitely supported map X-exponent -> RatQT, zero coefficients dropped."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        out = {}
        for n, r in (coeffs or {}).items():
            r = _coerce(r) if not isinstance(r, RatQT) else r
            if r is None:
                raise TypeError("coefficients must be RatQT / int / Fraction")
            if not r.is_zero():
                out[n] = r
        self.c = out

    # ---- constructors ----
    @staticmethod
    def x_power(n: int, coeff=1) -> "LaurentPoly":
        return LaurentPoly({n: coeff})

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({0: ONE})

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    # ---- structure ----
    def support(self):
        return sorted(self.c)

    def coeff(self, n: int) -> RatQT:
        return self.c.get(n, ZERO)

    def constant_term(self) -> RatQT:
        return self.c.get(0, ZERO)

    def is_zero(self) -> bool:
        return not self.c

    def degree(self) -> int:
        return max(self.c) if self.c else 0

    def valuation(self) -> int:
        return min(self.c) if self.c else 0

    def is_even(self) -> bool:
        return all(n % 2 == 0 for n in self.c)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    # ---- arithmetic ----
    def __add__(self, other):
        out = dict(self.c)
        for n, r in other.c.items():
            s = out.get(n, ZERO) + r
            if s.is_zero():
                out.pop(n, None)
            else:
                out[n] = s
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({n: -r for n, r in self.c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            out = {}
            for n, r in self.c.items():
                for m, s in other.c.items():
                    k = n + m
                    prod = r * s
                    if k in out:
                        out[k] = out[k] + prod
                    else:
                        out[k] = prod
            return LaurentPoly(out)
        r = other if isinstance(other, RatQT) else _coerce(other)
        if r is None:
            return NotImplemented
        return LaurentPoly({n: c * r for n, c in self.c.items()})

    __rmul__ = __mul__

    def shift(self, m: int) -> "LaurentPoly":
        """Multiply by X^m."""
        return LaurentPoly({n + m: r for n, r in self.c.items()})

    def mirror(self) -> "LaurentPoly":
        """Substitute X -> X^{-1}."""
        return LaurentPoly({-n: r for n, r in self.c.items()})

    # ---- evaluation ----
    def subs_x(self, val: RatQT) -> RatQT:
        """Exact substitution X -> val."""
        total = ZERO
        for n, r in self.c.items():
            total = total + r * val ** n
        return total

    def eval_x(self, pt: ParamPoint, x: complex) -> complex:
        """Numeric value at the point X = q^x."""
        return sum(rat_eval(r, pt) * pt.qpow(n * x) for n, r in self.c.items())

    def coeff_table(self, pt: ParamPoint) -> dict:
        """Numeric coefficients {exponent: complex} at pt."""
        return {n: rat_eval(r, pt) for n, r in self.c.items()}

    def __repr__(self):
        if not self.c:
            return "LaurentPoly(0)"
        bits = [f"X^{n}: {r!r}" for n, r in sorted(self.c.items())]
        return "LaurentPoly{" + ", ".join(bits) + "}"


@dataclass(frozen=True)
class GaussianTwisted:
    """A Laurent polynomial times the formal Gaussian multiplier gamma^power,
    gamma = q^{x^2}, subject to s(gamma) = gamma and p(gamma) = q^{1/4} X gamma."""

    base: LaurentPoly
    power: int = 0

    def __add__(self, other: "GaussianTwisted") -> "GaussianTwisted":
        if self.power != other.power:
            raise ValueError("cannot add different Gaussian powers")
        return GaussianTwisted(self.base + other.base, self.power)

    def __sub__(self, other: "GaussianTwisted") -> "GaussianTwisted":
        if self.power != other.power:
            raise ValueError("cannot subtract different Gaussian powers")
        return GaussianTwisted(self.base - other.base, self.power)

    def scale(self, r) -> "GaussianTwisted":
        return GaussianTwisted(self.base * r, self.power)

    def is_zero(self) -> bool:
        return self.base.is_zero()
