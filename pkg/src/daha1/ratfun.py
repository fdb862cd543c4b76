"""Exact rational arithmetic over Z in u = q^{1/4} and v = t^{1/2}.

All identities of the exact tier live in the field Q(u, v).  A RatQT is a
canonical fraction of integer bivariate polynomials, so structural equality
is mathematical equality.  Numeric evaluation goes through ParamPoint, which
fixes the single branch q^z = exp(-z/a) for every fractional power.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce


class DenominatorVanishes(ZeroDivisionError):
    """Numeric denominator hit zero (within guard) at a ParamPoint."""


class PoleAtQZero(ZeroDivisionError):
    """Canonical denominator vanishes at u = 0, so the q->0 limit has a pole."""


# ---------------------------------------------------------------------------
# univariate helpers over Z (dense lists, index = exponent)
# ---------------------------------------------------------------------------

def _utrim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _uadd(p, q):
    n = max(len(p), len(q))
    return _utrim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def _uneg(p):
    return [-c for c in p]


def _umul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return _utrim(out)


def _uscale(p, c):
    return [a * c for a in p] if c else []


def _ucontent(p):
    return reduce(math.gcd, (abs(c) for c in p), 0)


def _udivexact_int(p, c):
    return [a // c for a in p]


def _udivexact(p, d):
    """Exact division of p by d in Z[u]; raises ArithmeticError if not exact."""
    if not d:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(p)
    out = [0] * (max(len(p) - len(d) + 1, 0))
    while len(r) >= len(d):
        lead, dl = r[-1], d[-1]
        if lead % dl:
            raise ArithmeticError("inexact division in Z[u]")
        c = lead // dl
        pos = len(r) - len(d)
        out[pos] = c
        for j, b in enumerate(d):
            r[pos + j] -= c * b
        _utrim(r)
        if not r:
            break
    if r:
        raise ArithmeticError("inexact division in Z[u]")
    return _utrim(out)


def _ugcd(p, q):
    """gcd in Z[u] via primitive pseudo-remainder sequence."""
    if not p:
        return list(q)
    if not q:
        return list(p)
    cont = math.gcd(_ucontent(p), _ucontent(q))
    a = _udivexact_int(p, _ucontent(p))
    b = _udivexact_int(q, _ucontent(q))
    while b:
        # pseudo-remainder of a by b
        r = list(a)
        dl = b[-1]
        while len(r) >= len(b):
            c = r[-1]
            pos = len(r) - len(b)
            r = _uscale(r, dl)
            for j, bb in enumerate(b):
                r[pos + j] -= c * bb
            _utrim(r)
            if not r:
                break
        cr = _ucontent(r)
        a, b = b, (_udivexact_int(r, cr) if r else [])
    if a and a[-1] < 0:
        a = _uneg(a)
    return _uscale(a, cont) if cont else a


# ---------------------------------------------------------------------------
# bivariate helpers: poly in v with Z[u] coefficients (list of u-polys)
# ---------------------------------------------------------------------------

def _vtrim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _vmul(p, q):
    if not p or not q:
        return []
    out = [[] for _ in range(len(p) + len(q) - 1)]
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] = _uadd(out[i + j], _umul(a, b))
    return _vtrim(out)


def _vcontent(p):
    return reduce(_ugcd, (c for c in p if c), [])


def _vdiv_u(p, d):
    return [_udivexact(c, d) if c else [] for c in p]


def _vgcd(p, q):
    """gcd in (Z[u])[v] via contents + primitive PRS."""
    if not p:
        return [list(c) for c in q]
    if not q:
        return [list(c) for c in p]
    cp, cq = _vcontent(p), _vcontent(q)
    cont = _ugcd(cp, cq)
    a = _vdiv_u(p, cp)
    b = _vdiv_u(q, cq)
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            a, b = b, []  # primitive of v-degree 0 is the unit [[1]]
            break
        r = [list(c) for c in a]
        dl = b[-1]
        while len(r) >= len(b):
            c = r[-1]
            pos = len(r) - len(b)
            r = [_umul(x, dl) if x else [] for x in r]
            for j, bb in enumerate(b):
                r[pos + j] = _uadd(r[pos + j], _uneg(_umul(c, bb)))
            _vtrim(r)
            if not r:
                break
        cr = _vcontent(r)
        a, b = b, (_vdiv_u(r, cr) if r else [])
    g = _vmul([cont], a) if cont else a
    return g


# ---------------------------------------------------------------------------
# BiPoly: Z[u, v] as a sparse exponent map
# ---------------------------------------------------------------------------

class BiPoly:
    """Polynomial in u, v over Z, stored as {(u_exp, v_exp): int}."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        self.c = {k: v for k, v in (coeffs or {}).items() if v}

    @staticmethod
    def const(n: int) -> "BiPoly":
        return BiPoly({(0, 0): n})

    @staticmethod
    def mono(iu: int, iv: int, coeff: int = 1) -> "BiPoly":
        return BiPoly({(iu, iv): coeff})

    def is_zero(self) -> bool:
        return not self.c

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __add__(self, other):
        out = dict(self.c)
        for k, v in other.c.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    def __neg__(self):
        return BiPoly({k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return BiPoly({k: v * other for k, v in self.c.items()})
        out = {}
        for (i1, j1), a in self.c.items():
            for (i2, j2), b in other.c.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def content(self) -> int:
        return reduce(math.gcd, (abs(v) for v in self.c.values()), 0)

    def div_int(self, n: int) -> "BiPoly":
        return BiPoly({k: v // n for k, v in self.c.items()})

    def lead_sign(self) -> int:
        if not self.c:
            return 0
        key = max(self.c, key=lambda k: (k[1], k[0]))
        return 1 if self.c[key] > 0 else -1

    def eval(self, u: complex, v: complex) -> complex:
        total = 0j
        for (i, j), a in self.c.items():
            total += a * u ** i * v ** j
        return total

    def abs_bound(self, ua: float, va: float) -> float:
        return sum(abs(a) * ua ** i * va ** j for (i, j), a in self.c.items())

    def subs_u0(self) -> "BiPoly":
        return BiPoly({k: v for k, v in self.c.items() if k[0] == 0})

    def v_reversed(self) -> "BiPoly":
        """v -> 1/v, cleared by v^(v-degree)."""
        if not self.c:
            return self
        d = max(j for (_, j) in self.c)
        return BiPoly({(i, d - j): a for (i, j), a in self.c.items()})

    def v_degree(self) -> int:
        return max((j for (_, j) in self.c), default=0)

    # conversions for gcd work
    def _to_v(self):
        if not self.c:
            return []
        dv = max(j for (_, j) in self.c)
        out = [[] for _ in range(dv + 1)]
        for (i, j), a in self.c.items():
            col = out[j]
            if len(col) <= i:
                col.extend([0] * (i + 1 - len(col)))
            col[i] = a
        return [_utrim(col) for col in out]

    @staticmethod
    def _from_v(vp) -> "BiPoly":
        out = {}
        for j, col in enumerate(vp):
            for i, a in enumerate(col):
                if a:
                    out[(i, j)] = a
        return BiPoly(out)

    def __repr__(self):
        if not self.c:
            return "0"
        bits = []
        for (i, j) in sorted(self.c, key=lambda k: (k[1], k[0])):
            a = self.c[(i, j)]
            term = str(a)
            if i:
                term += f"*u^{i}"
            if j:
                term += f"*v^{j}"
            bits.append(term)
        return " + ".join(bits)


def bipoly_gcd(p: BiPoly, q: BiPoly) -> BiPoly:
    if p.is_zero():
        return q
    if q.is_zero():
        return p
    g = BiPoly._from_v(_vgcd(p._to_v(), q._to_v()))
    if g.lead_sign() < 0:
        g = -g
    return g


def bipoly_divexact(p: BiPoly, d: BiPoly) -> BiPoly:
    """Exact division in Z[u, v] (d known to divide p)."""
    if d.is_zero():
        raise ZeroDivisionError
    if len(d.c) == 1:
        ((iu, iv), a), = d.c.items()
        out = {}
        for (i, j), c in p.c.items():
            if c % a:
                raise ArithmeticError("inexact monomial division")
            out[(i - iu, j - iv)] = c // a
        if any(i < 0 or j < 0 for (i, j) in out):
            raise ArithmeticError("inexact monomial division")
        return BiPoly(out)
    pv, dv = p._to_v(), d._to_v()
    out = [[] for _ in range(max(len(pv) - len(dv) + 1, 0))]
    r = [list(c) for c in pv]
    while r and len(r) >= len(dv):
        c = _udivexact(r[-1], dv[-1])
        pos = len(r) - len(dv)
        out[pos] = c
        for j, bb in enumerate(dv):
            r[pos + j] = _uadd(r[pos + j], _uneg(_umul(c, bb)))
        _vtrim(r)
    if r:
        raise ArithmeticError("inexact division in Z[u,v]")
    return BiPoly._from_v(out)


# ---------------------------------------------------------------------------
# RatQT: canonical fractions
# ---------------------------------------------------------------------------

class RatQT:
    """Element of Q(u, v), canonical: coprime parts, joint content 1,
    positive leading denominator coefficient."""

    __slots__ = ("num", "den")

    def __init__(self, num: BiPoly, den: BiPoly = None, reduce_fraction: bool = True):
        if den is None:
            den = BiPoly.const(1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce_fraction:
            num, den = self._canonical(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def _canonical(num, den):
        if num.is_zero():
            return num, BiPoly.const(1)
        g = bipoly_gcd(num, den)
        if g.c != {(0, 0): 1}:
            num = bipoly_divexact(num, g)
            den = bipoly_divexact(den, g)
        c = math.gcd(num.content(), den.content())
        if c > 1:
            num, den = num.div_int(c), den.div_int(c)
        if den.lead_sign() < 0:
            num, den = -num, -den
        return num, den

    # ---- constructors ----
    @staticmethod
    def from_int(n: int) -> "RatQT":
        return RatQT(BiPoly.const(n), BiPoly.const(1), reduce_fraction=False)

    @staticmethod
    def from_fraction(fr) -> "RatQT":
        fr = Fraction(fr)
        num = BiPoly.const(fr.numerator)
        den = BiPoly.const(fr.denominator)
        return RatQT(num, den, reduce_fraction=False)

    @staticmethod
    def u_power(n: int) -> "RatQT":
        if n >= 0:
            return RatQT(BiPoly.mono(n, 0), BiPoly.const(1), reduce_fraction=False)
        return RatQT(BiPoly.const(1), BiPoly.mono(-n, 0), reduce_fraction=False)

    @staticmethod
    def v_power(n: int) -> "RatQT":
        if n >= 0:
            return RatQT(BiPoly.mono(0, n), BiPoly.const(1), reduce_fraction=False)
        return RatQT(BiPoly.const(1), BiPoly.mono(0, -n), reduce_fraction=False)

    @staticmethod
    def q_power(r) -> "RatQT":
        """q^r for rational r with 4r integral."""
        fr = Fraction(r) * 4
        if fr.denominator != 1:
            raise ValueError(f"q-exponent {r} is not a multiple of 1/4")
        return RatQT.u_power(fr.numerator)

    @staticmethod
    def t_power(r) -> "RatQT":
        """t^r for rational r with 2r integral."""
        fr = Fraction(r) * 2
        if fr.denominator != 1:
            raise ValueError(f"t-exponent {r} is not a multiple of 1/2")
        return RatQT.v_power(fr.numerator)

    # ---- predicates ----
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.c == {(0, 0): 1} and self.den.c == {(0, 0): 1}

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    # ---- arithmetic ----
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        g = bipoly_gcd(b, d)
        if g.c == {(0, 0): 1}:
            num = a * d + c * b
            den = b * d
            num, den = self._strip_content(num, den)
            return RatQT(num, den, reduce_fraction=False)
        bp = bipoly_divexact(b, g)
        dp = bipoly_divexact(d, g)
        num = a * dp + c * bp
        if num.is_zero():
            return ZERO
        g2 = bipoly_gcd(num, g)
        if g2.c != {(0, 0): 1}:
            num = bipoly_divexact(num, g2)
            g = bipoly_divexact(g, g2)
        den = bp * dp * g
        num, den = self._strip_content(num, den)
        return RatQT(num, den, reduce_fraction=False)

    @staticmethod
    def _strip_content(num, den):
        if num.is_zero():
            return num, BiPoly.const(1)
        c = math.gcd(num.content(), den.content())
        if c > 1:
            num, den = num.div_int(c), den.div_int(c)
        if den.lead_sign() < 0:
            num, den = -num, -den
        return num, den

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return RatQT(-self.num, self.den, reduce_fraction=False)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        a, b, c, d = self.num, self.den, other.num, other.den
        g1 = bipoly_gcd(a, d)
        if g1.c != {(0, 0): 1}:
            a = bipoly_divexact(a, g1)
            d = bipoly_divexact(d, g1)
        g2 = bipoly_gcd(c, b)
        if g2.c != {(0, 0): 1}:
            c = bipoly_divexact(c, g2)
            b = bipoly_divexact(b, g2)
        num, den = self._strip_content(a * c, b * d)
        return RatQT(num, den, reduce_fraction=False)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero RatQT")
        return self * RatQT(other.den, other.num)

    def __rtruediv__(self, other):
        other = _coerce(other)
        return other / self

    def __pow__(self, n: int):
        if n == 0:
            return ONE
        base = self if n > 0 else RatQT(self.den, self.num)
        out = ONE
        for _ in range(abs(n)):
            out = out * base
        return out

    # ---- substitutions ----
    def subs_u0(self) -> "RatQT":
        """The q -> 0 limit: substitute u = 0 in canonical form."""
        den0 = self.den.subs_u0()
        if den0.is_zero():
            raise PoleAtQZero(f"pole at q=0 in {self!r}")
        return RatQT(self.num.subs_u0(), den0)

    def subs_v_inv(self) -> "RatQT":
        """Substitute v -> 1/v (the t -> 1/t involution)."""
        dn, dd = self.num.v_degree(), self.den.v_degree()
        num = self.num.v_reversed()
        den = self.den.v_reversed()
        if dn > dd:
            den = den * BiPoly.mono(0, dn - dd)
        elif dd > dn:
            num = num * BiPoly.mono(0, dd - dn)
        return RatQT(num, den)

    def __repr__(self):
        if self.den.c == {(0, 0): 1}:
            return f"({self.num!r})"
        return f"({self.num!r}) / ({self.den!r})"


def _coerce(x):
    if isinstance(x, RatQT):
        return x
    if isinstance(x, int):
        return RatQT.from_int(x)
    if isinstance(x, Fraction):
        return RatQT.from_fraction(x)
    return None


ZERO = RatQT.from_int(0)
ONE = RatQT.from_int(1)
U = RatQT.u_power(1)
V = RatQT.v_power(1)
Q = RatQT.u_power(4)
T = RatQT.v_power(2)


# ---------------------------------------------------------------------------
# numeric contexts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParamPoint:
    """Numeric evaluation context: q = exp(-1/a) in (0,1), t = q^k,
    with the canonical branch q^z = exp(-z/a) for all fractional powers."""

    k: complex
    q: float = None
    a: float = None
    tail_tol: float = 1e-15
    quad_tol: float = 1e-10
    max_nodes: int = 1 << 15

    def __post_init__(self):
        if self.q is None and self.a is None:
            raise ValueError("need q or a")
        if self.q is None:
            object.__setattr__(self, "q", math.exp(-1.0 / self.a))
        if self.a is None:
            if not 0.0 < self.q < 1.0:
                raise ValueError("q must lie in (0, 1)")
            object.__setattr__(self, "a", -1.0 / math.log(self.q))
        if not 0.0 < self.q < 1.0:
            raise ValueError("q must lie in (0, 1)")
        object.__setattr__(self, "k", complex(self.k))

    def qpow(self, z) -> complex:
        """q^z = exp(-z/a), the single canonical branch."""
        return cmath.exp(-complex(z) / self.a)

    @property
    def t(self) -> complex:
        return self.qpow(self.k)


def rat_eval(f: RatQT, pt: ParamPoint) -> complex:
    """Evaluate f at u = q^{1/4}, v = t^{1/2} under the canonical branch."""
    u = pt.qpow(0.25)
    v = pt.qpow(pt.k / 2)
    den = f.den.eval(u, v)
    scale = f.den.abs_bound(abs(u), abs(v))
    if abs(den) <= 1e-14 * max(scale, 1e-300):
        raise DenominatorVanishes(f"denominator of size {abs(den):.3g} at q={pt.q}, k={pt.k}")
    return f.num.eval(u, v) / den


def rat_q0_limit(f: RatQT) -> RatQT:
    """The rational function of v obtained by letting q -> 0 (u = 0)."""
    return f.subs_u0()
