"""The extended affine Hecke algebra of type A1 (infinite dihedral affine Weyl
group extended by Pi = Z/2), Matsumoto spherical vectors, the q -> 0 weight
pairing, and the resulting Plancherel identity.

Reduced words are pi^delta s_{j_1} ... s_{j_l} with alternating j in {0, 1};
the pair (delta, letters) is the canonical normal form.  T_w denotes the
basis element attached to the reduced word w, with T_i T_w = T_{s_i w} when
the length goes up and (t^{1/2} - t^{-1/2}) T_w + T_{s_i w} otherwise.
Coefficients are exact rational functions of v = t^{1/2}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .laurent import LaurentPoly
from .operators import t_op
from .ratfun import ONE, RatQT, T, V, ZERO, rat_q0_limit
from .reports import CheckReport, Timer, exact_report

# ---------------------------------------------------------------------------
# reduced words: (delta, letters)
# ---------------------------------------------------------------------------

IDENTITY_WORD = (0, ())
PI_WORD = (1, ())
OMEGA_WORD = (1, (1,))        # omega = pi s_1, so T_omega = pi T_1 = Y
OMEGA_INV_WORD = (1, (0,))


def word_len(w) -> int:
    return len(w[1])


def _shift(letters, delta):
    return tuple(j ^ delta for j in letters) if delta else letters


def word_mul(w1, w2):
    """Product of reduced words, reduced at the junction."""
    d1, L1 = w1
    d2, L2 = w2
    a = list(_shift(L1, d2))
    b = list(L2)
    while a and b and a[-1] == b[0]:
        a.pop()
        b.pop(0)
    return (d1 ^ d2, tuple(a + b))


def word_inv(w):
    d, L = w
    return (d, tuple(j ^ d for j in reversed(L)))


@lru_cache(maxsize=None)
def translation_word(n: int):
    """Reduced word of the translation n omega (length |n|)."""
    w = IDENTITY_WORD
    step = OMEGA_WORD if n >= 0 else OMEGA_INV_WORD
    for _ in range(abs(n)):
        w = word_mul(w, step)
    assert word_len(w) == abs(n)
    return w


def words_of_length(l: int):
    """All reduced words of the given length."""
    if l == 0:
        return [IDENTITY_WORD, PI_WORD]
    out = []
    for d in (0, 1):
        for start in (0, 1):
            out.append((d, tuple((start + i) % 2 for i in range(l))))
    return out


# ---------------------------------------------------------------------------
# algebra elements
# ---------------------------------------------------------------------------

_DELTA_V = V - RatQT.v_power(-1)


class AHAElem:
    """Finite combination of basis words with coefficients in Q(v)."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        self.c = {w: r for w, r in (coeffs or {}).items() if not r.is_zero()}

    @staticmethod
    def basis(word) -> "AHAElem":
        return AHAElem({word: ONE})

    @staticmethod
    def one() -> "AHAElem":
        return AHAElem({IDENTITY_WORD: ONE})

    def __add__(self, other):
        out = dict(self.c)
        for w, r in other.c.items():
            s = out.get(w, ZERO) + r
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return AHAElem(out)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, r) -> "AHAElem":
        r = r if isinstance(r, RatQT) else RatQT.from_int(r)
        return AHAElem({w: c * r for w, c in self.c.items()})

    def __eq__(self, other):
        return isinstance(other, AHAElem) and self.c == other.c

    def is_zero(self) -> bool:
        return not self.c

    def __repr__(self):
        if not self.c:
            return "AHAElem(0)"
        bits = [f"T{w}: {r!r}" for w, r in sorted(self.c.items(), key=lambda kv: (word_len(kv[0]), kv[0]))]
        return "AHAElem{" + ", ".join(bits) + "}"


def _mul_gen_left(i: int, elem: AHAElem) -> AHAElem:
    """T_i times elem."""
    out = {}
    def add(w, r):
        s = out.get(w, ZERO) + r
        if s.is_zero():
            out.pop(w, None)
        else:
            out[w] = s
    for (d, L), c in elem.c.items():
        ip = i ^ d
        if not L or L[0] != ip:
            add((d, (ip,) + L), c)
        else:
            add((d, L), c * _DELTA_V)
            add((d, L[1:]), c)
    return AHAElem(out)


def _mul_pi_left(elem: AHAElem) -> AHAElem:
    return AHAElem({(d ^ 1, L): c for (d, L), c in elem.c.items()})


def aha_multiply(A: AHAElem, B: AHAElem) -> AHAElem:
    """Product in the algebra, via generator-by-generator left multiplication."""
    total = AHAElem()
    for (d, L), c in A.c.items():
        r = B
        for i in reversed(L):
            r = _mul_gen_left(i, r)
        if d:
            r = _mul_pi_left(r)
        total = total + r.scale(c)
    return total


def aha_star(A: AHAElem) -> AHAElem:
    """The anti-involution T_w -> T_{w^{-1}} (coefficients fixed)."""
    out = {}
    for w, c in A.c.items():
        wi = word_inv(w)
        out[wi] = out.get(wi, ZERO) + c
    return AHAElem(out)


def aha_trace(A: AHAElem) -> RatQT:
    """Coefficient of the identity word."""
    return A.c.get(IDENTITY_WORD, ZERO)


def symmetrizer() -> AHAElem:
    """P_+ = (1 + t^{1/2} T_1) / (1 + t)."""
    inv = ONE / (ONE + T)
    return AHAElem({IDENTITY_WORD: inv, (0, (1,)): V * inv})


Y_ELEM = AHAElem.basis(OMEGA_WORD)
YINV_ELEM = AHAElem({(1, (0,)): ONE, PI_WORD: -_DELTA_V})


@lru_cache(maxsize=None)
def y_power_elem(m: int) -> AHAElem:
    if m == 0:
        return AHAElem.one()
    base = Y_ELEM if m > 0 else YINV_ELEM
    out = base
    for _ in range(abs(m) - 1):
        out = aha_multiply(out, base)
    return out


# ---------------------------------------------------------------------------
# the spherical module H P_+ in the basis {Y^m P_+}
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SphericalVector:
    """Expansion of an element of H P_+ in the basis {Y^m P_+ : m in Z}."""

    coeffs: tuple   # sorted tuple of (m, RatQT)

    @staticmethod
    def from_dict(d: dict) -> "SphericalVector":
        return SphericalVector(tuple(sorted((m, r) for m, r in d.items() if not r.is_zero())))

    def as_dict(self) -> dict:
        return dict(self.coeffs)


def _rep_reduce(elem: AHAElem) -> dict:
    """Coefficients on the coset representatives (words not ending in s_1):
    elem = sum a_r T_r P_+, using T_r P_+ = (T_r + v T_{r s_1})/(1 + t).
    Requires elem in H P_+; consistency of paired coefficients is asserted."""
    one_plus_t = ONE + T
    reps = {}
    paired = {}
    for (d, L), c in elem.c.items():
        if L and L[-1] == 1:
            paired[(d, L)] = c
        else:
            reps[(d, L)] = c * one_plus_t
    for r, a in reps.items():
        d, L = r
        partner = (d, L + (1,))
        expect = a * V / one_plus_t
        got = paired.pop(partner, ZERO)
        if got != expect:
            raise ValueError("element is not in the spherical submodule")
    if paired:
        raise ValueError("stray words ending in s_1: element not in H P_+")
    return reps


@lru_cache(maxsize=None)
def _rep_for_m(m: int):
    """Representative word carrying the leading term of Y^m P_+."""
    if m >= 1:
        d, L = translation_word(m)
        assert L and L[-1] == 1
        return (d, L[:-1])
    return translation_word(m)


@lru_cache(maxsize=None)
def _y_power_reps(m: int):
    """Rep-reduced expansion of Y^m P_+ as a dict {rep word: RatQT}."""
    elem = aha_multiply(y_power_elem(m), symmetrizer())
    return _rep_reduce(elem)


def spherical_expand(elem: AHAElem) -> SphericalVector:
    """Expand an element of H P_+ in {Y^m P_+} by triangular elimination."""
    reps = _rep_reduce(elem)
    out = {}
    while reps:
        r = max(reps, key=lambda w: (word_len(w), w))
        l = word_len(r)
        candidates = [-l, l + 1] if l >= 1 else [0, 1]
        m = next(mc for mc in candidates if _rep_for_m(mc) == r)
        lead = _y_power_reps(m)[r]
        cm = reps[r] / lead
        for w, a in _y_power_reps(m).items():
            s = reps.get(w, ZERO) - cm * a
            if s.is_zero():
                reps.pop(w, None)
            else:
                reps[w] = s
        out[m] = cm
    return SphericalVector.from_dict(out)


def matsumoto_psi(n: int) -> SphericalVector:
    """psi_n = t^{-|n|/2} T_{n omega} P_+ in the basis {Y^m P_+}."""
    elem = aha_multiply(AHAElem.basis(translation_word(n)), symmetrizer())
    return spherical_expand(elem.scale(RatQT.v_power(-abs(n))))


# ---------------------------------------------------------------------------
# q -> 0 pairing and the Plancherel identity
# ---------------------------------------------------------------------------

def _q0_poly(f: LaurentPoly) -> LaurentPoly:
    return LaurentPoly({n: rat_q0_limit(r) for n, r in f.c.items()})


def mu0_pair(f: LaurentPoly, g: LaurentPoly) -> RatQT:
    """{f, g}_0 = (f T(g) mu_0)_CT, exact in Q(v).

    mu_0 is the q -> 0 limit of the weight function in its own variable
    q^{2x} = X^2, namely (1 - X^2)/(1 - t X^2) expanded in nonnegative powers
    (the coefficientwise limit of the normalized expansion of mu); this is
    the density that reproduces the spherical-trace side exactly."""
    h = _q0_poly(f) * _q0_poly(t_op(g))
    total = h.coeff(0)
    m = 1
    while -2 * m >= h.valuation():
        c = h.coeff(-2 * m)
        if not c.is_zero():
            total = total + (T ** m - T ** (m - 1)) * c
        m += 1
    return total


def _x_to_y(f: LaurentPoly) -> AHAElem:
    """f(X -> Y, t -> 1/t) after the q -> 0 limit of the coefficients."""
    out = AHAElem()
    for m, r in f.c.items():
        r0 = rat_q0_limit(r).subs_v_inv()
        out = out + y_power_elem(m).scale(r0)
    return out


def check_plancherel(f: LaurentPoly, g: LaurentPoly) -> CheckReport:
    """{f, g}_0(t -> 1/t) = (t^{1/2} + t^{-1/2}) <(f' P_+)(g' P_+)^*>,
    both sides exact rational functions of v."""
    with Timer() as tm:
        lhs = mu0_pair(f, g).subs_v_inv()
        P = symmetrizer()
        fp = aha_multiply(_x_to_y(f), P)
        gp = aha_multiply(_x_to_y(g), P)
        rhs = (V + RatQT.v_power(-1)) * aha_trace(aha_multiply(fp, aha_star(gp)))
        equal = lhs == rhs
    return exact_report(
        "plancherel",
        {"f": sorted(f.c), "g": sorted(g.c)},
        equal, lhs=repr(lhs), rhs=repr(rhs), runtime_ms=tm.ms)


def check_e_limit(n: int) -> CheckReport:
    """E_n / E_n(t^{-1/2}) maps to psi_n under q -> 0 and X -> Y, t -> 1/t."""
    from .macdonald import epoly, eval_at_trho

    with Timer() as tm:
        E = epoly(n)
        den = eval_at_trho(E.poly, -1)
        normalized = LaurentPoly({m: r / den for m, r in E.poly.c.items()})
        elem = aha_multiply(_x_to_y(normalized), symmetrizer())
        got = spherical_expand(elem)
        want = matsumoto_psi(n)
        equal = got == want
    return exact_report(
        "e-limit",
        {"n": n},
        equal, lhs=repr(got.coeffs), rhs=repr(want.coeffs), runtime_ms=tm.ms)


def eval_v(r: RatQT, v: float) -> complex:
    """Evaluate a q-free rational function at a numeric v."""
    return r.num.eval(1.0, v) / r.den.eval(1.0, v)
