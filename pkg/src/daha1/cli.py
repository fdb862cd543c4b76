"""Command-line harness: polynomial parsing, parameter grids, verification
suites, and machine-readable NDJSON reports.

Usage:  daha1 <suite> --config cfg.json [--out report.ndjson] [--jobs N]

The config is one JSON document:

    {"suite": "...", "grid": {...}, "tol": 1e-8, "truncation": {...}}

Grid keys are arrays; the suite runs the Cartesian product of the keys it
uses.  Polynomials are given in the term grammar  coef*X^n  joined by + and -,
with coef a rational number and/or powers q^(p/4), t^(p/2).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import product

from . import continuation, globalfn, macdonald, operators, padic, rational, weights
from .laurent import LaurentPoly
from .ratfun import ONE, ParamPoint, RatQT
from .reports import CheckReport, Timer, exact_report, numeric_report


class PolySyntaxError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class ExponentOverflow(ValueError):
    pass


class ConfigError(ValueError):
    pass


MAX_EXPONENT = 10 ** 6

_TOKEN = re.compile(r"\s*(?:(\d+)|([qtX])|(\^)|(\()|(\))|(\*)|(\+)|(-)|(/))")


def _tokenize(src: str):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m or m.end() == m.start():
            stripped = src[pos:].lstrip()
            if not stripped:
                break
            raise PolySyntaxError(f"unexpected character {stripped[0]!r}", pos)
        groups = m.groups()
        for idx, name in enumerate(("int", "name", "caret", "lpar", "rpar", "star", "plus", "minus", "slash")):
            if groups[idx] is not None:
                tokens.append((name, groups[idx], m.start()))
                break
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind and tok[0] != kind:
            raise PolySyntaxError(f"expected {kind}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def parse_signed_int(self) -> int:
        sign = 1
        if self.peek()[0] == "minus":
            self.take()
            sign = -1
        tok = self.take("int")
        return sign * int(tok[1])

    def parse_exponent_fraction(self) -> Fraction:
        """Integer or (a/b), both possibly negative."""
        if self.peek()[0] == "lpar":
            self.take()
            numer = self.parse_signed_int()
            if self.peek()[0] == "slash":
                self.take()
                denom = self.take("int")
                frac = Fraction(numer, int(denom[1]))
            else:
                frac = Fraction(numer)
            self.take("rpar")
            return frac
        return Fraction(self.parse_signed_int())

    def parse_factor(self):
        """Returns (RatQT coefficient, X exponent)."""
        kind, text, pos = self.peek()
        if kind == "int":
            self.take()
            numer = int(text)
            if self.peek()[0] == "slash":
                self.take()
                denom = self.take("int")
                return RatQT.from_fraction(Fraction(numer, int(denom[1]))), 0
            return RatQT.from_int(numer), 0
        if kind == "name":
            self.take()
            expo = Fraction(1)
            if self.peek()[0] == "caret":
                self.take()
                expo = self.parse_exponent_fraction()
            if text == "X":
                if expo.denominator != 1:
                    raise PolySyntaxError("X exponent must be an integer", pos)
                n = int(expo)
                if abs(n) > MAX_EXPONENT:
                    raise ExponentOverflow(f"X exponent {n} exceeds {MAX_EXPONENT}")
                return ONE, n
            try:
                return (RatQT.q_power(expo) if text == "q" else RatQT.t_power(expo)), 0
            except ValueError as exc:
                raise PolySyntaxError(str(exc), pos)
        raise PolySyntaxError(f"expected a factor, found {text!r}", pos)

    def parse_term(self):
        coeff, xexp = self.parse_factor()
        while self.peek()[0] == "star":
            self.take()
            c2, e2 = self.parse_factor()
            coeff = coeff * c2
            xexp += e2
            if abs(xexp) > MAX_EXPONENT:
                raise ExponentOverflow(f"X exponent {xexp} exceeds {MAX_EXPONENT}")
        return coeff, xexp

    def parse(self) -> LaurentPoly:
        out = {}
        sign = 1
        if self.peek()[0] == "minus":
            self.take()
            sign = -1
        elif self.peek()[0] == "plus":
            self.take()
        while True:
            coeff, xexp = self.parse_term()
            if sign < 0:
                coeff = -coeff
            cur = out.get(xexp)
            out[xexp] = coeff if cur is None else cur + coeff
            kind, text, pos = self.peek()
            if kind == "end":
                break
            if kind == "plus":
                sign = 1
            elif kind == "minus":
                sign = -1
            else:
                raise PolySyntaxError(f"expected + or -, found {text!r}", pos)
            self.take()
        return LaurentPoly(out)


def parse_poly(src: str) -> LaurentPoly:
    """Parse `coef*X^n` terms joined by + and - into an exact LaurentPoly."""
    return _Parser(src).parse()


def _coeff_monomial(r: RatQT):
    """Decompose a monomial coefficient as (Fraction, u_power, v_power)."""
    if len(r.num.c) != 1 or len(r.den.c) != 1:
        raise ValueError(f"coefficient {r!r} is not a printable monomial")
    ((nu, nv), nc), = r.num.c.items()
    ((du, dv), dc), = r.den.c.items()
    return Fraction(nc, dc), nu - du, nv - dv


def format_poly(f: LaurentPoly) -> str:
    """Render a monomial-coefficient polynomial in the parser grammar."""
    if f.is_zero():
        return "0"
    bits = []
    for n in sorted(f.c):
        frac, up, vp = _coeff_monomial(f.c[n])
        parts = []
        if abs(frac) != 1 or (up == 0 and vp == 0):
            parts.append(str(abs(frac)))
        if up:
            parts.append(f"q^({Fraction(up, 4)})")
        if vp:
            parts.append(f"t^({Fraction(vp, 2)})")
        parts.append(f"X^{n}")
        term = "*".join(parts)
        if not bits:
            bits.append(term if frac > 0 else f"-{term}")
        else:
            bits.append(f"+ {term}" if frac > 0 else f"- {term}")
    return " ".join(bits)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def _param_points(grid, truncation):
    kwargs = dict(truncation or {})
    ks = grid.get("k", [0.5])
    if "q" in grid:
        return [ParamPoint(k=k, q=q, **kwargs) for q in grid["q"] for k in ks]
    if "a" in grid:
        return [ParamPoint(k=k, a=a, **kwargs) for a in grid["a"] for k in ks]
    return [ParamPoint(k=k, q=0.35, **kwargs) for k in ks]


def _polys(grid, key, default):
    return [parse_poly(s) for s in grid.get(key, default)]


def _suite_relations(grid, tol, truncation):
    out = []
    for deg in grid.get("deg", [6]):
        out.append(operators.check_daha_relations(deg))
        out.append(operators.check_tau_plus_gaussian(min(deg, 4)))
        out.append(operators.check_fourier_automorphism(min(deg, 4)))
    return out


def _suite_epoly(grid, tol, truncation):
    out = []
    for n in grid.get("n", list(range(-8, 9))):
        with Timer() as tm:
            E = macdonald.epoly(n)
            eig_ok = operators.y_op(E.poly) == E.poly * E.eigenvalue
            allowed = set(macdonald.ordered_basis(n))
            tri_ok = set(E.poly.c) <= allowed
            monic = E.poly.coeff(n).is_one()
        out.append(exact_report(
            "epoly-eigen", {"n": n, "eigen": eig_ok, "triangular": tri_ok, "monic": monic},
            eig_ok and tri_ok and monic, lhs=f"E_{n}", rhs="Y-eigenvector",
            runtime_ms=tm.ms))
    return out


def _suite_orthogonality(grid, tol, truncation):
    out = []
    for deg in grid.get("deg", [6]):
        bad = []
        with Timer() as tm:
            labels = list(range(-deg, deg + 1))
            for i, n in enumerate(labels):
                for m in labels[i + 1:]:
                    if (n + m) % 2 == 0 and not weights.ct_pair_e(n, m).is_zero():
                        bad.append((n, m))
        out.append(exact_report(
            "ct-orthogonality", {"deg": deg, "violations": bad},
            not bad, lhs="<E_n, E_m> off-diagonal", rhs="0", runtime_ms=tm.ms))
    return out


def _suite_thm61(grid, tol, truncation):
    out = []
    one = LaurentPoly.one()
    fs = _polys(grid, "f", ["X^2"])
    gs = _polys(grid, "g", ["X^-2"])
    for pt in _param_points(grid, truncation):
        val = continuation.shapovalov_form(one, one, pt)
        out.append(numeric_report("shapovalov-unit",
                                  {"q": pt.q, "k": str(pt.k)}, val, 1.0 + 0j, tol))
        for f, g in zip(fs, gs):
            v1 = continuation.shapovalov_form(f, g, pt)
            v2 = continuation.shapovalov_form(g, f, pt)
            out.append(numeric_report(
                "shapovalov-symmetry",
                {"q": pt.q, "k": str(pt.k), "f": format_poly(f), "g": format_poly(g)},
                v1, v2, tol))
    return out


def _suite_overlap(grid, tol, truncation):
    out = []
    fs = _polys(grid, "f", ["X^2"])
    gs = _polys(grid, "g", ["X^2"])
    for pt in _param_points(grid, truncation):
        if not -0.5 < pt.k.real < 0:
            raise ConfigError(f"overlap strip requires -1/2 < Re k < 0, got {pt.k}")
        for f, g in zip(fs, gs):
            va = continuation.shapovalov_form(f, g, pt, branch="quarter")
            vb = continuation.shapovalov_form(f, g, pt, branch="residue")
            out.append(numeric_report(
                "branch-overlap",
                {"q": pt.q, "k": str(pt.k), "f": format_poly(f), "g": format_poly(g)},
                va, vb, tol))
    return out


def _suite_thm72(grid, tol, truncation):
    out = []
    Fs = _polys(grid, "F", ["X^2 + X^-2"])
    for pt in _param_points(grid, truncation):
        for F in Fs:
            for M in grid.get("M", [1]):
                out.append(continuation.verify_ct_identity(F, pt, M, tol=tol))
    return out


def _suite_prop73(grid, tol, truncation):
    out = []
    Fs = _polys(grid, "F", ["1"])
    for pt in _param_points(grid, truncation):
        for F in Fs:
            m = max(0, -(F.valuation() // 2))
            out.append(continuation.verify_residue_sum(F, pt, m, tol=tol))
    return out


def _suite_radical(grid, tol, truncation):
    out = []
    for q in grid.get("q", [0.35]):
        for m in grid.get("m", [0, 1]):
            pt = ParamPoint(k=-0.5 - m, q=q, **(truncation or {}))
            out.append(continuation.radical_check(m, pt))
    return out


def _suite_hc(grid, tol, truncation):
    out = []
    for pt in _param_points(grid, truncation):
        params = globalfn.GlobalSeriesParams(pt=pt)
        for xe in grid.get("x_exp", [0.7, 0.8, 0.9]):
            for le in grid.get("L_exp", [0.25, 0.31, 0.4]):
                X, L = pt.qpow(xe), pt.qpow(le)
                lhs = globalfn.phi_tilde_series(X, L, params)
                rhs = globalfn.hc_expansion(X, L, params)
                out.append(numeric_report(
                    "hc-expansion",
                    {"q": pt.q, "k": str(pt.k), "x_exp": xe, "L_exp": le},
                    lhs, rhs, tol))
    return out


def _suite_recovery(grid, tol, truncation):
    out = []
    for pt in _param_points(grid, truncation):
        params = globalfn.GlobalSeriesParams(pt=pt)
        for n in grid.get("n", [0, 1, 2, 3]):
            out.append(globalfn.recovery_check(n, params, rel_tol=tol))
    return out


def _suite_plancherel(grid, tol, truncation):
    fs = _polys(grid, "f", ["1", "X^1", "X^2", "X^-1"])
    gs = _polys(grid, "g", None) if "g" in grid else None
    out = []
    pairs = zip(fs, gs) if gs else [(f, g) for f in fs for g in fs]
    for f, g in pairs:
        out.append(padic.check_plancherel(f, g))
    return out


def _suite_e_limit(grid, tol, truncation):
    return [padic.check_e_limit(n) for n in grid.get("n", list(range(-5, 6)))]


def _suite_rational(grid, tol, truncation):
    out = []
    for (a, b) in grid.get("ab", [[2, 2], [3, 3]]):
        for k in grid.get("k", [0.3, 1.1]):
            out.append(rational.check_rational_integral(a, b, k, rel_tol=tol))
    return out


SUITES = {
    "relations": _suite_relations,
    "epoly": _suite_epoly,
    "orthogonality": _suite_orthogonality,
    "thm61": _suite_thm61,
    "thm62-overlap": _suite_overlap,
    "thm72": _suite_thm72,
    "prop73": _suite_prop73,
    "radical": _suite_radical,
    "hc": _suite_hc,
    "recovery": _suite_recovery,
    "plancherel": _suite_plancherel,
    "e-limit": _suite_e_limit,
    "rational": _suite_rational,
}


def run_suite(config: dict, jobs: int = 1):
    """Execute one suite over its parameter grid; errors become failing
    reports instead of aborting the run."""
    suite = config.get("suite")
    if suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    grid = config.get("grid", {})
    if not isinstance(grid, dict):
        raise ConfigError("grid must be an object of arrays")
    tol = float(config.get("tol", 1e-8))
    truncation = config.get("truncation", {})

    def run():
        try:
            return SUITES[suite](grid, tol, truncation)
        except (ConfigError,):
            raise
        except Exception as exc:   # capture into a failing report
            return [CheckReport(check_id=suite,
                                params={"error": f"{type(exc).__name__}: {exc}"},
                                lhs="error", rhs="", abs_err="error",
                                tol=tol, passed=False)]

    if jobs > 1 and grid:
        # split the grid along its longest axis and merge in order
        key = max(grid, key=lambda kk: len(grid[kk]))
        chunks = [{**config, "grid": {**grid, key: [val]}} for val in grid[key]]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(lambda c: run_suite(c, jobs=1), chunks)
        return [rep for reps in results for rep in reps]
    return run()


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="daha1",
        description="Verification suites for the A1 double affine Hecke algebra toolkit.")
    ap.add_argument("suite", choices=sorted(SUITES))
    ap.add_argument("--config", required=True, help="JSON config file")
    ap.add_argument("--out", default=None, help="write NDJSON report here (default stdout)")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args(argv)

    with open(args.config) as fh:
        config = json.load(fh)
    config["suite"] = args.suite

    reports = run_suite(config, jobs=args.jobs)
    lines = "\n".join(rep.to_json() for rep in reports)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(lines + ("\n" if lines else ""))
    else:
        sys.stdout.write(lines + ("\n" if lines else ""))
    return 0 if all(rep.passed for rep in reports) else 1


if __name__ == "__main__":
    raise SystemExit(main())
