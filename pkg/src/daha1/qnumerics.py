"""Shared numeric kernels: q-Pochhammer products, theta sums, the periodized
Gaussian kernel, periodic trapezoid quadrature, and pole bookkeeping for the
weight function mu."""

from __future__ import annotations

import math

from .ratfun import ParamPoint


class PoleProximity(ArithmeticError):
    """Evaluation point or contour too close to a pole of mu."""


class NoConvergence(ArithmeticError):
    """Quadrature failed to meet quad_tol within max_nodes."""


def qpochhammer_inf(z: complex, q: float, tol: float = 1e-16, imax: int = 5000) -> complex:
    """(z; q)_infinity = prod_{i>=0} (1 - z q^i), truncated once q^i |z| < tol."""
    prod = 1.0 + 0j
    zz = complex(z)
    i = 0
    while i < imax:
        prod *= 1 - zz
        zz *= q
        i += 1
        if abs(zz) < tol:
            break
    return prod


def theta_sum(Z: complex, pt: ParamPoint) -> complex:
    """theta(Z) = sum_m q^{m^2/4} Z^m, truncated by Gaussian decay."""
    if Z == 0:
        raise ValueError("theta argument must be nonzero")
    tol = pt.tail_tol
    total = 0j
    for direction in (1, -1):
        m = 0 if direction == 1 else -1
        while True:
            term = pt.qpow(m * m / 4.0) * Z ** m
            total += term
            if abs(m) > 4 and abs(term) < tol:
                break
            if abs(m) > 600:
                break
            m += direction
    return total


def gauss_kernel(x: complex, pt: ParamPoint) -> complex:
    """Periodization of q^{-x^2} over x -> x + 2 pi i a:
    (1/(2 sqrt(pi a))) sum_j q^{j^2/4 + j x}."""
    return theta_sum(pt.qpow(x), pt) / (2.0 * math.sqrt(math.pi * pt.a))


def theta_mass(ktilde: complex, pt: ParamPoint) -> complex:
    """A(ktilde) = sqrt(pi a) sum_m q^{m^2 + 2 m ktilde} (Gaussian point mass)."""
    tol = pt.tail_tol
    total = 0j
    for direction in (1, -1):
        m = 0 if direction == 1 else -1
        while True:
            term = pt.qpow(m * m + 2 * m * ktilde)
            total += term
            if abs(m) > 4 and abs(term) < tol:
                break
            if abs(m) > 600:
                break
            m += direction
    return math.sqrt(math.pi * pt.a) * total


def trapezoid_periodic(f, half_width: float, quad_tol: float, max_nodes: int):
    """Trapezoid rule for a periodic integrand over [-half_width, half_width],
    node-doubling until successive estimates differ by less than quad_tol."""
    L = 2.0 * half_width
    n = 32
    vals = [f(-half_width + L * i / n) for i in range(n)]
    total = sum(vals)
    prev = total * L / n
    while n < max_nodes:
        mids = [f(-half_width + L * (i + 0.5) / n) for i in range(n)]
        total += sum(mids)
        n *= 2
        cur = total * L / n
        if abs(cur - prev) < quad_tol:
            return cur
        prev = cur
    raise NoConvergence(f"no convergence with {n} nodes (last delta unknown tol={quad_tol})")


def eval_table(table: dict, pt: ParamPoint, x: complex) -> complex:
    """Evaluate a numeric Laurent coefficient table at the point X = q^x."""
    return sum(c * pt.qpow(n * x) for n, c in table.items())


# ---------------------------------------------------------------------------
# pole bookkeeping: mu has poles at 2x in -k - Z_+ and 2x in k + 1 + Z_+,
# modulo the imaginary period 2 pi i a of q^{2x}.
# ---------------------------------------------------------------------------

def _lattice_distance(w: complex, period: float) -> float:
    n = round(w.imag / period)
    return abs(w - 1j * period * n)


def mu_pole_distance(x: complex, pt: ParamPoint, depth: int = 80) -> float:
    """Distance from x to the nearest pole of mu."""
    x = complex(x)
    period = math.pi * pt.a
    k = pt.k
    best = math.inf
    for i in range(depth):
        for pole2x in (-k - i, k + 1 + i):
            d = _lattice_distance(x - pole2x / 2.0, period)
            best = min(best, d)
        if i > abs(k) + 2 * abs(x) + 4 and i > 8:
            break
    return best


def contour_pole_distance(eps: float, pt: ParamPoint, depth: int = 200) -> float:
    """Distance (in Re x) from the vertical contour Re x = eps to the poles."""
    k = pt.k
    best = math.inf
    for i in range(depth):
        best = min(best, abs(eps - (-(k.real) - i) / 2.0), abs(eps - (k.real + 1 + i) / 2.0))
        if i > abs(k.real) + 2 * abs(eps) + 4:
            break
    return best
