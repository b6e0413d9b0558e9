"""Special-function evaluations living behind the correlation kernels.

Integer-order Bessel values and their order-derivatives come from contour
and real-line integral representations evaluated by node-doubling
quadrature; the Airy function is a stitched Maclaurin series (evaluated in
elevated precision, since the series cancels about thirteen digits near
the stitch point) and asymptotic expansion; Charlier auxiliaries are the
contour and cut integrals the kernel's integral form is assembled from.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from mpmath import mp, mpf
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad

from ._util import log_factorial

__all__ = [
    "ConvergenceError",
    "airy_ai",
    "airy_ai_prime",
    "bessel_j",
    "bessel_j_orderderiv",
    "bessel_j_real_order",
    "charlier_auxiliary_A",
    "charlier_contour_D",
    "charlier_cut_F",
    "charlier_radius",
    "hermite_psi",
]


class ConvergenceError(RuntimeError):
    """A node-doubling quadrature failed to stabilize below its cap."""


TRAPEZOID_START = 256
TRAPEZOID_CAP = 1 << 16
_QUAD_TOL = 1e-12


def _trapezoid_periodic_witherr(integrand, tol: float = _QUAD_TOL):
    """(1/2pi) * integral over [-pi, pi) of a smooth 2pi-periodic integrand,
    returned together with an absolute noise estimate.

    Uniform nodes, count doubling from TRAPEZOID_START until two successive
    refinements agree within tol (spectral for periodic analytic data).
    Cancellation between large samples leaves a roundoff floor proportional
    to the largest sample magnitude; agreement below that floor is accepted
    and the floor is reported as the attainable accuracy.
    """
    prev = None
    n = TRAPEZOID_START
    while n <= TRAPEZOID_CAP:
        theta = -np.pi + (2.0 * np.pi / n) * np.arange(n)
        samples = integrand(theta)
        val = complex(np.mean(samples))
        floor = 8e-16 * float(np.max(np.abs(samples)))
        if prev is not None and abs(val - prev) <= max(tol * max(1.0, abs(val)), floor):
            return val, max(floor, abs(val - prev))
        prev = val
        n *= 2
    raise ConvergenceError("periodic trapezoid rule did not stabilize")


def _trapezoid_periodic(integrand, tol: float = _QUAD_TOL) -> complex:
    return _trapezoid_periodic_witherr(integrand, tol)[0]


@lru_cache(maxsize=64)
def _panel_rule(order: int):
    x, w = leggauss(order)
    return x, w


def _gauss_panels_witherr(integrand, a: float, b: float, tol: float = _QUAD_TOL):
    """Integral over [a, b] by composite Gauss-Legendre with panel doubling,
    returned together with an absolute noise estimate."""
    x0, w0 = _panel_rule(32)
    prev = None
    panels = 8
    while panels <= 4096:
        edges = np.linspace(a, b, panels + 1)
        mid = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * (edges[1] - edges[0])
        nodes = (mid[:, None] + half * x0[None, :]).ravel()
        weights = (half * np.broadcast_to(w0, (panels, len(w0)))).ravel()
        terms = weights * integrand(nodes)
        val = complex(np.sum(terms))
        floor = 8e-16 * float(np.sum(np.abs(terms)))
        if prev is not None and abs(val - prev) <= max(tol * max(1.0, abs(val)), floor):
            return val, max(floor, abs(val - prev))
        prev = val
        panels *= 2
    raise ConvergenceError("panel quadrature did not stabilize")


def _gauss_panels(integrand, a: float, b: float, tol: float = _QUAD_TOL) -> complex:
    return _gauss_panels_witherr(integrand, a, b, tol)[0]


# ---------------------------------------------------------------------------
# Bessel functions of integer and real order, argument 2 sqrt(alpha)


def _bessel_taylor(n: int, t: float) -> float:
    """Origin series for J_n(t), n >= 0; used past the turning point where
    the value is superexponentially small and only this route keeps
    relative accuracy."""
    lead = n * math.log(0.5 * t) - log_factorial(n)
    if lead < -745.0:
        return 0.0
    term = math.exp(lead)
    total = term
    q = 0.25 * t * t
    for k in range(1, 500):
        term *= -q / (k * (n + k))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            return total
    raise ConvergenceError("Bessel origin series stalled")


@lru_cache(maxsize=1 << 18)
def bessel_j(x: int, alpha: float) -> float:
    """J_x(2 sqrt(alpha)) for integer order x of either sign.

    Orders beyond the turning point use the origin series (the oscillatory
    integral only has absolute accuracy, which is not enough where the value
    is tiny and later multiplied by large order-derivative factors); the
    series is avoided near the turning point at large argument, where its
    alternating terms grow before the factorial takes over.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    t = 2.0 * math.sqrt(alpha)
    n = abs(x)
    sign = -1.0 if (x < 0 and (n & 1)) else 1.0
    if n > t + 2.0 and (t <= 30.0 or n > 0.25 * t * t):
        return sign * _bessel_taylor(n, t)

    def integrand(theta):
        return np.exp(1j * (x * theta - t * np.sin(theta)))

    return _trapezoid_periodic(integrand).real


def bessel_j_real_order(nu: float, alpha: float) -> float:
    """J_nu(2 sqrt(alpha)) for real order, from the oscillatory contour part
    plus the cut correction carrying sin(pi nu)."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    t = 2.0 * math.sqrt(alpha)
    sa = math.sqrt(alpha)

    def osc(theta):
        return np.cos(nu * theta - t * np.sin(theta))

    term1 = _gauss_panels(osc, 0.0, np.pi).real / np.pi

    def line(s):
        return math.exp(sa * (s - 1.0 / s) + (nu - 1.0) * math.log(s))

    term2, _ = quad(line, 0.0, 1.0, epsabs=1e-13, epsrel=1e-12, limit=300)
    return term1 - math.sin(math.pi * nu) / math.pi * term2


@lru_cache(maxsize=1 << 16)
def bessel_j_orderderiv(x: int, alpha: float) -> float:
    """d/d nu of J_nu(2 sqrt(alpha)) at integer nu = x."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    t = 2.0 * math.sqrt(alpha)
    sa = math.sqrt(alpha)

    def osc(theta):
        return theta * np.sin(x * theta - t * np.sin(theta))

    term1 = -_gauss_panels(osc, 0.0, np.pi).real / np.pi

    def line(s):
        return math.exp(sa * (s - 1.0 / s) + (x - 1.0) * math.log(s))

    term2, _ = quad(line, 0.0, 1.0, epsabs=1e-13, epsrel=1e-12, limit=300)
    return term1 - (-1.0) ** (x & 1) * term2


# ---------------------------------------------------------------------------
# Airy function by stitched series / asymptotics

_AIRY_SWITCH = 8.0


@lru_cache(maxsize=1)
def _airy_series_constants():
    with mp.workdps(50):
        c1 = mp.power(3, mpf(-2) / 3) / mp.gamma(mpf(2) / 3)
        c2 = mp.power(3, mpf(-1) / 3) / mp.gamma(mpf(1) / 3)
        return +c1, +c2


def _airy_series(x: float) -> tuple[float, float]:
    """(Ai, Ai') by Maclaurin series, evaluated with 40 working digits
    because the two sub-series cancel heavily for positive x near 8."""
    with mp.workdps(40):
        xm = mpf(x)
        x3 = xm * xm * xm
        f = term_f = mpf(1)
        fp = mpf(0)
        g = term_g = xm
        gp = mpf(1)
        k = 1
        while True:
            term_f = term_f * x3 / ((3 * k) * (3 * k - 1))
            term_g = term_g * x3 / ((3 * k + 1) * (3 * k))
            f += term_f
            g += term_g
            if xm != 0:
                fp += term_f * (3 * k) / xm
                gp += term_g * (3 * k + 1) / xm
            if abs(term_f) < mpf("1e-45") * (1 + abs(f)) and abs(term_g) < mpf("1e-45") * (1 + abs(g)):
                break
            k += 1
            if k > 400:
                raise ConvergenceError("airy series did not converge")
        c1, c2 = _airy_series_constants()
        return float(c1 * f - c2 * g), float(c1 * fp - c2 * gp)


def _airy_asym_coeffs(nmax: int = 40) -> tuple[list[float], list[float]]:
    u = [1.0]
    v = [1.0]
    for k in range(1, nmax):
        uk = u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (216.0 * k * (2 * k - 1))
        u.append(uk)
        v.append(-uk * (6 * k + 1) / (6 * k - 1))
    return u, v


_ASYM_U, _ASYM_V = _airy_asym_coeffs()


def _asym_sum(coeffs, zeta: float, stride: int = 1, offset: int = 0) -> float:
    """Alternating asymptotic sum of coeffs[k]/zeta^k over k = offset,
    offset+stride, ..., truncated at the smallest term."""
    total = 0.0
    prev = math.inf
    sign = 1.0
    for k in range(offset, len(coeffs), stride):
        term = coeffs[k] / zeta**k
        if abs(term) > prev:
            break
        total += sign * term
        sign = -sign
        prev = abs(term)
        if abs(term) < 1e-18:
            break
    return total


def _airy_asym(x: float) -> tuple[float, float]:
    if x > 0:
        zeta = (2.0 / 3.0) * x**1.5
        pre = math.exp(-zeta) / (2.0 * math.sqrt(math.pi))
        ai = pre * x**-0.25 * _asym_sum(_ASYM_U, zeta)
        aip = -pre * x**0.25 * _asym_sum(_ASYM_V, zeta)
        return ai, aip
    z = -x
    zeta = (2.0 / 3.0) * z**1.5
    phi = zeta + math.pi / 4.0
    s_even = _asym_sum(_ASYM_U, zeta, stride=2, offset=0)
    s_odd = _asym_sum(_ASYM_U, zeta, stride=2, offset=1)
    d_even = _asym_sum(_ASYM_V, zeta, stride=2, offset=0)
    d_odd = _asym_sum(_ASYM_V, zeta, stride=2, offset=1)
    pre = 1.0 / (math.sqrt(math.pi) * z**0.25)
    ai = pre * (math.sin(phi) * s_even - math.cos(phi) * s_odd)
    aip = -(z**0.25 / math.sqrt(math.pi)) * (math.cos(phi) * d_even + math.sin(phi) * d_odd)
    return ai, aip


@lru_cache(maxsize=1 << 18)
def _airy_pair(x: float) -> tuple[float, float]:
    if abs(x) <= _AIRY_SWITCH:
        return _airy_series(x)
    return _airy_asym(x)


def airy_ai(x: float) -> float:
    """The Airy function Ai."""
    return _airy_pair(float(x))[0]


def airy_ai_prime(x: float) -> float:
    """Derivative Ai' of the Airy function."""
    return _airy_pair(float(x))[1]


# ---------------------------------------------------------------------------
# Hermite functions (orthonormal for weight e^{-x^2}, times e^{-x^2/2})


def hermite_psi(m: int, x: float) -> tuple[float, float]:
    """(psi_{m-1}(x), psi_m(x)) by the stable upward recurrence,
    psi_n = h_n e^{-x^2/2} with h_n orthonormal against e^{-x^2}."""
    if m < 1:
        raise ValueError("m must be positive")
    prev = 0.0
    cur = math.pi**-0.25 * math.exp(-0.5 * x * x)
    for n in range(m):
        nxt = x * math.sqrt(2.0 / (n + 1)) * cur - math.sqrt(n / (n + 1.0)) * prev
        prev, cur = cur, nxt
    return prev, cur


# ---------------------------------------------------------------------------
# Charlier kernel auxiliaries


def charlier_radius(m: int, alpha: float) -> float:
    """Contour radius: 1/2 in the large-m regime, pushed toward the unit
    circle (the edge saddle) otherwise, and kept 25% away from the branch
    circle sqrt(alpha)/m where the logarithmic auxiliaries have their cut."""
    sa = math.sqrt(alpha)
    branch = sa / m
    if m >= 4.0 * sa:
        r = 0.5
    else:
        r = max(0.5, 1.0 - 2.0 * sa / m)
    if r < 1.25 * branch:
        r = 1.3 * branch
    return r


@lru_cache(maxsize=1 << 16)
def charlier_auxiliary_A(m: int, alpha: float, x: int) -> float:
    """Positive prefactor A(x) multiplying the contour products in the
    kernel's integral form; tends to sqrt(alpha) for x near m + O(sqrt(alpha))."""
    if x < 0:
        return 0.0
    a = alpha / m
    sa = math.sqrt(alpha)
    log_val = 0.5 * math.log(alpha) + log_factorial(m) - m * math.log(m)
    log_val += -a + x * math.log(a) - log_factorial(x)
    log_val += 2.0 * x * math.log1p(m / sa) - 2.0 * sa
    return math.exp(log_val)


def _charlier_g(which: int, z, m: int, alpha: float):
    sa = math.sqrt(alpha)
    if which == 1:
        return np.ones_like(z)
    if which == 2:
        return z - 1.0
    w = (sa + m * z) / (sa + m)
    if which == 3:
        return w * np.log(w)
    if which == 4:
        return (z - 1.0) * w * np.log(w)
    raise ValueError("which must be 1..4")


@lru_cache(maxsize=1 << 16)
def charlier_contour_D_witherr(
    m: int, alpha: float, x: int, which: int, r: float | None = None
):
    """Circle integral (1/2pi) int g(z) e^{sqrt(alpha)(1-z)} W(z)^x z^{-m} dtheta
    on z = r e^{i theta}, with W(z) = (sqrt(alpha) + m z)/(sqrt(alpha) + m),
    returned together with an absolute noise estimate.

    The polynomial auxiliaries (which 1, 2) are periodic-analytic and use
    the trapezoid rule; the logarithmic ones (3, 4) lose periodicity when
    the contour encloses the branch point and switch to panel quadrature.
    """
    if r is None:
        r = charlier_radius(m, alpha)
    sa = math.sqrt(alpha)

    def integrand(theta):
        z = r * np.exp(1j * theta)
        w = (sa + m * z) / (sa + m)
        log_core = sa * (1.0 - z) + x * np.log(w) - m * np.log(z)
        return _charlier_g(which, z, m, alpha) * np.exp(log_core)

    crosses_cut = r > sa / m
    if which in (3, 4) and crosses_cut:
        val, noise = _gauss_panels_witherr(integrand, -np.pi, np.pi)
        val /= 2.0 * np.pi
        noise /= 2.0 * np.pi
    else:
        val, noise = _trapezoid_periodic_witherr(integrand)
    return val.real, noise


def charlier_contour_D(m: int, alpha: float, x: int, which: int, r: float | None = None) -> float:
    return charlier_contour_D_witherr(m, alpha, x, which, r)[0]


@lru_cache(maxsize=1 << 16)
def charlier_cut_F_witherr(
    m: int, alpha: float, x: int, which: int, r: float | None = None
):
    """Cut correction int_{sqrt(alpha)/m}^{r} g(-s) e^{sqrt(alpha)(1+s)}
    |(sqrt(alpha) - m s)/(sqrt(alpha) + m)|^x s^{-m} ds/s with alternating
    sign, returned together with an absolute noise estimate; identically
    zero when the contour stays inside the branch circle.

    The auxiliary g is evaluated at -s, the point on the negative real axis
    the deformed contour actually passes through; evaluating it at +s leaves
    an O(1) defect against the exact projection kernel.
    """
    if r is None:
        r = charlier_radius(m, alpha)
    sa = math.sqrt(alpha)
    lower = sa / m
    if r <= lower:
        return 0.0, 0.0
    sign = (-1.0) ** ((x + m + 1) & 1)

    def line(s):
        g = float(np.real(_charlier_g(which, np.array(-s + 0j), m, alpha)))
        log_core = sa * (1.0 + s) - (m + 1.0) * math.log(s)
        body = abs((sa - m * s) / (sa + m))
        if body == 0.0:
            return 0.0
        log_core += x * math.log(body)
        return g * math.exp(log_core)

    val, err = quad(line, lower, r, epsabs=1e-13, epsrel=1e-12, limit=300)
    return sign * val, max(err, 1e-15 * abs(val))


def charlier_cut_F(m: int, alpha: float, x: int, which: int, r: float | None = None) -> float:
    return charlier_cut_F_witherr(m, alpha, x, which, r)[0]
