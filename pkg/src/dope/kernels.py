"""Correlation kernels for discrete orthogonal polynomial ensembles and
their scaling limits.

Each kernel is a small frozen descriptor with an ``eval(x, y)`` method.
Off-diagonal values use the Christoffel-Darboux quotient built from
orthonormal weighted functions; diagonal values use analytically
differentiated forms (never a numeric limit of the quotient, which is
0/0 there).  The discrete Bessel kernel additionally has a series
representation, and the Airy kernel an integral representation; the
pairs of routes are kept separate so they can be cross-checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import specfun
from ._util import log_binomial, log_factorial
from .specfun import ConvergenceError

__all__ = [
    "Bessel",
    "CharlierKernel",
    "MeixnerKernel",
    "HermiteKernel",
    "AiryKernel",
    "SineKernel",
    "DiscreteSineKernel",
    "eval_kernel",
    "bessel_series",
    "bessel_diag_tail",
    "airy_integral",
    "scaled_edge",
    "edge_coordinates",
    "bulk_scaled",
    "intermediate_scaled",
    "round_half_up",
]

_NEAR_DIAGONAL = 1e-6


def round_half_up(z: float) -> int:
    return int(math.floor(z + 0.5))


def _require_int(v, name: str) -> int:
    if not isinstance(v, (int,)) or isinstance(v, bool):
        raise TypeError(f"{name} must be an integer lattice point, got {v!r}")
    return v


# ---------------------------------------------------------------------------
# Weighted orthonormal recurrences
#
# phi_n(x) = p_n(x) sqrt(w(x)) with p_n orthonormal satisfies
#   x phi_n = a_{n+1} phi_{n+1} + b_n phi_n + a_n phi_{n-1}.
# Values are carried as mantissa * 2**e; the true phi_n are bounded by 1,
# so only the seed sqrt(w(x)) and transient growth need the scaling.


def _weighted_recurrence(x, m, log_w, a_fn, b_fn):
    """Return (phi_{m-1}(x), phi_m(x), sum_{n<m} phi_n(x)^2)."""
    ln2 = math.log(2.0)
    e = int(math.floor(0.5 * log_w / ln2))
    p_prev = 0.0
    p_cur = math.exp(0.5 * log_w - e * ln2)
    diag = 0.0
    for n in range(m):
        phi_n = math.ldexp(p_cur, e) if -1074 < e < 1024 else 0.0
        diag += phi_n * phi_n
        nxt = ((x - b_fn(n)) * p_cur - a_fn(n) * p_prev) / a_fn(n + 1)
        p_prev, p_cur = p_cur, nxt
        mag = max(abs(p_cur), abs(p_prev))
        if mag > 0.0 and not (2.0**-500 < mag < 2.0**500):
            shift = int(math.floor(math.log2(mag)))
            p_prev = math.ldexp(p_prev, -shift)
            p_cur = math.ldexp(p_cur, -shift)
            e += shift
    lo = math.ldexp(p_prev, e) if -1074 < e < 1024 else 0.0
    hi = math.ldexp(p_cur, e) if -1074 < e < 1024 else 0.0
    return lo, hi, diag


def _weighted_values(x, count, log_w, a_fn, b_fn):
    """Return [phi_0(x), ..., phi_{count-1}(x)] as floats."""
    ln2 = math.log(2.0)
    e = int(math.floor(0.5 * log_w / ln2))
    p_prev = 0.0
    p_cur = math.exp(0.5 * log_w - e * ln2)
    out = []
    for n in range(count):
        out.append(math.ldexp(p_cur, e) if -1074 < e < 1024 else 0.0)
        nxt = ((x - b_fn(n)) * p_cur - a_fn(n) * p_prev) / a_fn(n + 1)
        p_prev, p_cur = p_cur, nxt
        mag = max(abs(p_cur), abs(p_prev))
        if mag > 0.0 and not (2.0**-500 < mag < 2.0**500):
            shift = int(math.floor(math.log2(mag)))
            p_prev = math.ldexp(p_prev, -shift)
            p_cur = math.ldexp(p_cur, -shift)
            e += shift
    return out


# ---------------------------------------------------------------------------
# Kernel descriptors


@dataclass(frozen=True)
class Bessel:
    """Discrete Bessel kernel on the integer lattice, parameter alpha > 0.

    Off the diagonal,
        B(x, y) = sqrt(a) [J_x J_{y+1} - J_{x+1} J_y] / (x - y)
    with J_n = J_n(2 sqrt(a)); on the diagonal the order-derivative of J
    replaces the quotient.
    """

    alpha: float
    domain = "integers"

    def __post_init__(self):
        if not self.alpha > 0.0:
            raise ValueError("alpha must be positive")

    def eval(self, x: int, y: int) -> float:
        x = _require_int(x, "x")
        y = _require_int(y, "y")
        sa = math.sqrt(self.alpha)
        if x == y:
            jx = specfun.bessel_j(x, self.alpha)
            jx1 = specfun.bessel_j(x + 1, self.alpha)
            lx = specfun.bessel_j_orderderiv(x, self.alpha)
            lx1 = specfun.bessel_j_orderderiv(x + 1, self.alpha)
            return sa * (lx * jx1 - jx * lx1)
        jx = specfun.bessel_j(x, self.alpha)
        jy = specfun.bessel_j(y, self.alpha)
        jx1 = specfun.bessel_j(x + 1, self.alpha)
        jy1 = specfun.bessel_j(y + 1, self.alpha)
        return sa * (jx * jy1 - jx1 * jy) / (x - y)


@dataclass(frozen=True)
class CharlierKernel:
    """Charlier kernel on the naturals: rank-m projection onto the span of
    the first m orthonormal Charlier functions with parameter a = alpha/m.

    Off-diagonal values come from the Christoffel-Darboux quotient with
    constant sqrt(alpha).  Diagonal values use the contour form (circle
    integrals of four bounded auxiliaries plus a branch-cut correction);
    when that form loses too many digits to cancellation, overflows, or
    fails to converge, the exact projection sum is used instead.

    The orthonormal functions phi_n(x) are exponentially small when x lies
    far below the oscillatory band of degree n, and there the upward degree
    recurrence is unstable (the wanted solution is the recessive one).  In
    that wedge values are obtained through the degree-argument symmetry
    phi_n(x) = (-1)^(n+x) phi_x(n), which needs only a short recurrence of
    degree x at an argument above its band.
    """

    m: int
    alpha: float
    domain = "naturals"

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be a positive integer")
        if not self.alpha > 0.0:
            raise ValueError("alpha must be positive")

    @property
    def a(self) -> float:
        return self.alpha / self.m

    def _log_weight(self, x: int) -> float:
        a = self.a
        return -a + x * math.log(a) - log_factorial(x)

    def _a_fn(self, n: int) -> float:
        return math.sqrt(n * self.a)

    def _b_fn(self, n: int) -> float:
        return n + self.a

    def _crest(self, x: int) -> int:
        # Highest degree the upward recurrence at argument x can reach while
        # the target is still at or before the crest of n -> |phi_n(x)|.
        return int(math.ceil(x + 2.0 * math.sqrt(self.a * (x + 1.0)))) + 4

    def _phi_dual(self, n: int, x: int) -> float:
        # phi_n(x) for n past the crest, via phi_n(x) = (-1)^(n+x) phi_x(n).
        sgn = -1.0 if (n + x) & 1 else 1.0
        val = _weighted_recurrence(
            float(n), x, self._log_weight(n), self._a_fn, self._b_fn
        )[1]
        return sgn * val

    def _phi_pair(self, x: int):
        """Return (phi_{m-1}(x), phi_m(x)) by a stable route."""
        if self.m <= self._crest(x):
            lo, hi, _ = _weighted_recurrence(
                float(x), self.m, self._log_weight(x), self._a_fn, self._b_fn
            )
            return lo, hi
        return self._phi_dual(self.m - 1, x), self._phi_dual(self.m, x)

    def _phi_column(self, x: int):
        """Return [phi_0(x), ..., phi_{m-1}(x)] by stable routes."""
        m = self.m
        crest = self._crest(x)
        if m - 1 <= crest:
            return _weighted_values(
                float(x), m, self._log_weight(x), self._a_fn, self._b_fn
            )
        out = _weighted_values(
            float(x), crest + 1, self._log_weight(x), self._a_fn, self._b_fn
        )
        for n in range(crest + 1, m):
            out.append(self._phi_dual(n, x))
        return out

    def eval(self, x: int, y: int) -> float:
        x = _require_int(x, "x")
        y = _require_int(y, "y")
        if x < 0 or y < 0:
            raise ValueError("Charlier kernel arguments must be nonnegative")
        if x == y:
            return self._diagonal(x)
        px1, px = self._phi_pair(x)
        py1, py = self._phi_pair(y)
        return math.sqrt(self.alpha) * (px * py1 - px1 * py) / (x - y)

    def projection_eval(self, x: int, y: int) -> float:
        """Independent route: the projection sum sum_{n<m} phi_n(x) phi_n(y),
        valid on and off the diagonal."""
        if x < 0 or y < 0:
            raise ValueError("Charlier kernel arguments must be nonnegative")
        cx = self._phi_column(x)
        cy = cx if y == x else self._phi_column(y)
        return math.fsum(px * py for px, py in zip(cx, cy))

    def contour_eval(self, x: int, y: int) -> float:
        """Off-diagonal value from the circle-integral auxiliaries.

        Cross-check route.  Cancellation between the two products grows
        rapidly once an argument drops far below m, so compare against the
        projection route only near or above the band edge.
        """
        if x == y:
            return self.contour_diag(x)
        m, alpha = self.m, self.alpha
        ax = specfun.charlier_auxiliary_A(m, alpha, x)
        ay = specfun.charlier_auxiliary_A(m, alpha, y)
        d1x = specfun.charlier_contour_D(m, alpha, x, 1)
        d2x = specfun.charlier_contour_D(m, alpha, x, 2)
        d1y = specfun.charlier_contour_D(m, alpha, y, 1)
        d2y = specfun.charlier_contour_D(m, alpha, y, 2)
        return math.sqrt(ax * ay) * (d1x * d2y - d2x * d1y) / (x - y)

    def _contour_diag_pieces(self, x: int):
        m, alpha = self.m, self.alpha
        ax = specfun.charlier_auxiliary_A(m, alpha, x)
        d1, n1 = specfun.charlier_contour_D_witherr(m, alpha, x, 1)
        d2, n2 = specfun.charlier_contour_D_witherr(m, alpha, x, 2)
        d3, n3 = specfun.charlier_contour_D_witherr(m, alpha, x - 1, 3)
        d4, n4 = specfun.charlier_contour_D_witherr(m, alpha, x - 1, 4)
        f1, nf1 = specfun.charlier_cut_F_witherr(m, alpha, x, 1)
        f2, nf2 = specfun.charlier_cut_F_witherr(m, alpha, x, 2)
        val = ax * (d2 * d3 - d1 * d4) + ax * (f1 * d2 - f2 * d1)
        scale = ax * (
            abs(d2 * d3) + abs(d1 * d4) + abs(f1 * d2) + abs(f2 * d1)
        )
        # First-order propagation of each quadrature's own noise, plus the
        # roundoff left by cancellation between the assembled products.
        err = ax * (
            abs(d2) * n3 + abs(d3) * n2 + abs(d1) * n4 + abs(d4) * n1
            + abs(f1) * n2 + nf1 * abs(d2) + abs(f2) * n1 + nf2 * abs(d1)
        ) + 8e-16 * scale
        return val, err

    def contour_diag(self, x: int) -> float:
        """Diagonal value from the differentiated contour form: circle
        integrals of the logarithmic auxiliaries at argument x-1 plus the
        branch-cut correction terms.

        Cross-check route; accuracy degrades once x drops far below m.
        """
        return self._contour_diag_pieces(x)[0]

    def _diagonal(self, x: int) -> float:
        try:
            val, err = self._contour_diag_pieces(x)
        except (OverflowError, ConvergenceError):
            val, err = None, math.inf
        # A projection diagonal lies in [0, 1]; the contour value is used
        # only when its propagated noise estimate is negligible, otherwise
        # the exact projection sum takes over.
        ok = (
            val is not None
            and math.isfinite(val)
            and -1e-9 <= val <= 1.0 + 1e-9
            and err <= 1e-11
        )
        if not ok:
            column = self._phi_column(x)
            return math.fsum(p * p for p in column)
        return val


@dataclass(frozen=True)
class MeixnerKernel:
    """Meixner kernel on the naturals: rank-m projection built from the
    orthonormal functions for the weight binom(x+k-1, x) q^x."""

    q: float
    k: int
    m: int
    domain = "naturals"

    def __post_init__(self):
        if not 0.0 < self.q < 1.0:
            raise ValueError("q must lie in (0, 1)")
        if self.k < 1 or self.m < 1:
            raise ValueError("k and m must be positive integers")

    def _log_weight(self, x: int) -> float:
        # normalized so the seed sqrt(w) is the degree-zero orthonormal
        # function; without the (1-q)^k mass factor every phi_n picks up a
        # spurious constant and the diagonal is no longer a projection's
        return (
            log_binomial(x + self.k - 1, x)
            + x * math.log(self.q)
            + self.k * math.log1p(-self.q)
        )

    def _a_fn(self, n: int) -> float:
        return math.sqrt(n * (n + self.k - 1) * self.q) / (1.0 - self.q)

    def _b_fn(self, n: int) -> float:
        return (n + (n + self.k) * self.q) / (1.0 - self.q)

    def _pair(self, x: int):
        return _weighted_recurrence(x, self.m, self._log_weight(x), self._a_fn, self._b_fn)

    def eval(self, x: int, y: int) -> float:
        x = _require_int(x, "x")
        y = _require_int(y, "y")
        if x < 0 or y < 0:
            raise ValueError("Meixner kernel arguments must be nonnegative")
        if x == y:
            return self._pair(x)[2]
        px1, px, _ = self._pair(x)
        py1, py, _ = self._pair(y)
        return self._a_fn(self.m) * (px * py1 - px1 * py) / (x - y)


@dataclass(frozen=True)
class HermiteKernel:
    """Hermite kernel on the reals built from the harmonic oscillator
    functions psi_n; the rank-m projection kernel of the squared-Vandermonde
    Gaussian ensemble."""

    m: int
    domain = "reals"

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be a positive integer")

    def eval(self, x: float, y: float) -> float:
        m = self.m
        pref = math.sqrt(m / 2.0)
        if abs(x - y) < _NEAR_DIAGONAL:
            mid = 0.5 * (x + y)
            psi_m1, psi_m = specfun.hermite_psi(m, mid)
            term = math.sqrt(2.0 * m) * psi_m1 * psi_m1
            if m >= 2:
                psi_m2 = specfun.hermite_psi(m - 1, mid)[0]
                term -= math.sqrt(2.0 * (m - 1)) * psi_m2 * psi_m
            return pref * term
        px1, px = specfun.hermite_psi(m, x)
        py1, py = specfun.hermite_psi(m, y)
        return pref * (px * py1 - px1 * py) / (x - y)


@dataclass(frozen=True)
class AiryKernel:
    """Airy kernel on the reals,
    A(s, t) = (Ai(s) Ai'(t) - Ai'(s) Ai(t)) / (s - t),
    with the derivative form Ai'(s)^2 - s Ai(s)^2 on the diagonal."""

    domain = "reals"

    def eval(self, x: float, y: float) -> float:
        if abs(x - y) < _NEAR_DIAGONAL:
            mid = 0.5 * (x + y)
            ai = specfun.airy_ai(mid)
            aip = specfun.airy_ai_prime(mid)
            return aip * aip - mid * ai * ai
        ax, apx = specfun.airy_ai(x), specfun.airy_ai_prime(x)
        ay, apy = specfun.airy_ai(y), specfun.airy_ai_prime(y)
        return (ax * apy - apx * ay) / (x - y)


@dataclass(frozen=True)
class SineKernel:
    """Sine kernel sin(pi(x-y)) / (pi(x-y)) on the reals."""

    domain = "reals"

    def eval(self, x: float, y: float) -> float:
        u = x - y
        if abs(u) < _NEAR_DIAGONAL:
            return 1.0
        return math.sin(math.pi * u) / (math.pi * u)


@dataclass(frozen=True)
class DiscreteSineKernel:
    """Discrete sine kernel sin(u R)/(u pi) on the integers, u = x - y,
    with R = arccos(r/2) for a bulk density parameter -2 < r < 2."""

    r: float
    domain = "integers"

    def __post_init__(self):
        if not -2.0 < self.r < 2.0:
            raise ValueError("r must lie in (-2, 2)")

    @property
    def R(self) -> float:
        return math.acos(self.r / 2.0)

    def eval(self, x: int, y: int) -> float:
        x = _require_int(x, "x")
        y = _require_int(y, "y")
        u = x - y
        if u == 0:
            return self.R / math.pi
        return math.sin(u * self.R) / (u * math.pi)


def eval_kernel(kernel, x, y) -> float:
    return kernel.eval(x, y)


# ---------------------------------------------------------------------------
# Alternative representations


def bessel_series(alpha: float, x: int, y: int, terms: int | None = None) -> float:
    """Series route for the discrete Bessel kernel,
    B(x, y) = sum_{j>=1} J_{x+j}(2 sqrt(a)) J_{y+j}(2 sqrt(a)).

    The summand decays super-exponentially once the order passes 2 sqrt(a);
    with ``terms`` unset the truncation point is chosen adaptively and the
    tail estimate must drop below 1e-12.
    """
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    x = _require_int(x, "x")
    y = _require_int(y, "y")
    sa2 = 2.0 * math.sqrt(alpha)
    if terms is not None:
        return math.fsum(
            specfun.bessel_j(x + j, alpha) * specfun.bessel_j(y + j, alpha)
            for j in range(1, terms + 1)
        )
    n_terms = max(16, int(math.ceil(sa2)) - min(x, y) + 32)
    cap = 8192
    while True:
        tail = abs(
            specfun.bessel_j(x + n_terms + 1, alpha)
            * specfun.bessel_j(y + n_terms + 1, alpha)
        )
        if 3.0 * tail < 1e-12:
            break
        if n_terms >= cap:
            raise ConvergenceError("series tail did not fall below 1e-12")
        n_terms = min(cap, 2 * n_terms)
    return math.fsum(
        specfun.bessel_j(x + j, alpha) * specfun.bessel_j(y + j, alpha)
        for j in range(1, n_terms + 1)
    )


def bessel_diag_tail(alpha: float, x: int) -> float:
    """sum_{j>=1} B(x+j, x+j) evaluated as sum_{n>=1} n J_{x+n+1}^2, the
    weighted single sum obtained by exchanging the two summations."""
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    total = 0.0
    n = 1
    cap = 16384
    quiet = 0
    while n < cap:
        j = specfun.bessel_j(x + n + 1, alpha)
        term = n * j * j
        total += term
        if term < 1e-15 * max(1.0, total) and x + n > 2.0 * math.sqrt(alpha):
            quiet += 1
            if quiet >= 4:
                return total
        else:
            quiet = 0
        n += 1
    raise ConvergenceError("weighted tail sum did not converge")


def airy_integral(x: float, y: float, upper: float = 60.0) -> float:
    """Integral route for the Airy kernel: int_0^inf Ai(x+t) Ai(y+t) dt,
    truncated where the integrand is far below double precision."""
    import numpy as np

    def integrand(t):
        vals = np.empty_like(t)
        for i, ti in enumerate(t):
            vals[i] = specfun.airy_ai(x + ti) * specfun.airy_ai(y + ti)
        return vals

    val = specfun._gauss_panels(integrand, 0.0, upper)
    return float(val.real if isinstance(val, complex) else val)


# ---------------------------------------------------------------------------
# Scaling limits


def edge_coordinates(kernel, xi: float) -> tuple[int, float]:
    """Map an edge-scaled coordinate to the integer lattice point actually
    evaluated, returning (lattice point, effective scaled coordinate).

    Rounding conventions differ at the half-integers only; returning the
    effective coordinate lets comparisons stay insensitive to the choice.
    """
    if isinstance(kernel, Bessel):
        alpha = kernel.alpha
        scale = alpha ** (1.0 / 6.0)
        point = round_half_up(2.0 * math.sqrt(alpha) + xi * scale)
        return point, (point - 2.0 * math.sqrt(alpha)) / scale
    if isinstance(kernel, CharlierKernel):
        m, alpha = kernel.m, kernel.alpha
        sa = math.sqrt(alpha)
        nu = m + alpha / m + 2.0 * sa
        sigma = (1.0 + sa / m) ** (2.0 / 3.0) * alpha ** (1.0 / 6.0)
        offset = round_half_up(xi * sigma)
        return int(math.floor(nu)) + offset, offset / sigma
    raise TypeError("edge lattice coordinates exist for the discrete kernels only")


def scaled_edge(kernel, xi: float, eta: float) -> float:
    """Edge rescaling of a kernel; converges to the Airy kernel as the
    asymptotic parameter grows."""
    if isinstance(kernel, Bessel):
        scale = kernel.alpha ** (1.0 / 6.0)
        x, _ = edge_coordinates(kernel, xi)
        y, _ = edge_coordinates(kernel, eta)
        return scale * kernel.eval(x, y)
    if isinstance(kernel, CharlierKernel):
        m, alpha = kernel.m, kernel.alpha
        sa = math.sqrt(alpha)
        sigma = (1.0 + sa / m) ** (2.0 / 3.0) * alpha ** (1.0 / 6.0)
        x, _ = edge_coordinates(kernel, xi)
        y, _ = edge_coordinates(kernel, eta)
        return sigma * kernel.eval(x, y)
    if isinstance(kernel, HermiteKernel):
        m = kernel.m
        scale = math.sqrt(2.0) * m ** (1.0 / 6.0)
        base = math.sqrt(2.0 * m)
        return kernel.eval(base + xi / scale, base + eta / scale) / scale
    raise TypeError("edge scaling is defined for Bessel, Charlier and Hermite kernels")


def bulk_scaled(alpha: float, r: float, u: int) -> float:
    """Discrete Bessel kernel at bulk position r sqrt(alpha) and lattice
    offset u; converges to the discrete sine kernel sin(uR)/(u pi)."""
    if not -2.0 < r < 2.0:
        raise ValueError("r must lie in (-2, 2)")
    u = _require_int(u, "u")
    base = round_half_up(r * math.sqrt(alpha))
    return Bessel(alpha).eval(base, base + u)


def intermediate_scaled(alpha: float, delta: float, xi: float, eta: float) -> float:
    """Rescaled discrete Bessel kernel between edge and bulk; converges to
    the continuous sine kernel for 1/6 < delta < 1/2."""
    if not 1.0 / 6.0 < delta < 0.5:
        raise ValueError("delta must lie in (1/6, 1/2)")
    scale = math.pi * alpha ** (0.25 - 0.5 * delta)
    center = 2.0 * math.sqrt(alpha) - alpha**delta
    x = round_half_up(center + xi * scale)
    y = round_half_up(center + eta * scale)
    return scale * Bessel(alpha).eval(x, y)
