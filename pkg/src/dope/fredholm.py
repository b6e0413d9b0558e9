"""Fredholm determinants for discrete and continuum correlation kernels.

Two settings share the same truncate-and-certify pattern:

* lattice operators K(x, y) phi(y) on the naturals, truncated at a point
  where a computable diagonal tail sum certifies the neglected trace;
* integral operators on a half line (t, infinity), discretized by a
  Nystrom rule after the rational substitution s = t + c (1 + u)/(1 - u)
  and symmetrized as det(I - W^{1/2} K W^{1/2}).

On top of the determinants sit the distribution of the largest particle
(the Tracy-Widom law for the Airy kernel) and the joint law of the first
k particles, recovered from a generating determinant D(z) by extracting
low-order mixed derivatives at z = (-1, ..., -1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import kernels, specfun
from .ensembles import MultiplicativeFunctional
from .specfun import ConvergenceError

_NYSTROM_OFFSET = 10.0
_NYSTROM_START = 40
_NYSTROM_CAP = 640


@dataclass(frozen=True)
class FredholmResult:
    """A determinant value together with its truncation certificate."""

    value: float
    truncation_size: int
    tail_estimate: float
    converged: bool


@dataclass(frozen=True)
class IntervalSystem:
    """Thresholds a_1 >= ... >= a_k splitting (a_k, infinity) into
    I_1 = (a_1, inf) and I_{j+1} = (a_{j+1}, a_j]."""

    thresholds: tuple

    def __init__(self, thresholds):
        object.__setattr__(self, "thresholds", tuple(float(a) for a in thresholds))
        if not self.thresholds:
            raise ValueError("at least one threshold is required")
        for hi, lo in zip(self.thresholds, self.thresholds[1:]):
            if lo > hi:
                raise ValueError("thresholds must be weakly decreasing")

    @property
    def k(self) -> int:
        return len(self.thresholds)

    def interval_index(self, x: float):
        """1-based index of the interval containing x, None if x <= a_k."""
        a = self.thresholds
        if x > a[0]:
            return 1
        for j in range(1, len(a)):
            if a[j] < x <= a[j - 1]:
                return j + 1
        return None


def admissible_counts(k: int):
    """Count vectors n in N^k with sum_{j<=r} n_j <= r - 1 for every r."""
    out = []

    def extend(prefix, partial_sum):
        r = len(prefix)
        if r == k:
            out.append(tuple(prefix))
            return
        for n in range(r - partial_sum + 1):
            extend(prefix + [n], partial_sum + n)

    extend([], 0)
    return out


# ---------------------------------------------------------------------------
# Discrete determinants


def _phi_norm(phi: MultiplicativeFunctional) -> float:
    return phi.bound + 1.0


def _bessel_tail(kernel: kernels.Bessel, x_threshold: int) -> float:
    """sum_{y > X} B(y, y) for the discrete Bessel kernel."""
    return kernels.bessel_diag_tail(kernel.alpha, x_threshold)


def _charlier_tail(kernel: kernels.CharlierKernel, h_threshold: int) -> float:
    """sum_{h > X} K(h, h), exact via the rank-m trace identity."""
    if h_threshold < 0:
        return float(kernel.m)
    total = math.fsum(
        kernel.projection_eval(h, h) for h in range(h_threshold + 1)
    )
    return max(0.0, kernel.m - total)


def _truncation_point(tail_fn, start: int, goal: float, cap_steps: int = 4000) -> int:
    x = start
    for _ in range(cap_steps):
        if tail_fn(x) < goal:
            return x
        x += 4
    raise ConvergenceError("diagonal tail did not fall below the tolerance")


def _assemble_discrete(points, kernel_at, phi_at) -> np.ndarray:
    n = len(points)
    mat = np.eye(n)
    for j, y in enumerate(points):
        py = phi_at(y)
        for i, x in enumerate(points):
            mat[i, j] += kernel_at(x, y) * py
    return mat


def det_discrete(
    kernel,
    phi: MultiplicativeFunctional,
    L: int = 0,
    tol: float = 1e-10,
) -> FredholmResult:
    """det(I + K_phi) on l2(N) with K_phi(x, y) = K(x - L, y - L) phi(y).

    This is the expectation of prod_i f(lam_i + L - i) under the point
    process with correlation kernel K.  The lattice is truncated at a
    point X where the diagonal tail sum times sup|phi| drops below tol,
    and the neglected part is certified by
    |det - det_trunc| <= tailTrace * exp(totalTrace + tailTrace).
    """
    if not isinstance(kernel, kernels.Bessel):
        raise TypeError("det_discrete expects the discrete Bessel kernel")
    L = int(L)
    norm = _phi_norm(phi)
    goal = tol / max(norm, 1.0)
    start = L + int(math.ceil(2.0 * math.sqrt(kernel.alpha))) + 8
    cutoff = _truncation_point(lambda X: _bessel_tail(kernel, X - L), start, goal)
    points = [y for y in range(0, cutoff + 1) if phi.phi(y) != 0.0]
    tail_trace = _bessel_tail(kernel, cutoff - L) * norm
    total_trace = math.fsum(
        abs(kernel.eval(y - L, y - L) * phi.phi(y)) for y in points
    ) + tail_trace
    bound = tail_trace * math.exp(total_trace + tail_trace)
    if not points:
        return FredholmResult(1.0, 0, bound, bound < tol)
    mat = _assemble_discrete(points, lambda x, y: kernel.eval(x - L, y - L), phi.phi)
    value = float(np.linalg.det(mat))
    return FredholmResult(value, len(points), bound, bound < tol)


def charlier_expectation_det(
    alpha: float,
    m: int,
    phi: MultiplicativeFunctional,
    L: int = 0,
    tol: float = 1e-10,
) -> FredholmResult:
    """The same expectation computed with the rank-m Charlier kernel
    shifted by m - L: entries delta + K(x + m - L, y + m - L) phi(y) over
    y >= max(0, L - m)."""
    kernel = kernels.CharlierKernel(m, alpha)
    L = int(L)
    shift = m - L
    y_min = max(0, -shift)
    norm = _phi_norm(phi)
    goal = tol / max(norm, 1.0)
    start = y_min + int(math.ceil(2.0 * math.sqrt(alpha))) + 8

    def tail(X: int) -> float:
        return _charlier_tail(kernel, X + shift)

    cutoff = _truncation_point(tail, start, goal)
    points = [y for y in range(y_min, cutoff + 1) if phi.phi(y) != 0.0]
    tail_trace = tail(cutoff) * norm
    total_trace = math.fsum(
        abs(kernel.eval(y + shift, y + shift) * phi.phi(y)) for y in points
    ) + tail_trace
    bound = tail_trace * math.exp(total_trace + tail_trace)
    if not points:
        return FredholmResult(1.0, 0, bound, bound < tol)
    mat = _assemble_discrete(
        points, lambda x, y: kernel.eval(x + shift, y + shift), phi.phi
    )
    value = float(np.linalg.det(mat))
    return FredholmResult(value, len(points), bound, bound < tol)


# ---------------------------------------------------------------------------
# Continuum determinants (Nystrom)


def _edge_kernel_on_nodes(kernel, s: np.ndarray) -> np.ndarray:
    """Kernel matrix on real nodes via per-node special function values."""
    if isinstance(kernel, kernels.AiryKernel):
        ai = np.array([specfun.airy_ai(v) for v in s])
        aip = np.array([specfun.airy_ai_prime(v) for v in s])
        num = np.outer(ai, aip) - np.outer(aip, ai)
        diff = np.subtract.outer(s, s)
        with np.errstate(divide="ignore", invalid="ignore"):
            mat = num / diff
        diag = aip * aip - s * ai * ai
        np.fill_diagonal(mat, diag)
        return mat
    if isinstance(kernel, kernels.HermiteKernel):
        mm = kernel.m
        scale = math.sqrt(2.0) * mm ** (1.0 / 6.0)
        pts = math.sqrt(2.0 * mm) + s / scale
        pairs = [specfun.hermite_psi(mm, v) for v in pts]
        psi_m1 = np.array([p[0] for p in pairs])
        psi_m = np.array([p[1] for p in pairs])
        pref = math.sqrt(mm / 2.0)
        num = np.outer(psi_m, psi_m1) - np.outer(psi_m1, psi_m)
        diff = np.subtract.outer(pts, pts)
        with np.errstate(divide="ignore", invalid="ignore"):
            mat = pref * num / diff
        diag = np.array([kernel.eval(v, v) for v in pts])
        np.fill_diagonal(mat, diag)
        return mat / scale
    raise TypeError("det_continuum expects the Airy or Hermite kernel")


def _halfline_nodes(t: float, n: int):
    """Gauss-Legendre nodes and weights for (t, inf) under the rational map."""
    u, w = leggauss(n)
    c = _NYSTROM_OFFSET
    s = t + c * (1.0 + u) / (1.0 - u)
    ds = 2.0 * c / (1.0 - u) ** 2
    return s, w * ds


def _det_value(kernel, t: float, n: int) -> float:
    s, weights = _halfline_nodes(t, n)
    kmat = _edge_kernel_on_nodes(kernel, s)
    root = np.sqrt(weights)
    sym = np.eye(n) - kmat * np.outer(root, root)
    return float(np.linalg.det(sym))


def det_continuum(kernel, t: float, tol: float = 1e-8) -> FredholmResult:
    """det(I - K)|_{L^2(t, inf)} by a symmetrized Nystrom rule.

    Node count doubles from 40 until two resolutions agree within tol.
    """
    n = _NYSTROM_START
    prev = _det_value(kernel, t, n)
    while n < _NYSTROM_CAP:
        n *= 2
        value = _det_value(kernel, t, n)
        change = abs(value - prev)
        if change < tol:
            return FredholmResult(value, n, change, True)
        prev = value
    raise ConvergenceError("Nystrom determinant did not stabilize")


def tracy_widom(t: float, tol: float = 1e-8) -> float:
    """F(t) = det(I - A)|_{L^2(t, inf)} for the Airy kernel."""
    return det_continuum(kernels.AiryKernel(), t, tol).value


# ---------------------------------------------------------------------------
# Joint law of the first k particles


def _coefficient_weights(degree: int) -> np.ndarray:
    """Rows r of the matrix mapping values at Chebyshev points of [-2, 0]
    to the monomial coefficients of the interpolant around z = -1."""
    i = np.arange(degree + 1)
    t_nodes = np.cos(np.pi * i / degree)
    vand = np.vander(t_nodes, degree + 1, increasing=True)
    return np.linalg.inv(vand), t_nodes


def _joint_from_grid(det_at, k: int, tol: float) -> float:
    """Sum the admissible monomial coefficients of D(-1 + t_1, ...).

    det_at(z) evaluates the generating determinant at a point z in
    [-2, 0]^k.  The per-variable interpolation degree k + 2 exceeds the
    needed derivative orders (at most k - 1) by a safety margin.
    """
    degree = k + 2
    inv, t_nodes = _coefficient_weights(degree)
    grid_shape = (degree + 1,) * k
    values = np.empty(grid_shape)
    for idx in product(range(degree + 1), repeat=k):
        z = tuple(-1.0 + t_nodes[i] for i in idx)
        values[idx] = det_at(z)
    coeff = values
    for axis in range(k):
        coeff = np.tensordot(inv, np.moveaxis(coeff, axis, 0), axes=(1, 0))
        coeff = np.moveaxis(coeff, 0, axis)
    return float(sum(coeff[n] for n in admissible_counts(k)))


def _joint_discrete(kernel: kernels.Bessel, sys: IntervalSystem, tol: float):
    a = sys.thresholds
    k = sys.k
    floor = int(math.floor(a[-1]))
    goal = tol / (2.0 * k + 1.0)
    start = int(math.ceil(a[0] + 2.0 * math.sqrt(kernel.alpha))) + 8
    cutoff = _truncation_point(lambda X: _bessel_tail(kernel, X), start, goal)
    points = [y for y in range(floor + 1, cutoff + 1) if sys.interval_index(y)]
    labels = [sys.interval_index(y) - 1 for y in points]
    base = np.array([[kernel.eval(x, y) for y in points] for x in points])

    def det_at(z):
        zeta = np.array([z[j] for j in labels])
        return float(np.linalg.det(np.eye(len(points)) + base * zeta[None, :]))

    return _joint_from_grid(det_at, k, tol)


def _joint_airy_nodes(sys: IntervalSystem, n: int):
    """Nodes, weights and interval labels covering (a_k, inf)."""
    a = sys.thresholds
    s_all, w_all, labels = [], [], []
    s, w = _halfline_nodes(a[0], n)
    s_all.append(s)
    w_all.append(w)
    labels += [0] * len(s)
    u0, w0 = leggauss(n)
    for j in range(1, len(a)):
        lo, hi = a[j], a[j - 1]
        if hi - lo <= 0.0:
            continue
        half = 0.5 * (hi - lo)
        s_all.append(0.5 * (hi + lo) + half * u0)
        w_all.append(half * w0)
        labels += [j] * n
    return np.concatenate(s_all), np.concatenate(w_all), np.array(labels)


def _joint_airy_value(sys: IntervalSystem, n: int, tol: float) -> float:
    s, w, labels = _joint_airy_nodes(sys, n)
    kernel = kernels.AiryKernel()
    kmat = _edge_kernel_on_nodes(kernel, s)
    root = np.sqrt(w)
    weighted = kmat * np.outer(root, root)

    def det_at(z):
        zeta = np.array([z[j] for j in labels])
        return float(np.linalg.det(np.eye(len(s)) + weighted * zeta[None, :]))

    return _joint_from_grid(det_at, sys.k, tol)


def joint_rows(kernel, sys: IntervalSystem, tol: float = 1e-8) -> float:
    """P[x^(1) <= a_1, ..., x^(k) <= a_k] for the ordered particles of the
    determinantal process with the given kernel.

    The value is the sum over admissible count vectors n of
    (1 / prod n_j!) d^n/dz^n det(I + sum_j z_j K chi_{I_j}) at z = -1,
    with derivatives extracted by low-order polynomial interpolation.
    For the Bessel kernel the particles are lam_i - i of the Poissonized
    measure; for the Airy kernel this is the joint edge law.
    """
    if isinstance(kernel, kernels.Bessel):
        return _joint_discrete(kernel, sys, tol)
    if isinstance(kernel, kernels.AiryKernel):
        n = _NYSTROM_START
        prev = _joint_airy_value(sys, n, tol)
        while n < _NYSTROM_CAP:
            n *= 2
            value = _joint_airy_value(sys, n, tol)
            if abs(value - prev) < tol:
                return value
            prev = value
        raise ConvergenceError("joint Nystrom value did not stabilize")
    raise TypeError("joint_rows supports the Bessel and Airy kernels")
