"""Measures on partitions and particle configurations.

The Plancherel measure and its Poissonization live on partitions directly.
The Meixner, Charlier, Krawtchouk, and Hahn ensembles are Coulomb gases
Delta(h)^2 prod w(h_j) / Z in particle coordinates h_i = lam_i + M - i;
for each of them both the partition-coordinate density and the particle
form are implemented so the two routes can be checked against each other.

Probabilities of particle configurations always refer to the unordered
configuration (the strictly decreasing tuple), normalized so that the sum
over configurations is one.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from ._util import fraction_det, log_binomial, log_factorial
from .partitions import (
    Partition,
    enumerate_partitions,
    frobenius_dimension,
    from_particles,
    vandermonde_v,
    weight_w,
)

__all__ = [
    "Charlier",
    "Hahn",
    "Krawtchouk",
    "Meixner",
    "MultiplicativeFunctional",
    "Plancherel",
    "PoissonizedPlancherel",
    "configurations",
    "coulomb_approx_F",
    "equilibrium_density",
    "expectation",
    "normalization",
    "pmf",
    "pmf_exact",
    "pmf_particles",
    "word_shape_pmf",
]


# ---------------------------------------------------------------------------
# ensemble descriptors


@dataclass(frozen=True)
class Plancherel:
    """Push-forward of the uniform measure on S_n: P[lam] = (f^lam)^2 / n!."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")


@dataclass(frozen=True)
class PoissonizedPlancherel:
    """Plancherel with the total size Poissonized at intensity alpha."""

    alpha: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")


@dataclass(frozen=True)
class Meixner:
    """m particles, negative-binomial site weight C(x+k-1, x) q^x, k = n-m+1."""

    m: int
    n: int
    q: Fraction | float

    def __post_init__(self):
        if self.m < 1 or self.n < self.m:
            raise ValueError("need n >= m >= 1")
        if not 0 < self.q < 1:
            raise ValueError("q must lie in (0, 1)")

    @property
    def k(self) -> int:
        return self.n - self.m + 1


@dataclass(frozen=True)
class Charlier:
    """m particles, Poisson site weight of intensity alpha/m."""

    m: int
    alpha: float

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be positive")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")

    @property
    def a(self):
        return self.alpha / self.m


@dataclass(frozen=True)
class Krawtchouk:
    """n particles on {0..k}, binomial site weight C(k, x) p^x (1-p)^(k-x)."""

    n: int
    k: int
    p: Fraction | float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.k < self.n - 1:
            raise ValueError("support {0..k} cannot hold n distinct particles")
        if not 0 < self.p < 1:
            raise ValueError("p must lie in (0, 1)")


@dataclass(frozen=True)
class Hahn:
    """k particles on {0..n}, site weight C(x+a, x) C(n+b-x, n-x).

    The symmetric instance describing a regular hexagon's lozenge slice k
    lines from the top is `Hahn.hexagon(a, k)`.
    """

    k: int
    a: int
    b: int
    n: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.a < 0 or self.b < 0:
            raise ValueError("weight exponents must be nonnegative")
        if self.n < self.k - 1:
            raise ValueError("support {0..n} cannot hold k distinct particles")

    @classmethod
    def hexagon(cls, a: int, k: int) -> "Hahn":
        if not 1 <= k <= a:
            raise ValueError("need 1 <= k <= a")
        return cls(k=k, a=a - k, b=a - k, n=a + k - 1)


# ---------------------------------------------------------------------------
# site weights (exact where the parameters allow it)


def _site_weight_exact(spec, x: int) -> Fraction:
    if x < 0:
        return Fraction(0)
    if isinstance(spec, Meixner):
        q = Fraction(spec.q)
        return Fraction(math.comb(x + spec.k - 1, x)) * q**x
    if isinstance(spec, Krawtchouk):
        if x > spec.k:
            return Fraction(0)
        p = Fraction(spec.p)
        return Fraction(math.comb(spec.k, x)) * p**x * (1 - p) ** (spec.k - x)
    if isinstance(spec, Hahn):
        if x > spec.n:
            return Fraction(0)
        return Fraction(math.comb(x + spec.a, x) * math.comb(spec.n + spec.b - x, spec.n - x))
    raise TypeError(f"no exact site weight for {type(spec).__name__}")


def _log_site_weight(spec, x: int) -> float:
    if x < 0:
        return -math.inf
    if isinstance(spec, Meixner):
        return log_binomial(x + spec.k - 1, x) + x * math.log(spec.q)
    if isinstance(spec, Charlier):
        a = spec.a
        return -a + x * math.log(a) - log_factorial(x)
    if isinstance(spec, Krawtchouk):
        if x > spec.k:
            return -math.inf
        p = float(spec.p)
        return log_binomial(spec.k, x) + x * math.log(p) + (spec.k - x) * math.log1p(-p)
    if isinstance(spec, Hahn):
        if x > spec.n:
            return -math.inf
        return log_binomial(x + spec.a, x) + log_binomial(spec.n + spec.b - x, spec.n - x)
    raise TypeError(f"no site weight for {type(spec).__name__}")


def _check_config(h: Sequence[int]) -> tuple[int, ...]:
    h = tuple(int(x) for x in h)
    for i in range(len(h) - 1):
        if h[i] <= h[i + 1]:
            raise ValueError("particle configuration must be strictly decreasing")
    if h and h[-1] < 0:
        raise ValueError("particles live on nonnegative sites")
    return h


def _log_delta_sq(h: Sequence[int]) -> float:
    out = 0.0
    for i in range(len(h)):
        for j in range(i + 1, len(h)):
            out += 2.0 * math.log(abs(h[i] - h[j]))
    return out


def _delta_sq_exact(h: Sequence[int]) -> int:
    out = 1
    for i in range(len(h)):
        for j in range(i + 1, len(h)):
            out *= (h[i] - h[j]) ** 2
    return out


# ---------------------------------------------------------------------------
# normalizing constants


def normalization(spec):
    """Normalizing constant of the Coulomb-gas form, where one is exposed.

    For Krawtchouk this is the closed product formula for the sum of
    Delta^2 prod w over ordered tuples {0..k}^n (so the configuration
    probability carries an extra n!).  For Hahn it is the exact sum of
    Delta^2 prod w over configurations.  Meixner and Charlier return the
    constant relating Delta^2 prod w to the partition-coordinate density.
    """
    if isinstance(spec, Krawtchouk):
        p = Fraction(spec.p)
        q = 1 - p
        z = Fraction(math.factorial(spec.n))
        for j in range(spec.n):
            z *= Fraction(math.factorial(j), math.factorial(spec.k - j))
        z *= Fraction(math.factorial(spec.k)) ** spec.n
        z *= (p * q) ** (spec.n * (spec.n - 1) // 2)
        return z
    if isinstance(spec, Hahn):
        z = Fraction(0)
        for h in configurations(spec):
            z += _delta_sq_exact(h) * math.prod(_site_weight_exact(spec, x) for x in h)
        return z
    if isinstance(spec, Meixner):
        m, n, q = spec.m, spec.n, Fraction(spec.q)
        z = q ** (m * (m - 1) // 2) * (1 - q) ** (-m * n)
        for j in range(m):
            z *= Fraction(math.factorial(j) * math.factorial(n - m + j), math.factorial(n - m))
        return z
    if isinstance(spec, Charlier):
        m = spec.m
        z = 1.0
        for j in range(1, m):
            z *= math.factorial(j)
        return z * spec.a ** (m * (m - 1) // 2)
    raise TypeError(f"no normalization for {type(spec).__name__}")


def configurations(spec) -> Iterator[tuple[int, ...]]:
    """All particle configurations of a finite-support ensemble, decreasing tuples."""
    if isinstance(spec, Krawtchouk):
        size, count = spec.k, spec.n
    elif isinstance(spec, Hahn):
        size, count = spec.n, spec.k
    else:
        raise TypeError("only Krawtchouk and Hahn have finite support")
    for combo in itertools.combinations(range(size + 1), count):
        yield tuple(reversed(combo))


# ---------------------------------------------------------------------------
# probability mass functions


def pmf_exact(spec, x):
    """Exact rational probability.  Supported for Plancherel (any n),
    the word-shape measure, and Krawtchouk/Hahn with rational parameters."""
    if isinstance(spec, Plancherel):
        lam = x
        if lam.size != spec.n:
            return Fraction(0)
        f = frobenius_dimension(lam)
        return Fraction(f * f, math.factorial(spec.n))
    if isinstance(spec, Krawtchouk):
        h = _check_config(x)
        if len(h) != spec.n or (h and h[0] > spec.k):
            return Fraction(0)
        num = Fraction(math.factorial(spec.n) * _delta_sq_exact(h))
        num *= math.prod(_site_weight_exact(spec, t) for t in h)
        return num / normalization(spec)
    if isinstance(spec, Hahn):
        h = _check_config(x)
        if len(h) != spec.k or (h and h[0] > spec.n):
            return Fraction(0)
        num = Fraction(_delta_sq_exact(h)) * math.prod(_site_weight_exact(spec, t) for t in h)
        return num / normalization(spec)
    raise TypeError(f"no exact pmf for {type(spec).__name__}")


def pmf(spec, x) -> float:
    """Probability of a partition (Plancherel, Poissonized, Meixner, Charlier)
    or of a particle configuration (Krawtchouk, Hahn)."""
    if isinstance(spec, (Plancherel, Krawtchouk, Hahn)):
        return float(pmf_exact(spec, x))
    if isinstance(spec, PoissonizedPlancherel):
        lam: Partition = x
        l = lam.length
        if l == 0:
            return math.exp(-spec.alpha)
        vw = vandermonde_v(lam, l) * weight_w(lam, l)
        log_p = -spec.alpha + lam.size * math.log(spec.alpha)
        log_p += 2.0 * (math.log(vw.numerator) - math.log(vw.denominator))
        return math.exp(log_p)
    if isinstance(spec, Meixner):
        lam: Partition = x
        if lam.length > spec.m:
            return 0.0
        m, n = spec.m, spec.n
        log_p = m * n * math.log1p(-float(spec.q)) + lam.size * math.log(float(spec.q))
        for j in range(m):
            log_p += log_factorial(n - m) - log_factorial(j) - log_factorial(n - m + j)
        log_p += 2.0 * math.log(vandermonde_v(lam, m))
        lam_p = lam.padded(m)
        for i in range(1, m + 1):
            log_p += log_binomial(lam_p[i - 1] + n - i, lam_p[i - 1] + m - i)
        return math.exp(log_p)
    if isinstance(spec, Charlier):
        lam: Partition = x
        if lam.length > spec.m:
            return 0.0
        m = spec.m
        vw = vandermonde_v(lam, m) ** 2 * weight_w(lam, m)
        log_p = -spec.alpha + lam.size * math.log(spec.a)
        for j in range(1, m):
            log_p -= log_factorial(j)
        log_p += math.log(vw.numerator) - math.log(vw.denominator)
        return math.exp(log_p)
    raise TypeError(f"no pmf for {type(spec).__name__}")


def pmf_particles(spec, h: Sequence[int]) -> float:
    """Coulomb-gas route: Delta(h)^2 prod w(h_j) / Z for h_i = lam_i + m - i.

    Implemented independently of `pmf` (which works in partition
    coordinates for Meixner and Charlier) so the two can be compared.
    """
    h = _check_config(h)
    if isinstance(spec, (Krawtchouk, Hahn)):
        return float(pmf_exact(spec, h))
    if isinstance(spec, Meixner):
        if len(h) != spec.m:
            raise ValueError("need exactly m particles")
        log_z = (spec.m * (spec.m - 1) // 2) * math.log(float(spec.q))
        log_z -= spec.m * spec.n * math.log1p(-float(spec.q))
        for j in range(spec.m):
            log_z += log_factorial(j) + log_factorial(spec.n - spec.m + j) - log_factorial(spec.n - spec.m)
    elif isinstance(spec, Charlier):
        if len(h) != spec.m:
            raise ValueError("need exactly m particles")
        log_z = (spec.m * (spec.m - 1) // 2) * math.log(spec.a)
        for j in range(1, spec.m):
            log_z += log_factorial(j)
    else:
        raise TypeError(f"no particle-coordinate pmf for {type(spec).__name__}")
    log_p = _log_delta_sq(h) - log_z
    for x in h:
        log_p += _log_site_weight(spec, x)
    return math.exp(log_p)


def word_shape_pmf(m: int, n: int, lam: Partition) -> Fraction:
    """Shape distribution of a uniform word of length n over m letters.

    P[lam] = (n! / m^n) * prod_{j<m} (1/j!) * V_m(lam)^2 * W_m(lam) for
    partitions of n with at most m rows.
    """
    if m < 1 or n < 0:
        raise ValueError("need m >= 1 and n >= 0")
    if lam.size != n or lam.length > m:
        return Fraction(0)
    out = Fraction(math.factorial(n), m**n)
    for j in range(1, m):
        out /= math.factorial(j)
    return out * vandermonde_v(lam, m) ** 2 * weight_w(lam, m)


# ---------------------------------------------------------------------------
# multiplicative linear statistics


class MultiplicativeFunctional:
    """g(lam) = prod_{i >= 1} f(lam_i + shift - i) with f(n) = 1 for n < 0.

    The generator must equal one on negative integers so the product has
    finitely many non-unit factors; `bound` must dominate sup |f| and is
    used for truncation estimates.
    """

    def __init__(self, f: Callable[[int], float], shift: int = 0, bound: float = 1.0):
        for probe in (-1, -2, -7):
            if f(probe) != 1:
                raise ValueError("generator must be 1 on negative integers")
        self.f = f
        self.shift = int(shift)
        self.bound = float(bound)

    @classmethod
    def indicator_gap(cls, n: int, shift: int = 0) -> "MultiplicativeFunctional":
        """f = 1 - chi_[n, inf): g(lam) = 1 iff lam_i + shift - i < n for all i.

        With shift 0 this is the indicator of {lam_1 <= n}.
        """

        def f(s: int) -> float:
            return 0.0 if s >= n else 1.0

        return cls(f, shift=shift, bound=1.0)

    def __call__(self, lam: Partition) -> float:
        rows = max(lam.length, self.shift)
        out = 1.0
        for i in range(1, rows + 1):
            out *= self.f(lam.part(i) + self.shift - i)
            if out == 0.0:
                return 0.0
        return out

    def phi(self, s: int) -> float:
        """phi = f - 1, the kernel-side perturbation."""
        return self.f(s) - 1.0


# ---------------------------------------------------------------------------
# expectations by direct summation


def _poisson_tail_after(alpha: float, n0: int, tol: float, c: float, shift: int) -> bool:
    """True when sum_{n > n0} e^-alpha (alpha^n / n!) c^(n+shift) < tol.

    Valid once the term ratio alpha*c/(n0+2) drops below 1/2, when the tail
    is dominated by twice its first term.
    """
    c = max(c, 1.0)
    if (n0 + 2) <= 2.0 * alpha * c:
        return False
    log_term = -alpha + (n0 + 1) * (math.log(alpha) + math.log(c)) - log_factorial(n0 + 1)
    log_term += shift * math.log(c)
    return 2.0 * math.exp(log_term) < tol


def expectation(spec, g: MultiplicativeFunctional, tol: float = 1e-10) -> float:
    """E[g] by direct summation, truncated so the neglected mass (times the
    functional's bound) stays below tol."""
    if isinstance(spec, Plancherel):
        total = 0.0
        for lam in enumerate_partitions(spec.n):
            total += float(pmf_exact(spec, lam)) * g(lam)
        return total
    if isinstance(spec, PoissonizedPlancherel):
        alpha = spec.alpha
        c = max(g.bound, 1.0)
        total = 0.0
        n = 0
        while True:
            log_pois = -alpha + (n * math.log(alpha) if n else 0.0) - log_factorial(n)
            pois = math.exp(log_pois)
            inner = 0.0
            for lam in enumerate_partitions(n):
                f = frobenius_dimension(lam)
                inner += float(Fraction(f * f, math.factorial(n))) * g(lam)
            total += pois * inner
            if n > alpha and _poisson_tail_after(alpha, n, tol, c, g.shift):
                return total
            n += 1
            if n > 400:
                raise RuntimeError("poissonized sum failed to truncate")
    if isinstance(spec, (Meixner, Charlier)):
        m = spec.m
        total = 0.0
        quiet = 0
        size = 0
        while quiet < 4:
            shell = 0.0
            shell_mass = 0.0
            for lam in enumerate_partitions(size, max_length=m):
                p = pmf(spec, lam)
                shell_mass += p
                shell += p * g(lam)
            total += shell
            quiet = quiet + 1 if shell_mass * max(g.bound, 1.0) < tol / 8 and size > m else 0
            size += 1
            if size > 10000:
                raise RuntimeError("ensemble sum failed to truncate")
        return total
    if isinstance(spec, (Krawtchouk, Hahn)):
        total = 0.0
        for h in configurations(spec):
            total += float(pmf_exact(spec, h)) * g(from_particles(h))
        return total
    raise TypeError(f"no expectation for {type(spec).__name__}")


# ---------------------------------------------------------------------------
# Coulomb-gas approximation to the Poissonized expectation


def coulomb_approx_F(alpha, m: int, g: MultiplicativeFunctional, cutoff: int | None = None):
    """Ratio F_m[g] / F_m[1] for the gas Delta(x)^2 prod alpha^{x_j} / (x_j!)^2
    on m particles, which approaches the Poissonized-Plancherel E[g] as m grows.

    Evaluated through the Hankel determinant det[ sum_x x^{j+k} w(x) f(x + shift - m) ]
    rather than a sum over configurations.  Exact Fraction arithmetic when
    alpha is rational and the generator returns rationals; float otherwise.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if cutoff is None:
        cutoff = int(3.0 * math.sqrt(float(alpha))) + 6 * m + 25
    exact = isinstance(alpha, (int, Fraction))
    if exact:
        alpha_f = Fraction(alpha)
        weights = []
        for x in range(cutoff + 1):
            fx = math.factorial(x)
            weights.append(alpha_f**x / (fx * fx))
        fvals = [Fraction(g.f(x + g.shift - m)) for x in range(cutoff + 1)]
        num = [[Fraction(0)] * m for _ in range(m)]
        den = [[Fraction(0)] * m for _ in range(m)]
        for x in range(cutoff + 1):
            wx = weights[x]
            powers = [Fraction(1)]
            for _ in range(2 * m - 2):
                powers.append(powers[-1] * x)
            for j in range(m):
                for k in range(m):
                    den[j][k] += powers[j + k] * wx
                    num[j][k] += powers[j + k] * wx * fvals[x]
        return fraction_det(num) / fraction_det(den)

    import numpy as np

    xs = np.arange(cutoff + 1, dtype=float)
    logw = xs * math.log(float(alpha)) - 2.0 * np.array([log_factorial(int(x)) for x in xs])
    w = np.exp(logw - logw.max())
    fv = np.array([g.f(int(x) + g.shift - m) for x in range(cutoff + 1)])
    # scale the monomial basis to keep the Hankel matrices well conditioned
    scale = max(1.0, float(np.argmax(w)))
    mono = np.vander(xs / scale, m, increasing=True)
    den = mono.T @ (w[:, None] * mono)
    num = mono.T @ ((w * fv)[:, None] * mono)
    sign_d, logdet_d = np.linalg.slogdet(den)
    sign_n, logdet_n = np.linalg.slogdet(num)
    return sign_n * sign_d * math.exp(logdet_n - logdet_d)


def equilibrium_density(t: float, r: float) -> float:
    """Constrained equilibrium density of the rescaled gas: 1 on [0, 1-2/r],
    an arcsine ramp on [1-2/r, 1+2/r], zero beyond.  Requires r >= 2."""
    if r < 2:
        raise ValueError("r must be at least 2")
    if t < 0:
        return 0.0
    if t <= 1 - 2 / r:
        return 1.0
    if t >= 1 + 2 / r:
        return 0.0
    return 0.5 - math.asin(r * (t - 1) / 2.0) / math.pi
