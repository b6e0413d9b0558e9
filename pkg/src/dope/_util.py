"""Shared numeric helpers: checked log-factorials, exact determinants."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

__all__ = ["log_factorial", "log_binomial", "fraction_det"]


def _selfcheck() -> None:
    # lgamma must reproduce exact factorials over the whole float range of n!
    for n in (0, 1, 2, 5, 23, 71, 170):
        exact = math.log(math.factorial(n)) if n else 0.0
        got = math.lgamma(n + 1)
        if abs(got - exact) > 1e-12 * max(1.0, abs(exact)):
            raise AssertionError(f"lgamma disagrees with {n}! by more than 1e-12")


_selfcheck()


@lru_cache(maxsize=None)
def log_factorial(n: int) -> float:
    """ln(n!) for integer n >= 0."""
    if n < 0:
        raise ValueError("factorial of a negative integer")
    return math.lgamma(n + 1)


def log_binomial(n: int, k: int) -> float:
    """ln C(n, k); requires 0 <= k <= n."""
    if k < 0 or k > n:
        raise ValueError(f"binomial ({n}, {k}) outside the triangle")
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k)


def fraction_det(rows: list[list[Fraction]]) -> Fraction:
    """Determinant by exact fraction-free-ish Gaussian elimination."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if a[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] == 0:
                continue
            factor = a[r][col] * inv
            for c in range(col, n):
                a[r][c] -= factor * a[col][c]
    return det
