"""Row-insertion machinery for shapes, and the path statistics tied to them.

Only shapes are tracked.  Row insertion maintains the insertion tableau's
rows; the recording tableau is never materialized because every measure
pushed forward here depends on the shape alone.
"""

from __future__ import annotations

from bisect import bisect_right
from typing import Sequence

from .partitions import Partition

__all__ = [
    "bernoulli_path_max",
    "longest_weakly_increasing",
    "matrix_rsk_shape",
    "rsk_shape",
]


def _insert(rows: list[list[int]], x: int) -> None:
    """Insert x by bumping, in each row, the leftmost entry strictly greater."""
    for row in rows:
        k = bisect_right(row, x)
        if k == len(row):
            row.append(x)
            return
        row[k], x = x, row[k]
    rows.append([x])


def rsk_shape(word: Sequence[int]) -> Partition:
    """Shape of the insertion tableau of a word (or permutation).

    Rows end up weakly increasing, columns strictly increasing, so the
    first row length equals the longest weakly increasing subsequence.
    """
    rows: list[list[int]] = []
    for x in word:
        _insert(rows, x)
    return Partition(len(r) for r in rows)


def matrix_rsk_shape(a: Sequence[Sequence[int]]) -> Partition:
    """Shape assigned to a nonnegative integer matrix by the Knuth correspondence.

    The matrix is read as a two-line array in lexicographic order, entry
    a[i][j] contributing j with multiplicity a[i][j], and the bottom line
    is row-inserted.
    """
    word: list[int] = []
    for row in a:
        for j, mult in enumerate(row):
            if mult < 0:
                raise ValueError("matrix entries must be nonnegative")
            word.extend([j] * int(mult))
    return rsk_shape(word)


def longest_weakly_increasing(seq: Sequence[int]) -> int:
    """Length of the longest weakly increasing subsequence (patience piles).

    On sequences with distinct entries this is the longest increasing
    subsequence, so it covers permutations as well.
    """
    piles: list[int] = []
    for x in seq:
        k = bisect_right(piles, x)
        if k == len(piles):
            piles.append(x)
        else:
            piles[k] = x
    return len(piles)


def bernoulli_path_max(w: Sequence[Sequence[int]]) -> int:
    """Maximum weight of a weakly right-moving path picking one entry per row.

    Over column indices 1 <= j_1 <= ... <= j_M <= N the sum of w[i][j_i]
    is maximized by dynamic programming with running prefix maxima.
    """
    m = len(w)
    if m == 0:
        return 0
    n = len(w[0])
    best: list[int] | None = None
    for row in w:
        if len(row) != n:
            raise ValueError("ragged matrix")
        if best is None:
            best = list(row)
            continue
        running = best[0]
        new = []
        for j in range(n):
            running = max(running, best[j])
            new.append(row[j] + running)
        best = new
    return max(best)
