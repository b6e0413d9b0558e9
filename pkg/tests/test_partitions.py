"""Partition combinatorics: exact identities and round trips."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dope.partitions import (
    Partition,
    conjugate,
    enumerate_partitions,
    from_particles,
    frobenius_dimension,
    particles,
    vandermonde_v,
    weight_w,
)

partitions_st = st.lists(
    st.integers(min_value=1, max_value=9), min_size=0, max_size=6
).map(lambda parts: Partition(sorted(parts, reverse=True)))


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, -1))
    assert Partition(()).size == 0


def test_enumeration_counts():
    # partition numbers p(0..10)
    want = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    for n, w in enumerate(want):
        assert sum(1 for _ in enumerate_partitions(n)) == w


def test_enumeration_bounds():
    for lam in enumerate_partitions(8, max_length=3, max_part=4):
        assert lam.length <= 3 and lam.part(1) <= 4 and lam.size == 8
    assert sum(1 for _ in enumerate_partitions(6, max_length=2)) == 4


@given(partitions_st)
def test_conjugate_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert conjugate(lam).size == lam.size


@given(partitions_st, st.integers(min_value=0, max_value=4))
def test_particles_roundtrip(lam, extra):
    m = lam.length + extra
    h = particles(lam, m)
    assert all(h[i] > h[i + 1] for i in range(m - 1))
    assert from_particles(h) == lam


def test_dimension_matches_vandermonde_route():
    # f_lam = n! V_m(lam) W_m(lam) for any m >= length
    for n in range(0, 9):
        for lam in enumerate_partitions(n):
            m = max(lam.length, 1)
            via = Fraction(math.factorial(n)) * vandermonde_v(lam, m) * weight_w(lam, m)
            assert via.denominator == 1
            assert int(via) == frobenius_dimension(lam)
            bigger = Fraction(math.factorial(n)) * vandermonde_v(lam, m + 2) * weight_w(lam, m + 2)
            assert int(bigger) == frobenius_dimension(lam)


def test_dimension_squares_sum_to_factorial():
    for n in range(0, 9):
        total = sum(frobenius_dimension(lam) ** 2 for lam in enumerate_partitions(n))
        assert total == math.factorial(n)


def test_hook_example():
    # the 2x2 square shape has two standard tableaux
    assert frobenius_dimension(Partition((2, 2))) == 2
    assert frobenius_dimension(Partition((3, 2, 1))) == 16
