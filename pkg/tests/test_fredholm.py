"""Fredholm determinants: truncation certificates, known values, joint laws."""

import math

import pytest

from dope.ensembles import (
    MultiplicativeFunctional,
    PoissonizedPlancherel,
    expectation,
)
from dope.fredholm import (
    FredholmResult,
    IntervalSystem,
    admissible_counts,
    charlier_expectation_det,
    det_continuum,
    det_discrete,
    joint_rows,
    tracy_widom,
)
from dope.kernels import AiryKernel, Bessel, CharlierKernel, HermiteKernel
from dope.models import word_gap


def test_admissible_counts_are_ballot_sequences():
    assert admissible_counts(1) == [(0,)]
    assert sorted(admissible_counts(2)) == [(0, 0), (0, 1)]
    assert len(admissible_counts(3)) == 5
    assert len(admissible_counts(4)) == 14
    for vec in admissible_counts(4):
        partial = 0
        for r, n in enumerate(vec, start=1):
            partial += n
            assert partial <= r - 1


def test_interval_system_validation_and_lookup():
    with pytest.raises(ValueError):
        IntervalSystem([])
    with pytest.raises(ValueError):
        IntervalSystem([1.0, 2.0])
    sys = IntervalSystem([4.0, 3.0])
    assert sys.k == 2
    assert sys.interval_index(5.0) == 1
    assert sys.interval_index(4.0) == 2
    assert sys.interval_index(3.5) == 2
    assert sys.interval_index(3.0) is None


def test_empty_perturbation_gives_unit_determinant():
    result = det_discrete(Bessel(1.0), MultiplicativeFunctional(lambda s: 1.0))
    assert result.value == 1.0
    assert result.converged


def test_gap_at_zero_is_poisson_void_probability():
    # P[lam = empty] under the Poissonized measure is exactly e^-alpha
    for alpha in (0.5, 1.0, 2.0):
        r = det_discrete(Bessel(alpha), MultiplicativeFunctional.indicator_gap(0))
        assert r.converged
        assert r.value == pytest.approx(math.exp(-alpha), abs=1e-12)


@pytest.mark.parametrize("alpha", [0.7, 1.3])
def test_discrete_determinant_matches_direct_poissonized_sum(alpha):
    for n in range(0, 4):
        g = MultiplicativeFunctional.indicator_gap(n)
        direct = expectation(PoissonizedPlancherel(alpha), g, tol=1e-12)
        det = det_discrete(Bessel(alpha), g, tol=1e-12)
        assert det.converged
        assert det.value == pytest.approx(direct, abs=1e-9)


def test_general_multiplicative_functional_matches_direct_sum():
    g = MultiplicativeFunctional(lambda s: 1.3 if s == 1 else 1.0, bound=1.3)
    alpha = 1.2
    direct = expectation(PoissonizedPlancherel(alpha), g, tol=1e-12)
    det = det_discrete(Bessel(alpha), g)
    assert det.value == pytest.approx(direct, abs=1e-9)
    # phi is supported on the single site 1, so the matrix is 1 x 1
    assert det.truncation_size == 1


def test_det_discrete_requires_the_bessel_kernel():
    with pytest.raises(TypeError):
        det_discrete(CharlierKernel(3, 1.0), MultiplicativeFunctional.indicator_gap(1))


def test_result_certificate_fields():
    r = det_discrete(Bessel(1.0), MultiplicativeFunctional.indicator_gap(2), tol=1e-10)
    assert isinstance(r, FredholmResult)
    assert r.truncation_size > 0
    assert 0.0 <= r.tail_estimate < 1e-10
    assert r.converged


@pytest.mark.parametrize("m,alpha,t", [(3, 1.0, 2), (2, 0.7, 1), (4, 2.0, 3)])
def test_charlier_determinant_matches_direct_word_law(m, alpha, t):
    det = charlier_expectation_det(alpha, m, MultiplicativeFunctional.indicator_gap(t))
    assert det.converged
    assert det.value == pytest.approx(word_gap(m, t, alpha=alpha), abs=1e-8)


# ---------------------------------------------------------------------------
# continuum determinants


def test_tracy_widom_known_values():
    # reference digits from independent published evaluations of the
    # largest-eigenvalue edge law
    assert tracy_widom(-2.0) == pytest.approx(0.4132241425, abs=1e-7)
    assert tracy_widom(0.0) == pytest.approx(0.9693728283, abs=1e-7)


def test_tracy_widom_monotone_and_tight_tails():
    values = [tracy_widom(t) for t in (-3.0, -1.0, 0.0, 2.0)]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert values[-1] > 0.995
    assert values[0] < 0.1


def test_finite_rank_edge_law_brackets_the_limit():
    # m = 8 eigenvalue edge law stays a proper distribution and is already
    # within a few thousandths of the limiting law at the origin
    vals = [det_continuum(HermiteKernel(8), t).value for t in (-2.0, 0.0, 2.0)]
    assert all(0.0 < v < 1.0 for v in vals)
    assert vals[0] < vals[1] < vals[2]
    assert abs(vals[1] - tracy_widom(0.0)) < 0.01


def test_det_continuum_requires_a_continuum_kernel():
    with pytest.raises(TypeError):
        det_continuum(Bessel(1.0), 0.0)


# ---------------------------------------------------------------------------
# joint laws


def test_bessel_joint_single_row_matches_gap_determinant():
    # threshold a on lam_1 - 1 is the gap indicator at a + 1
    for alpha, a in [(1.0, 2), (1.5, 3)]:
        joint = joint_rows(Bessel(alpha), IntervalSystem([float(a)]))
        gap = det_discrete(Bessel(alpha), MultiplicativeFunctional.indicator_gap(a + 1))
        assert joint == pytest.approx(gap.value, abs=1e-10)


def test_bessel_joint_equal_thresholds_collapse_to_single_row():
    j2 = joint_rows(Bessel(1.0), IntervalSystem([3.0, 3.0]))
    j1 = joint_rows(Bessel(1.0), IntervalSystem([3.0]))
    assert j2 == pytest.approx(j1, abs=1e-10)


def test_bessel_joint_monotone_in_each_threshold():
    base = joint_rows(Bessel(1.0), IntervalSystem([4.0, 3.0]))
    assert base <= joint_rows(Bessel(1.0), IntervalSystem([5.0, 3.0])) + 1e-10
    assert base >= joint_rows(Bessel(1.0), IntervalSystem([3.0, 3.0])) - 1e-10
    assert 0.0 <= base <= 1.0


def test_airy_joint_equal_thresholds_reproduce_the_marginal():
    assert joint_rows(AiryKernel(), IntervalSystem([0.0, 0.0])) == pytest.approx(
        tracy_widom(0.0), abs=1e-7
    )


def test_airy_joint_lies_between_the_bracketing_marginals():
    j = joint_rows(AiryKernel(), IntervalSystem([1.0, 0.0]))
    assert tracy_widom(0.0) - 1e-8 <= j <= tracy_widom(1.0) + 1e-8


def test_joint_rows_requires_bessel_or_airy():
    with pytest.raises(TypeError):
        joint_rows(HermiteKernel(4), IntervalSystem([0.0]))
