"""Histogram-based mass estimation and Hoeffding sample counts."""

import pytest

from poprec.channel import ListOracle, SampleOracle
from poprec.core import SparseDistribution, ValidationError, rat
from poprec.estimate import (
    MassEstimate,
    compute_sample_count,
    estimate_mass,
    expected_histogram,
    histogram_dot,
    masked_ones_histogram,
    ones_histogram,
)
from poprec.inverse import natural_estimator, solve_local_inverse

from oracles import mask_expected_histogram


def _dist(*pairs):
    return SparseDistribution.from_pairs(pairs)


class TestOnesHistogram:
    def test_hand_counted(self):
        # disagreements with '10' on revealed coords: 0, 1, 2, 0
        samples = ["10?", "00?", "011", "1?1"]
        hist = ones_histogram(samples, "10", 2)
        assert hist.freq == (rat(1, 2), rat(1, 4), rat(1, 4))
        assert hist.total_samples == 4

    def test_erased_positions_never_count(self):
        hist = ones_histogram(["??", "??"], "11", 2)
        assert hist.freq == (rat(1), rat(0), rat(0))

    def test_prefix_restriction(self):
        samples = ["0011", "0000"]
        assert ones_histogram(samples, "0011", 2) == ones_histogram(
            ["00", "00"], "00", 2
        )

    def test_validation(self):
        with pytest.raises(ValidationError):
            ones_histogram([], "01", 2)
        with pytest.raises(ValidationError):
            ones_histogram(["01"], "01", 0)
        with pytest.raises(ValidationError):
            ones_histogram(["01"], "01", 3)
        with pytest.raises(ValidationError):
            ones_histogram(["01"], "0?", 2)

    def test_masked_histogram_streams_in_chunks(self):
        oracle = SampleOracle(_dist(("0101", 1)), rat(1, 2), 17)
        one_shot = masked_ones_histogram(oracle, "01", 5000)
        assert one_shot == masked_ones_histogram(oracle, "01", 5000, start=0)
        first = masked_ones_histogram(oracle, "01", 2000, start=0)
        assert first.total_samples == 2000

    def test_masked_histogram_start_offset(self):
        oracle = SampleOracle(_dist(("0101", 1)), rat(1, 2), 17)
        tail = masked_ones_histogram(oracle, "0101", 100, start=900)
        against = ones_histogram(oracle.block(900, 100), "0101", 4)
        assert tail == against


class TestExpectedHistogram:
    @pytest.mark.parametrize("mu", [rat(1, 10), rat(3, 10), rat(1, 2), rat(1)])
    @pytest.mark.parametrize(
        "pairs,a",
        [
            (((("010", rat(1, 2))), ("111", rat(1, 2))), "010"),
            ((("0110", rat(1, 3)), ("1001", rat(1, 3)), ("1111", rat(1, 3))), "01"),
            ((("01", rat(1)),), "10"),
        ],
    )
    def test_matches_reveal_mask_enumeration(self, mu, pairs, a):
        dist = _dist(*pairs)
        got = expected_histogram(dist, a, mu)
        want = mask_expected_histogram(dist, a, mu)
        assert got == want

    def test_sums_to_one(self):
        dist = _dist(("0101", rat(1, 4)), ("1111", rat(3, 4)))
        hist = expected_histogram(dist, "0000", rat(2, 7))
        assert sum(hist, rat(0)) == 1

    def test_natural_weights_recover_exact_prefix_mass(self):
        dist = _dist(("010", rat(1, 6)), ("011", rat(1, 3)), ("111", rat(1, 2)))
        for mu in (rat(1, 4), rat(1, 2), rat(9, 10)):
            for a, want in [
                ("01", rat(1, 2)),
                ("010", rat(1, 6)),
                ("1", rat(1, 2)),
                ("00", rat(0)),
            ]:
                hist = expected_histogram(dist, a, mu)
                v = natural_estimator(len(a), mu)
                assert histogram_dot_list(hist, v) == want


def histogram_dot_list(freqs, weights):
    return sum((w * f for w, f in zip(weights, freqs)), rat(0))


class TestHistogramDot:
    def test_exact(self):
        hist = ones_histogram(["10?", "00?"], "10", 2)
        assert histogram_dot(hist, [rat(2), rat(-1), rat(0)]) == rat(1, 2) * 2 - rat(1, 2)

    def test_length_mismatch(self):
        hist = ones_histogram(["10"], "10", 2)
        with pytest.raises(ValidationError):
            histogram_dot(hist, [rat(1)])


class TestEstimateMass:
    def test_small_end_to_end_close_to_truth(self):
        dist = _dist(("000", rat(1, 2)), ("111", rat(1, 2)))
        mu = rat(1, 2)
        oracle = SampleOracle(dist, mu, 7)
        cert = solve_local_inverse(3, mu, rat(1, 20))
        samples = oracle.block(0, 40_000)
        est = estimate_mass(samples, "000", cert.v, 3, eps=rat(1, 10))
        assert isinstance(est, MassEstimate)
        assert est.samples_used == 40_000
        assert est.eps_requested == rat(1, 10)
        # LP residual 1/20 plus comfortable sampling room at 4e4 samples
        assert abs(est.value - rat(1, 2)) < rat(1, 10)

    def test_values_are_not_clamped(self):
        # the all-disagree sample lands in cell 2; a negative weight there
        # must pass through without clamping
        est = estimate_mass(["11"], "00", [rat(0), rat(0), rat(-3)], 2)
        assert est.value == -3

    def test_weight_length_checked(self):
        with pytest.raises(ValidationError):
            estimate_mass(["01"], "01", [rat(1)], 2)


class TestComputeSampleCount:
    def test_frozen_minimal_case(self):
        assert compute_sample_count(0, rat(1), rat(1, 2), rat(1, 2)) == 3

    def test_grows_quadratically_in_sigma(self):
        m1 = compute_sample_count(3, rat(1), rat(1, 10), rat(1, 20))
        m2 = compute_sample_count(3, rat(2), rat(1, 10), rat(1, 20))
        assert 3.9 < m2 / m1 < 4.1

    def test_monotone(self):
        base = compute_sample_count(4, rat(2), rat(1, 10), rat(1, 20))
        assert compute_sample_count(5, rat(2), rat(1, 10), rat(1, 20)) > base
        assert compute_sample_count(4, rat(3), rat(1, 10), rat(1, 20)) > base
        assert compute_sample_count(4, rat(2), rat(1, 20), rat(1, 20)) > base
        assert compute_sample_count(4, rat(2), rat(1, 10), rat(1, 40)) > base

    def test_conservative_rounding_never_rounds_down(self):
        # ln(2*(coords+1)/delta)*((coords+1)*sigma/eps)^2/2 for these inputs
        # is 2 ln 8 = 4.158.., so the exact ceiling is 5
        assert compute_sample_count(1, rat(1), rat(1), rat(1, 2)) == 5

    def test_validation(self):
        with pytest.raises(ValidationError):
            compute_sample_count(-1, rat(1), rat(1, 10), rat(1, 2))
        with pytest.raises(ValidationError):
            compute_sample_count(1, rat(0), rat(1, 10), rat(1, 2))
        with pytest.raises(ValidationError):
            compute_sample_count(1, rat(1), rat(0), rat(1, 2))
        with pytest.raises(ValidationError):
            compute_sample_count(1, rat(1), rat(1, 10), rat(1))
