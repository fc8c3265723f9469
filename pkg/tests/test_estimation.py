import math

import numpy as np
import pytest
from scipy.stats import norm

from conftest import THETA_GRID
from twostar import (
    DegenerateSampleError,
    Graph,
    SamplerConfig,
    SampleRecord,
    SampleSet,
    Theta,
    TwoStarMomentEstimator,
    constants,
    degree_concentration,
    estimate,
    ks_statistic,
    run,
    s1,
    s2,
    s3_s4,
)


def synthetic_set(pairs):
    """SampleSet from (s1, s2) pairs; graph-level fields are placeholders."""
    records = tuple(
        SampleRecord(index=i, edges=0, two_stars=0, s1=a, s2=b)
        for i, (a, b) in enumerate(pairs)
    )
    return SampleSet(config=None, records=records)


class TestS1:
    def test_complete(self):
        assert s1(Graph.complete(5)) == 1.0

    def test_empty(self):
        assert s1(Graph.empty(5)) == -1.0

    def test_single_edge(self):
        assert s1(Graph.from_edges(3, [(0, 1)])) == pytest.approx(-1.0 / 3.0, abs=1e-15)


class TestS2:
    def test_regular_graphs_vanish(self):
        assert s2(Graph.complete(6)) == 0.0
        assert s2(Graph.empty(6)) == 0.0
        cycle = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
        assert s2(cycle) == 0.0

    def test_star(self):
        star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        assert s2(star) == pytest.approx(4.0 / 3.0, abs=1e-15)

    def test_single_edge(self):
        assert s2(Graph.from_edges(3, [(0, 1)])) == pytest.approx(2.0 / 3.0, abs=1e-15)


class TestS3S4:
    def test_star_statistics(self):
        theta2_hat, theta1_hat = s3_s4(0.0, 4.0 / 3.0)
        assert theta2_hat == pytest.approx(0.25, abs=1e-15)
        assert theta1_hat == 0.0

    def test_unit_variance(self):
        assert s3_s4(0.0, 1.0) == (0.0, 0.0)

    def test_odd_in_s1(self):
        a = s3_s4(0.4, 0.9)
        b = s3_s4(-0.4, 0.9)
        assert b[0] == pytest.approx(a[0], rel=1e-14)
        assert b[1] == pytest.approx(-a[1], rel=1e-14)

    def test_frozen_limit_pair(self):
        # limits of (S1, S2) at theta = (0.5, 0.5) are (m, tau2)
        theta2_hat, theta1_hat = s3_s4(0.8812253607755209, 0.2515446682420795)
        assert theta2_hat == pytest.approx(0.5, rel=1e-10)
        assert theta1_hat == pytest.approx(0.5, rel=1e-10)

    @pytest.mark.parametrize("theta", THETA_GRID)
    def test_inverts_limits_on_grid(self, theta):
        c = constants(theta)
        theta2_hat, theta1_hat = s3_s4(c.m, c.tau2)
        # the numerator m^2 + tau2 - 1 cancels to O(s^2) near saturation,
        # so the achievable accuracy degrades like eps / s^2
        s = 1.0 - c.m * c.m
        tol2 = max(1e-10, 5e-16 / (s * s))
        tol1 = max(1e-10, 2.0 * tol2 + 1e-15 / s)
        assert theta2_hat == pytest.approx(theta.theta2, abs=tol2)
        assert theta1_hat == pytest.approx(theta.theta1, abs=tol1)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError, match="S1 must lie"):
            s3_s4(1.5, 0.5)
        with pytest.raises(ValueError, match="S2 must be nonnegative"):
            s3_s4(0.0, -0.1)

    def test_degenerate_rejected(self):
        with pytest.raises(DegenerateSampleError, match="degenerate"):
            s3_s4(0.5, 0.0)
        with pytest.raises(DegenerateSampleError, match="degenerate"):
            s3_s4(1.0, 0.5)


class TestKsStatistic:
    def test_exact_quantile_grid(self):
        # points at the (i - 1/2)/N quantiles achieve the minimal distance
        grid = norm.ppf((np.arange(1, 101) - 0.5) / 100)
        assert ks_statistic(grid, 0.0, 1.0) == pytest.approx(0.005, abs=1e-12)

    def test_constant_sample_far_off(self):
        assert ks_statistic(np.full(10, 3.0), 0.0, 1.0) >= 0.5

    def test_matching_normal_sample(self, rng):
        draws = rng.normal(1.0, 2.0, size=5000)
        assert ks_statistic(draws, 1.0, 4.0) < 0.03

    def test_input_validation(self):
        with pytest.raises(ValueError, match="at least 2"):
            ks_statistic([1.0], 0.0, 1.0)
        with pytest.raises(ValueError, match="variance must be positive"):
            ks_statistic([1.0, 2.0], 0.0, 0.0)


class TestDegreeConcentration:
    def test_complete_graph_saturated(self):
        assert degree_concentration(Graph.complete(6), 1.0) == 0.0

    def test_empty_graph_uses_observed_sign(self):
        # S1 = -1 selects the lower branch even though m is passed as +1
        assert degree_concentration(Graph.empty(6), 1.0) == 0.0
        assert degree_concentration(Graph.empty(6), -1.0) == 0.0

    def test_star_at_zero_m(self):
        star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        assert degree_concentration(star, 0.0) == pytest.approx(0.5, abs=1e-15)

    def test_concentrates_under_the_model(self):
        config = SamplerConfig(
            n=100, theta=Theta(0.0, 0.25), num_samples=100,
            burn_in=200, regime="thinning", gap=5, seed=31,
        )
        sample_set = run(config, keep_graphs=True)
        # per-vertex degree-fraction sd is about sqrt(tau2 (n-1)) / (2(n-1)),
        # roughly 0.058 here, so 0.25 is a > 4 sigma band for the maximum
        below = sum(degree_concentration(g, 0.0) < 0.25 for g in sample_set.graphs)
        assert below >= 97


class TestEstimate:
    def test_single_star_like_draw(self):
        report = estimate(synthetic_set([(0.0, 4.0 / 3.0)]))
        assert report.theta2_hat == pytest.approx(0.25, abs=1e-15)
        assert report.theta1_hat == 0.0
        assert report.n_draws == 1
        assert report.n_degenerate == 0
        assert report.frac_positive == 1.0
        assert report.ks_pos is None and report.ks_neg is None
        assert report.s1_stderr == 0.0

    def test_all_degenerate_rejected(self):
        with pytest.raises(DegenerateSampleError, match="all draws"):
            estimate(synthetic_set([(1.0, 0.0), (-1.0, 0.0)]))

    def test_degenerate_draws_excluded(self):
        pairs = [(0.1, 0.9), (1.0, 0.5), (-0.2, 1.1), (0.3, 0.0)]
        report = estimate(synthetic_set(pairs))
        assert report.n_draws == 2
        assert report.n_degenerate == 2
        assert report.s1_mean == pytest.approx((0.1 - 0.2) / 2)
        assert report.s2_mean == pytest.approx((0.9 + 1.1) / 2)

    def test_sign_flip_negates_theta1(self):
        pairs = [(0.5, 0.8), (0.45, 0.85), (0.55, 0.75), (0.4, 0.9), (-0.1, 0.95)]
        report = estimate(synthetic_set(pairs))
        flipped = estimate(synthetic_set([(-a, b) for a, b in pairs]))
        assert not report.symmetric and not flipped.symmetric
        assert flipped.theta2_hat == pytest.approx(report.theta2_hat, rel=1e-12)
        assert flipped.theta1_hat == pytest.approx(-report.theta1_hat, rel=1e-12)
        assert flipped.frac_positive == pytest.approx(1.0 - report.frac_positive)

    def test_balanced_split_uses_positive_branch(self):
        pairs = [(0.5, 0.6), (-0.48, 0.62), (0.52, 0.58), (-0.5, 0.6)]
        report = estimate(synthetic_set(pairs))
        assert report.symmetric
        expected = math.atanh(report.s1_absmean) - 2.0 * report.theta2_hat * report.s1_absmean
        assert report.theta1_hat == pytest.approx(expected, rel=1e-14)
        assert report.pos_count == 2 and report.neg_count == 2

    def test_rejects_non_sample_set(self):
        with pytest.raises(TypeError, match="SampleSet"):
            estimate([(0.0, 1.0)])

    def test_rejects_empty(self):
        with pytest.raises(ValueError, match="empty"):
            estimate(synthetic_set([]))

    def test_json_dict_field_order(self):
        report = estimate(synthetic_set([(0.1, 0.9), (0.2, 0.8)]))
        assert list(report.to_json_dict()) == [
            "theta2_hat", "theta1_hat", "n_draws", "n_degenerate",
            "frac_positive", "s1_mean", "s1_absmean", "s2_mean",
            "ks_pos", "ks_neg",
        ]

    def test_recovers_parameters_from_draws(self):
        config = SamplerConfig(
            n=100, theta=Theta(0.2, 0.3), num_samples=200,
            burn_in=200, regime="thinning", gap=5, seed=47,
        )
        report = estimate(run(config))
        assert report.theta2_hat == pytest.approx(0.3, abs=0.1)
        assert report.theta1_hat == pytest.approx(0.2, abs=0.15)
        assert not report.symmetric


class TestTwoStarMomentEstimator:
    def test_fit_exposes_report(self):
        sample_set = synthetic_set([(0.1, 0.9), (0.15, 0.85), (0.05, 0.95)])
        est = TwoStarMomentEstimator().fit(sample_set)
        report = estimate(sample_set)
        assert est.theta1_ == report.theta1_hat
        assert est.theta2_ == report.theta2_hat
        assert est.report_ == report

    def test_get_params_empty(self):
        assert TwoStarMomentEstimator().get_params() == {}
