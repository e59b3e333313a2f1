import math

import numpy as np
import pytest
from scipy.special import ndtri

from statlab.estimators import (
    IQR_TO_SIGMA,
    EstimatorStudyPlan,
    run_estimator_study,
    sigma_hat_iqr,
    sigma_hat_s,
)


class TestConstants:
    def test_iqr_constant_is_twice_upper_quartile_z(self):
        assert IQR_TO_SIGMA == pytest.approx(2.0 * ndtri(0.75), abs=1e-5)
        assert IQR_TO_SIGMA == pytest.approx(1.34898, abs=1e-5)


class TestSigmaHatIqr:
    def test_small_sample(self):
        # type-7 quartiles of {1,2,3,4} give IQR = 1.5
        assert sigma_hat_iqr([1, 2, 3, 4]) == pytest.approx(
            1.5 / 1.3489795, rel=1e-9
        )

    def test_constant_sample(self):
        assert sigma_hat_iqr([5.0] * 10) == 0.0

    def test_too_small(self):
        with pytest.raises(ValueError):
            sigma_hat_iqr([1.0, 2.0, 3.0])

    def test_location_invariance(self):
        rng = np.random.default_rng(21)
        x = rng.normal(size=60)
        assert sigma_hat_iqr(x + 1234.5) == pytest.approx(
            sigma_hat_iqr(x), abs=1e-12
        )

    def test_scale_equivariance(self):
        rng = np.random.default_rng(22)
        x = rng.normal(size=60)
        assert sigma_hat_iqr(2.0 * x) == 2.0 * sigma_hat_iqr(x)
        assert sigma_hat_iqr(3.0 * x) == pytest.approx(
            3.0 * sigma_hat_iqr(x), rel=1e-12
        )


class TestSigmaHatS:
    def test_simple(self):
        assert sigma_hat_s([1, 2, 3]) == pytest.approx(1.0)

    def test_hand_computed(self):
        assert sigma_hat_s([2, 4, 6, 8]) == pytest.approx(2.5820, abs=1e-4)

    def test_scale_equivariance(self):
        rng = np.random.default_rng(23)
        x = rng.normal(size=40)
        assert sigma_hat_s(2.0 * x) == 2.0 * sigma_hat_s(x)

    def test_location_invariance(self):
        rng = np.random.default_rng(24)
        x = rng.normal(size=40)
        assert sigma_hat_s(x - 99.0) == pytest.approx(sigma_hat_s(x), abs=1e-12)

    def test_too_small(self):
        with pytest.raises(ValueError):
            sigma_hat_s([1.0])


@pytest.fixture(scope="module")
def default_result():
    return run_estimator_study(EstimatorStudyPlan(), root_seed=20070420)


class TestStudy:
    def test_distribution_shapes(self, default_result):
        for key, vec in default_result.distributions.items():
            assert vec.shape == (1000,)
            assert np.all(vec >= 0)

    def test_iqr_estimator_spread(self, default_result):
        assert default_result.summaries[("iqr", 100)].iqr == pytest.approx(
            0.50, abs=0.07
        )
        assert default_result.summaries[("iqr", 400)].iqr == pytest.approx(
            0.25, abs=0.07
        )

    def test_s_estimator_spread(self, default_result):
        assert default_result.summaries[("s", 100)].iqr == pytest.approx(
            0.30, abs=0.05
        )
        assert default_result.summaries[("s", 400)].iqr == pytest.approx(
            0.16, abs=0.05
        )

    def test_both_center_on_true_sigma(self, default_result):
        for key, s in default_result.summaries.items():
            assert s.median == pytest.approx(math.pi, abs=0.05)

    def test_s_is_more_efficient_across_seeds(self):
        for seed in range(20070420, 20070425):
            res = run_estimator_study(EstimatorStudyPlan(), root_seed=seed)
            for n in (100, 400):
                assert (
                    res.summaries[("s", n)].iqr < res.summaries[("iqr", n)].iqr
                )

    def test_sqrt_n_scaling(self, default_result):
        ratio = (
            default_result.summaries[("iqr", 100)].iqr
            / default_result.summaries[("iqr", 400)].iqr
        )
        assert 1.7 <= ratio <= 2.3

    def test_determinism(self):
        plan = EstimatorStudyPlan(n_reps=50)
        a = run_estimator_study(plan, root_seed=3)
        b = run_estimator_study(plan, root_seed=3)
        for key in a.distributions:
            assert np.array_equal(a.distributions[key], b.distributions[key])

    def test_plan_validation(self):
        with pytest.raises(ValueError):
            EstimatorStudyPlan(sample_sizes=(2,))
        with pytest.raises(ValueError):
            EstimatorStudyPlan(true_sd=0.0)
        with pytest.raises(ValueError):
            EstimatorStudyPlan(n_reps=1)
