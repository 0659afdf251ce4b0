import math

import numpy as np
import pytest

from helpers import random_unit_axis
from wernerkit.decomposition import DecompositionDomainError, sphere_direction
from wernerkit.hiddenvar import (
    HvSample,
    _draw_batch,
    estimate_correlation,
    estimate_local,
    outcome_a,
    outcome_b,
    sample_hidden,
)
from wernerkit.separability import correlation
from wernerkit.states import werner

X_AXIS = np.array([1.0, 0.0, 0.0])
Y_AXIS = np.array([0.0, 1.0, 0.0])
Z_AXIS = np.array([0.0, 0.0, 1.0])


class TestSampling:
    def test_fixed_seed_reproduces_stream(self):
        rng1, rng2 = np.random.default_rng(42), np.random.default_rng(42)
        assert [sample_hidden(rng1) for _ in range(50)] == [
            sample_hidden(rng2) for _ in range(50)
        ]

    def test_sample_ranges(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            s = sample_hidden(rng)
            assert 0.0 <= s.theta <= math.pi
            assert 0.0 <= s.phi < 2.0 * math.pi
            assert 0.0 <= s.lambda_a <= 1.0
            assert 0.0 <= s.lambda_b <= 1.0

    def test_sphere_moments(self):
        # direction statistics of 10^6 draws: first moment 0, second moment 1/3
        cos_t, phi, _, _ = _draw_batch(np.random.default_rng(2024), 1_000_000)
        f_z = cos_t
        f_x = np.sqrt(1.0 - cos_t**2) * np.cos(phi)
        assert abs(np.mean(f_z)) < 5e-3
        assert abs(np.mean(f_z**2) - 1.0 / 3.0) < 5e-3
        assert abs(np.mean(f_x)) < 5e-3
        assert abs(np.mean(f_x**2) - 1.0 / 3.0) < 5e-3


class TestOutcomes:
    def test_q_zero_threshold_is_half(self):
        s_low = HvSample(theta=1.0, phi=2.0, lambda_a=0.49, lambda_b=0.51)
        assert outcome_a(s_low, 0.0, Z_AXIS) == 1
        assert outcome_b(s_low, 0.0, Z_AXIS) == -1

    def test_aligned_axis_at_boundary_always_plus_one(self):
        # q = 1/3 and l = f(theta, phi): threshold is (1 + 1)/2 = 1
        rng = np.random.default_rng(9)
        for _ in range(25):
            s = sample_hidden(rng)
            axis = sphere_direction(s.theta, s.phi)
            forced = HvSample(s.theta, s.phi, lambda_a=0.999999, lambda_b=s.lambda_b)
            assert outcome_a(forced, 1.0 / 3.0, axis) == 1

    def test_b_threshold_uses_opposite_vector(self):
        # with b = -a, B accepts below (1 - m.a)/2; at the north pole the
        # local vector is a = sqrt(3q) z
        q = 0.3
        thresh = 0.5 * (1.0 - math.sqrt(3 * q))
        just_below = HvSample(0.0, 0.0, 0.0, thresh - 1e-9)
        just_above = HvSample(0.0, 0.0, 0.0, thresh + 1e-9)
        assert outcome_b(just_below, q, Z_AXIS) == 1
        assert outcome_b(just_above, q, Z_AXIS) == -1

    def test_conditional_means_per_cell(self):
        # freeze (theta, phi); the lambda average must reproduce l.a and the
        # product must factorize into (l.a)(m.b)
        q = 0.25
        radius = math.sqrt(3 * q)
        rng = np.random.default_rng(17)
        cells = [(0.4, 0.3), (1.2, 2.2), (2.0, 4.0), (2.8, 5.5), (1.5707, 0.0)]
        n = 40_000
        for theta, phi in cells:
            axis_l = random_unit_axis(rng)
            axis_m = random_unit_axis(rng)
            f = sphere_direction(theta, phi)
            target_a = radius * float(np.dot(axis_l, f))
            target_b = -radius * float(np.dot(axis_m, f))
            lam_a = rng.random(n)
            lam_b = rng.random(n)
            out_a = np.where(lam_a <= 0.5 * (1 + target_a), 1.0, -1.0)
            out_b = np.where(lam_b <= 0.5 * (1 + target_b), 1.0, -1.0)
            prod = out_a * out_b
            se = np.std(prod, ddof=1) / math.sqrt(n)
            assert abs(np.mean(prod) - target_a * target_b) <= 5 * se
            se_a = np.std(out_a, ddof=1) / math.sqrt(n)
            assert abs(np.mean(out_a) - target_a) <= 5 * max(se_a, 1e-12)

    def test_domain_and_axis_validation(self):
        s = HvSample(1.0, 1.0, 0.5, 0.5)
        with pytest.raises(DecompositionDomainError):
            outcome_a(s, 0.5, Z_AXIS)
        with pytest.raises(ValueError, match="unit"):
            outcome_a(s, 0.1, 2 * Z_AXIS)


class TestEstimateCorrelation:
    def test_determinism(self):
        kwargs = dict(n_samples=10_000, seed=314)
        first = estimate_correlation(0.2, X_AXIS, X_AXIS, **kwargs)
        second = estimate_correlation(0.2, X_AXIS, X_AXIS, **kwargs)
        assert first == second

    def test_q_zero_uncorrelated(self):
        est = estimate_correlation(0.0, Z_AXIS, Z_AXIS, 1_000_000, seed=5)
        assert abs(est.mean) <= 5 * est.std_error

    def test_q_03_aligned(self):
        est = estimate_correlation(0.3, Z_AXIS, Z_AXIS, 1_000_000, seed=6)
        assert abs(est.mean - (-0.3)) <= 5 * est.std_error

    def test_boundary_orthogonal(self):
        est = estimate_correlation(1.0 / 3.0, X_AXIS, Y_AXIS, 1_000_000, seed=7)
        assert abs(est.mean) <= 5 * est.std_error

    def test_agreement_with_quantum_prediction(self):
        rng = np.random.default_rng(73)
        axis_pairs = [(X_AXIS, X_AXIS), (Z_AXIS, Z_AXIS), (X_AXIS, Y_AXIS)]
        axis_pairs += [(random_unit_axis(rng), random_unit_axis(rng)) for _ in range(3)]
        for qi, q in enumerate([0.0, 0.1, 0.2, 0.3, 1.0 / 3.0]):
            rho = werner(q)
            for pi, (l, m) in enumerate(axis_pairs):
                est = estimate_correlation(q, l, m, 200_000, seed=1000 + 10 * qi + pi)
                target = correlation(rho, l, m)
                band = 5 * max(est.std_error, 1e-12)
                assert abs(est.mean - target) <= band, (q, l, m)

    def test_std_error_scales_as_inverse_sqrt_n(self):
        ses = {
            n: estimate_correlation(0.2, Z_AXIS, Z_AXIS, n, seed=88).std_error
            for n in (10_000, 100_000, 1_000_000)
        }
        for n_small, n_big in [(10_000, 100_000), (100_000, 1_000_000)]:
            ratio = ses[n_small] / ses[n_big]
            assert math.sqrt(10) / 2 < ratio < 2 * math.sqrt(10)

    def test_chunked_runs_are_deterministic(self):
        a = estimate_correlation(0.25, Z_AXIS, X_AXIS, 50_000, seed=9, chunks=4)
        b = estimate_correlation(0.25, Z_AXIS, X_AXIS, 50_000, seed=9, chunks=4)
        assert a == b
        # a different partition plan is a different (still valid) estimate
        c = estimate_correlation(0.25, Z_AXIS, X_AXIS, 50_000, seed=9, chunks=5)
        assert abs(c.mean - a.mean) <= 5 * (a.std_error + c.std_error)

    def test_mean_bounded_by_one(self):
        est = estimate_correlation(1.0 / 3.0, Z_AXIS, Z_AXIS, 1000, seed=1)
        assert abs(est.mean) <= 1.0

    def test_single_sample(self):
        est = estimate_correlation(0.1, Z_AXIS, Z_AXIS, 1, seed=0)
        assert est.std_error == 0.0
        assert est.mean in (-1.0, 1.0)

    def test_validation(self):
        with pytest.raises(DecompositionDomainError):
            estimate_correlation(0.5, Z_AXIS, Z_AXIS, 100, seed=0)
        with pytest.raises(ValueError, match="n_samples"):
            estimate_correlation(0.1, Z_AXIS, Z_AXIS, 0, seed=0)
        with pytest.raises(ValueError, match="chunks"):
            estimate_correlation(0.1, Z_AXIS, Z_AXIS, 10, seed=0, chunks=11)
        with pytest.raises(ValueError, match="unit"):
            estimate_correlation(0.1, 2 * Z_AXIS, Z_AXIS, 10, seed=0)


class TestEstimateLocal:
    @pytest.mark.parametrize(
        "q,axis,side",
        [
            (0.2, X_AXIS, "A"),
            (0.0, Z_AXIS, "A"),
            (1.0 / 3.0, Z_AXIS, "B"),
        ],
    )
    def test_marginals_vanish(self, q, axis, side):
        est = estimate_local(q, axis, side, 1_000_000, seed=11)
        assert abs(est.mean) <= 5 * est.std_error

    def test_determinism(self):
        a = estimate_local(0.1, Y_AXIS, "B", 20_000, seed=2)
        b = estimate_local(0.1, Y_AXIS, "B", 20_000, seed=2)
        assert a == b

    def test_a_and_b_differ_for_same_seed(self):
        # same hidden draws, opposite local vectors
        a = estimate_local(0.3, Z_AXIS, "A", 50_000, seed=3)
        b = estimate_local(0.3, Z_AXIS, "B", 50_000, seed=3)
        assert a.mean != b.mean

    def test_validation(self):
        with pytest.raises(ValueError, match="subsystem"):
            estimate_local(0.1, Z_AXIS, "C", 100, seed=0)
        with pytest.raises(DecompositionDomainError):
            estimate_local(0.4, Z_AXIS, "A", 100, seed=0)
