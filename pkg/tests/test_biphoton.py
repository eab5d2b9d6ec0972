"""
Testes do lado quântico: amplitude conjunta, dispersão e distribuição de dois tempos.
"""
import logging
import math

import numpy as np
import pytest

from fransonsim.core.exceptions import CoverageError, InvalidParameterError, WindowOverflowError
from fransonsim.core.models import JointBasis, TwoTimeDistribution
from fransonsim.services.biphoton import (
    apply_dispersion_jsa, approx_variance_small_pump, biphoton_grids, distribution_slice,
    effective_bandwidth, joint_spectral_amplitude, quantum_variance_closed_form,
    quantum_variance_general, simulate_two_time, summarize_distribution, time_difference_mean,
    time_difference_variance, two_time_probability, two_time_probability_closed_form
)
from fransonsim.services.shg import classical_variance_closed_form
from fransonsim.services.spectral import make_frequency_grid


def _photon_grids(omega0, sigma, count=65):
    grid = make_frequency_grid(omega0, sigma, coverage=8.0, count=count)
    return grid, grid


class TestJointSpectralAmplitude:

    def test_peak_at_degenerate_frequencies(self, omega0, sigma):
        jsa = joint_spectral_amplitude(omega0, sigma, sigma / 10.0, _photon_grids(omega0, sigma))

        assert jsa.samples[32, 32] == pytest.approx(1.0)
        assert np.abs(jsa.samples).max() == pytest.approx(1.0)

    def test_broad_pump_factorizes(self, omega0, sigma):
        grids = _photon_grids(omega0, sigma)
        jsa = joint_spectral_amplitude(omega0, sigma, 100.0 * sigma, grids)

        x = grids[0].offsets
        product = np.outer(np.exp(-x ** 2 / (2 * sigma ** 2)), np.exp(-x ** 2 / (2 * sigma ** 2)))
        assert np.abs(jsa.samples - product).max() <= 1e-4

    def test_anti_diagonal_follows_marginals(self, omega0, sigma):
        grids = _photon_grids(omega0, sigma)
        jsa = joint_spectral_amplitude(omega0, sigma, sigma / 100.0, grids)

        x = grids[0].offsets
        ridge = jsa.samples[np.arange(65), np.arange(65)[::-1]]
        np.testing.assert_allclose(ridge.real, np.exp(-x ** 2 / sigma ** 2), rtol=1e-12)

    def test_nonpositive_pump_bandwidth(self, omega0, sigma):
        with pytest.raises(InvalidParameterError):
            joint_spectral_amplitude(omega0, sigma, 0.0, _photon_grids(omega0, sigma))

    def test_grid_must_cover_marginals(self, omega0, sigma):
        narrow = make_frequency_grid(omega0, sigma / 2.0, coverage=8.0, count=65)

        with pytest.raises(CoverageError):
            joint_spectral_amplitude(omega0, sigma, sigma / 10.0, (narrow, narrow))

    def test_sum_difference_basis_matches_photon_basis(self, omega0, sigma):
        sigma_c = sigma / 20.0
        grids = biphoton_grids(omega0, sigma, sigma_c)
        jsa = joint_spectral_amplitude(omega0, sigma, sigma_c, grids, JointBasis.SUM_DIFFERENCE)

        w1, w2 = jsa.photon_frequencies()
        g1 = np.exp(-(w1 - omega0) ** 2 / (2 * sigma ** 2))
        g2 = np.exp(-(w2 - omega0) ** 2 / (2 * sigma ** 2))
        pump = np.exp(-(w1 + w2 - 2 * omega0) ** 2 / (2 * sigma_c ** 2))
        np.testing.assert_allclose(jsa.samples.real, g1 * g2 * pump, atol=1e-9)


class TestDispersion:

    def test_zero_dispersion_is_identity(self, omega0, sigma):
        jsa = joint_spectral_amplitude(omega0, sigma, sigma / 10.0, _photon_grids(omega0, sigma))
        assert apply_dispersion_jsa(jsa, 0.0, 0.0) is jsa

    def test_dispersion_preserves_magnitudes(self, omega0, sigma):
        jsa = joint_spectral_amplitude(omega0, sigma, sigma / 10.0, _photon_grids(omega0, sigma))
        dispersed = apply_dispersion_jsa(jsa, 850.0, -850.0)

        np.testing.assert_allclose(np.abs(dispersed.samples), np.abs(jsa.samples), rtol=1e-12)
        assert (dispersed.beta1, dispersed.beta2) == (850.0, -850.0)

    def test_dispersion_is_additive(self, omega0, sigma):
        jsa = joint_spectral_amplitude(omega0, sigma, sigma / 10.0, _photon_grids(omega0, sigma))
        twice = apply_dispersion_jsa(apply_dispersion_jsa(jsa, 400.0, -200.0), 450.0, -650.0)
        once = apply_dispersion_jsa(jsa, 850.0, -850.0)

        np.testing.assert_allclose(twice.samples, once.samples, atol=1e-12)
        assert (twice.beta1, twice.beta2) == (850.0, -850.0)


class TestClosedForms:

    def test_limits(self, sigma):
        beta = 850.0
        assert quantum_variance_closed_form(sigma, 0.0, beta) == pytest.approx(1.0 / sigma ** 2)
        assert quantum_variance_closed_form(sigma, 1e6, beta) == pytest.approx(
            (1.0 + 4.0 * beta ** 2 * sigma ** 4) / sigma ** 2, rel=1e-6
        )

    def test_reference_value(self, sigma):
        assert quantum_variance_closed_form(sigma, sigma / 100.0, 850.0) == pytest.approx(72.4985, rel=1e-5)

    def test_monotone_in_pump_bandwidth(self, sigma):
        ratios = np.geomspace(1e-3, 10.0, 40)
        values = [quantum_variance_closed_form(sigma, ratio * sigma, 850.0) for ratio in ratios]

        assert np.all(np.diff(values) >= 0)

    @pytest.mark.parametrize("sigma_c_ratio", [0.005, 0.05, 1.0, 10.0])
    def test_same_structure_as_classical(self, sigma, sigma_c_ratio):
        """σ²+σ_s² ↔ 2σ²+σ_c²: o caso quântico é o clássico com σ_s = σ_c/√2."""
        sigma_c = sigma_c_ratio * sigma
        assert quantum_variance_closed_form(sigma, sigma_c, 850.0) == pytest.approx(
            classical_variance_closed_form(sigma, sigma_c / math.sqrt(2.0), 850.0), rel=1e-12
        )

    @pytest.mark.parametrize("beta", [0.0, 425.0, 850.0, 1e4])
    @pytest.mark.parametrize("sigma_c_ratio", [0.005, 0.1, 10.0])
    def test_covariance_reproduces_closed_form(self, sigma, beta, sigma_c_ratio):
        sigma_c = sigma_c_ratio * sigma
        assert quantum_variance_general(sigma, sigma_c, beta, -beta) == pytest.approx(
            quantum_variance_closed_form(sigma, sigma_c, beta), rel=1e-9
        )

    def test_small_pump_approximation(self, sigma):
        sigma_c = sigma / 100.0
        approx = approx_variance_small_pump(sigma, sigma_c, 850.0)

        assert approx.in_regime
        assert approx.warning is None
        assert approx.value == pytest.approx(quantum_variance_closed_form(sigma, sigma_c, 850.0), rel=0.01)
        assert approx_variance_small_pump(sigma, sigma_c, 0.0).value == pytest.approx(1.0 / sigma ** 2)

    def test_small_pump_approximation_converges(self, sigma):
        sigma_c = sigma / 1000.0
        transform_limited = 1.0 / sigma ** 2
        approx = approx_variance_small_pump(sigma, sigma_c, 850.0).value
        exact = quantum_variance_closed_form(sigma, sigma_c, 850.0)

        assert (approx - transform_limited) / (exact - transform_limited) == pytest.approx(1.0, rel=1e-6)

    def test_small_pump_approximation_outside_regime(self, sigma, caplog):
        with caplog.at_level(logging.WARNING):
            approx = approx_variance_small_pump(sigma, sigma / 2.0, 850.0)

        assert not approx.in_regime
        assert approx.warning
        assert "fora do regime" in caplog.text

    def test_effective_bandwidth(self, sigma):
        assert effective_bandwidth(sigma, sigma / 100.0) == pytest.approx(sigma / 10.0)

    def test_two_time_closed_form(self, sigma):
        sigma_c = sigma / 100.0
        assert two_time_probability_closed_form(sigma, sigma_c, 850.0, 0.0, 0.0) == 1.0
        assert two_time_probability_closed_form(sigma, sigma_c, 850.0, 10.0, -10.0) < 1.0


class TestTwoTimeDistribution:

    @pytest.mark.parametrize("beta", [0.0, 425.0, 850.0])
    @pytest.mark.parametrize("sigma_c_ratio", [1 / 20, 1 / 50, 1 / 100])
    def test_numerical_variance_matches_closed_form(self, omega0, sigma, beta, sigma_c_ratio):
        sigma_c = sigma_c_ratio * sigma
        dist = simulate_two_time(omega0, sigma, sigma_c, beta, -beta)

        expected = quantum_variance_closed_form(sigma, sigma_c, beta)
        assert time_difference_variance(dist) == pytest.approx(expected, rel=0.02)

    def test_separable_state_loses_cancellation(self, omega0, sigma):
        beta = 850.0
        dist = simulate_two_time(omega0, sigma, 10.0 * sigma, beta, -beta)

        separable = (1.0 + 4.0 * beta ** 2 * sigma ** 4) / sigma ** 2
        assert time_difference_variance(dist) == pytest.approx(separable, rel=0.05)

    def test_narrowest_pump_fits_default_grid(self, omega0, sigma):
        sigma_c = sigma / 200.0
        dist = simulate_two_time(omega0, sigma, sigma_c, 850.0, -850.0)

        assert time_difference_variance(dist) == pytest.approx(
            quantum_variance_closed_form(sigma, sigma_c, 850.0), rel=0.02
        )

    @pytest.mark.parametrize("beta", [0.0, 850.0])
    def test_refined_grid_leaves_variance_unchanged(self, omega0, sigma, beta):
        sigma_c = sigma / 20.0
        coarse = simulate_two_time(omega0, sigma, sigma_c, beta, -beta, count=512)
        fine = simulate_two_time(omega0, sigma, sigma_c, beta, -beta, count=1024)

        assert time_difference_variance(fine) == pytest.approx(time_difference_variance(coarse), rel=1e-3)

    def test_normalized_and_centered(self, omega0, sigma):
        dist = simulate_two_time(omega0, sigma, sigma / 20.0, 850.0, -850.0)

        assert np.sum(dist.values) * dist.cell_area == pytest.approx(1.0, abs=1e-9)
        assert abs(time_difference_mean(dist)) < 1e-6

    def test_grid_values_follow_closed_form(self, omega0, sigma):
        sigma_c = sigma / 20.0
        dist = simulate_two_time(omega0, sigma, sigma_c, 850.0, -850.0)

        t1, t2 = dist.photon_times()
        expected = two_time_probability_closed_form(sigma, sigma_c, 850.0, t1, t2)
        np.testing.assert_allclose(dist.values / dist.values.max(), expected, atol=1e-6)

    def test_window_overflow(self, omega0, sigma):
        sigma_c = sigma / 10.0
        grids = biphoton_grids(omega0, sigma, sigma_c)  # janelas dimensionadas para β = 0
        jsa = joint_spectral_amplitude(omega0, sigma, sigma_c, grids, JointBasis.SUM_DIFFERENCE)

        with pytest.raises(WindowOverflowError) as excinfo:
            two_time_probability(apply_dispersion_jsa(jsa, 850.0, -850.0))
        assert excinfo.value.edge_ratio > 1e-6
        assert "joint_grid_count" in str(excinfo.value)

    def test_too_coarse_joint_grid(self, omega0, sigma):
        with pytest.raises(CoverageError, match="joint_grid_count"):
            biphoton_grids(omega0, sigma, sigma / 200.0, 850.0, -850.0, count=16)

    def test_single_cell_variance_is_zero(self):
        dist = TwoTimeDistribution(times1=[0.0], times2=[0.0], values=[[1.0]])
        assert time_difference_variance(dist) == 0.0

    def test_summary(self, omega0, sigma):
        sigma_c = sigma / 50.0
        dist = simulate_two_time(omega0, sigma, sigma_c, 850.0, -850.0)
        summary = summarize_distribution(dist, quantum_variance_closed_form(sigma, sigma_c, 850.0))

        assert summary.relative_error < 0.02
        assert summary.grid_count == 512
        assert summary.difference_window > 7.0 * math.sqrt(summary.difference_variance)

    def test_slice(self, omega0, sigma):
        dist = simulate_two_time(omega0, sigma, sigma / 20.0, 850.0, -850.0)
        frame = distribution_slice(dist, points=32)

        assert list(frame.columns) == ["t1_fs", "t2_fs", "probability"]
        assert len(frame) == 31 * 31
        assert frame["probability"].max() == pytest.approx(dist.values.max())
