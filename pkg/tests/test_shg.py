"""
Testes da cadeia clássica: SHG, monocromador, varredura de atraso e formas fechadas.
"""
import logging
import math

import numpy as np
import pytest

from fransonsim.core.exceptions import CoverageError, GridMismatchError, InvalidParameterError
from fransonsim.core.models import DispersionSpec, MonochromatorSpec
from fransonsim.core.units import fwhm_from_variance
from fransonsim.services.analysis import fit_gaussian_trace
from fransonsim.services.shg import (
    classical_trace_closed_form, classical_variance_closed_form, classical_variance_general,
    default_delays, delay_scan, general_variance_unequal_dispersion, monochromator_from_fwhm,
    monochromator_signal, scan_grid_count, shg_spectrum
)
from fransonsim.services.spectral import (
    apply_delay, apply_quadratic_dispersion, gaussian_field_spectrum, make_frequency_grid,
    spectral_energy
)


def _field(omega0, sigma, count=4096, beta=0.0):
    grid = make_frequency_grid(omega0, sigma, count=count)
    return apply_quadratic_dispersion(gaussian_field_spectrum(grid, omega0, sigma), DispersionSpec(beta, omega0))


def _fitted_fwhm(sigma, omega0, beta1, beta2, mono):
    return fit_gaussian_trace(delay_scan(sigma, omega0, beta1, beta2, mono)).fwhm


class TestShgSpectrum:

    def test_output_grid(self, omega0, sigma):
        field = _field(omega0, sigma)
        shg = shg_spectrum(field, field)

        assert shg.grid.center == pytest.approx(2.0 * omega0, rel=1e-15)
        assert shg.grid.spacing == field.grid.spacing
        assert shg.grid.count == 2 * 2895 + 1
        assert shg.grid.half_span == pytest.approx(math.sqrt(2.0) * field.grid.half_span, rel=1e-3)

    def test_transform_limited_shg_is_gaussian(self, omega0, sigma):
        field = _field(omega0, sigma)
        shg = shg_spectrum(field, field)

        x = shg.grid.offsets
        expected = math.sqrt(math.pi) * sigma * np.exp(-x ** 2 / (4.0 * sigma ** 2))
        np.testing.assert_allclose(np.abs(shg.samples), expected, atol=1e-9 * expected.max())

    def test_fft_and_direct_agree(self, omega0, sigma):
        field1 = _field(omega0, sigma, count=512, beta=300.0)
        field2 = _field(omega0, sigma, count=512, beta=-120.0)

        fast = shg_spectrum(field1, field2, method="fft")
        direct = shg_spectrum(field1, field2, method="direct")

        peak = np.abs(direct.samples).max()
        np.testing.assert_allclose(fast.samples, direct.samples, atol=1e-9 * peak)

    def test_grid_mismatch(self, omega0, sigma):
        with pytest.raises(GridMismatchError):
            shg_spectrum(_field(omega0, sigma, count=4096), _field(omega0, sigma, count=2048))

    def test_unknown_method(self, omega0, sigma):
        field = _field(omega0, sigma, count=512)
        with pytest.raises(InvalidParameterError):
            shg_spectrum(field, field, method="fftw")


    def test_swapping_arms_gives_same_spectrum(self, omega0, sigma):
        chirped = _field(omega0, sigma, beta=850.0)
        delayed = apply_delay(_field(omega0, sigma), 40.0)

        forward = shg_spectrum(chirped, delayed)
        swapped = shg_spectrum(delayed, chirped)

        peak = np.abs(forward.samples).max()
        np.testing.assert_allclose(swapped.samples, forward.samples, atol=1e-12 * peak)

    @pytest.mark.parametrize("method", ["fft", "direct"])
    def test_zero_field_gives_zero_spectrum(self, omega0, sigma, method):
        field = _field(omega0, sigma, count=512)
        silent = field.with_samples(np.zeros(field.grid.count))

        shg = shg_spectrum(silent, field, method=method)
        assert not np.any(shg.samples)


class TestMonochromator:

    def test_monochromator_from_fwhm(self, omega0):
        mono = monochromator_from_fwhm(0.02, 403.5)

        assert mono.center == pytest.approx(2.0 * omega0, rel=1e-12)
        assert mono.sigma_s == pytest.approx(9.8262e-5, rel=1e-4)

    def test_signal_scales_with_fourth_power(self, omega0, sigma, mono):
        field = _field(omega0, sigma)
        doubled = field.with_samples(2.0 * field.samples)

        base = monochromator_signal(shg_spectrum(field, field), mono)
        scaled = monochromator_signal(shg_spectrum(doubled, doubled), mono)
        assert scaled == pytest.approx(16.0 * base, rel=1e-12)

    def test_flat_filter_collects_whole_band(self, omega0, sigma):
        field = _field(omega0, sigma, beta=850.0)
        shg = shg_spectrum(field, field)
        flat = MonochromatorSpec(center=2.0 * omega0, sigma_s=1000.0)

        assert monochromator_signal(shg, flat) == pytest.approx(spectral_energy(shg), rel=1e-6)

    def test_filter_outside_band(self, omega0, sigma):
        field = _field(omega0, sigma)
        off_band = MonochromatorSpec(center=2.0 * omega0 + 5.0, sigma_s=1e-4)

        with pytest.raises(CoverageError):
            monochromator_signal(shg_spectrum(field, field), off_band)


    def test_narrow_filter_samples_spectrum_at_center(self, omega0, sigma):
        shg = shg_spectrum(_field(omega0, sigma), _field(omega0, sigma))
        center = int(np.argmin(np.abs(shg.grid.offsets)))
        peak_power = abs(shg.samples[center]) ** 2

        narrow = MonochromatorSpec(center=2.0 * omega0, sigma_s=0.01)
        narrower = MonochromatorSpec(center=2.0 * omega0, sigma_s=0.005)
        signal = monochromator_signal(shg, narrow)

        # S·|E_SHG|² → |E_SHG(centro)|²·σ_s·√(2π) quando σ_s ≪ σ
        assert signal / (peak_power * 0.01 * math.sqrt(2.0 * math.pi)) == pytest.approx(1.0, rel=0.01)
        assert signal / monochromator_signal(shg, narrower) == pytest.approx(2.0, rel=0.01)


class TestClosedForms:

    def test_trace_closed_form_peak_and_symmetry(self, sigma, sigma_s):
        taus = np.linspace(-100.0, 100.0, 101)
        values = classical_trace_closed_form(sigma, sigma_s, 850.0, taus)

        assert classical_trace_closed_form(sigma, sigma_s, 850.0, 0.0) == 1.0
        np.testing.assert_allclose(values, values[::-1])

    def test_variance_limits(self, sigma):
        transform_limited = 1.0 / sigma ** 2

        assert classical_variance_closed_form(sigma, 1e-4, 0.0) == pytest.approx(transform_limited)
        assert classical_variance_closed_form(sigma, 0.0, 850.0) == pytest.approx(transform_limited)
        assert classical_variance_closed_form(sigma, 1e6, 850.0) == pytest.approx(
            (1.0 + 4.0 * 850.0 ** 2 * sigma ** 4) / sigma ** 2, rel=1e-6
        )

    def test_reference_values(self, sigma, sigma_s):
        assert 1.0 / sigma ** 2 == pytest.approx(70.4474, rel=1e-5)
        assert classical_variance_closed_form(sigma, sigma_s, 850.0) == pytest.approx(70.4753, rel=1e-5)
        assert fwhm_from_variance(1.0 / sigma ** 2) == pytest.approx(19.7647, rel=1e-5)

    @pytest.mark.parametrize("beta", [0.0, 100.0, 850.0, 3e5])
    @pytest.mark.parametrize("sigma_s", [1e-5, 9.8e-5, 1e-3, 0.05])
    def test_general_variance_reduces_to_cancelled_case(self, sigma, beta, sigma_s):
        assert classical_variance_general(sigma, sigma_s, beta, -beta) == pytest.approx(
            classical_variance_closed_form(sigma, sigma_s, beta), rel=1e-6
        )

    @pytest.mark.parametrize("beta1, beta2", [(850.0, 0.0), (0.0, -850.0), (850.0, 400.0), (850.0, -850.0)])
    def test_general_variance_without_filter(self, sigma, beta1, beta2):
        assert classical_variance_general(sigma, 0.0, beta1, beta2) == pytest.approx(
            general_variance_unequal_dispersion(sigma, beta1, beta2), rel=1e-10
        )

    def test_finite_filter_never_narrows(self, sigma, sigma_s):
        narrow_limit = general_variance_unequal_dispersion(sigma, 850.0, 0.0)

        assert classical_variance_general(sigma, sigma_s, 850.0, 0.0) >= narrow_limit * (1.0 - 1e-12)
        assert fwhm_from_variance(narrow_limit) == pytest.approx(239.29, rel=1e-3)

    def test_general_variance_rejects_invalid(self, sigma):
        with pytest.raises(InvalidParameterError):
            classical_variance_general(0.0, 1e-4, 0.0, 0.0)
        with pytest.raises(InvalidParameterError):
            classical_variance_general(sigma, -1e-4, 0.0, 0.0)


class TestDefaultDelays:

    def test_symmetric_span(self, sigma, sigma_s):
        delays = default_delays(sigma, sigma_s, 850.0, -850.0)
        expected = fwhm_from_variance(classical_variance_general(sigma, sigma_s, 850.0, -850.0))

        assert delays.size == 201
        np.testing.assert_allclose(delays, -delays[::-1], atol=1e-12)
        assert delays[-1] == pytest.approx(5.0 * expected, rel=1e-12)

    def test_too_few_delays(self, sigma, sigma_s):
        with pytest.raises(InvalidParameterError):
            default_delays(sigma, sigma_s, 0.0, 0.0, count=20)


class TestDelayScan:

    def test_transform_limited_width(self, sigma, omega0, mono):
        assert _fitted_fwhm(sigma, omega0, 0.0, 0.0, mono) == pytest.approx(19.7647, rel=0.005)

    def test_opposite_dispersion_cancels(self, sigma, omega0, mono):
        reference = _fitted_fwhm(sigma, omega0, 0.0, 0.0, mono)
        cancelled = _fitted_fwhm(sigma, omega0, 850.0, -850.0, mono)

        assert cancelled == pytest.approx(reference, rel=0.005)

    def test_single_arm_dispersion_broadens(self, sigma, omega0, mono):
        fwhm = _fitted_fwhm(sigma, omega0, 850.0, 0.0, mono)
        expected = fwhm_from_variance(classical_variance_general(sigma, mono.sigma_s, 850.0, 0.0))

        assert fwhm == pytest.approx(expected, rel=0.005)
        assert fwhm == pytest.approx(239.3, rel=0.02)

    def test_trace_is_symmetric(self, sigma, omega0, mono):
        trace = delay_scan(sigma, omega0, 850.0, -850.0, mono)

        assert trace.intensities.max() == 1.0
        np.testing.assert_allclose(trace.intensities, trace.intensities[::-1], atol=1e-6)

    @pytest.mark.parametrize("beta", [0.0, 100.0, 850.0, 1e4])
    @pytest.mark.parametrize("sigma_s", [1e-5, 1e-4, 1e-3])
    def test_fitted_variance_matches_closed_form(self, sigma, omega0, beta, sigma_s):
        mono = MonochromatorSpec(center=2.0 * omega0, sigma_s=sigma_s)
        fit = fit_gaussian_trace(delay_scan(sigma, omega0, beta, -beta, mono))

        assert fit.variance == pytest.approx(classical_variance_closed_form(sigma, sigma_s, beta), rel=0.02)

    @pytest.mark.parametrize("beta", [1e3, 5e3])
    def test_cancellation_persists_below_bound(self, sigma, omega0, mono, beta):
        reference = _fitted_fwhm(sigma, omega0, 0.0, 0.0, mono)
        assert _fitted_fwhm(sigma, omega0, beta, -beta, mono) == pytest.approx(reference, rel=0.01)

    def test_cancellation_fails_far_beyond_bound(self, sigma, omega0, mono):
        reference = _fitted_fwhm(sigma, omega0, 0.0, 0.0, mono)
        assert _fitted_fwhm(sigma, omega0, 3e5, -3e5, mono) > 1.1 * reference

    def test_matches_explicit_pipeline(self, sigma, omega0):
        """Varredura rápida reproduz SHG + monocromador aplicados atraso a atraso."""
        beta1, beta2 = 850.0, -850.0
        mono = MonochromatorSpec(center=2.0 * omega0, sigma_s=0.01)
        delays = np.linspace(-120.0, 120.0, 49)

        arm1 = _field(omega0, sigma, beta=beta1)
        arm2 = _field(omega0, sigma, beta=beta2)
        raw = np.array([
            monochromator_signal(shg_spectrum(apply_delay(arm1, tau), arm2), mono) for tau in delays
        ])

        trace = delay_scan(sigma, omega0, beta1, beta2, mono, delays=delays)
        np.testing.assert_allclose(trace.intensities, raw / raw.max(), atol=1e-5)

    def test_parallel_chunks_match_sequential(self, sigma, omega0, mono):
        sequential = delay_scan(sigma, omega0, 850.0, 0.0, mono, workers=1, chunk_size=16)
        parallel = delay_scan(sigma, omega0, 850.0, 0.0, mono, workers=3, chunk_size=16)

        np.testing.assert_allclose(parallel.intensities, sequential.intensities, rtol=1e-12, atol=1e-14)

    def test_narrow_delay_window_warns(self, sigma, omega0, mono, caplog):
        with caplog.at_level(logging.WARNING):
            delay_scan(sigma, omega0, 0.0, 0.0, mono, delays=np.linspace(-10.0, 10.0, 41))

        assert "Janela de atrasos" in caplog.text

    def test_too_few_delays(self, sigma, omega0, mono):
        with pytest.raises(InvalidParameterError):
            delay_scan(sigma, omega0, 0.0, 0.0, mono, delays=np.linspace(-50.0, 50.0, 10))

    @pytest.mark.parametrize("beta1", [5e3, 1e4, 2e4])
    def test_large_single_arm_dispersion_matches_closed_form(self, sigma, omega0, mono, beta1):
        fwhm = _fitted_fwhm(sigma, omega0, beta1, 0.0, mono)
        expected = fwhm_from_variance(classical_variance_general(sigma, mono.sigma_s, beta1, 0.0))

        assert fwhm == pytest.approx(expected, rel=0.01)

    def test_grid_grows_for_wide_traces(self, sigma, omega0, mono, caplog):
        with caplog.at_level(logging.INFO):
            delay_scan(sigma, omega0, 1e4, 0.0, mono)

        assert "grade ampliada" in caplog.text

    def test_unreachable_grid_raises(self, sigma, omega0, mono):
        with pytest.raises(CoverageError, match="dispersão residual"):
            delay_scan(sigma, omega0, 1e6, 0.0, mono)

    @pytest.mark.parametrize("beta1,beta2", [(0.0, 0.0), (850.0, -850.0), (850.0, 0.0)])
    def test_refined_grid_leaves_trace_unchanged(self, sigma, omega0, mono, beta1, beta2):
        coarse = fit_gaussian_trace(delay_scan(sigma, omega0, beta1, beta2, mono, count=4096))
        fine = fit_gaussian_trace(delay_scan(sigma, omega0, beta1, beta2, mono, count=8192))

        assert fine.fwhm == pytest.approx(coarse.fwhm, rel=1e-3)
        assert fine.variance == pytest.approx(coarse.variance, rel=1e-3)


class TestScanGridCount:

    def test_cancelled_dispersion_fits_default_grid(self, sigma):
        assert scan_grid_count(sigma, 850.0, -850.0, 100.0) < 4096

    def test_residual_dispersion_needs_larger_grid(self, sigma):
        assert scan_grid_count(sigma, 1e4, 0.0, 14000.0) > 4096

    def test_grows_with_delay_window(self, sigma):
        assert scan_grid_count(sigma, 0.0, 0.0, 5000.0) > scan_grid_count(sigma, 0.0, 0.0, 500.0)
