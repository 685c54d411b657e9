import numpy as np
import pytest

from emitternet import (
    ClassificationError,
    DomainError,
    FitResult,
    LorentzianPeak,
    PeakDetectionError,
    PleSpectrum,
    classify_pair_spectrum,
    fit_multi_lorentzian,
    initial_guess,
    lorentzian_value,
    synthesize,
)


def _fit_from_centers(centers_ghz):
    peaks = tuple(
        LorentzianPeak(center_ghz=c, fwhm_mhz=300.0, amplitude=100.0) for c in centers_ghz
    )
    return FitResult(peaks=peaks, background=0.0, residual_rms=0.0, converged=True, iterations=1)


class TestLorentzianValue:
    def test_peak_height_at_center(self):
        peak = LorentzianPeak(center_ghz=0.0, fwhm_mhz=300.0, amplitude=100.0)
        assert lorentzian_value(peak, 0.0) == pytest.approx(100.0)

    def test_half_maximum_at_half_width(self):
        peak = LorentzianPeak(center_ghz=0.0, fwhm_mhz=300.0, amplitude=100.0)
        assert lorentzian_value(peak, 0.15) == pytest.approx(50.0)
        assert lorentzian_value(peak, -0.15) == pytest.approx(50.0)

    def test_one_width_out(self):
        # A * (w/2)^2 / (w^2 + (w/2)^2) = A / 5
        peak = LorentzianPeak(center_ghz=0.0, fwhm_mhz=300.0, amplitude=100.0)
        assert lorentzian_value(peak, 0.3) == pytest.approx(20.0)

    def test_symmetric_and_decreasing(self):
        peak = LorentzianPeak(center_ghz=0.4, fwhm_mhz=250.0, amplitude=80.0)
        offsets = np.linspace(0.0, 3.0, 100)
        left = lorentzian_value(peak, peak.center_ghz - offsets)
        right = lorentzian_value(peak, peak.center_ghz + offsets)
        np.testing.assert_allclose(left, right, rtol=1e-12)
        assert all(a > b for a, b in zip(right, right[1:]))

    def test_validation(self):
        with pytest.raises(DomainError):
            LorentzianPeak(center_ghz=0.0, fwhm_mhz=0.0, amplitude=10.0)
        with pytest.raises(DomainError):
            LorentzianPeak(center_ghz=0.0, fwhm_mhz=100.0, amplitude=0.0)


class TestSynthesize:
    def test_background_only(self):
        grid = np.linspace(-1, 1, 51)
        spec = synthesize([], background=7.5, grid_ghz=grid)
        np.testing.assert_allclose(spec.counts, 7.5)

    def test_two_peak_maxima_at_centers(self):
        # peaks one ZFS apart; each local maximum sits at its center up to
        # the ~0.5 MHz pull of the other peak's tail
        from scipy.signal import argrelmax

        peaks = [
            LorentzianPeak(center_ghz=-0.5135, fwhm_mhz=300.0, amplitude=100.0),
            LorentzianPeak(center_ghz=0.5135, fwhm_mhz=300.0, amplitude=100.0),
        ]
        grid = np.arange(-2.0, 2.0001, 0.0005)
        spec = synthesize(peaks, background=0.0, grid_ghz=grid)
        maxima = grid[argrelmax(spec.counts)[0]]
        assert len(maxima) == 2
        assert maxima[0] == pytest.approx(-0.5135, abs=0.002)
        assert maxima[1] == pytest.approx(0.5135, abs=0.002)

    def test_poisson_zero_mean(self):
        grid = np.linspace(-1, 1, 20)
        spec = synthesize([], background=0.0, grid_ghz=grid, shot_noise=True, seed=4)
        np.testing.assert_array_equal(spec.counts, 0.0)

    def test_shot_noise_deterministic(self):
        peaks = [LorentzianPeak(center_ghz=0.0, fwhm_mhz=300.0, amplitude=50.0)]
        grid = np.linspace(-1, 1, 101)
        a = synthesize(peaks, 5.0, grid, shot_noise=True, seed=12)
        b = synthesize(peaks, 5.0, grid, shot_noise=True, seed=12)
        assert a == b

    def test_validation(self):
        grid = np.linspace(-1, 1, 10)
        with pytest.raises(DomainError):
            synthesize([], background=-1.0, grid_ghz=grid)
        with pytest.raises(DomainError):
            synthesize([], background=1.0, grid_ghz=[0.0, 0.0, 1.0])
        with pytest.raises(DomainError):
            synthesize([], background=1.0, grid_ghz=grid, shot_noise=True)


class TestInitialGuess:
    def test_clean_single_peak(self):
        peak = LorentzianPeak(center_ghz=0.2, fwhm_mhz=300.0, amplitude=100.0)
        grid = np.linspace(-2, 2, 401)
        spec = synthesize([peak], background=5.0, grid_ghz=grid)
        guess = initial_guess(spec, 1)
        assert len(guess) == 1
        assert abs(guess[0].center_ghz - 0.2) <= float(grid[1] - grid[0]) + 1e-12

    def test_two_separated_peaks_ordered(self):
        peaks = [
            LorentzianPeak(center_ghz=-1.0, fwhm_mhz=300.0, amplitude=80.0),
            LorentzianPeak(center_ghz=1.0, fwhm_mhz=300.0, amplitude=100.0),
        ]
        grid = np.linspace(-3, 3, 601)
        spec = synthesize(peaks, background=2.0, grid_ghz=grid)
        guess = initial_guess(spec, 2)
        assert guess[0].center_ghz == pytest.approx(-1.0, abs=0.02)
        assert guess[1].center_ghz == pytest.approx(1.0, abs=0.02)

    def test_flat_spectrum_detection_error(self):
        spec = PleSpectrum(frequencies_ghz=np.linspace(-1, 1, 50), counts=np.full(50, 3.0))
        with pytest.raises(PeakDetectionError) as err:
            initial_guess(spec, 1)
        assert err.value.requested == 1
        assert err.value.found == 0
        assert "0" in str(err.value)

    def test_too_few_points(self):
        spec = PleSpectrum(frequencies_ghz=np.linspace(-1, 1, 8), counts=np.full(8, 3.0))
        with pytest.raises(DomainError):
            initial_guess(spec, 2)


class TestFitMultiLorentzian:
    def test_noiseless_single_peak_exact_recovery(self):
        truth = LorentzianPeak(center_ghz=0.2, fwhm_mhz=300.0, amplitude=100.0)
        grid = np.linspace(-2, 2, 401)
        spec = synthesize([truth], background=5.0, grid_ghz=grid)
        fit = fit_multi_lorentzian(spec, 1)
        assert fit.converged
        peak = fit.peaks[0]
        assert peak.center_ghz == pytest.approx(0.2, rel=1e-6, abs=1e-9)
        assert peak.fwhm_mhz == pytest.approx(300.0, rel=1e-6)
        assert peak.amplitude == pytest.approx(100.0, rel=1e-6)
        assert fit.background == pytest.approx(5.0, rel=1e-6)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_noiseless_round_trip(self, k):
        truth = [
            LorentzianPeak(
                center_ghz=0.15 + 1.03 * i, fwhm_mhz=300.0 + 12 * i, amplitude=100.0 - 6 * i
            )
            for i in range(k)
        ]
        grid = np.linspace(-1.6, 1.0 + 1.03 * k, 900)
        spec = synthesize(truth, background=4.0, grid_ghz=grid)
        fit = fit_multi_lorentzian(spec, k)
        assert fit.converged
        assert fit.iterations <= 500
        for got, want in zip(fit.peaks, truth):
            assert got.center_ghz == pytest.approx(want.center_ghz, rel=1e-6, abs=1e-9)
            assert got.fwhm_mhz == pytest.approx(want.fwhm_mhz, rel=1e-6)
            assert got.amplitude == pytest.approx(want.amplitude, rel=1e-6)
        assert fit.background == pytest.approx(4.0, rel=1e-6)

    def test_noisy_double_centers_within_ten_mhz(self):
        truth = [
            LorentzianPeak(center_ghz=0.0, fwhm_mhz=316.0, amplitude=100.0),
            LorentzianPeak(center_ghz=1.027, fwhm_mhz=316.0, amplitude=100.0),
        ]
        grid = np.linspace(-2.0, 3.0, 1001)
        hits = 0
        for s in range(100):
            spec = synthesize(truth, background=5.0, grid_ghz=grid, shot_noise=True, seed=s)
            fit = fit_multi_lorentzian(spec, 2)
            errs = [
                abs(fit.peaks[i].center_ghz - truth[i].center_ghz) * 1e3 for i in range(2)
            ]
            if max(errs) <= 10.0:
                hits += 1
        assert hits >= 95

    def test_three_peak_spectrum_adjacent_separations(self):
        # pair spectrum: three lines with ~1 GHz neighbor gaps
        truth = [
            LorentzianPeak(center_ghz=-1.03, fwhm_mhz=320.0, amplitude=90.0),
            LorentzianPeak(center_ghz=0.0, fwhm_mhz=300.0, amplitude=160.0),
            LorentzianPeak(center_ghz=1.02, fwhm_mhz=330.0, amplitude=85.0),
        ]
        grid = np.linspace(-3.0, 3.0, 1201)
        spec = synthesize(truth, background=3.0, grid_ghz=grid)
        fit = fit_multi_lorentzian(spec, 3)
        assert fit.converged
        centers = [p.center_ghz for p in fit.peaks]
        assert centers[1] - centers[0] == pytest.approx(1.03, abs=1e-3)
        assert centers[2] - centers[1] == pytest.approx(1.02, abs=1e-3)

    def test_residual_not_worse_with_true_peak_count(self):
        truth = [
            LorentzianPeak(center_ghz=-0.6, fwhm_mhz=300.0, amplitude=90.0),
            LorentzianPeak(center_ghz=0.6, fwhm_mhz=300.0, amplitude=100.0),
        ]
        grid = np.linspace(-2.5, 2.5, 701)
        spec = synthesize(truth, background=5.0, grid_ghz=grid, shot_noise=True, seed=6)
        rms_under = fit_multi_lorentzian(spec, 1).residual_rms
        rms_true = fit_multi_lorentzian(spec, 2).residual_rms
        assert rms_true <= rms_under + 1e-9

    def test_iteration_cap_flags_nonconvergence(self):
        truth = [LorentzianPeak(center_ghz=0.1, fwhm_mhz=300.0, amplitude=100.0)]
        grid = np.linspace(-2, 2, 401)
        spec = synthesize(truth, background=5.0, grid_ghz=grid, shot_noise=True, seed=1)
        fit = fit_multi_lorentzian(spec, 1, max_iterations=1)
        assert not fit.converged

    def test_undetectable_peak_count(self):
        truth = [LorentzianPeak(center_ghz=0.0, fwhm_mhz=300.0, amplitude=100.0)]
        grid = np.linspace(-2, 2, 401)
        spec = synthesize(truth, background=5.0, grid_ghz=grid)
        with pytest.raises(PeakDetectionError):
            fit_multi_lorentzian(spec, 4)

    def test_peaks_sorted_by_frequency(self):
        truth = [
            LorentzianPeak(center_ghz=0.9, fwhm_mhz=300.0, amplitude=70.0),
            LorentzianPeak(center_ghz=-0.9, fwhm_mhz=300.0, amplitude=100.0),
        ]
        grid = np.linspace(-3, 3, 601)
        spec = synthesize(truth, background=1.0, grid_ghz=grid)
        fit = fit_multi_lorentzian(spec, 2)
        assert fit.peaks[0].center_ghz < fit.peaks[1].center_ghz


class TestClassifyPairSpectrum:
    def test_accepts_consistent_triple(self):
        assignment = classify_pair_spectrum(_fit_from_centers([0.0, 1.03, 2.06]))
        assert assignment.zfs1_ghz == pytest.approx(1.03)
        assert assignment.zfs2_ghz == pytest.approx(1.03)
        assert assignment.shared_peak == 1
        assert assignment.emitter1 == (0, 1)
        assert assignment.emitter2 == (1, 2)

    def test_accepts_central_values(self):
        assignment = classify_pair_spectrum(_fit_from_centers([0.0, 1.027, 2.054]))
        assert assignment.zfs1_ghz == pytest.approx(1.027)
        assert assignment.zfs2_ghz == pytest.approx(1.027)

    def test_rejects_gross_violation(self):
        with pytest.raises(ClassificationError) as err:
            classify_pair_spectrum(_fit_from_centers([0.0, 0.3, 2.0]))
        assert err.value.zfs1_ghz == pytest.approx(0.3)
        assert err.value.zfs2_ghz == pytest.approx(1.7)
        assert "0.3" in str(err.value) and "1.7" in str(err.value)

    def test_shift_invariance(self):
        base = classify_pair_spectrum(_fit_from_centers([0.0, 1.0, 2.01]))
        shifted = classify_pair_spectrum(_fit_from_centers([5.5, 6.5, 7.51]))
        assert shifted.zfs1_ghz == pytest.approx(base.zfs1_ghz, abs=1e-12)
        assert shifted.zfs2_ghz == pytest.approx(base.zfs2_ghz, abs=1e-12)

    def test_requires_three_peaks(self):
        with pytest.raises(DomainError):
            classify_pair_spectrum(_fit_from_centers([0.0, 1.0]))

    def test_prior_window_is_configurable(self):
        centers = [0.0, 0.8, 1.6]
        with pytest.raises(ClassificationError):
            classify_pair_spectrum(_fit_from_centers(centers))
        assignment = classify_pair_spectrum(_fit_from_centers(centers), n_sigma=4.0)
        assert assignment.zfs1_ghz == pytest.approx(0.8)


class TestPleSpectrumValidation:
    def test_rejects_unsorted_frequencies(self):
        with pytest.raises(DomainError):
            PleSpectrum(frequencies_ghz=np.array([0.0, -1.0]), counts=np.array([1.0, 2.0]))

    def test_rejects_negative_counts(self):
        with pytest.raises(DomainError):
            PleSpectrum(frequencies_ghz=np.array([0.0, 1.0]), counts=np.array([1.0, -2.0]))
