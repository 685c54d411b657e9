"""Photoluminescence-excitation spectra: synthesis, fitting, classification.

Spectra are modeled as sums of Lorentzian peaks over a constant
background, with optional Poisson (shot) noise on the expected counts.
The fitter is a damped nonlinear least-squares over 3k+1 parameters
(center, FWHM, height per peak, plus one shared background).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import least_squares
from scipy.signal import find_peaks

from .errors import ClassificationError, DomainError, PeakDetectionError
from .seeding import SeedSpec, as_seed
from .spectral import EnsembleModel

# Convergence contract for the fitter.
FIT_RELATIVE_TOLERANCE = 1e-8
FIT_MAX_ITERATIONS = 500


@dataclass(frozen=True)
class LorentzianPeak:
    """One absorption line: center detuning (GHz), FWHM (MHz), peak height."""

    center_ghz: float
    fwhm_mhz: float
    amplitude: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.center_ghz):
            raise DomainError("peak center must be finite")
        if not self.fwhm_mhz > 0:
            raise DomainError(f"FWHM must be positive, got {self.fwhm_mhz}")
        if not self.amplitude > 0:
            raise DomainError(f"amplitude must be positive, got {self.amplitude}")


def lorentzian_value(peak: LorentzianPeak, frequency_ghz):
    """L(nu) = A * (w/2)^2 / ((nu - nu0)^2 + (w/2)^2); A at center, A/2 at nu0 +- w/2."""
    nu = np.asarray(frequency_ghz, dtype=float)
    half_ghz = peak.fwhm_mhz * 1e-3 / 2.0
    out = peak.amplitude * half_ghz**2 / ((nu - peak.center_ghz) ** 2 + half_ghz**2)
    return float(out) if np.isscalar(frequency_ghz) else out


@dataclass(frozen=True)
class PleSpectrum:
    """Counts versus excitation detuning, with the dwell time per point."""

    frequencies_ghz: np.ndarray
    counts: np.ndarray
    dwell_time_s: float = 1.0

    def __post_init__(self) -> None:
        freq = np.asarray(self.frequencies_ghz, dtype=float)
        cts = np.asarray(self.counts, dtype=float)
        object.__setattr__(self, "frequencies_ghz", freq)
        object.__setattr__(self, "counts", cts)
        if freq.ndim != 1 or cts.shape != freq.shape:
            raise DomainError("frequencies and counts must be 1-d and the same length")
        if len(freq) >= 2 and not np.all(np.diff(freq) > 0):
            raise DomainError("frequencies must be strictly increasing")
        if np.any(cts < 0):
            raise DomainError("counts must be non-negative")
        if not self.dwell_time_s > 0:
            raise DomainError("dwell time must be positive")

    def __eq__(self, other) -> bool:
        if not isinstance(other, PleSpectrum):
            return NotImplemented
        return (
            np.array_equal(self.frequencies_ghz, other.frequencies_ghz)
            and np.array_equal(self.counts, other.counts)
            and self.dwell_time_s == other.dwell_time_s
        )


def synthesize(
    peaks: Sequence[LorentzianPeak],
    background: float,
    grid_ghz: Sequence[float],
    shot_noise: bool = False,
    seed: SeedSpec | int | None = None,
    dwell_time_s: float = 1.0,
) -> PleSpectrum:
    """Evaluate background + sum of Lorentzians on a grid.

    With ``shot_noise`` each point is replaced by a Poisson draw with that
    expectation (deterministic under ``seed``).
    """
    if background < 0:
        raise DomainError(f"background must be non-negative, got {background}")
    grid = np.asarray(grid_ghz, dtype=float)
    if grid.ndim != 1 or len(grid) == 0:
        raise DomainError("grid must be a non-empty 1-d sequence")
    if len(grid) >= 2 and not np.all(np.diff(grid) > 0):
        raise DomainError("grid must be strictly increasing")
    expected = np.full(len(grid), float(background))
    for peak in peaks:
        expected += lorentzian_value(peak, grid)
    if shot_noise:
        if seed is None:
            raise DomainError("shot noise requires a seed for reproducibility")
        counts = as_seed(seed).rng().poisson(expected).astype(float)
    else:
        counts = expected
    return PleSpectrum(frequencies_ghz=grid, counts=counts, dwell_time_s=dwell_time_s)


def initial_guess(spectrum: PleSpectrum, k: int) -> list[LorentzianPeak]:
    """Seed peaks from the k tallest local maxima above the count median.

    Maxima closer than half the seed width collapse into their tallest
    member, so shot-noise spikes on one line do not register twice.
    Raises :class:`PeakDetectionError` (carrying the found count) when
    fewer than k candidates exist. Widths are seeded from the ensemble
    default FWHM mean.
    """
    if k < 1:
        raise DomainError(f"need k >= 1, got {k}")
    if len(spectrum.counts) < 5 * k:
        raise DomainError(f"need at least {5 * k} points to guess {k} peaks")
    counts = spectrum.counts
    background = float(np.median(counts))
    width = EnsembleModel().fwhm_mean_mhz
    step_ghz = float(np.median(np.diff(spectrum.frequencies_ghz)))
    distance = max(1, int(round(0.5 * width * 1e-3 / step_ghz)))
    idx, _ = find_peaks(counts, height=np.nextafter(background, np.inf), distance=distance)
    if len(idx) < k:
        raise PeakDetectionError(requested=k, found=len(idx))
    chosen = idx[np.argsort(counts[idx])[::-1][:k]]
    chosen = np.sort(chosen)
    return [
        LorentzianPeak(
            center_ghz=float(spectrum.frequencies_ghz[i]),
            fwhm_mhz=width,
            amplitude=max(float(counts[i] - background), np.finfo(float).tiny),
        )
        for i in chosen
    ]


@dataclass(frozen=True)
class FitResult:
    """Fitted peaks (sorted by center), shared background, and fit diagnostics."""

    peaks: tuple[LorentzianPeak, ...]
    background: float
    residual_rms: float
    converged: bool
    iterations: int


def _model_and_jacobian(theta: np.ndarray, nu: np.ndarray, k: int):
    model = np.full(len(nu), theta[0])
    jac = np.zeros((len(nu), 1 + 3 * k))
    jac[:, 0] = 1.0
    for p in range(k):
        c, w, amp = theta[1 + 3 * p : 4 + 3 * p]
        half = w / 2.0
        d = nu - c
        denom = d * d + half * half
        shape = half * half / denom
        model += amp * shape
        jac[:, 1 + 3 * p] = amp * half * half * 2.0 * d / (denom * denom)
        jac[:, 2 + 3 * p] = amp * half * d * d / (denom * denom)
        jac[:, 3 + 3 * p] = shape
    return model, jac


def fit_multi_lorentzian(
    spectrum: PleSpectrum,
    k: int,
    guess: Sequence[LorentzianPeak] | None = None,
    max_iterations: int = FIT_MAX_ITERATIONS,
) -> FitResult:
    """Least-squares fit of k Lorentzians plus a constant background.

    Stops when the relative residual change falls below
    :data:`FIT_RELATIVE_TOLERANCE` or after ``max_iterations`` function
    evaluations; hitting the cap yields ``converged=False`` rather than an
    exception. With ``guess=None`` the initial peaks come from
    :func:`initial_guess`, so an undetectable k raises
    :class:`PeakDetectionError`.
    """
    if k < 1:
        raise DomainError(f"need k >= 1, got {k}")
    if guess is None:
        guess = initial_guess(spectrum, k)
    if len(guess) != k:
        raise DomainError(f"guess has {len(guess)} peaks, expected {k}")

    nu = spectrum.frequencies_ghz
    counts = spectrum.counts
    theta0 = np.empty(1 + 3 * k)
    theta0[0] = max(float(np.median(counts)), 0.0)
    for p, peak in enumerate(guess):
        theta0[1 + 3 * p] = peak.center_ghz
        theta0[2 + 3 * p] = peak.fwhm_mhz * 1e-3
        theta0[3 + 3 * p] = peak.amplitude

    span = float(nu[-1] - nu[0]) if len(nu) > 1 else 1.0
    lower = np.empty_like(theta0)
    upper = np.empty_like(theta0)
    lower[0], upper[0] = 0.0, np.inf
    for p in range(k):
        lower[1 + 3 * p], upper[1 + 3 * p] = nu[0] - span, nu[-1] + span
        lower[2 + 3 * p], upper[2 + 3 * p] = 1e-9, 100.0 * span
        lower[3 + 3 * p], upper[3 + 3 * p] = np.finfo(float).tiny, np.inf
    theta0 = np.clip(theta0, lower, upper)

    def residuals(theta):
        model, _ = _model_and_jacobian(theta, nu, k)
        return model - counts

    def jacobian(theta):
        _, jac = _model_and_jacobian(theta, nu, k)
        return jac

    result = least_squares(
        residuals,
        theta0,
        jac=jacobian,
        bounds=(lower, upper),
        method="trf",
        ftol=FIT_RELATIVE_TOLERANCE,
        xtol=1e-14,
        gtol=1e-12,
        max_nfev=max_iterations,
    )
    theta = result.x
    peaks = sorted(
        (
            LorentzianPeak(
                center_ghz=float(theta[1 + 3 * p]),
                fwhm_mhz=float(theta[2 + 3 * p] * 1e3),
                amplitude=float(theta[3 + 3 * p]),
            )
            for p in range(k)
        ),
        key=lambda pk: pk.center_ghz,
    )
    return FitResult(
        peaks=tuple(peaks),
        background=float(theta[0]),
        residual_rms=float(np.sqrt(np.mean(result.fun**2))),
        converged=bool(result.status > 0),
        iterations=int(result.nfev),
    )


@dataclass(frozen=True)
class PairAssignment:
    """Three-peak spectrum decomposed into two emitters sharing the middle line."""

    emitter1: tuple[int, int]
    emitter2: tuple[int, int]
    shared_peak: int
    zfs1_ghz: float
    zfs2_ghz: float


def classify_pair_spectrum(
    fit: FitResult,
    prior_mean_ghz: float = 1.027,
    prior_sigma_ghz: float = 0.075,
    n_sigma: float = 3.0,
) -> PairAssignment:
    """Assign a three-peak fit to two emitters with one shared line.

    Lowest peak = A1 of emitter 1, middle = overlapping A2(1)/A1(2),
    highest = A2 of emitter 2. Accepted only if both implied splittings
    lie within ``prior_mean +- n_sigma * prior_sigma``.
    """
    if len(fit.peaks) != 3:
        raise DomainError(f"pair classification requires exactly 3 peaks, got {len(fit.peaks)}")
    order = np.argsort([p.center_ghz for p in fit.peaks])
    lo, mid, hi = (fit.peaks[i] for i in order)
    zfs1 = mid.center_ghz - lo.center_ghz
    zfs2 = hi.center_ghz - mid.center_ghz
    window = n_sigma * prior_sigma_ghz
    if abs(zfs1 - prior_mean_ghz) > window or abs(zfs2 - prior_mean_ghz) > window:
        raise ClassificationError(
            zfs1,
            zfs2,
            f"implied splittings {zfs1:.4f} GHz and {zfs2:.4f} GHz are inconsistent "
            f"with the prior {prior_mean_ghz} +- {window:.4f} GHz",
        )
    i_lo, i_mid, i_hi = (int(i) for i in order)
    return PairAssignment(
        emitter1=(i_lo, i_mid),
        emitter2=(i_mid, i_hi),
        shared_peak=i_mid,
        zfs1_ghz=float(zfs1),
        zfs2_ghz=float(zfs2),
    )
