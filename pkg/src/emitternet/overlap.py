"""Spectral-overlap collision statistics.

Quantifies how often randomly chosen emitters share an absorption line:
empirical pair-overlap probability curves with bootstrap errors, a
zero-intercept linear fit in units of the lifetime-limited linewidth, the
birthday-paradox collision law, and a sequential Monte Carlo estimate of
how many emitters must be inspected before two lines coincide.

Overlap uses a strict ``separation < window`` comparison; boundary ties
count as non-overlap.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError
from .seeding import SeedSpec, as_seed
from .spectral import ALL_COMBOS, EnsembleModel, LineCombo, line_arrays, sample_line_positions


@dataclass(frozen=True)
class OverlapCurve:
    """Pair-overlap probability as a function of the frequency window."""

    windows_mhz: tuple[float, ...]
    probabilities: tuple[float, ...]
    std_errors: tuple[float, ...]
    n_emitters: int
    n_pairs: int

    def __post_init__(self) -> None:
        if not (len(self.windows_mhz) == len(self.probabilities) == len(self.std_errors)):
            raise DomainError("curve sequences must have equal lengths")
        if any(not (0.0 <= p <= 1.0) for p in self.probabilities):
            raise DomainError("probabilities must lie in [0, 1]")
        if any(e < 0 for e in self.std_errors):
            raise DomainError("standard errors must be non-negative")
        if any(b < a for a, b in zip(self.windows_mhz, self.windows_mhz[1:])):
            raise DomainError("windows must be non-decreasing")
        if any(b < a for a, b in zip(self.probabilities, self.probabilities[1:])):
            raise DomainError("probabilities must be non-decreasing in the window")


def _separation_matrix_mhz(a1: np.ndarray, a2: np.ndarray, combos: frozenset[LineCombo]) -> np.ndarray:
    """All-pairs minimum line separation (MHz), ordered (row emitter, column emitter)."""
    lines = (a1, a2)
    sep = None
    for i, j in (c.value for c in combos):
        d = np.abs(lines[i][:, None] - lines[j][None, :])
        sep = d if sep is None else np.minimum(sep, d)
    return sep * 1e3


def _pair_separations_mhz(emitters: Sequence, combos: frozenset[LineCombo]) -> np.ndarray:
    a1, a2 = line_arrays(emitters)
    sep = _separation_matrix_mhz(a1, a2, combos)
    iu = np.triu_indices(len(emitters), k=1)
    return sep[iu]


def overlap_curve(
    emitters: Sequence,
    windows_mhz: Sequence[float],
    combos: Iterable[LineCombo] = ALL_COMBOS,
    bootstrap_resamples: int | None = None,
    seed: SeedSpec | int = 0,
) -> OverlapCurve:
    """Fraction of unordered emitter pairs closer than each window.

    ``windows_mhz`` must be positive and ascending. When
    ``bootstrap_resamples`` is given, per-window standard errors are filled
    from emitter-level bootstrap resampling; otherwise they are zero.
    """
    combos = frozenset(combos)
    if not combos:
        raise DomainError("combos must be non-empty")
    n = len(emitters)
    if n < 2:
        raise DomainError(f"need at least 2 emitters, got {n}")
    windows = [float(w) for w in windows_mhz]
    if not windows:
        raise DomainError("at least one window is required")
    if any(w <= 0 for w in windows):
        raise DomainError("windows must be positive")
    if any(b <= a for a, b in zip(windows, windows[1:])):
        raise DomainError("windows must be strictly ascending")

    seps = _pair_separations_mhz(emitters, combos)
    n_pairs = len(seps)
    probs = tuple(float(np.count_nonzero(seps < w)) / n_pairs for w in windows)
    if bootstrap_resamples is None:
        errors = tuple(0.0 for _ in windows)
    else:
        errors = tuple(
            bootstrap_std_error(emitters, w, combos, bootstrap_resamples, seed) for w in windows
        )
    return OverlapCurve(
        windows_mhz=tuple(windows),
        probabilities=probs,
        std_errors=errors,
        n_emitters=n,
        n_pairs=n_pairs,
    )


def bootstrap_std_error(
    emitters: Sequence,
    window_mhz: float,
    combos: Iterable[LineCombo] = ALL_COMBOS,
    resamples: int = 1000,
    seed: SeedSpec | int = 0,
) -> float:
    """Bootstrap standard error of the pair-overlap probability.

    Emitters are the resampling unit (drawn with replacement). Within a
    resample, position pairs that duplicate one source emitter are
    excluded from both counts; a resample with no valid pair contributes
    probability 0.
    """
    n = len(emitters)
    if n < 2:
        raise DomainError(f"need at least 2 emitters, got {n}")
    if resamples < 100:
        raise DomainError(f"need at least 100 resamples, got {resamples}")
    combos = frozenset(combos)
    a1, a2 = line_arrays(emitters)
    overlap = _separation_matrix_mhz(a1, a2, combos) < float(window_mhz)

    # Subkey 2 keeps index draws independent of the ensemble-sampling stream.
    rng = as_seed(seed).rng(2)
    iu = np.triu_indices(n, k=1)
    values = np.empty(resamples)
    chunk = max(1, min(resamples, 2_000_000 // (n * n)))
    done = 0
    while done < resamples:
        m = min(chunk, resamples - done)
        idx = rng.integers(0, n, size=(m, n))
        hits = overlap[idx[:, :, None], idx[:, None, :]][:, iu[0], iu[1]]
        valid = (idx[:, :, None] != idx[:, None, :])[:, iu[0], iu[1]]
        n_valid = valid.sum(axis=1)
        n_hit = (hits & valid).sum(axis=1)
        with np.errstate(invalid="ignore"):
            p = np.where(n_valid > 0, n_hit / np.maximum(n_valid, 1), 0.0)
        values[done : done + m] = p
        done += m
    return float(values.std(ddof=1))


def fit_slope_through_origin(curve: OverlapCurve, gamma_mhz: float) -> float:
    """Least-squares slope of P(window) = s * window / gamma through zero.

    Unweighted ordinary least squares; returns s, the overlap probability
    per one lifetime-limited linewidth.
    """
    if len(curve.windows_mhz) == 0:
        raise DomainError("curve is empty")
    if not gamma_mhz > 0:
        raise DomainError("gamma must be positive")
    x = np.asarray(curve.windows_mhz) / float(gamma_mhz)
    y = np.asarray(curve.probabilities)
    sxx = float(np.dot(x, x))
    if sxx == 0.0:
        raise DomainError("all windows are zero; slope is undefined")
    return float(np.dot(x, y) / sxx)


def analytic_homogeneous_slope(half_width_ghz: float, gamma_mhz: float, n_combos: int = 4) -> float:
    """Small-window union-bound slope for uniformly distributed lines.

    For line centers uniform over +-half_width, each of the ``n_combos``
    line pairings contributes probability ~ 2*gamma/(2*half_width) per
    window of one gamma, so the slope per gamma is n_combos*gamma/half_width.
    """
    if not half_width_ghz > 0:
        raise DomainError("half width must be positive")
    if gamma_mhz < 0:
        raise DomainError("gamma must be non-negative")
    if n_combos < 1:
        raise DomainError("need at least one combination")
    gamma_ghz = gamma_mhz * 1e-3
    if gamma_ghz >= half_width_ghz:
        raise DomainError("slope approximation requires gamma well below the half width")
    return n_combos * gamma_ghz / half_width_ghz


def collision_probability(q: float, n: int) -> float:
    """P(at least one overlapping pair among n emitters), independent pairs.

    Birthday-paradox form 1 - (1-q)^C(n,2) for pairwise overlap
    probability q.
    """
    if not (0.0 <= q <= 1.0):
        raise DomainError(f"pairwise probability must lie in [0, 1], got {q}")
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    pairs = n * (n - 1) // 2
    if pairs == 0 or q == 0.0:
        return 0.0
    if q == 1.0:
        return 1.0
    return float(-np.expm1(pairs * math.log1p(-q)))


@dataclass(frozen=True)
class ThresholdResult:
    """Smallest ensemble size whose collision probability reaches a target."""

    n_star: int
    target_probability: float
    pairwise_q: float
    curve: tuple[tuple[int, float], ...]

    def __post_init__(self) -> None:
        if collision_probability(self.pairwise_q, self.n_star) < self.target_probability:
            raise DomainError("n_star does not reach the target probability")
        if self.n_star > 1 and collision_probability(
            self.pairwise_q, self.n_star - 1
        ) >= self.target_probability:
            raise DomainError("n_star - 1 already reaches the target probability")


def birthday_threshold(q: float, target: float) -> ThresholdResult:
    """Minimal n with collision_probability(q, n) >= target.

    Closed-form seeded then verified, so it is O(n_star) overall.
    """
    if not (0.0 < q <= 1.0):
        raise DomainError(f"pairwise probability must lie in (0, 1], got {q}")
    if not (0.0 < target < 1.0):
        raise DomainError(f"target must lie in (0, 1), got {target}")
    if q == 1.0:
        n = 2
    else:
        pairs_needed = math.log1p(-target) / math.log1p(-q)
        n = max(2, math.ceil(0.5 * (1.0 + math.sqrt(1.0 + 8.0 * pairs_needed))))
        while n > 2 and collision_probability(q, n - 1) >= target:
            n -= 1
        while collision_probability(q, n) < target:
            n += 1
    curve = tuple((k, collision_probability(q, k)) for k in range(1, n + 1))
    return ThresholdResult(n_star=n, target_probability=target, pairwise_q=q, curve=curve)


@dataclass(frozen=True)
class MonteCarloThreshold:
    """Empirical stopping statistics for sequential emitter inspection."""

    n_star: int | None
    target_probability: float
    pairwise_q: float
    curve: tuple[tuple[int, float], ...]
    median_stop: float
    quantiles: dict[str, float]
    ci95_at_n_star: tuple[float, float] | None
    trials: int
    n_censored: int


def monte_carlo_threshold(
    model: EnsembleModel,
    window_mhz: float,
    target: float,
    trials: int,
    seed: SeedSpec | int,
    combos: Iterable[LineCombo] = ALL_COMBOS,
    max_emitters: int = 512,
) -> MonteCarloThreshold:
    """Simulate drawing emitters until two lines fall within the window.

    Each trial uses its own sub-stream (subkeys ``(0, trial)``) so trials
    are order-independent; the pairwise rate ``pairwise_q`` is estimated
    from an independent block of sampled pairs (subkey ``(1,)``).
    """
    if trials < 1000:
        raise DomainError(f"need at least 1000 trials, got {trials}")
    if not window_mhz > 0:
        raise DomainError(f"window must be positive, got {window_mhz}")
    if not (0.0 < target < 1.0):
        raise DomainError(f"target must lie in (0, 1), got {target}")
    combos = frozenset(combos)
    if not combos:
        raise DomainError("combos must be non-empty")
    spec = as_seed(seed)
    window_ghz = float(window_mhz) * 1e-3
    pairs_idx = [c.value for c in combos]

    stops = np.empty(trials, dtype=np.int64)
    censored = 0
    for t in range(trials):
        rng = spec.rng(0, t)
        block = 32
        a1 = np.empty(0)
        a2 = np.empty(0)
        stop = 0
        while stop == 0 and len(a1) < max_emitters:
            grow = min(block, max_emitters - len(a1))
            na1, na2 = sample_line_positions(model, grow, rng)
            a1 = np.concatenate([a1, na1])
            a2 = np.concatenate([a2, na2])
            lines = (a1, a2)
            sep = None
            for i, j in pairs_idx:
                d = np.abs(lines[i][:, None] - lines[j][None, :])
                sep = d if sep is None else np.minimum(sep, d)
            hit = sep < window_ghz
            iu = np.triu_indices(len(a1), k=1)
            mask = hit[iu]
            if mask.any():
                # stopping count = first emitter index that closes a pair
                stop = int((np.maximum(iu[0], iu[1])[mask]).min()) + 1
            block *= 2
        if stop == 0:
            censored += 1
            stop = max_emitters + 1
        stops[t] = stop

    # Independent pairwise-rate estimate over >= trials sampled pairs.
    rng_q = spec.rng(1)
    n_q = max(trials, 20_000)
    qa1, qa2 = sample_line_positions(model, 2 * n_q, rng_q)
    xa1, xa2 = qa1[:n_q], qa2[:n_q]
    ya1, ya2 = qa1[n_q:], qa2[n_q:]
    lines_x = (xa1, xa2)
    lines_y = (ya1, ya2)
    sep_q = None
    for i, j in pairs_idx:
        d = np.abs(lines_x[i] - lines_y[j])
        sep_q = d if sep_q is None else np.minimum(sep_q, d)
    pairwise_q = float(np.count_nonzero(sep_q < window_ghz)) / n_q

    n_max = int(stops[stops <= max_emitters].max(initial=2))
    ns = np.arange(2, n_max + 1)
    cum = np.array([(stops <= k).mean() for k in ns])
    curve = tuple((int(k), float(p)) for k, p in zip(ns, cum))
    reached = np.nonzero(cum >= target)[0]
    if len(reached) > 0:
        n_star = int(ns[reached[0]])
        p_at = float(cum[reached[0]])
        half = 1.96 * math.sqrt(max(p_at * (1 - p_at), 0.0) / trials)
        ci = (max(0.0, p_at - half), min(1.0, p_at + half))
    else:
        n_star, ci = None, None

    uncensored = stops[stops <= max_emitters]
    qs = {
        "q25": float(np.quantile(uncensored, 0.25)) if len(uncensored) else math.nan,
        "q50": float(np.quantile(uncensored, 0.50)) if len(uncensored) else math.nan,
        "q75": float(np.quantile(uncensored, 0.75)) if len(uncensored) else math.nan,
    }
    return MonteCarloThreshold(
        n_star=n_star,
        target_probability=target,
        pairwise_q=pairwise_q,
        curve=curve,
        median_stop=qs["q50"],
        quantiles=qs,
        ci95_at_n_star=ci,
        trials=trials,
        n_censored=censored,
    )


@dataclass(frozen=True)
class HistogramResult:
    """Half-open bins [origin + k*w, origin + (k+1)*w) with counts."""

    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]


def histogram(values: Sequence[float], bin_width: float, origin: float = 0.0) -> HistogramResult:
    """Histogram with half-open bins; edge values go to the upper bin."""
    if not bin_width > 0:
        raise DomainError(f"bin width must be positive, got {bin_width}")
    vals = np.asarray(list(values), dtype=float)
    if vals.size == 0:
        return HistogramResult(bin_edges=(), counts=())
    if not np.all(np.isfinite(vals)):
        raise DomainError("histogram values must be finite")
    k = np.floor((vals - origin) / bin_width).astype(np.int64)
    k_min, k_max = int(k.min()), int(k.max())
    counts = np.bincount(k - k_min, minlength=k_max - k_min + 1)
    edges = tuple(origin + (k_min + i) * bin_width for i in range(len(counts) + 1))
    return HistogramResult(bin_edges=edges, counts=tuple(int(c) for c in counts))
