"""Emitter spectral records and the parametric ensemble they are drawn from.

Frequencies are detunings in GHz relative to one absolute reference
frequency (:data:`REFERENCE_FREQUENCY_THZ`); linewidths are in MHz. Each
emitter carries two absorption lines, A1 below A2, split by the
zero-field splitting (ZFS) of the excited state.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError
from .seeding import SeedSpec, as_seed

# Absolute frequency anchoring detuning 0. Stored once; everything else is
# relative, which keeps full double precision on MHz-scale differences.
REFERENCE_FREQUENCY_THZ = 347.94059

# Documented constants that no implemented formula consumes: the ground-state
# splitting of the emitter and the spin-mixing drive frequency used during
# resonant scans to avoid optical pumping into dark states.
GROUND_STATE_SPLITTING_MHZ = 5.0
SPIN_MIXING_DRIVE_MHZ = 5.0


def lifetime_limited_linewidth(lifetime_ns: float) -> float:
    """Fourier-limited emission linewidth 1/(2*pi*tau), returned in MHz."""
    if not (lifetime_ns > 0) or not math.isfinite(lifetime_ns):
        raise DomainError(f"lifetime must be positive and finite, got {lifetime_ns}")
    return 1e3 / (2.0 * math.pi * lifetime_ns)


@dataclass(frozen=True)
class EmitterLines:
    """One emitter's two absorption lines.

    ``a1_ghz`` and ``a2_ghz`` are detunings of the A1 (spin-1/2) and A2
    (spin-3/2) transitions; the two FWHM values are per-line widths in MHz.
    """

    id: str
    a1_ghz: float
    a2_ghz: float
    fwhm_a1_mhz: float
    fwhm_a2_mhz: float

    def __post_init__(self) -> None:
        for name in ("a1_ghz", "a2_ghz", "fwhm_a1_mhz", "fwhm_a2_mhz"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"emitter {self.id!r}: {name} must be finite")
        if not self.a2_ghz > self.a1_ghz:
            raise DomainError(
                f"emitter {self.id!r}: a2 ({self.a2_ghz} GHz) must lie above a1 ({self.a1_ghz} GHz)"
            )
        if not (self.fwhm_a1_mhz > 0 and self.fwhm_a2_mhz > 0):
            raise DomainError(f"emitter {self.id!r}: linewidths must be positive")

    @property
    def zfs_ghz(self) -> float:
        return self.a2_ghz - self.a1_ghz

    @property
    def center_ghz(self) -> float:
        return 0.5 * (self.a1_ghz + self.a2_ghz)


@dataclass(frozen=True)
class UniformCenters:
    """Line centers uniform on [-half_width, +half_width] GHz."""

    half_width_ghz: float = 10.0

    def __post_init__(self) -> None:
        if not self.half_width_ghz > 0:
            raise DomainError("uniform center half width must be positive")

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.uniform(-self.half_width_ghz, self.half_width_ghz, n)


@dataclass(frozen=True)
class NormalCenters:
    """Line centers normal around detuning 0; reproduces spectral bunching.

    sigma 0 is the degenerate point mass (all emitters share one center).
    """

    sigma_ghz: float

    def __post_init__(self) -> None:
        if self.sigma_ghz < 0:
            raise DomainError("normal center sigma must be non-negative")

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.normal(0.0, self.sigma_ghz, n)


CenterDistribution = UniformCenters | NormalCenters


@dataclass(frozen=True)
class EnsembleModel:
    """Parametric distributions an emitter ensemble is sampled from.

    ZFS and FWHM are truncated normals (resampled until > 0). Defaults are
    the measured ensemble parameters: ZFS 1.027(75) GHz, FWHM 316(122) MHz,
    excited-state lifetime 5.5 ns, centers uniform over +-10 GHz.
    """

    centers: CenterDistribution = field(default_factory=UniformCenters)
    zfs_mean_ghz: float = 1.027
    zfs_sigma_ghz: float = 0.075
    fwhm_mean_mhz: float = 316.0
    fwhm_sigma_mhz: float = 122.0
    lifetime_ns: float = 5.5

    def __post_init__(self) -> None:
        if not (self.zfs_mean_ghz > 0 and self.fwhm_mean_mhz > 0):
            raise DomainError("ZFS and FWHM means must be positive")
        # sigma 0 is the degenerate (point-mass) distribution and is allowed
        if self.zfs_sigma_ghz < 0 or self.fwhm_sigma_mhz < 0:
            raise DomainError("distribution sigmas must be non-negative")
        if not self.lifetime_ns > 0:
            raise DomainError("lifetime must be positive")

    @property
    def gamma_mhz(self) -> float:
        """Lifetime-limited linewidth implied by ``lifetime_ns``."""
        return lifetime_limited_linewidth(self.lifetime_ns)


def _truncated_normal(rng: np.random.Generator, mean: float, sigma: float, n: int) -> np.ndarray:
    """Normal(mean, sigma) conditioned on > 0, by resampling violations."""
    if sigma == 0.0:
        return np.full(n, mean)
    out = rng.normal(mean, sigma, n)
    bad = out <= 0.0
    while bad.any():
        out[bad] = rng.normal(mean, sigma, int(bad.sum()))
        bad = out <= 0.0
    return out


def sample_line_positions(
    model: EnsembleModel, n: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Draw n emitters' (a1, a2) detunings in GHz as arrays.

    Draw order is fixed (centers, then ZFS) so streams are reproducible.
    """
    centers = model.centers.sample(rng, n)
    zfs = _truncated_normal(rng, model.zfs_mean_ghz, model.zfs_sigma_ghz, n)
    return centers - 0.5 * zfs, centers + 0.5 * zfs


def sample_ensemble(model: EnsembleModel, n: int, seed: SeedSpec | int) -> list[EmitterLines]:
    """Sample n emitters; deterministic for a given (seed, stream_index).

    Per emitter: center ~ ``model.centers``, ZFS ~ truncated normal,
    lines at center -+ ZFS/2, and one FWHM draw per line.
    """
    if n < 1:
        raise DomainError(f"ensemble size must be >= 1, got {n}")
    rng = as_seed(seed).rng()
    a1, a2 = sample_line_positions(model, n, rng)
    fwhm = _truncated_normal(rng, model.fwhm_mean_mhz, model.fwhm_sigma_mhz, 2 * n).reshape(n, 2)
    width = len(str(max(n - 1, 1)))
    return [
        EmitterLines(
            id=f"e{i:0{max(width, 3)}d}",
            a1_ghz=float(a1[i]),
            a2_ghz=float(a2[i]),
            fwhm_a1_mhz=float(fwhm[i, 0]),
            fwhm_a2_mhz=float(fwhm[i, 1]),
        )
        for i in range(n)
    ]


class LineCombo(enum.Enum):
    """Which line of the first emitter is compared with which of the second."""

    A1_A1 = (0, 0)
    A2_A2 = (1, 1)
    A1_A2 = (0, 1)
    A2_A1 = (1, 0)

    @classmethod
    def parse(cls, name: str) -> "LineCombo":
        key = name.strip().lower().replace("_", "").replace("-", "")
        for member in cls:
            if member.name.lower().replace("_", "") == key:
                return member
        raise DomainError(f"unknown line combination {name!r}")

    @property
    def label(self) -> str:
        return self.name.lower().replace("_", "")


ALL_COMBOS: frozenset[LineCombo] = frozenset(LineCombo)


def _lines_of(emitter) -> tuple[float, float]:
    # Accepts EmitterLines and line-list records alike.
    if hasattr(emitter, "a1_ghz"):
        return float(emitter.a1_ghz), float(emitter.a2_ghz)
    return float(emitter.f_a1_ghz), float(emitter.f_a2_ghz)


def line_arrays(emitters: Sequence) -> tuple[np.ndarray, np.ndarray]:
    """(a1, a2) detuning arrays in GHz for any line-record sequence."""
    pairs = [_lines_of(e) for e in emitters]
    arr = np.asarray(pairs, dtype=float).reshape(-1, 2)
    return arr[:, 0], arr[:, 1]


def min_pair_separation(
    e1, e2, combos: Iterable[LineCombo] = ALL_COMBOS
) -> float:
    """Smallest |line - line| frequency gap between two emitters, in MHz.

    ``combos`` selects which of the four line pairings are compared;
    default is all four (cross pairings included, since an A2 of one
    emitter can coincide with the A1 of another).
    """
    combos = frozenset(combos)
    if not combos:
        raise DomainError("combos must be a non-empty subset of the four line pairings")
    l1 = _lines_of(e1)
    l2 = _lines_of(e2)
    sep_ghz = min(abs(l1[i] - l2[j]) for (i, j) in (c.value for c in combos))
    return sep_ghz * 1e3


@dataclass(frozen=True)
class FieldStats:
    mean: float
    std: float
    min: float
    max: float


@dataclass(frozen=True)
class EnsembleSummary:
    """Sample statistics of an ensemble (unbiased standard deviations)."""

    n_emitters: int
    zfs_ghz: FieldStats
    center_ghz: FieldStats
    fwhm_mhz: FieldStats
    detuning_min_ghz: float
    detuning_max_ghz: float


def _field_stats(values: np.ndarray) -> FieldStats:
    return FieldStats(
        mean=float(values.mean()),
        std=float(values.std(ddof=1)),
        min=float(values.min()),
        max=float(values.max()),
    )


def summarize_ensemble(emitters: Sequence[EmitterLines]) -> EnsembleSummary:
    """Means, unbiased standard deviations, and ranges for an ensemble."""
    if len(emitters) < 2:
        raise DomainError(f"need at least 2 emitters to summarize, got {len(emitters)}")
    a1, a2 = line_arrays(emitters)
    zfs = a2 - a1
    centers = 0.5 * (a1 + a2)
    fwhm = np.array([[e.fwhm_a1_mhz, e.fwhm_a2_mhz] for e in emitters], dtype=float).ravel()
    return EnsembleSummary(
        n_emitters=len(emitters),
        zfs_ghz=_field_stats(zfs),
        center_ghz=_field_stats(centers),
        fwhm_mhz=_field_stats(fwhm),
        detuning_min_ghz=float(a1.min()),
        detuning_max_ghz=float(a2.max()),
    )
