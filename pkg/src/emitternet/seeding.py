"""Deterministic, splittable random number streams.

Every stochastic operation in the toolkit takes a :class:`SeedSpec`. The
derivation rule is stable across releases:

    Generator = PCG64(SeedSequence(seed, spawn_key=(stream_index, *subkeys)))

so identical ``(seed, stream_index)`` pairs always reproduce identical
sample sequences, and disjoint ``subkeys`` (used e.g. for per-trial Monte
Carlo streams) are statistically independent.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

_MAX_SEED = 2 ** 64


@dataclass(frozen=True)
class SeedSpec:
    """A reproducible stream identity: 64-bit seed plus a stream index."""

    seed: int
    stream_index: int = 0

    def __post_init__(self) -> None:
        if not (0 <= int(self.seed) < _MAX_SEED):
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if int(self.stream_index) < 0:
            raise DomainError(f"stream_index must be non-negative, got {self.stream_index}")

    def sequence(self, *subkeys: int) -> np.random.SeedSequence:
        return np.random.SeedSequence(self.seed, spawn_key=(self.stream_index, *subkeys))

    def rng(self, *subkeys: int) -> np.random.Generator:
        """Generator for this stream, optionally narrowed by subkeys."""
        return np.random.default_rng(self.sequence(*subkeys))


def as_seed(seed: SeedSpec | int) -> SeedSpec:
    """Coerce a bare integer to a SeedSpec with stream_index 0."""
    if isinstance(seed, SeedSpec):
        return seed
    return SeedSpec(int(seed))
