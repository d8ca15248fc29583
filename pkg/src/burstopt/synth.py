"""Synthetic sequences with one planted burst, and evaluation helpers.

Delays are drawn by inverse-CDF sampling from the exponential distribution:
position i uses -log1p(-u_i) / rate, where u_0, u_1, ... is the uniform
stream of numpy's default generator seeded with PlantSpec.seed.  One spec
therefore regenerates byte-identical data, and callers that need many
independent trials split streams by seeding with a (base, trial, ...) tuple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import DelaySequence, LevelSequence


@dataclass(frozen=True)
class PlantSpec:
    """A length-n exponential sequence with one burst on [burst_start, burst_end).

    Positions inside the burst use burst_rate, the rest base_rate; a burst
    means faster events, so burst_rate should exceed base_rate.  The ground
    truth labels burst positions with level 1 (k = 1).
    """

    n: int
    burst_start: int
    burst_end: int
    base_rate: float
    burst_rate: float
    seed: int | tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(f"n must be at least 1, got {self.n!r}")
        if not 0 <= self.burst_start <= self.burst_end <= self.n:
            raise DomainError(
                f"burst [{self.burst_start}, {self.burst_end}) must lie inside [0, {self.n})"
            )
        if self.base_rate <= 0 or self.burst_rate <= 0:
            raise DomainError("rates must be positive")


def generate(spec: PlantSpec) -> tuple[DelaySequence, LevelSequence]:
    """Draw the delays and return them with the ground-truth levels."""
    rng = np.random.default_rng(spec.seed)
    u = rng.random(spec.n)
    rates = np.full(spec.n, spec.base_rate)
    rates[spec.burst_start:spec.burst_end] = spec.burst_rate
    delays = -np.log1p(-u) / rates
    truth = [1 if spec.burst_start <= i < spec.burst_end else 0 for i in range(spec.n)]
    return (DelaySequence.from_values(delays.tolist(), kind="real"),
            LevelSequence(tuple(truth), 1))


def hamming(found: LevelSequence, truth: LevelSequence) -> int:
    """Sum of absolute level differences between two equal-length assignments."""
    if len(found) != len(truth):
        raise DomainError(f"length mismatch: {len(found)} vs {len(truth)}")
    return sum(abs(a - b) for a, b in zip(found, truth))


def overlap_fraction(found: LevelSequence, truth: LevelSequence) -> float:
    """Fraction of truth's positive positions that found also marks positive."""
    positive = sum(1 for t in truth if t > 0)
    if positive == 0:
        return math.nan
    hit = sum(1 for f, t in zip(found, truth) if t > 0 and f > 0)
    return hit / positive
