"""Shared helpers for building random test instances."""

from __future__ import annotations

import numpy as np

from burstopt import EXP, GEO, BurstParams, DelaySequence


def random_exp_instance(rng: np.random.Generator, max_n: int = 8, max_k: int = 2,
                        min_n: int = 1, low: float = 0.05, high: float = 10.0,
                        min_k: int = 0) -> tuple[DelaySequence, BurstParams]:
    n = int(rng.integers(min_n, max_n + 1))
    k = int(rng.integers(min_k, max_k + 1))
    seq = DelaySequence.from_values(rng.uniform(low, high, n).tolist())
    params = BurstParams(EXP, float(rng.uniform(1.0, 4.0)), float(rng.uniform(0.05, 3.0)),
                         float(rng.uniform(0.05, 2.0)), k)
    return seq, params


def random_geo_instance(rng: np.random.Generator, max_n: int = 8, max_k: int = 2,
                        min_n: int = 1, max_delay: int = 6,
                        min_k: int = 0) -> tuple[DelaySequence, BurstParams]:
    n = int(rng.integers(min_n, max_n + 1))
    k = int(rng.integers(min_k, max_k + 1))
    seq = DelaySequence.from_values(rng.integers(0, max_delay + 1, n).tolist())
    alpha = 0.0 if rng.random() < 0.2 else float(rng.uniform(0.0, 1.0))
    params = BurstParams(GEO, alpha, float(rng.uniform(0.0, 1.0)),
                         float(rng.uniform(0.05, 2.0)), k)
    return seq, params


def random_positive_geo_seq(rng: np.random.Generator, max_n: int = 10,
                            max_delay: int = 8, min_n: int = 2) -> DelaySequence:
    n = int(rng.integers(min_n, max_n + 1))
    vals = rng.integers(0, max_delay + 1, n)
    if vals.sum() == 0:
        vals[int(rng.integers(0, n))] = 1
    return DelaySequence.from_values(vals.tolist())
