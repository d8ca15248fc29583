"""Planted-burst generation and the Hamming / overlap metrics."""

import math

import numpy as np
import pytest

import burstopt as b
from burstopt.errors import DomainError


class TestPlantSpec:
    def test_validation(self):
        with pytest.raises(DomainError):
            b.PlantSpec(n=10, burst_start=8, burst_end=4, base_rate=0.5, burst_rate=1.0, seed=1)
        with pytest.raises(DomainError):
            b.PlantSpec(n=10, burst_start=-1, burst_end=4, base_rate=0.5, burst_rate=1.0, seed=1)
        with pytest.raises(DomainError):
            b.PlantSpec(n=10, burst_start=0, burst_end=11, base_rate=0.5, burst_rate=1.0, seed=1)
        with pytest.raises(DomainError):
            b.PlantSpec(n=10, burst_start=0, burst_end=5, base_rate=0.0, burst_rate=1.0, seed=1)

    def test_generation_is_reproducible(self):
        spec = b.PlantSpec(n=50, burst_start=10, burst_end=30, base_rate=0.5,
                           burst_rate=1.0, seed=(7, 3))
        seq1, truth1 = b.generate(spec)
        seq2, truth2 = b.generate(spec)
        assert seq1.values == seq2.values
        assert truth1.levels == truth2.levels

    def test_truth_levels_mark_burst_window(self):
        spec = b.PlantSpec(n=20, burst_start=5, burst_end=9, base_rate=0.5,
                           burst_rate=1.0, seed=0)
        seq, truth = b.generate(spec)
        assert truth.k == 1
        assert truth.levels == tuple(1 if 5 <= i < 9 else 0 for i in range(20))
        assert seq.n == 20
        assert all(v > 0 for v in seq.values)
        assert seq.kind == "real"

    def test_empty_burst_window(self):
        spec = b.PlantSpec(n=8, burst_start=4, burst_end=4, base_rate=0.5,
                           burst_rate=1.0, seed=0)
        _, truth = b.generate(spec)
        assert truth.levels == (0,) * 8

    def test_burst_delays_run_shorter(self):
        # burst delays are drawn at twice the base rate, so their mean is half
        spec = b.PlantSpec(n=4000, burst_start=1000, burst_end=3000,
                           base_rate=0.5, burst_rate=1.0, seed=11)
        seq, truth = b.generate(spec)
        vals = np.asarray(seq.values)
        mask = np.asarray(truth.levels) == 1
        inside, outside = vals[mask].mean(), vals[~mask].mean()
        assert inside < outside
        assert inside == pytest.approx(1.0, rel=0.1)
        assert outside == pytest.approx(2.0, rel=0.1)


class TestHamming:
    def test_frozen_examples(self):
        a = b.LevelSequence((0, 1, 2, 0), 2)
        c = b.LevelSequence((0, 1, 1, 1), 2)
        assert b.hamming(a, a) == 0
        assert b.hamming(a, c) == 2
        assert b.hamming(c, a) == 2

    def test_length_mismatch(self):
        with pytest.raises(DomainError):
            b.hamming(b.LevelSequence((0,), 1), b.LevelSequence((0, 1), 1))

    def test_triangle_inequality(self):
        rng = np.random.default_rng(60)
        for _ in range(50):
            n = int(rng.integers(1, 8))
            x, y, z = (b.LevelSequence(tuple(int(v) for v in rng.integers(0, 3, n)), 2)
                       for _ in range(3))
            assert b.hamming(x, z) <= b.hamming(x, y) + b.hamming(y, z)


class TestOverlapFraction:
    def test_full_and_partial(self):
        truth = b.LevelSequence((0, 1, 1, 1, 0), 1)
        assert b.overlap_fraction(b.LevelSequence((0, 1, 1, 1, 0), 1), truth) == 1.0
        assert b.overlap_fraction(b.LevelSequence((0, 0, 1, 1, 1), 1), truth) == pytest.approx(2 / 3)
        assert b.overlap_fraction(b.LevelSequence((0,) * 5, 1), truth) == 0.0

    def test_no_truth_positives_is_nan(self):
        truth = b.LevelSequence((0, 0), 1)
        assert math.isnan(b.overlap_fraction(b.LevelSequence((1, 0), 1), truth))
