"""Approximation scans for the geometric family.

geo_alpha fixes alpha and scans base-rate candidates eta**c with c shrinking
by a factor (1 + eps) per step; the schedule is dense enough that the best
scanned score is within (1 + eps) of the optimum over beta.  approx_geo wraps
the same schedule shape around alpha, probing alpha = 0 first; the alpha and
beta grids each distort their own score term by at most (1 + eps), so the
joint scan is still within (1 + eps) of the optimum over both parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterator

from .errors import DomainError
from .model import GEO, BurstParams, DelaySequence, LevelSequence, Solution
from .viterbi import viterbi


@dataclass(frozen=True)
class ScanSchedule:
    """Candidates base**c for c = 1, 1/ratio, 1/ratio**2, ... while <= stop.

    With base in (0, 1) the candidates increase strictly toward stop; the
    first candidate is exactly base.
    """

    base: float
    stop: float
    ratio: float

    def __post_init__(self) -> None:
        if not 0 < self.base < 1:
            raise DomainError(f"schedule base must be in (0, 1), got {self.base!r}")
        if self.ratio <= 1:
            raise DomainError(f"schedule ratio must exceed 1, got {self.ratio!r}")

    def __iter__(self) -> Iterator[float]:
        c = 1.0
        while True:
            value = self.base ** c
            if value > self.stop:
                return
            yield value
            c /= self.ratio


def _validate_geo_inputs(seq: DelaySequence, gamma: float, k: int, epsilon: float) -> None:
    if not seq.is_integer_valued:
        raise DomainError("geometric family requires integer delays")
    if gamma <= 0:
        raise DomainError(f"gamma must be positive, got {gamma!r}")
    if k < 0:
        raise DomainError(f"k must be nonnegative, got {k!r}")
    if epsilon <= 0:
        raise DomainError(f"epsilon must be positive, got {epsilon!r}")


def _zero_mean_solution(seq: DelaySequence, alpha: float, k: int) -> Solution:
    # All delays are 0: rate 0 at level 0 scores every position 0, which is
    # the global optimum, so no scan is needed.
    levels = LevelSequence((0,) * seq.n, k)
    return Solution(levels=levels, alpha=alpha, beta=0.0, score=0.0, viterbi_calls=0,
                    diagnostics={"beta_candidates": 0})


def geo_alpha(seq: DelaySequence, alpha: float, gamma: float, k: int, epsilon: float) -> Solution:
    """Scan beta at fixed alpha; best score is within (1 + eps) of the beta-optimum."""
    _validate_geo_inputs(seq, gamma, k, epsilon)
    if not 0 <= alpha < 1:
        raise DomainError(f"geo family needs 0 <= alpha < 1, got {alpha!r}")
    mu = seq.stats.mean
    if mu == 0:
        return _zero_mean_solution(seq, alpha, k)
    n = seq.n
    schedule = ScanSchedule(base=mu / (mu + 1), stop=mu / (mu + 1 / n), ratio=1 + epsilon)
    best: Solution | None = None
    calls = 0
    for beta in schedule:
        sol = viterbi(seq, BurstParams(GEO, alpha, beta, gamma, k))
        calls += 1
        if best is None or sol.score < best.score or (sol.score == best.score and sol.beta < best.beta):
            best = sol
    assert best is not None  # the schedule always yields its base
    return replace(best, viterbi_calls=calls, diagnostics={"beta_candidates": calls})


def approx_geo(seq: DelaySequence, gamma: float, k: int, epsilon: float) -> Solution:
    """Scan alpha and beta jointly; best score is within (1 + eps) of the optimum.

    alpha = 0 is probed first: it is optimal exactly when some optimal
    assignment prices every positive delay at level 0, a case no positive
    alpha candidate covers.
    """
    _validate_geo_inputs(seq, gamma, k, epsilon)
    best = geo_alpha(seq, 0.0, gamma, k, epsilon)
    calls = best.viterbi_calls
    alpha_candidates = 1
    mu = seq.stats.mean
    if mu > 0 and k > 0:
        n = seq.n
        sigma = mu / (mu + 1 / n)
        schedule = ScanSchedule(base=1 / (1 + n * k), stop=sigma ** (epsilon / k), ratio=1 + epsilon)
        for alpha in schedule:
            sol = geo_alpha(seq, alpha, gamma, k, epsilon)
            calls += sol.viterbi_calls
            alpha_candidates += 1
            if sol.score < best.score or (sol.score == best.score and sol.alpha < best.alpha):
                best = sol
    return replace(best, viterbi_calls=calls,
                   diagnostics={"alpha_candidates": alpha_candidates, "beta_candidates": best.diagnostics.get("beta_candidates")})
