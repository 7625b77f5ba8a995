"""Stage success probabilities and the run-time cost of a schedule.

A stage that draws n_i-subsets from an n_{i-1}-set containing the secret
succeeds with probability C(n_{i-1} - k, n_i - k) / C(n_{i-1}, n_i). The
number of draws per stage is geometric on {1, 2, ...}, so the total run
length has mean sum(1/p_i) and variance sum((1 - p_i) / p_i^2).
"""

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Sequence, Tuple

from randchem.combinatorics import exact_binomial, log_binomial
from randchem.errors import DomainError, NumericalError
from randchem.schedule import IntegerSchedule, Problem, Schedule

# Largest n0 accepted by the exact rational oracle
EXACT_COST_LIMIT = 2000

# Largest -ln p whose p and 1/p are both normal floats
MAX_LOG_TRIALS = -math.log(sys.float_info.min)

TRIALS_TOLERANCE = 1e-12


@dataclass(frozen=True)
class StageProfile:
    """Per-stage success probabilities p_i and expected draws 1/p_i."""

    probabilities: Tuple[float, ...]
    expected_trials: Tuple[float, ...]
    log_probabilities: Tuple[float, ...]

    def __post_init__(self):
        if not len(self.probabilities) == len(self.expected_trials) == len(self.log_probabilities):
            raise DomainError("profile columns must have one entry per stage")
        for p, trials in zip(self.probabilities, self.expected_trials):
            if not 0 < p <= 1:
                raise DomainError(f"stage probabilities must lie in (0, 1], got {p}")
            if abs(p * trials - 1.0) > TRIALS_TOLERANCE:
                raise DomainError(f"expected draws {trials} are not 1/p for p={p}")

    @classmethod
    def from_log_probabilities(cls, log_probabilities: Sequence[float]) -> "StageProfile":
        """Exponentiate log-probabilities into a profile.

        Raises:
            NumericalError: If some stage needs more expected draws than a float can hold.
        """
        logs = tuple(min(0.0, float(value)) for value in log_probabilities)
        for stage, value in enumerate(logs, start=1):
            if -value > MAX_LOG_TRIALS:
                raise NumericalError(
                    f"stage {stage} expects e^{-value:.1f} draws, beyond floating point range"
                )
        return cls(
            probabilities=tuple(math.exp(value) for value in logs),
            expected_trials=tuple(math.exp(-value) for value in logs),
            log_probabilities=logs,
        )

    @classmethod
    def uniform(cls, stage_count: int, probability: float) -> "StageProfile":
        """Profile with ``stage_count`` stages that all succeed with ``probability``."""
        if not 0 < probability <= 1:
            raise DomainError(f"probability must lie in (0, 1], got {probability}")
        return cls.from_log_probabilities([math.log(probability)] * stage_count)

    @property
    def stage_count(self) -> int:
        return len(self.probabilities)


@dataclass(frozen=True)
class CostSummary:
    """Mean and variance of the total number of draws X."""

    expected_total: float
    variance_total: float
    per_stage_cumulative: Tuple[float, ...]


@dataclass(frozen=True)
class TheoreticalOptimum:
    m_real: float
    expected: float


def _log_stage_probability(n_prev: float, n_next: float, k: float) -> float:
    if not (n_prev > n_next >= k >= 0):
        raise DomainError(
            f"stage needs n_prev > n_next >= k >= 0, got ({n_prev}, {n_next}, {k})"
        )
    log_p = log_binomial(n_prev - k, n_next - k) - log_binomial(n_prev, n_next)
    return min(0.0, log_p)


def stage_probability(n_prev: float, n_next: float, k: float) -> float:
    """Probability that a uniform n_next-subset of an n_prev-set keeps all k secret elements.

    Raises:
        DomainError: Unless ``n_prev > n_next >= k >= 0``.
    """
    return math.exp(_log_stage_probability(n_prev, n_next, k))


def stage_profile(schedule: Schedule) -> StageProfile:
    """Success probability and expected draws of every stage of ``schedule``."""
    bounds = schedule.boundaries()
    k = schedule.problem.k
    return StageProfile.from_log_probabilities(
        [_log_stage_probability(bounds[i - 1], bounds[i], k) for i in range(1, len(bounds))]
    )


def summarize_profile(profile: StageProfile) -> CostSummary:
    cumulative = tuple(accumulate(profile.expected_trials))
    variance = math.fsum(
        (1.0 - p) * z * z for p, z in zip(profile.probabilities, profile.expected_trials)
    )
    if not math.isfinite(variance) or (cumulative and not math.isfinite(cumulative[-1])):
        raise NumericalError("expected draws of the schedule overflow floating point range")
    return CostSummary(
        expected_total=cumulative[-1] if cumulative else 0.0,
        variance_total=variance,
        per_stage_cumulative=cumulative,
    )


def expected_cost(schedule: Schedule) -> CostSummary:
    """Expected total draws, its variance and the running expected draws per stage."""
    return summarize_profile(stage_profile(schedule))


def theoretical_optimum(problem: Problem) -> TheoreticalOptimum:
    """Continuous optimum: M = ln C(n0, k) stages at p = 1/e, so E[X] = e ln C(n0, k)."""
    if problem.k >= problem.n0:
        raise DomainError("the theoretical optimum needs k < n0")
    m_real = float(problem.log_subset_count)
    return TheoreticalOptimum(m_real=m_real, expected=math.e * m_real)


def exact_rational_cost(schedule: IntegerSchedule) -> Fraction:
    """E[X] of an integer schedule as an exact fraction.

    Raises:
        DomainError: If n0 exceeds ``EXACT_COST_LIMIT``.
    """
    problem = schedule.problem
    if problem.n0 > EXACT_COST_LIMIT:
        raise DomainError(
            f"exact cost is limited to n0 <= {EXACT_COST_LIMIT}, got n0={problem.n0}"
        )
    bounds = schedule.boundaries()
    k = problem.k
    total = Fraction(0)
    for prev, nxt in zip(bounds, bounds[1:]):
        total += Fraction(exact_binomial(prev, nxt), exact_binomial(prev - k, nxt - k))
    return total
