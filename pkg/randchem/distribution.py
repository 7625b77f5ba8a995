"""Distribution of the total number of draws X.

With equal stage probabilities X is negative binomial: M successes at
probability p, counted in trials. For arbitrary schedules X is a sum of
independent geometric variables whose PMF is obtained by convolution,
truncated once the unaccounted tail mass drops below epsilon.
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.special import gammaln, xlog1py
from scipy.stats import nbinom

from randchem.cost import StageProfile, summarize_profile
from randchem.errors import DomainError, NumericalError

logger = logging.getLogger(__name__)

DEFAULT_EPSILON = 1e-9
MAX_EPSILON = 0.01

_MIN_SPAN = 16
_MAX_SPAN = 1 << 20


@dataclass(frozen=True)
class RunLengthDistribution:
    """PMF of X on {min_support, min_support + 1, ...} plus the mass cut off the tail."""

    min_support: int
    pmf: Tuple[float, ...]
    truncation_mass: float

    @property
    def max_support(self) -> int:
        return self.min_support + len(self.pmf) - 1

    @property
    def support(self) -> range:
        return range(self.min_support, self.max_support + 1)

    def mass(self) -> float:
        return math.fsum(self.pmf)

    def mean(self) -> float:
        """Mean over the retained support; underestimates E[X] by the truncated tail."""
        return math.fsum(x * mass for x, mass in zip(self.support, self.pmf))

    def tail(self, length: int) -> float:
        """P(X > length), counting the truncated mass as lying beyond the support."""
        if length < self.min_support:
            return 1.0
        start = length - self.min_support + 1
        return math.fsum(self.pmf[start:]) + self.truncation_mass


def _check_negbin(stage_count: int, probability: float) -> None:
    if isinstance(stage_count, bool) or int(stage_count) != stage_count or stage_count < 1:
        raise DomainError(f"stage count must be a positive integer, got {stage_count!r}")
    if not 0 < probability <= 1:
        raise DomainError(f"probability must lie in (0, 1], got {probability}")


def negbin_pmf_values(stage_count: int, probability: float, xs: np.ndarray) -> np.ndarray:
    """Vectorized P(X = x) = C(x-1, M-1) (1-p)^(x-M) p^M for x >= M, evaluated in log space."""
    _check_negbin(stage_count, probability)
    xs = np.asarray(xs, dtype=float)
    if np.any(xs < stage_count):
        raise DomainError(f"support starts at M={stage_count}")
    log_binomial = gammaln(xs) - gammaln(stage_count) - gammaln(xs - stage_count + 1)
    log_pmf = (
        log_binomial
        + xlog1py(xs - stage_count, -probability)
        + stage_count * math.log(probability)
    )
    return np.exp(log_pmf)


def negbin_pmf(stage_count: int, probability: float, x: int) -> float:
    """Negative binomial PMF of the total trials needed for ``stage_count`` successes.

    Raises:
        DomainError: If ``x < stage_count`` or the parameters are invalid.
    """
    if x < stage_count:
        raise DomainError(f"x must be at least M={stage_count}, got {x}")
    return float(negbin_pmf_values(stage_count, probability, np.array([x]))[0])


def negbin_tail(stage_count: int, probability: float, length: int) -> float:
    """P(X > length) for the negative binomial, by compensated summation of the PMF.

    Raises:
        DomainError: If ``length < stage_count``.
    """
    _check_negbin(stage_count, probability)
    if length < stage_count:
        raise DomainError(f"length must be at least M={stage_count}, got {length}")
    values = negbin_pmf_values(stage_count, probability, np.arange(stage_count, length + 1))
    return min(1.0, max(0.0, 1.0 - math.fsum(values.tolist())))


def negbin_quantile(stage_count: int, probability: float, epsilon: float) -> int:
    """Smallest x with P(X > x) <= epsilon for the negative binomial trial count.

    Raises:
        DomainError: If epsilon lies outside (0, 1) or the parameters are invalid.
        NumericalError: If the quantile is not finite.
    """
    _check_negbin(stage_count, probability)
    if not 0 < epsilon < 1:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    if probability == 1:
        return stage_count
    # scipy counts failures before the M-th success
    failures = float(nbinom.ppf(1.0 - epsilon, stage_count, probability))
    if not math.isfinite(failures):
        raise NumericalError(f"no finite quantile at epsilon={epsilon} for p={probability}")
    return stage_count + int(failures)


def _geometric_values(probability: float, span: int) -> np.ndarray:
    # P(X_i = j + 1) for j = 0 .. span - 1
    draws = np.arange(span, dtype=float)
    return np.exp(math.log(probability) + xlog1py(draws, -probability))


def exact_run_length(
    profile: StageProfile, epsilon: float = DEFAULT_EPSILON
) -> RunLengthDistribution:
    """PMF of the sum of the stage geometric variables by iterated convolution.

    The support grows until the retained mass reaches ``1 - epsilon`` and is
    then cut at the first point where it does.

    Raises:
        DomainError: If ``epsilon`` lies outside (0, 0.01].
        NumericalError: If the support would exceed the internal span limit.
    """
    if not 0 < epsilon <= MAX_EPSILON:
        raise DomainError(f"epsilon must lie in (0, {MAX_EPSILON}], got {epsilon}")
    stage_count = profile.stage_count
    if stage_count == 0:
        return RunLengthDistribution(min_support=0, pmf=(1.0,), truncation_mass=0.0)

    summary = summarize_profile(profile)
    spread = summary.expected_total + 12.0 * math.sqrt(summary.variance_total)
    span = max(_MIN_SPAN, math.ceil(spread) - stage_count + 1)
    while True:
        if span > _MAX_SPAN:
            raise NumericalError(
                f"run-length support of {span} points exceeds the convolution limit {_MAX_SPAN}"
            )
        pmf = np.ones(1)
        for probability in profile.probabilities:
            pmf = np.convolve(pmf, _geometric_values(probability, span))[:span]
        cumulative = np.cumsum(pmf)
        reached = np.nonzero(cumulative >= 1.0 - epsilon)[0]
        if reached.size:
            cut = int(reached[0])
            kept = pmf[: cut + 1].tolist()
            truncation = min(epsilon, max(0.0, 1.0 - float(cumulative[cut])))
            break
        span *= 2
        logger.debug("extending run-length support to %d points", span)
    return RunLengthDistribution(
        min_support=stage_count, pmf=tuple(kept), truncation_mass=truncation
    )
