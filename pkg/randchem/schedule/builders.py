"""Stage-size schedules for the generalized random chemistry search.

Three families are built here: the exact continuous optimum, obtained by
solving one root-finding problem per stage so that every stage succeeds with
probability C(n0, k)^(-1/M); the closed-form geometric approximation
n_i = k^(i/M) n0^(1-i/M); and Kauffman's halving baseline.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

from scipy.optimize import bisect

from randchem.combinatorics import log_binomial
from randchem.errors import DomainError, InfeasibleScheduleError, NumericalError, RootBracketError
from .integerize import integerize
from .problem import ContinuousSchedule, IntegerSchedule, Problem, Schedule

logger = logging.getLogger(__name__)

# Default log-space residual tolerance for the per-stage root solve
DEFAULT_TOLERANCE = 1e-10

_BISECT_XTOL = 1e-13
_BISECT_MAXITER = 400


class ScheduleMethod(str, Enum):
    EXACT = "exact"
    APPROX = "approx"
    KAUFFMAN = "kauffman"


@dataclass(frozen=True)
class StageCount:
    """Optimal number of stages: the real optimum and its best integer neighbour."""

    m_real: float
    m_int: int


def _check_stage_count(problem: Problem, stage_count: int) -> int:
    if isinstance(stage_count, bool) or int(stage_count) != stage_count:
        raise DomainError(f"stage count must be an integer, got {stage_count!r}")
    stage_count = int(stage_count)
    if stage_count < 1:
        raise DomainError(f"stage count must be positive, got {stage_count}")
    if stage_count > problem.max_stage_count:
        raise InfeasibleScheduleError(
            f"{stage_count} stages do not fit between n0={problem.n0} and k={problem.k}; "
            f"at most n0 - k = {problem.max_stage_count}"
        )
    return stage_count


def optimal_stage_count(problem: Problem) -> StageCount:
    """Optimal stage count ln C(n0, k) and the integer M minimizing M * C(n0, k)^(1/M).

    Only the floor and the ceiling of the real optimum are candidates, each
    clamped to [1, n0 - k]. Ties go to the smaller M.

    Raises:
        DomainError: If ``k == n0`` (the empty schedule needs no stages).
    """
    if problem.k >= problem.n0:
        raise DomainError("k == n0 needs no stages; use the empty schedule")
    m_real = float(problem.log_subset_count)

    def log_objective(m: int) -> float:
        return math.log(m) + m_real / m

    candidates = sorted(
        {
            min(max(candidate, 1), problem.max_stage_count)
            for candidate in (math.floor(m_real), math.ceil(m_real))
        }
    )
    best = candidates[0]
    for candidate in candidates[1:]:
        if log_objective(candidate) < log_objective(best):
            best = candidate
    return StageCount(m_real=m_real, m_int=best)


def approx_stage_count(problem: Problem) -> float:
    """Approximate optimal stage count k * ln(n0 / k)."""
    if problem.k == 0:
        raise DomainError("the approximate stage count is undefined for k = 0")
    if problem.k >= problem.n0:
        raise DomainError("k == n0 needs no stages")
    return problem.k * math.log(problem.n0 / problem.k)


def exact_continuous_schedule(
    problem: Problem, stage_count: int, tolerance: float = DEFAULT_TOLERANCE
) -> ContinuousSchedule:
    """Solve the stage equations for the equal-probability optimum.

    Stage i solves ``ln C(n_{i-1}, n_i) - ln C(n_{i-1} - k, n_i - k) = ln C(n0, k) / M``
    by bisection on [k, n_{i-1}]. The last stage is pinned to k.

    Args:
        problem: The instance.
        stage_count: Number of stages M, between 1 and n0 - k.
        tolerance: Admissible log-space residual per solved stage.

    Returns:
        The continuous schedule. For ``k = 0`` every stage succeeds with
        probability one and evenly spaced sizes are returned.

    Raises:
        DomainError: On a non-positive stage count or tolerance.
        InfeasibleScheduleError: If the stage count exceeds n0 - k.
        RootBracketError: If a stage equation has no root inside (k, n_{i-1}).
        NumericalError: If the bisection misses ``tolerance``.
    """
    stage_count = _check_stage_count(problem, stage_count)
    if not tolerance > 0:
        raise DomainError(f"tolerance must be positive, got {tolerance}")
    n0, k = problem.n0, problem.k
    if k == 0:
        sizes = [n0 * (stage_count - i) / stage_count for i in range(1, stage_count + 1)]
        return ContinuousSchedule(problem, tuple(sizes))

    target = problem.log_subset_count / stage_count
    sizes: List[float] = []
    previous = float(n0)
    for stage in range(1, stage_count):

        def residual(size: float, parent: float = previous) -> float:
            return log_binomial(parent, size) - log_binomial(parent - k, size - k) - target

        if not residual(float(k)) > 0:
            raise RootBracketError(
                f"stage {stage} of {stage_count} has no root in ({k}, {previous}); "
                "the stage count is too large for this instance"
            )
        try:
            root = bisect(
                residual, float(k), previous, xtol=_BISECT_XTOL, maxiter=_BISECT_MAXITER
            )
        except RuntimeError as exc:
            raise NumericalError(f"bisection failed at stage {stage}: {exc}") from exc
        error = abs(residual(root))
        logger.debug("stage %d: n=%.12g residual=%.3g", stage, root, error)
        if error > tolerance:
            raise NumericalError(
                f"stage {stage} residual {error:.3g} exceeds tolerance {tolerance:.3g}"
            )
        if not k < root < previous:
            raise RootBracketError(f"stage {stage} root {root} left ({k}, {previous})")
        sizes.append(root)
        previous = root
    sizes.append(float(k))
    return ContinuousSchedule(problem, tuple(sizes))


def approx_continuous_schedule(problem: Problem, stage_count: int) -> ContinuousSchedule:
    """Geometric schedule n_i = k^(i/M) * n0^(1 - i/M) with n_M pinned to k.

    Raises:
        DomainError: If ``k = 0`` or the stage count is invalid.
    """
    if problem.k == 0:
        raise DomainError("the geometric schedule is undefined for k = 0")
    stage_count = _check_stage_count(problem, stage_count)
    ratio = problem.k / problem.n0
    sizes = [problem.n0 * ratio ** (i / stage_count) for i in range(1, stage_count)]
    sizes.append(float(problem.k))
    return ContinuousSchedule(problem, tuple(sizes))


def kauffman_schedule(problem: Problem) -> IntegerSchedule:
    """Kauffman's halving baseline: n_i = floor(n_{i-1} / 2) while that stays above k.

    The stage that would reach or undershoot k is replaced by a final stage of size k.
    """
    sizes: List[int] = []
    if problem.k == problem.n0:
        return IntegerSchedule(problem, ())
    current = problem.n0
    while current // 2 > problem.k:
        current //= 2
        sizes.append(current)
    sizes.append(problem.k)
    return IntegerSchedule(problem, tuple(sizes))


def trivial_schedule(problem: Problem) -> IntegerSchedule:
    """Schedule for the degenerate instances: ``[]`` when k = n0, ``[0]`` when k = 0."""
    if problem.k == problem.n0:
        return IntegerSchedule(problem, ())
    if problem.k == 0:
        return IntegerSchedule(problem, (0,))
    raise DomainError(f"instance n0={problem.n0}, k={problem.k} is not degenerate")


def build_schedule(
    problem: Problem,
    method: ScheduleMethod = ScheduleMethod.EXACT,
    stages: Optional[int] = None,
    integerize_sizes: bool = False,
    tolerance: float = DEFAULT_TOLERANCE,
) -> Schedule:
    """Build a schedule by method name, handling the degenerate instances.

    Args:
        problem: The instance.
        method: ``exact``, ``approx`` or ``kauffman``.
        stages: Stage count for the continuous methods; defaults to the optimal
            integer stage count. Ignored by ``kauffman``.
        integerize_sizes: Map continuous schedules to integers.
        tolerance: Root-solve tolerance for ``exact``.

    Returns:
        A continuous schedule, or an integer one for ``kauffman``, for
        ``integerize_sizes`` and for the degenerate instances.
    """
    method = ScheduleMethod(method)
    if problem.k == problem.n0 or problem.k == 0:
        return trivial_schedule(problem)
    if method is ScheduleMethod.KAUFFMAN:
        if stages is not None:
            logger.warning(
                "kauffman schedules fix their own stage count; ignoring stages=%s", stages
            )
        return kauffman_schedule(problem)
    if stages is None:
        stages = optimal_stage_count(problem).m_int
    logger.info(
        "building %s schedule for n0=%d, k=%d with M=%d",
        method.value,
        problem.n0,
        problem.k,
        stages,
    )
    if method is ScheduleMethod.EXACT:
        schedule = exact_continuous_schedule(problem, stages, tolerance=tolerance)
    else:
        schedule = approx_continuous_schedule(problem, stages)
    return integerize(schedule) if integerize_sizes else schedule
