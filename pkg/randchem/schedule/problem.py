from dataclasses import dataclass
from typing import Sequence, Tuple, Union

from randchem.combinatorics import LogReal, log_binomial
from randchem.errors import DomainError

# Tolerance on the pinned final stage of a real-valued schedule.
END_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Problem:
    """A subset-guessing instance: find a secret k-subset of {1, ..., n0}."""

    n0: int
    k: int

    def __post_init__(self):
        for name in ("n0", "k"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise DomainError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.n0 < 1:
            raise DomainError(f"n0 must be positive, got {self.n0}")
        if not 0 <= self.k <= self.n0:
            raise DomainError(f"k must satisfy 0 <= k <= n0, got k={self.k}, n0={self.n0}")

    @property
    def log_subset_count(self) -> LogReal:
        """ln C(n0, k), the log of the number of candidate secrets."""
        return log_binomial(self.n0, self.k)

    @property
    def max_stage_count(self) -> int:
        return self.n0 - self.k


def _validate_sizes(problem: Problem, sizes: Sequence[float], end_tolerance: float) -> None:
    if not sizes:
        if problem.k != problem.n0:
            raise DomainError(
                f"an empty schedule only solves k == n0, got n0={problem.n0}, k={problem.k}"
            )
        return
    previous = problem.n0
    for index, size in enumerate(sizes, start=1):
        if not size < previous:
            raise DomainError(
                f"stage sizes must strictly decrease from n0={problem.n0}; "
                f"stage {index} has size {size} after {previous}"
            )
        if size < problem.k - end_tolerance:
            raise DomainError(f"stage {index} has size {size} below k={problem.k}")
        previous = size
    if abs(sizes[-1] - problem.k) > end_tolerance:
        raise DomainError(f"the last stage must have size k={problem.k}, got {sizes[-1]}")


@dataclass(frozen=True)
class ContinuousSchedule:
    """Real-valued stage sizes n1 > n2 > ... > nM = k."""

    problem: Problem
    sizes: Tuple[float, ...]

    def __post_init__(self):
        sizes = tuple(float(size) for size in self.sizes)
        _validate_sizes(self.problem, sizes, END_TOLERANCE)
        object.__setattr__(self, "sizes", sizes)

    @property
    def stage_count(self) -> int:
        return len(self.sizes)

    def boundaries(self) -> Tuple[float, ...]:
        """Stage sizes prefixed with n0."""
        return (float(self.problem.n0),) + self.sizes


@dataclass(frozen=True)
class IntegerSchedule:
    """Integer stage sizes n1 > n2 > ... > nM = k, playable by the simulator."""

    problem: Problem
    sizes: Tuple[int, ...]

    def __post_init__(self):
        for size in self.sizes:
            if isinstance(size, bool) or int(size) != size:
                raise DomainError(f"integer schedules need integral sizes, got {size!r}")
        sizes = tuple(int(size) for size in self.sizes)
        _validate_sizes(self.problem, sizes, 0.0)
        object.__setattr__(self, "sizes", sizes)

    @property
    def stage_count(self) -> int:
        return len(self.sizes)

    def boundaries(self) -> Tuple[int, ...]:
        """Stage sizes prefixed with n0."""
        return (self.problem.n0,) + self.sizes


Schedule = Union[ContinuousSchedule, IntegerSchedule]
