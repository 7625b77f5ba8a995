import math

from randchem.errors import InfeasibleScheduleError
from .problem import ContinuousSchedule, IntegerSchedule

# Sizes within this distance below an integer floor to that integer.
INTEGRAL_SNAP = 1e-9


def integerize(schedule: ContinuousSchedule) -> IntegerSchedule:
    """Map a continuous schedule to integers with a backward pass.

    Pins n_M = k, then for i = M-1, ..., 1 sets n_i = max(n_{i+1} + 1, floor(n_i)).
    Root-solved sizes a rounding error below an integer count as that integer.

    Raises:
        InfeasibleScheduleError: If the pass pushes n_1 up to n0, which means the
            stage count exceeds n0 - k.
    """
    problem = schedule.problem
    if not schedule.sizes:
        return IntegerSchedule(problem, ())
    sizes = [0] * schedule.stage_count
    sizes[-1] = problem.k
    for index in range(schedule.stage_count - 2, -1, -1):
        floored = math.floor(schedule.sizes[index] + INTEGRAL_SNAP)
        sizes[index] = max(sizes[index + 1] + 1, floored)
    if sizes[0] >= problem.n0:
        raise InfeasibleScheduleError(
            f"{schedule.stage_count} integer stages do not fit between "
            f"n0={problem.n0} and k={problem.k}"
        )
    return IntegerSchedule(problem, tuple(sizes))
