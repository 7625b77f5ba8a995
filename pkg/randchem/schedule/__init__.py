from .builders import (
    DEFAULT_TOLERANCE,
    ScheduleMethod,
    StageCount,
    approx_continuous_schedule,
    approx_stage_count,
    build_schedule,
    exact_continuous_schedule,
    kauffman_schedule,
    optimal_stage_count,
    trivial_schedule,
)
from .integerize import integerize
from .problem import ContinuousSchedule, IntegerSchedule, Problem, Schedule

__all__ = [
    "DEFAULT_TOLERANCE",
    "ContinuousSchedule",
    "IntegerSchedule",
    "Problem",
    "Schedule",
    "ScheduleMethod",
    "StageCount",
    "approx_continuous_schedule",
    "approx_stage_count",
    "build_schedule",
    "exact_continuous_schedule",
    "integerize",
    "kauffman_schedule",
    "optimal_stage_count",
    "trivial_schedule",
]
