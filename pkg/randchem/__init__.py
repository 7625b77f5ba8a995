"""randchem - optimal stage schedules for the random chemistry subset search."""

from randchem.cost import expected_cost, stage_profile, theoretical_optimum
from randchem.schedule import Problem, build_schedule, integerize, optimal_stage_count
from randchem.simulator import simulate

__all__ = [
    "Problem",
    "build_schedule",
    "expected_cost",
    "integerize",
    "optimal_stage_count",
    "simulate",
    "stage_profile",
    "theoretical_optimum",
]
