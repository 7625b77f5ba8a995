"""Command implementations behind the randchem CLI.

Each ``cmd_*`` function builds an :class:`OutputRecord` from plain arguments,
reading numeric settings from the :class:`SettingsManager` singleton.
"""

import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from randchem.cost import (
    EXACT_COST_LIMIT,
    StageProfile,
    exact_rational_cost,
    expected_cost,
    stage_profile,
    theoretical_optimum,
)
from randchem.distribution import (
    exact_run_length,
    negbin_pmf_values,
    negbin_quantile,
    negbin_tail,
)
from randchem.output import OutputKind, OutputRecord
from randchem.schedule import (
    IntegerSchedule,
    Problem,
    Schedule,
    ScheduleMethod,
    approx_stage_count,
    build_schedule,
    optimal_stage_count,
)
from randchem.settings_manager import SettingsManager
from randchem.simulator import simulate

logger = logging.getLogger(__name__)

# Stage probabilities closer than this count as equal
EQUAL_PROBABILITY_TOLERANCE = 1e-9


def _stage_count_report(problem: Problem) -> Optional[Dict[str, Any]]:
    if problem.k == problem.n0:
        return None
    counts = optimal_stage_count(problem)
    return {
        "m_real": counts.m_real,
        "m_int": counts.m_int,
        "m_approx": approx_stage_count(problem) if problem.k >= 1 else None,
    }


def _sizes(schedule: Schedule) -> List[Any]:
    return list(schedule.sizes)


def _stage_rows(
    schedule: Schedule, profile: StageProfile, cumulative: Tuple[float, ...]
) -> List[Dict[str, Any]]:
    return [
        {
            "stage": stage,
            "size": size,
            "p": p,
            "expected_trials": trials,
            "cumulative_expected": running,
        }
        for stage, size, p, trials, running in zip(
            range(1, schedule.stage_count + 1),
            schedule.sizes,
            profile.probabilities,
            profile.expected_trials,
            cumulative,
        )
    ]


def _schedule_payload(
    problem: Problem, method: ScheduleMethod, schedule: Schedule
) -> Dict[str, Any]:
    profile = stage_profile(schedule)
    summary = expected_cost(schedule)
    return {
        "n0": problem.n0,
        "k": problem.k,
        "method": method.value,
        "integer": isinstance(schedule, IntegerSchedule),
        "stage_count": schedule.stage_count,
        "sizes": _sizes(schedule),
        "expected_total": summary.expected_total,
        "variance_total": summary.variance_total,
        "stage_counts": _stage_count_report(problem),
        "rows": _stage_rows(schedule, profile, summary.per_stage_cumulative),
    }


def _build(
    n0: int, k: int, method: str, stages: Optional[int], integerize: bool
) -> Tuple[Problem, ScheduleMethod, Schedule]:
    settings = SettingsManager.get_instance()
    problem = Problem(n0=n0, k=k)
    method = ScheduleMethod(method)
    schedule = build_schedule(
        problem,
        method,
        stages=stages,
        integerize_sizes=integerize,
        tolerance=settings.tolerance,
    )
    return problem, method, schedule


def _equal_probability(problem: Problem, stage_count: int) -> float:
    return math.exp(-problem.log_subset_count / stage_count)


def cmd_schedule(
    n0: int,
    k: int,
    method: str = "exact",
    stages: Optional[int] = None,
    integerize: bool = False,
) -> OutputRecord:
    """Stage sizes, per-stage probabilities and cumulative expected draws."""
    problem, method, schedule = _build(n0, k, method, stages, integerize)
    return OutputRecord(OutputKind.SCHEDULE, _schedule_payload(problem, method, schedule))


def cmd_cost(
    n0: int,
    k: int,
    method: str = "exact",
    stages: Optional[int] = None,
    integerize: bool = False,
) -> OutputRecord:
    """Schedule cost next to the theoretical optimum and, when feasible, the exact rational cost."""
    problem, method, schedule = _build(n0, k, method, stages, integerize)
    payload = _schedule_payload(problem, method, schedule)
    payload["theoretical_optimum"] = (
        theoretical_optimum(problem).expected if problem.k < problem.n0 else None
    )
    exact = None
    if isinstance(schedule, IntegerSchedule) and problem.n0 <= EXACT_COST_LIMIT:
        fraction = exact_rational_cost(schedule)
        exact = f"{fraction.numerator}/{fraction.denominator}"
    payload["exact_expected"] = exact
    return OutputRecord(OutputKind.COST, payload)


def cmd_simulate(
    n0: int,
    k: int,
    method: str = "approx",
    stages: Optional[int] = None,
    runs: int = 100_000,
    seed: int = 0,
    histogram_out: Optional[str] = None,
) -> OutputRecord:
    """Simulate the integerized schedule and overlay the negative binomial law on the histogram."""
    settings = SettingsManager.get_instance()
    problem, method, schedule = _build(n0, k, method, stages, True)
    summary = expected_cost(schedule)
    report = simulate(schedule, runs, seed, workers=settings.workers)

    xs = sorted(report.histogram)
    if schedule.stage_count:
        overlay = negbin_pmf_values(
            schedule.stage_count, _equal_probability(problem, schedule.stage_count), np.array(xs)
        ).tolist()
    else:
        overlay = [None] * len(xs)
    rows = [
        {"x": x, "count": report.histogram[x], "negbin_pmf": pmf} for x, pmf in zip(xs, overlay)
    ]
    record = OutputRecord(
        OutputKind.SIMULATION,
        {
            "n0": problem.n0,
            "k": problem.k,
            "method": method.value,
            "sizes": _sizes(schedule),
            "run_count": report.run_count,
            "seed": report.seed,
            "mean": report.mean,
            "sample_variance": report.sample_variance,
            "standard_error": math.sqrt(report.sample_variance / report.run_count),
            "expected_total": summary.expected_total,
            "variance_total": summary.variance_total,
            "per_stage_means": list(report.per_stage_means),
            "rows": rows,
        },
    )
    if histogram_out:
        Path(histogram_out).write_text(record.to_csv())
        logger.info("histogram written to %s", histogram_out)
    return record


def cmd_distribution(
    n0: int,
    k: int,
    method: str = "exact",
    stages: Optional[int] = None,
    length: Optional[int] = None,
    integerize: bool = False,
) -> OutputRecord:
    """Negative binomial PMF at p = C(n0, k)^(-1/M) beside the schedule's convolution PMF."""
    settings = SettingsManager.get_instance()
    problem, method, schedule = _build(n0, k, method, stages, integerize)
    profile = stage_profile(schedule)
    stage_count = schedule.stage_count
    payload: Dict[str, Any] = {
        "n0": problem.n0,
        "k": problem.k,
        "method": method.value,
        "stage_count": stage_count,
        "sizes": _sizes(schedule),
    }
    if stage_count == 0:
        payload.update(
            p=None,
            equal_probabilities=True,
            truncation_mass=0.0,
            tail=None if length is None else {"l": length, "negbin": None, "convolution": 0.0},
            rows=[{"x": 0, "negbin_pmf": None, "convolution_pmf": 1.0}],
        )
        return OutputRecord(OutputKind.DISTRIBUTION, payload)

    p = _equal_probability(problem, stage_count)
    tail = None
    if length is not None:
        tail = {"l": length, "negbin": negbin_tail(stage_count, p, length)}
    convolution = exact_run_length(profile, settings.epsilon)
    upper = negbin_quantile(stage_count, p, settings.epsilon)
    xs = np.arange(stage_count, max(convolution.max_support, upper) + 1)
    negbin = negbin_pmf_values(stage_count, p, xs).tolist()
    rows = []
    for x, negbin_value in zip(xs.tolist(), negbin):
        offset = x - stage_count
        conv_value = convolution.pmf[offset] if offset < len(convolution.pmf) else 0.0
        rows.append({"x": x, "negbin_pmf": negbin_value, "convolution_pmf": conv_value})
    if tail is not None:
        tail["convolution"] = convolution.tail(length)
    spread = max(profile.probabilities) - min(profile.probabilities)
    payload.update(
        p=p,
        equal_probabilities=spread <= EQUAL_PROBABILITY_TOLERANCE,
        truncation_mass=convolution.truncation_mass,
        tail=tail,
        rows=rows,
    )
    return OutputRecord(OutputKind.DISTRIBUTION, payload)


def _comparison_row(
    method: str, stage: Optional[int], size: Any, cumulative: float
) -> Dict[str, Any]:
    return {"method": method, "stage": stage, "size": size, "cumulative_expected": cumulative}


def cmd_compare(n0: int, k: int) -> OutputRecord:
    """Exact, approximate and halving schedules side by side with cumulative expected draws."""
    settings = SettingsManager.get_instance()
    problem = Problem(n0=n0, k=k)
    optimum = theoretical_optimum(problem).expected if problem.k < problem.n0 else None
    methods: Dict[str, Any] = {}
    rows: List[Dict[str, Any]] = []
    for method in ScheduleMethod:
        schedule = build_schedule(problem, method, tolerance=settings.tolerance)
        summary = expected_cost(schedule)
        methods[method.value] = {
            "stage_count": schedule.stage_count,
            "sizes": _sizes(schedule),
            "expected_total": summary.expected_total,
            "cumulative_expected": list(summary.per_stage_cumulative),
        }
        rows.append(_comparison_row(method.value, 0, problem.n0, 0.0))
        for stage, (size, cumulative) in enumerate(
            zip(schedule.sizes, summary.per_stage_cumulative), start=1
        ):
            rows.append(_comparison_row(method.value, stage, size, cumulative))
    if optimum is not None:
        rows.append(_comparison_row("theoretical", None, None, optimum))
    return OutputRecord(
        OutputKind.COMPARISON,
        {
            "n0": problem.n0,
            "k": problem.k,
            "theoretical_optimum": optimum,
            "stage_counts": _stage_count_report(problem),
            "methods": methods,
            "rows": rows,
        },
    )
