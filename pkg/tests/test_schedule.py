import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis.strategies import data, integers

from randchem.combinatorics import exact_binomial, log_binomial
from randchem.cost import stage_profile
from randchem.errors import DomainError, InfeasibleScheduleError
from randchem.schedule import (
    ContinuousSchedule,
    IntegerSchedule,
    Problem,
    ScheduleMethod,
    approx_continuous_schedule,
    approx_stage_count,
    build_schedule,
    exact_continuous_schedule,
    integerize,
    kauffman_schedule,
    optimal_stage_count,
    trivial_schedule,
)


@pytest.mark.parametrize(
    "n0, k",
    [(0, 0), (5, 6), (5, -1), (True, 0), (5.5, 1), (10, 2.5)],
)
def test_problem_rejects_invalid(n0, k):
    with pytest.raises(DomainError):
        Problem(n0=n0, k=k)


def test_problem_properties(reference_problem):
    assert reference_problem.log_subset_count == pytest.approx(math.log(75287520))
    assert reference_problem.max_stage_count == 95


def test_schedule_types_validate_sizes():
    problem = Problem(10, 3)
    with pytest.raises(DomainError):
        IntegerSchedule(problem, (7, 7, 3))
    with pytest.raises(DomainError):
        IntegerSchedule(problem, (10, 3))
    with pytest.raises(DomainError):
        IntegerSchedule(problem, (7, 4))
    with pytest.raises(DomainError):
        IntegerSchedule(problem, ())
    with pytest.raises(DomainError):
        IntegerSchedule(problem, (7.5, 3))
    with pytest.raises(DomainError):
        ContinuousSchedule(problem, (7.5, 2.5))
    assert IntegerSchedule(Problem(4, 4), ()).stage_count == 0
    assert ContinuousSchedule(problem, (7.5, 3)).boundaries() == (10.0, 7.5, 3.0)


def test_optimal_stage_count_reference(reference_problem):
    counts = optimal_stage_count(reference_problem)
    assert 18.13 <= counts.m_real <= 18.15
    assert counts.m_int == 18


def test_optimal_stage_count_forced_to_one():
    counts = optimal_stage_count(Problem(2, 1))
    assert counts.m_real == pytest.approx(math.log(2))
    assert counts.m_int == 1


def test_optimal_stage_count_compares_floor_and_ceiling():
    total = exact_binomial(50, 3)
    expected = min((9, 10), key=lambda m: m * total ** (1 / m))
    assert optimal_stage_count(Problem(50, 3)).m_int == expected == 10


def test_optimal_stage_count_needs_a_stage():
    with pytest.raises(DomainError):
        optimal_stage_count(Problem(10, 10))


def test_approx_stage_count():
    assert approx_stage_count(Problem(100, 5)) == pytest.approx(5 * math.log(20))
    assert approx_stage_count(Problem(100, 1)) == pytest.approx(
        optimal_stage_count(Problem(100, 1)).m_real
    )
    with pytest.raises(DomainError):
        approx_stage_count(Problem(100, 0))


def test_exact_schedule_reference(reference_problem):
    schedule = exact_continuous_schedule(reference_problem, 18)
    assert schedule.stage_count == 18
    assert schedule.sizes[-1] == 5.0
    assert all(a > b for a, b in zip(schedule.boundaries(), schedule.sizes))
    target = math.exp(-reference_problem.log_subset_count / 18)
    for p in stage_profile(schedule).probabilities:
        assert p == pytest.approx(target, rel=1e-8)


def test_exact_schedule_two_stages_golden():
    schedule = exact_continuous_schedule(Problem(10, 2), 2)
    # C(n1, 2) = sqrt(45)
    assert schedule.sizes[0] == pytest.approx(4.19681, abs=1e-5)
    assert schedule.sizes[1] == 2.0


def test_exact_schedule_keeps_subset_counts_on_a_line(reference_problem):
    schedule = exact_continuous_schedule(reference_problem, 18)
    total = reference_problem.log_subset_count
    for i, size in enumerate(schedule.sizes, start=1):
        assert log_binomial(size, 5) == pytest.approx(total * (1 - i / 18), abs=1e-8)


def test_exact_schedule_without_secret_is_evenly_spaced():
    schedule = exact_continuous_schedule(Problem(12, 0), 4)
    assert schedule.sizes == (9.0, 6.0, 3.0, 0.0)


def test_exact_schedule_is_deterministic(reference_problem):
    first = exact_continuous_schedule(reference_problem, 18)
    second = exact_continuous_schedule(reference_problem, 18)
    assert first.sizes == second.sizes


def test_exact_schedule_rejects_stage_counts():
    problem = Problem(10, 5)
    with pytest.raises(DomainError):
        exact_continuous_schedule(problem, 0)
    with pytest.raises(InfeasibleScheduleError):
        exact_continuous_schedule(problem, 6)
    with pytest.raises(DomainError):
        exact_continuous_schedule(problem, 2, tolerance=0.0)


def test_approx_schedule_examples():
    assert approx_continuous_schedule(Problem(100, 5), 1).sizes == (5.0,)
    assert approx_continuous_schedule(Problem(64, 4), 2).sizes[0] == pytest.approx(16.0, rel=1e-12)
    with pytest.raises(DomainError):
        approx_continuous_schedule(Problem(100, 0), 3)


def test_approx_schedule_is_geometric(reference_problem):
    schedule = approx_continuous_schedule(reference_problem, 18)
    ratio = (5 / 100) ** (1 / 18)
    bounds = schedule.boundaries()
    for prev, nxt in zip(bounds, bounds[1:]):
        assert nxt / prev == pytest.approx(ratio, rel=1e-12)


@pytest.mark.parametrize(
    "n0, k, expected",
    [(100, 5, (50, 25, 12, 6, 5)), (2, 1, (1,)), (100, 0, (50, 25, 12, 6, 3, 1, 0))],
)
def test_kauffman_schedule(n0, k, expected):
    assert kauffman_schedule(Problem(n0, k)).sizes == expected


def test_trivial_schedule():
    assert trivial_schedule(Problem(10, 10)).sizes == ()
    assert trivial_schedule(Problem(10, 0)).sizes == (0,)
    with pytest.raises(DomainError):
        trivial_schedule(Problem(10, 3))


@pytest.mark.parametrize(
    "sizes, expected",
    [((7.8, 5.2, 3.0), (7, 5, 3)), ((4.2, 3.9, 3.0), (5, 4, 3)), ((8.0, 6.0, 3.0), (8, 6, 3))],
)
def test_integerize_examples(sizes, expected):
    assert integerize(ContinuousSchedule(Problem(10, 3), sizes)).sizes == expected


def test_integerize_snaps_near_integers():
    schedule = ContinuousSchedule(Problem(10, 3), (6.0 - 1e-12, 3.0))
    assert integerize(schedule).sizes == (6, 3)


def test_integerize_collision_with_n0_is_infeasible():
    # four stages cannot fit strictly between 5 and 2
    schedule = ContinuousSchedule(Problem(5, 2), (4.5, 3.2, 2.5, 2.0))
    with pytest.raises(InfeasibleScheduleError):
        integerize(schedule)


def test_integerized_reference_schedules(reference_problem):
    exact = build_schedule(reference_problem, ScheduleMethod.EXACT, integerize_sizes=True)
    approx = build_schedule(reference_problem, ScheduleMethod.APPROX, integerize_sizes=True)
    assert exact.sizes == (82, 67, 55, 45, 37, 31, 25, 21, 18, 15, 12, 11, 10, 9, 8, 7, 6, 5)
    assert approx.sizes == (84, 71, 60, 51, 43, 36, 31, 26, 22, 18, 16, 13, 11, 9, 8, 7, 6, 5)


def test_build_schedule_degenerate_instances():
    for method in ScheduleMethod:
        assert build_schedule(Problem(7, 7), method).sizes == ()
        assert build_schedule(Problem(7, 0), method).sizes == (0,)


def test_build_schedule_kauffman_ignores_stages(caplog):
    schedule = build_schedule(Problem(100, 5), "kauffman", stages=3)
    assert schedule.sizes == (50, 25, 12, 6, 5)
    assert "ignoring stages=3" in caplog.text


def test_build_schedule_defaults_to_optimal_stage_count(reference_problem):
    assert build_schedule(reference_problem, "approx").stage_count == 18


def _problems(draw):
    k = draw(integers(min_value=1, max_value=8))
    n0 = draw(integers(min_value=k + 1, max_value=300))
    return Problem(n0, k)


@settings(deadline=None, max_examples=40)
@given(data())
def test_exact_schedule_has_equal_stage_probabilities(data):
    problem = _problems(data.draw)
    stages = optimal_stage_count(problem).m_int
    schedule = exact_continuous_schedule(problem, stages)
    target = math.exp(-problem.log_subset_count / stages)
    for p in stage_profile(schedule).probabilities:
        assert abs(p - target) <= 1e-6


@settings(deadline=None, max_examples=40)
@given(data())
def test_expected_trials_multiply_to_subset_count(data):
    problem = _problems(data.draw)
    stages = data.draw(integers(min_value=1, max_value=min(problem.max_stage_count, 30)))
    continuous = approx_continuous_schedule(problem, stages)
    profile = stage_profile(continuous)
    assert math.fsum(math.log(z) for z in profile.expected_trials) == pytest.approx(
        problem.log_subset_count, abs=1e-9
    )

    integral = integerize(continuous)
    bounds = integral.boundaries()
    product = Fraction(1)
    for prev, nxt in zip(bounds, bounds[1:]):
        product *= Fraction(
            exact_binomial(prev, nxt), exact_binomial(prev - problem.k, nxt - problem.k)
        )
    assert product == exact_binomial(problem.n0, problem.k)


@settings(deadline=None, max_examples=60)
@given(data())
def test_integerize_preserves_endpoints_and_length(data):
    problem = _problems(data.draw)
    stages = data.draw(integers(min_value=1, max_value=min(problem.max_stage_count, 30)))
    integral = integerize(approx_continuous_schedule(problem, stages))
    assert integral.stage_count == stages
    assert integral.sizes[-1] == problem.k
    assert integral.sizes[0] < problem.n0
    assert all(a > b for a, b in zip(integral.sizes, integral.sizes[1:]))


@settings(deadline=None, max_examples=40)
@given(data())
def test_exact_and_halving_schedules_multiply_to_subset_count(data):
    problem = _problems(data.draw)
    stages = optimal_stage_count(problem).m_int
    for schedule in (exact_continuous_schedule(problem, stages), kauffman_schedule(problem)):
        log_product = -math.fsum(stage_profile(schedule).log_probabilities)
        assert log_product == pytest.approx(problem.log_subset_count, abs=1e-9)
