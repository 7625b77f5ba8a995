import pytest

from randchem.commands import cmd_compare, cmd_distribution, cmd_schedule, cmd_simulate
from randchem.distribution import negbin_quantile
from randchem.output import OutputKind
from randchem.settings_manager import SettingsManager
from randchem.simulator import simulate


def test_commands_need_settings():
    with pytest.raises(RuntimeError):
        cmd_schedule(10, 2)


def test_schedule_without_secret(settings):
    record = cmd_schedule(10, 0, "approx")
    assert record.kind is OutputKind.SCHEDULE
    assert record.payload["sizes"] == [0]
    assert record.payload["expected_total"] == 1.0
    assert record.payload["stage_counts"]["m_approx"] is None


def test_distribution_empty_schedule(settings):
    payload = cmd_distribution(6, 6, length=0).payload
    assert payload["rows"] == [{"x": 0, "negbin_pmf": None, "convolution_pmf": 1.0}]
    assert payload["tail"]["convolution"] == 0.0


def test_simulate_degenerate_instances(settings):
    empty = cmd_simulate(6, 6, runs=5, seed=1).payload
    assert empty["rows"] == [{"x": 0, "count": 5, "negbin_pmf": None}]
    assert empty["mean"] == 0.0

    certain = cmd_simulate(6, 0, runs=5, seed=1).payload
    assert certain["rows"] == [{"x": 1, "count": 5, "negbin_pmf": 1.0}]


def test_simulate_uses_configured_workers(mocker):
    SettingsManager.initialize(workers=2)
    spy = mocker.patch("randchem.commands.simulate", wraps=simulate)
    cmd_simulate(10, 2, runs=20, seed=3)
    assert spy.call_args.kwargs["workers"] == 2


def test_compare_without_secret(settings):
    payload = cmd_compare(12, 0).payload
    for method in ("exact", "approx", "kauffman"):
        assert payload["methods"][method]["sizes"] == [0]
    assert payload["rows"][-1]["method"] == "theoretical"


def test_distribution_rows_reach_the_negative_binomial_quantile(settings):
    payload = cmd_distribution(30, 3, length=20).payload
    upper = negbin_quantile(payload["stage_count"], payload["p"], settings.epsilon)
    assert payload["rows"][-1]["x"] >= upper
    assert payload["rows"][0]["x"] == payload["stage_count"]
