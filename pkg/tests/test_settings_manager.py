import os

import pytest

from randchem.distribution import DEFAULT_EPSILON
from randchem.errors import DomainError
from randchem.schedule import DEFAULT_TOLERANCE
from randchem.settings_manager import SettingsManager


def test_get_instance_before_initialize():
    """Test that reading settings before initialization fails.

    Raises:
        AssertionError: If ``get_instance`` does not raise RuntimeError."""
    with pytest.raises(RuntimeError):
        SettingsManager.get_instance()


def test_initialize_defaults(settings):
    assert settings.tolerance == DEFAULT_TOLERANCE
    assert settings.epsilon == DEFAULT_EPSILON
    assert settings.workers == 1
    assert SettingsManager.get_instance() is settings


def test_initialize_is_idempotent():
    first = SettingsManager.initialize(tolerance=1e-8)
    second = SettingsManager.initialize(tolerance=1e-6)
    assert first is second
    assert second.tolerance == 1e-8


def test_environment_overrides_defaults(mocker):
    """Test that ``RANDCHEM_*`` variables replace the built-in defaults.

    Args:
        mocker: pytest-mock fixture used to patch the process environment."""
    mocker.patch.dict(
        os.environ,
        {"RANDCHEM_TOLERANCE": "1e-7", "RANDCHEM_EPSILON": "1e-6", "RANDCHEM_WORKERS": "3"},
    )
    settings = SettingsManager.initialize()
    assert settings.tolerance == 1e-7
    assert settings.epsilon == 1e-6
    assert settings.workers == 3


def test_arguments_override_environment(mocker):
    mocker.patch.dict(os.environ, {"RANDCHEM_WORKERS": "3"})
    assert SettingsManager.initialize(workers=2).workers == 2


def test_invalid_environment_value(mocker):
    mocker.patch.dict(os.environ, {"RANDCHEM_WORKERS": "many"})
    with pytest.raises(DomainError):
        SettingsManager.initialize()


@pytest.mark.parametrize(
    "kwargs",
    [{"tolerance": 0.0}, {"epsilon": 0.0}, {"epsilon": 0.5}, {"workers": 0}],
)
def test_initialize_rejects_out_of_range(kwargs):
    with pytest.raises(DomainError):
        SettingsManager.initialize(**kwargs)


def test_reset_forgets_instance(settings):
    SettingsManager.reset()
    with pytest.raises(RuntimeError):
        SettingsManager.get_instance()
