import pytest

from randchem.schedule import Problem
from randchem.settings_manager import SettingsManager


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch):
    """Reset the settings singleton and clear ``RANDCHEM_*`` variables around every test.

    Tests start from built-in defaults unless they set the environment or call
    ``SettingsManager.initialize`` themselves.
    """
    for name in ("RANDCHEM_TOLERANCE", "RANDCHEM_EPSILON", "RANDCHEM_WORKERS"):
        monkeypatch.delenv(name, raising=False)
    SettingsManager.reset()
    yield
    SettingsManager.reset()


@pytest.fixture
def settings():
    """Settings initialized with the defaults."""
    return SettingsManager.initialize()


@pytest.fixture
def reference_problem():
    """The worked instance: a secret 5-subset of 100 elements."""
    return Problem(n0=100, k=5)
