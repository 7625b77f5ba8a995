"""Numeric settings manager for randchem commands."""

import os
from typing import ClassVar, Optional

from randchem.distribution import DEFAULT_EPSILON, MAX_EPSILON
from randchem.errors import DomainError
from randchem.schedule import DEFAULT_TOLERANCE

TOLERANCE_ENV = "RANDCHEM_TOLERANCE"
EPSILON_ENV = "RANDCHEM_EPSILON"
WORKERS_ENV = "RANDCHEM_WORKERS"


def _from_env(name: str, cast, default):
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return cast(raw)
    except ValueError as exc:
        raise DomainError(
            f"environment variable {name}={raw!r} is not a valid {cast.__name__}"
        ) from exc


class SettingsManager:
    """Singleton holding the root-solve tolerance, truncation epsilon and worker count."""

    _instance: ClassVar[Optional["SettingsManager"]] = None
    _initialized: bool = False

    def __new__(cls, *args, **kwargs):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    @classmethod
    def initialize(
        cls,
        tolerance: Optional[float] = None,
        epsilon: Optional[float] = None,
        workers: Optional[int] = None,
    ) -> "SettingsManager":
        """Initialize the settings singleton.

        Explicit arguments win over the ``RANDCHEM_*`` environment variables,
        which win over the built-in defaults.

        Args:
            tolerance: Log-space residual tolerance for the exact schedule solve.
            epsilon: Tail mass allowed to be cut from run-length distributions.
            workers: Worker processes used by simulations.

        Returns:
            The singleton instance

        Raises:
            DomainError: If a value is out of range.
        """
        instance = cls()
        if not instance._initialized:
            if tolerance is None:
                tolerance = _from_env(TOLERANCE_ENV, float, DEFAULT_TOLERANCE)
            if epsilon is None:
                epsilon = _from_env(EPSILON_ENV, float, DEFAULT_EPSILON)
            if workers is None:
                workers = _from_env(WORKERS_ENV, int, 1)
            instance._init(tolerance, epsilon, workers)
            instance._initialized = True
        return instance

    @classmethod
    def get_instance(cls) -> "SettingsManager":
        """Get the singleton instance.

        Raises:
            RuntimeError: If the manager hasn't been initialized
        """
        if cls._instance is None or not cls._instance._initialized:
            raise RuntimeError(
                "SettingsManager not initialized. Call SettingsManager.initialize() first"
            )
        return cls._instance

    @classmethod
    def reset(cls) -> None:
        cls._instance = None

    def _init(self, tolerance: float, epsilon: float, workers: int) -> None:
        if not tolerance > 0:
            raise DomainError(f"tolerance must be positive, got {tolerance}")
        if not 0 < epsilon <= MAX_EPSILON:
            raise DomainError(f"epsilon must lie in (0, {MAX_EPSILON}], got {epsilon}")
        if workers < 1:
            raise DomainError(f"workers must be positive, got {workers}")
        self.tolerance = tolerance
        self.epsilon = epsilon
        self.workers = workers
