from .oracle import GameOracle, uniform_subset
from .runner import (
    MAX_STAGE_DRAWS,
    RunRecord,
    SimulationReport,
    derive_stream,
    run_once,
    simulate,
)

__all__ = [
    "GameOracle",
    "MAX_STAGE_DRAWS",
    "RunRecord",
    "SimulationReport",
    "derive_stream",
    "run_once",
    "simulate",
    "uniform_subset",
]
