"""Monte Carlo play of the subset-guessing game under a fixed schedule.

Run i draws from its own stream, seeded from sha256(seed, i), so a report
depends only on (schedule, run_count, seed) and never on how the runs are
split across worker processes.
"""

import hashlib
import logging
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Tuple

import numpy as np

from randchem.errors import DomainError, NumericalError, SimulationAbortedError
from randchem.schedule import IntegerSchedule
from .oracle import GameOracle, partial_shuffle

logger = logging.getLogger(__name__)

# Draw budget per stage before a run is declared hung
MAX_STAGE_DRAWS = 10**10

SEED_LIMIT = 2**64
_BLOCKS_PER_WORKER = 4


@dataclass(frozen=True)
class RunRecord:
    """Outcome of one game: draws per stage and the set the questioner ended on."""

    total_selections: int
    per_stage_selections: Tuple[int, ...]
    final_set: FrozenSet[int]


@dataclass(frozen=True)
class SimulationReport:
    """Aggregate statistics over independent seeded runs."""

    run_count: int
    mean: float
    sample_variance: float
    histogram: Dict[int, int]
    seed: int
    per_stage_means: Tuple[float, ...]


def derive_stream(seed: int, index: int) -> random.Random:
    """Independent random stream for run ``index`` of a simulation seeded with ``seed``."""
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return random.Random(int.from_bytes(digest, "big"))


def run_once(
    schedule: IntegerSchedule,
    oracle: GameOracle,
    rng: random.Random,
    max_draws: int = MAX_STAGE_DRAWS,
) -> RunRecord:
    """Play one game, drawing uniform subsets at each stage until one holds the secret.

    Args:
        schedule: Stage sizes to play.
        oracle: Responder holding a secret consistent with the schedule's instance.
        rng: Random stream for this run.
        max_draws: Per-stage draw budget.

    Returns:
        The per-stage draw counts and the final set, which equals the secret.

    Raises:
        DomainError: If the oracle does not match the schedule's instance.
        SimulationAbortedError: If a stage exceeds ``max_draws``.
    """
    problem = schedule.problem
    if oracle.n0 != problem.n0 or oracle.k != problem.k:
        raise DomainError(
            f"oracle for n0={oracle.n0}, k={oracle.k} does not match "
            f"n0={problem.n0}, k={problem.k}"
        )
    pool = list(range(1, problem.n0 + 1))
    per_stage: List[int] = []
    for stage, size in enumerate(schedule.sizes, start=1):
        draws = 0
        while True:
            draws += 1
            if draws > max_draws:
                raise SimulationAbortedError(
                    f"stage {stage} (size {size} from {len(pool)}) exceeded {max_draws} draws"
                )
            if partial_shuffle(pool, size, rng):
                accepted = not oracle.misses_secret(pool[size:])
            else:
                accepted = oracle.contains_secret(pool[:size])
            if accepted:
                break
        del pool[size:]
        per_stage.append(draws)
    return RunRecord(
        total_selections=sum(per_stage),
        per_stage_selections=tuple(per_stage),
        final_set=frozenset(pool),
    )


def _simulate_block(schedule: IntegerSchedule, seed: int, start: int, stop: int) -> np.ndarray:
    counts = np.zeros((stop - start, schedule.stage_count), dtype=np.int64)
    for row, index in enumerate(range(start, stop)):
        rng = derive_stream(seed, index)
        oracle = GameOracle.draw(schedule.problem, rng)
        record = run_once(schedule, oracle, rng)
        if not oracle.is_secret(record.final_set):
            raise NumericalError(f"run {index} ended on a set other than the secret")
        counts[row, :] = record.per_stage_selections
    return counts


def _blocks(run_count: int, workers: int) -> List[Tuple[int, int]]:
    block = max(1, math.ceil(run_count / (workers * _BLOCKS_PER_WORKER)))
    return [(start, min(start + block, run_count)) for start in range(0, run_count, block)]


def simulate(
    schedule: IntegerSchedule, run_count: int, seed: int, workers: int = 1
) -> SimulationReport:
    """Play ``run_count`` independent games, each with a freshly drawn secret.

    Args:
        schedule: Integer schedule to play.
        run_count: Number of games, at least one.
        seed: Unsigned 64-bit master seed.
        workers: Worker processes; results do not depend on this value.

    Returns:
        Mean, sample variance, histogram of total draws and mean draws per stage.

    Raises:
        DomainError: On a non-positive run count, an out-of-range seed or worker count.
    """
    if isinstance(run_count, bool) or int(run_count) != run_count or run_count < 1:
        raise DomainError(f"run count must be a positive integer, got {run_count!r}")
    if isinstance(seed, bool) or int(seed) != seed or not 0 <= seed < SEED_LIMIT:
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    if workers < 1:
        raise DomainError(f"workers must be positive, got {workers}")
    run_count, seed = int(run_count), int(seed)

    blocks = _blocks(run_count, workers)
    logger.info("simulating %d runs in %d blocks on %d worker(s)", run_count, len(blocks), workers)
    if workers == 1:
        parts = [_simulate_block(schedule, seed, start, stop) for start, stop in blocks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(
                    _simulate_block,
                    [schedule] * len(blocks),
                    [seed] * len(blocks),
                    [start for start, _ in blocks],
                    [stop for _, stop in blocks],
                )
            )
    counts = np.concatenate(parts, axis=0)

    totals = counts.sum(axis=1)
    values, frequencies = np.unique(totals, return_counts=True)
    return SimulationReport(
        run_count=run_count,
        mean=int(totals.sum()) / run_count,
        sample_variance=float(np.var(totals, ddof=1)) if run_count > 1 else 0.0,
        histogram=dict(zip(values.tolist(), frequencies.tolist())),
        seed=seed,
        per_stage_means=tuple((counts.sum(axis=0) / run_count).tolist()),
    )
