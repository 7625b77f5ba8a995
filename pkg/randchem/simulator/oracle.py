import random
from dataclasses import dataclass
from typing import AbstractSet, FrozenSet, Iterable, List

from randchem.errors import DomainError
from randchem.schedule import Problem


@dataclass(frozen=True)
class GameOracle:
    """The responder: holds the secret set and answers containment questions."""

    n0: int
    secret: FrozenSet[int]

    def __post_init__(self):
        secret = frozenset(self.secret)
        if any(not 1 <= element <= self.n0 for element in secret):
            raise DomainError(f"secret elements must lie in 1..{self.n0}")
        object.__setattr__(self, "secret", secret)

    @classmethod
    def draw(cls, problem: Problem, rng: random.Random) -> "GameOracle":
        """Pick a uniformly random secret of size k from {1, ..., n0}."""
        return cls(n0=problem.n0, secret=frozenset(rng.sample(range(1, problem.n0 + 1), problem.k)))

    @property
    def k(self) -> int:
        return len(self.secret)

    def contains_secret(self, proposal: Iterable[int]) -> bool:
        """Answer whether ``proposal`` contains every secret element."""
        return self.secret.issubset(proposal)

    def misses_secret(self, removed: Iterable[int]) -> bool:
        """Answer whether a proposal lost a secret element, given what it left out."""
        return not self.secret.isdisjoint(removed)

    def is_secret(self, proposal: AbstractSet[int]) -> bool:
        return self.secret == proposal


def partial_shuffle(pool: List[int], size: int, rng: random.Random) -> bool:
    """Shuffle ``pool`` in place just enough that ``pool[:size]`` is a uniform subset.

    Runs Fisher-Yates over whichever side of the split is smaller. Returns
    True when the tail was shuffled (so ``pool[size:]`` is the drawn complement)
    and False when the head was.
    """
    length = len(pool)
    if size > length - size:
        for position in range(length - 1, size - 1, -1):
            swap = rng.randrange(position + 1)
            pool[position], pool[swap] = pool[swap], pool[position]
        return True
    for position in range(size):
        swap = rng.randrange(position, length)
        pool[position], pool[swap] = pool[swap], pool[position]
    return False


def uniform_subset(parent: AbstractSet[int], size: int, rng: random.Random) -> FrozenSet[int]:
    """Draw a subset of ``parent`` with ``size`` elements, uniformly over all such subsets.

    Raises:
        DomainError: If ``size`` is negative or exceeds ``len(parent)``.
    """
    if not 0 <= size <= len(parent):
        raise DomainError(f"cannot draw {size} elements from a set of {len(parent)}")
    pool = sorted(parent)
    partial_shuffle(pool, size, rng)
    return frozenset(pool[:size])
