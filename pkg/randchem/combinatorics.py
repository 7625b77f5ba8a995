"""Log-space and exact binomial coefficients.

Every probability in randchem is a ratio of binomial coefficients whose
operands reach C(n0, k) for n0 in the thousands, far beyond what a double
can hold. Real-argument coefficients are therefore carried as natural logs
through ``lnΓ``, and exact integer coefficients are available as an oracle.
"""

import math
from typing import NewType

from scipy.special import gammaln

from randchem.errors import DomainError

LogReal = NewType("LogReal", float)
ExactInteger = NewType("ExactInteger", int)


def _check_real_pair(a: float, b: float) -> None:
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError(f"binomial arguments must be finite, got ({a}, {b})")
    if b < 0 or b > a:
        raise DomainError(f"binomial arguments must satisfy a >= b >= 0, got ({a}, {b})")


def log_binomial(a: float, b: float) -> LogReal:
    """Natural log of the generalized binomial coefficient C(a, b).

    Uses ``lnΓ(a+1) - lnΓ(b+1) - lnΓ(a-b+1)`` so non-integer arguments are
    accepted. C(a, 0) and C(a, a) come out as exactly zero.

    Args:
        a: Upper argument, finite and at least ``b``.
        b: Lower argument, finite and non-negative.

    Returns:
        ln C(a, b).

    Raises:
        DomainError: If ``b < 0``, ``b > a`` or either argument is not finite.
    """
    a = float(a)
    b = float(b)
    _check_real_pair(a, b)
    # C(a, b) = C(a, a - b); always evaluate the smaller side
    b = min(b, a - b)
    return LogReal(float(gammaln(a + 1.0) - gammaln(b + 1.0) - gammaln(a - b + 1.0)))


def exact_binomial(n: int, r: int) -> ExactInteger:
    """Exact C(n, r) as an arbitrary-precision integer.

    Raises:
        DomainError: If the arguments are not integers with ``0 <= r <= n``.
    """
    if isinstance(n, bool) or isinstance(r, bool):
        raise DomainError("binomial arguments must be integers, not booleans")
    if int(n) != n or int(r) != r:
        raise DomainError(f"exact binomial needs integers, got ({n}, {r})")
    n, r = int(n), int(r)
    if r < 0 or r > n:
        raise DomainError(f"exact binomial needs 0 <= r <= n, got ({n}, {r})")
    return ExactInteger(math.comb(n, r))


def approx_binomial_log(a: float, b: float) -> LogReal:
    """Log of the approximation C(a, b) ~ (a/b)^b, i.e. ``b * ln(a/b)``.

    The approximation is only meaningful for ``b`` much smaller than ``a``.

    Raises:
        DomainError: If ``b <= 0`` or ``a < b``.
    """
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError(f"binomial arguments must be finite, got ({a}, {b})")
    if b <= 0 or a < b:
        raise DomainError(f"approximation needs a >= b > 0, got ({a}, {b})")
    return LogReal(b * (math.log(a) - math.log(b)))
