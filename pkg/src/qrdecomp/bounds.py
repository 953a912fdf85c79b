"""Window and binomial-bound calculators for decomposition counts."""

from __future__ import annotations

import math
from decimal import Decimal
from typing import NamedTuple

from .errors import DomainError, NotOddPrimeError
from .field import is_odd_prime


def sarkozy_window(p: int) -> tuple[float, float]:
    """Proven size window for decomposition parts modulo a prime:

        sqrt(p) / (3 ln p)  <=  min size  <=  max size  <=  sqrt(p) * ln p

    Natural logarithm throughout.
    """
    if not is_odd_prime(p):
        raise NotOddPrimeError(p)
    root, ln = math.sqrt(p), math.log(p)
    return root / (3.0 * ln), root * ln


def binom_floor(z: float, n: int) -> int:
    """C(floor(z), n) exactly; zero when n exceeds floor(z)."""
    if z < 0:
        raise DomainError(f"z must be nonnegative, got {z}")
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    return math.comb(math.floor(z), n)


class BoundValue(NamedTuple):
    value: float
    scale: str  # "linear" or "log10"
    exact: int


def binomial_count_bound(q: int, k: int, m: int, c: float) -> BoundValue:
    """binom_floor(c*sqrt(q), k) * binom_floor(c*sqrt(q), m).

    The multiplier c is a free parameter swept empirically; the product is
    reported as log10 once it no longer fits a 64-bit integer.
    """
    if c <= 0:
        raise DomainError(f"c must be positive, got {c}")
    if k < 2 or m < 2:
        raise DomainError(f"part sizes must be >= 2, got ({k}, {m})")
    width = c * math.sqrt(q)
    exact = binom_floor(width, k) * binom_floor(width, m)
    if exact < 1 << 63:
        return BoundValue(float(exact), "linear", exact)
    return BoundValue(float(Decimal(exact).log10()), "log10", exact)
