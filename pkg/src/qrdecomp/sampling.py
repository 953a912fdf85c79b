"""Deterministic random sampling used by the statistics modules.

The generator is SplitMix64: 64 bits of state, one 64-bit output per step.
It is small enough to re-implement from this file alone, so every sampled
report can be reproduced on any platform without depending on the host
language's random module.  Draws below a bound use rejection sampling, so
they are exactly uniform.
"""

from .errors import DomainError

_MASK64 = (1 << 64) - 1


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased via rejection."""
        if n <= 0:
            raise DomainError(f"randbelow needs a positive bound, got {n}")
        limit = (_MASK64 + 1) - ((_MASK64 + 1) % n)
        while True:
            z = self.next_u64()
            if z < limit:
                return z % n


def sample_indices(q: int, size: int, rng: SplitMix64) -> list[int]:
    """Partial Fisher-Yates shuffle: `size` distinct indices from range(q)."""
    if not 0 <= size <= q:
        raise DomainError(f"cannot sample {size} distinct indices from {q}")
    pool = list(range(q))
    for i in range(size):
        j = i + rng.randbelow(q - i)
        pool[i], pool[j] = pool[j], pool[i]
    return pool[:size]


def sample_mask(q: int, rng: SplitMix64) -> int:
    """Uniform subset of range(q) as a bit mask (each element kept with prob 1/2)."""
    mask = 0
    for base in range(0, q, 64):
        width = min(64, q - base)
        word = rng.next_u64() & ((1 << width) - 1)
        mask |= word << base
    return mask
