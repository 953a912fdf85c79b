"""Double character sums, the Karatsuba-type bound, and filter sets.

The double sum over sets U, V is sum over (u, v) of chi(u + v), kept as an
exact integer.  The Karatsuba right-hand side is evaluated with implied
constant 1; observed ratios absorb whatever the true constant is, and no
numeric value of the constant is ever asserted.

filter_set(V) is the set of u with chi(u + v) = +1 for every v in V; its
size statistics over random V are written as seeded, reproducible CSVs.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

from .errors import DomainError, EmptySetError, FieldMismatchError
from .sampling import SplitMix64, sample_indices
from .sets import ElementSet, _check_same_field


def double_char_sum(field, u_set: ElementSet, v_set: ElementSet) -> int:
    """Exact integer sum of chi(u + v) over u in u_set, v in v_set.

    Per element x of the smaller set, the inner sum against the other set O
    is #((Q - x) & O) - #((N - x) & O) with N the nonsquares, so the whole
    sum costs one pair of mask intersections per element.
    """
    _check_same_field(field, u_set, v_set)
    small, other = u_set.bits, v_set.bits
    if small.bit_count() > other.bit_count():
        small, other = other, small
    total = 0
    b = small
    while b:
        lsb = b & -b
        b ^= lsb
        x = lsb.bit_length() - 1
        total += (field.res_minus(x) & other).bit_count()
        total -= (field.nonres_minus(x) & other).bit_count()
    return total


def karatsuba_rhs(q: int, size_u: int, size_v: int, nu: int) -> float:
    """Karatsuba double-sum bound, right-hand side, implied constant 1:

        size_u^(1 - 1/(2 nu)) * size_v * q^(1/(4 nu))
      + size_u^(1 - 1/(2 nu)) * size_v^(1/2) * q^(1/(2 nu))
    """
    if size_u < 1 or size_v < 1:
        raise DomainError(f"set sizes must be >= 1, got ({size_u}, {size_v})")
    if nu < 1:
        raise DomainError(f"nu must be >= 1, got {nu}")
    u_pow = size_u ** (1.0 - 1.0 / (2.0 * nu))
    return u_pow * size_v * q ** (1.0 / (4.0 * nu)) + u_pow * math.sqrt(size_v) * q ** (
        1.0 / (2.0 * nu)
    )


def filter_set(field, v_set: ElementSet) -> ElementSet:
    """U(V) = {u : u + v is a nonzero square for every v in V}.

    Computed as the AND over v of the shifted residue mask Q - v.
    """
    _check_same_field(field, v_set)
    if len(v_set) == 0:
        raise EmptySetError("filter set needs a nonempty constraint set")
    acc = field.full_mask
    for v in v_set:
        acc &= field.res_minus(v)
        if acc == 0:
            break
    return ElementSet(acc, field.q)


# ---------------------------------------------------------------------------
# Sampled reports.  Each sample derives its own generator from seed + index,
# so results are independent of evaluation order and can be merged
# deterministically.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CharSample:
    sample: int
    size_u: int
    size_v: int
    lhs: int
    rhs: float
    ratio: float


@dataclass(frozen=True)
class CharSumReport:
    q: int
    nu: int
    seed: int
    samples: tuple[CharSample, ...]
    max_ratio: float


@dataclass(frozen=True)
class FilterSample:
    sample: int
    v_indices: tuple[int, ...]
    size_u: int
    ratio_sqrt_q: float


@dataclass(frozen=True)
class FilterStats:
    q: int
    epsilon: float
    v_size: int
    seed: int
    samples: tuple[FilterSample, ...]
    max_ratio_to_sqrt_q: float


def sample_charsum_report(field, nu, num_samples, size_grid, seed) -> CharSumReport:
    """Draw num_samples random (U, V) pairs per grid entry and record
    exact sums against the bound at implied constant 1."""
    if nu < 1:
        raise DomainError(f"nu must be >= 1, got {nu}")
    if num_samples < 1:
        raise DomainError(f"num_samples must be >= 1, got {num_samples}")
    grid = list(size_grid)
    if not grid:
        raise DomainError("size grid must be nonempty")
    for su, sv in grid:
        if not (1 <= su <= field.q and 1 <= sv <= field.q):
            raise DomainError(f"grid entry ({su}, {sv}) outside [1, {field.q}]")
    samples = []
    for gi, (su, sv) in enumerate(grid):
        for rep in range(num_samples):
            index = gi * num_samples + rep
            rng = SplitMix64(seed + index)
            u_set = ElementSet.from_indices(field.q, sample_indices(field.q, su, rng))
            v_set = ElementSet.from_indices(field.q, sample_indices(field.q, sv, rng))
            lhs = double_char_sum(field, u_set, v_set)
            rhs = karatsuba_rhs(field.q, su, sv, nu)
            samples.append(CharSample(index, su, sv, lhs, rhs, abs(lhs) / rhs))
    max_ratio = max(s.ratio for s in samples)
    return CharSumReport(field.q, nu, seed, tuple(samples), max_ratio)


def v_size_for(q: int, epsilon: float) -> int:
    """floor(q^(epsilon/2)); the tiny nudge guards float error at exact powers."""
    return int(q ** (epsilon / 2.0) + 1e-9)


def sample_filter_stats(field, epsilon, num_samples, seed) -> FilterStats:
    """Filter-set sizes for num_samples random V of size floor(q^(epsilon/2))."""
    if not 0.0 < epsilon <= 1.0:
        raise DomainError(f"epsilon must be in (0, 1], got {epsilon}")
    if num_samples < 1:
        raise DomainError(f"num_samples must be >= 1, got {num_samples}")
    v_size = v_size_for(field.q, epsilon)
    if v_size < 1:
        raise DomainError(f"v size floor(q^(eps/2)) must be >= 1, got {v_size}")
    sqrt_q = math.sqrt(field.q)
    samples = []
    for index in range(num_samples):
        rng = SplitMix64(seed + index)
        v = sorted(sample_indices(field.q, v_size, rng))
        size_u = len(filter_set(field, ElementSet.from_indices(field.q, v)))
        samples.append(FilterSample(index, tuple(v), size_u, size_u / sqrt_q))
    max_ratio = max(s.ratio_sqrt_q for s in samples)
    return FilterStats(field.q, epsilon, v_size, seed, tuple(samples), max_ratio)


# ---------------------------------------------------------------------------
# CSV emission, one row per sample, headers fixed.
# ---------------------------------------------------------------------------

CHARSUM_CSV_HEADER = ["q", "nu", "size_u", "size_v", "lhs", "rhs", "ratio"]
FILTER_CSV_HEADER = ["q", "epsilon", "v_size", "sample", "size_u", "ratio_sqrt_q"]


def write_charsum_csv(report: CharSumReport, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CHARSUM_CSV_HEADER)
        for s in report.samples:
            writer.writerow([report.q, report.nu, s.size_u, s.size_v, s.lhs, repr(s.rhs), repr(s.ratio)])


def write_filter_csv(stats: FilterStats, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(FILTER_CSV_HEADER)
        for s in stats.samples:
            writer.writerow([stats.q, repr(stats.epsilon), stats.v_size, s.sample, s.size_u, repr(s.ratio_sqrt_q)])


def read_csv_rows(path) -> list[dict]:
    with open(path, "r", newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))
