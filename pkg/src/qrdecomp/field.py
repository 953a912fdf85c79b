"""Finite fields of odd characteristic with canonically indexed elements.

Elements of F_q (q = p^n, p an odd prime) are identified with integers in
[0, q): the element whose coefficient vector over F_p is (c_0, ..., c_{n-1})
gets index sum(c_i * p**i), little-endian.  For prime fields the index is
the residue itself; in every field index 0 is the additive identity and
index 1 the multiplicative identity.

Extension fields are built modulo the lexicographically least monic
irreducible polynomial of degree n over F_p, comparing coefficient vectors
low-degree-first, so the same (p, n) always yields the same field on every
machine.

Construction precomputes the quadratic character table chi (chi[0] = 0,
chi[x] = +1 exactly on the (q-1)/2 nonzero squares, -1 elsewhere) and the
residue set as a bit mask.  Translation masks {r - a : r in Q} are cached
per field for sizes up to TRANSLATE_CACHE_LIMIT; everything is fixed after
construction, so instances can be shared freely across worker processes.

Set QRDECOMP_CACHE_DIR to persist the residue mask between runs, keyed by
(p, n, modulus, tool version).
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from itertools import product

from ._version import TOOL_VERSION
from .errors import (
    DomainError,
    FieldTooLargeError,
    IndexOutOfRangeError,
    NotOddPrimeError,
)
from .sets import ElementSet

MAX_FIELD_SIZE = 1 << 20
TRANSLATE_CACHE_LIMIT = 1 << 13


def is_odd_prime(m: int) -> bool:
    """Deterministic trial division; ample at the supported field sizes."""
    if m < 3 or m % 2 == 0:
        return False
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# Polynomial helpers over F_p.  Coefficient lists, low degree first, trimmed.
# ---------------------------------------------------------------------------

def _trim(cs):
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _pmod(a, mod, p):
    # mod is monic
    a = list(a)
    dm = len(mod) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1]
        if c:
            shift = len(a) - 1 - dm
            for k in range(dm):
                a[shift + k] = (a[shift + k] - c * mod[k]) % p
        a.pop()
    return _trim(a)


def _pmulmod(a, b, mod, p):
    return _pmod(_pmul(a, b, p), mod, p)


def _ppowmod(base, e, mod, p):
    result = [1]
    acc = _pmod(list(base), mod, p)
    while e:
        if e & 1:
            result = _pmulmod(result, acc, mod, p)
        acc = _pmulmod(acc, acc, mod, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv_lead = pow(b[-1], p - 2, p)
        bm = [(c * inv_lead) % p for c in b]  # monic divisor
        a = _pmod(a, bm, p)
        a, b = b, a
    return a


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_irreducible(f, p):
    """f monic of degree >= 1 over F_p.

    Degrees 2 and 3 reduce to a root check; higher degrees use the
    Frobenius-power gcd test: x^(p^n) = x mod f and gcd(x^(p^(n/r)) - x, f)
    constant for every prime r dividing n.
    """
    n = len(f) - 1
    if n == 1:
        return True
    if n <= 3:
        return all(
            sum(c * pow(x, k, p) for k, c in enumerate(f)) % p != 0
            for x in range(p)
        )
    x = [0, 1]
    if _trim(list(_ppowmod(x, p**n, f, p))) != [0, 1]:
        return False
    for r in _prime_factors(n):
        g = list(_ppowmod(x, p ** (n // r), f, p))
        while len(g) < 2:
            g.append(0)
        g[1] = (g[1] - 1) % p
        if len(_pgcd(g, f, p)) > 1:
            return False
    return True


def least_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree n over F_p.

    Candidates are ordered by their coefficient vectors (c_0, ..., c_{n-1}),
    compared low-degree-first.
    """
    for tail in product(range(p), repeat=n):
        f = list(tail) + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise RuntimeError(
        f"invariant breach: no irreducible of degree {n} over F_{p}"
    )  # impossible: irreducibles exist for every (p, n)


# ---------------------------------------------------------------------------
# The field proper.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    p: int
    n: int
    modulus: tuple[int, ...]


class Field:
    """Arithmetic, character table and translation masks for one F_q.

    Use build_field() instead of constructing directly.
    """

    def __init__(self, p: int, n: int, cache_dir: str | None = None):
        if n < 1:
            raise DomainError(f"extension degree must be >= 1, got {n}")
        if not is_odd_prime(p):
            raise NotOddPrimeError(p)
        q = p**n
        if q > MAX_FIELD_SIZE:
            raise FieldTooLargeError(q, MAX_FIELD_SIZE)
        self.p = p
        self.n = n
        self.q = q
        # degree-1 modulus is a placeholder; prime-field arithmetic ignores it
        self.modulus = (0, 1) if n == 1 else least_irreducible(p, n)
        self.spec = FieldSpec(p, n, self.modulus)
        self.full_mask = (1 << q) - 1

        self.residue_bits = self._residue_mask(cache_dir)
        if self.residue_bits.bit_count() != (q - 1) // 2 or self.residue_bits & 1:
            raise RuntimeError("invariant breach: residue mask has wrong shape")
        self.nonresidue_bits = self.full_mask & ~self.residue_bits & ~1
        self.chi = [0] * q
        for x in range(1, q):
            self.chi[x] = 1 if (self.residue_bits >> x) & 1 else -1

        cache_masks = q <= TRANSLATE_CACHE_LIMIT
        self._res_minus: dict[int, int] | None = {} if cache_masks else None
        self._nonres_minus: dict[int, int] | None = {} if cache_masks else None

    # -- element arithmetic on indices --------------------------------------

    def coeffs(self, i: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.n):
            i, c = divmod(i, p)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, cs) -> int:
        idx = 0
        for c in reversed(tuple(cs)):
            idx = idx * self.p + c % self.p
        return idx

    def add(self, i: int, j: int) -> int:
        if self.n == 1:
            return (i + j) % self.p
        a, b = self.coeffs(i), self.coeffs(j)
        return self.from_coeffs((x + y) % self.p for x, y in zip(a, b))

    def sub(self, i: int, j: int) -> int:
        if self.n == 1:
            return (i - j) % self.p
        a, b = self.coeffs(i), self.coeffs(j)
        return self.from_coeffs((x - y) % self.p for x, y in zip(a, b))

    def neg(self, i: int) -> int:
        if self.n == 1:
            return (-i) % self.p
        return self.from_coeffs((-c) % self.p for c in self.coeffs(i))

    def mul(self, i: int, j: int) -> int:
        if self.n == 1:
            return (i * j) % self.p
        prod = _pmul(list(self.coeffs(i)), list(self.coeffs(j)), self.p)
        return self.from_coeffs(_pmod(prod, list(self.modulus), self.p) + [0] * self.n)

    def pow(self, i: int, e: int) -> int:
        if self.n == 1:
            return pow(i, e, self.p)
        result, acc = 1, i
        while e:
            if e & 1:
                result = self.mul(result, acc)
            acc = self.mul(acc, acc)
            e >>= 1
        return result

    def inv(self, i: int) -> int:
        if i == 0:
            raise ZeroDivisionError("no inverse of the zero element")
        if self.n == 1:
            return pow(i, self.p - 2, self.p)
        return self.pow(i, self.q - 2)

    # -- masks ---------------------------------------------------------------

    def translate(self, bits: int, t: int) -> int:
        """Mask of {x + t : x in bits}.

        Prime fields rotate the bit vector; extension fields map each set
        bit through index addition.
        """
        if bits == 0:
            return 0
        if self.n == 1:
            t %= self.p
            if t == 0:
                return bits
            return ((bits << t) | (bits >> (self.p - t))) & self.full_mask
        if t == 0:
            return bits
        out = 0
        b = bits
        while b:
            lsb = b & -b
            b ^= lsb
            out |= 1 << self.add(lsb.bit_length() - 1, t)
        return out

    def res_minus(self, a: int) -> int:
        """Mask of {r - a : r in Q}."""
        cache = self._res_minus
        if cache is not None:
            hit = cache.get(a)
            if hit is not None:
                return hit
        mask = self.translate(self.residue_bits, self.neg(a))
        if cache is not None:
            cache[a] = mask
        return mask

    def nonres_minus(self, a: int) -> int:
        """Mask of {x - a : x nonzero nonsquare}."""
        cache = self._nonres_minus
        if cache is not None:
            hit = cache.get(a)
            if hit is not None:
                return hit
        mask = self.translate(self.nonresidue_bits, self.neg(a))
        if cache is not None:
            cache[a] = mask
        return mask

    # -- construction internals ----------------------------------------------

    def _residue_mask(self, cache_dir: str | None) -> int:
        if cache_dir is None:
            cache_dir = os.environ.get("QRDECOMP_CACHE_DIR")
        path = None
        if cache_dir:
            key = f"field_p{self.p}_n{self.n}_m{'-'.join(map(str, self.modulus))}_v{TOOL_VERSION}.json"
            path = os.path.join(cache_dir, key)
            mask = self._load_cached_mask(path)
            if mask is not None:
                return mask
        bits = 0
        if self.n == 1:
            p = self.p
            for x in range(1, p):
                bits |= 1 << ((x * x) % p)
        else:
            for x in range(1, self.q):
                bits |= 1 << self.mul(x, x)
        if path is not None:
            self._store_cached_mask(path, bits)
        return bits

    def _load_cached_mask(self, path: str) -> int | None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
            if doc.get("q") != self.q or doc.get("modulus") != list(self.modulus):
                return None
            bits = int(doc["residue_bits"], 16)
        except (OSError, ValueError, KeyError):
            return None
        if bits.bit_count() != (self.q - 1) // 2 or bits & 1 or bits > self.full_mask:
            return None  # stale or corrupt cache entries are ignored
        return bits

    def _store_cached_mask(self, path: str, bits: int) -> None:
        doc = {
            "p": self.p,
            "n": self.n,
            "q": self.q,
            "modulus": list(self.modulus),
            "tool_version": TOOL_VERSION,
            "residue_bits": format(bits, "x"),
        }
        try:
            os.makedirs(os.path.dirname(path), exist_ok=True)
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, sort_keys=True)
        except OSError:
            pass  # cache is best-effort

    def __repr__(self):
        return f"Field(p={self.p}, n={self.n}, q={self.q})"


def build_field(p: int, n: int = 1, cache_dir: str | None = None) -> Field:
    """Construct F_(p^n) for an odd prime p, with p^n <= 2^20."""
    return Field(p, n, cache_dir=cache_dir)


def quadratic_character(field: Field, x: int) -> int:
    """chi(x): 0 at zero, +1 on nonzero squares, -1 on nonsquares."""
    if not 0 <= x < field.q:
        raise IndexOutOfRangeError(x, field.q)
    return field.chi[x]


def quadratic_residues(field: Field) -> ElementSet:
    """The set Q of nonzero squares; always (q-1)/2 elements, never 0."""
    return ElementSet(field.residue_bits, field.q)


def supported_sizes(limit: int) -> list[tuple[int, int, int]]:
    """All (q, p, n) with q = p^n <= limit, p an odd prime, sorted by q."""
    out = []
    for p in range(3, limit + 1, 2):
        if not is_odd_prime(p):
            continue
        q, n = p, 1
        while q <= limit:
            out.append((q, p, n))
            q *= p
            n += 1
    out.sort()
    return out
