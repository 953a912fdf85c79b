"""Subsets of a finite field as fixed-width bit vectors.

A set over F_q is a q-bit mask: bit i is set iff element index i is a
member.  Values are immutable once constructed; every operation allocates
a fresh result, so sets can be shared across workers without locking.

The text form used in files and on the command line is the comma-separated
list of member indices in increasing order, e.g. "1,2,4" (empty string for
the empty set).
"""

from __future__ import annotations

from .errors import EmptySetError, FieldMismatchError, IndexOutOfRangeError


class ElementSet:
    __slots__ = ("bits", "q")

    def __init__(self, bits: int, q: int):
        if bits < 0 or bits >> q:
            raise IndexOutOfRangeError(bits.bit_length() - 1, q)
        self.bits = bits
        self.q = q

    @classmethod
    def from_indices(cls, q: int, indices) -> "ElementSet":
        bits = 0
        for i in indices:
            if not 0 <= i < q:
                raise IndexOutOfRangeError(i, q)
            bits |= 1 << i
        return cls(bits, q)

    @classmethod
    def from_literal(cls, q: int, text: str) -> "ElementSet":
        """Parse "1,2,4".  Duplicate entries are rejected as malformed."""
        text = text.strip()
        if not text:
            return cls(0, q)
        parts = [int(tok) for tok in text.split(",")]
        if len(set(parts)) != len(parts):
            raise ValueError(f"duplicate element in set literal: {text!r}")
        return cls.from_indices(q, parts)

    def to_literal(self) -> str:
        return ",".join(str(i) for i in self)

    def indices(self) -> tuple[int, ...]:
        return tuple(self)

    def __len__(self):
        return self.bits.bit_count()

    def __contains__(self, i):
        return 0 <= i < self.q and (self.bits >> i) & 1 == 1

    def __iter__(self):
        b = self.bits
        while b:
            lsb = b & -b
            b ^= lsb
            yield lsb.bit_length() - 1

    def __eq__(self, other):
        return (
            isinstance(other, ElementSet)
            and self.q == other.q
            and self.bits == other.bits
        )

    def __hash__(self):
        return hash((self.bits, self.q))

    def __repr__(self):
        return f"ElementSet(q={self.q}, {{{self.to_literal()}}})"


def _check_same_field(field, *sets):
    for s in sets:
        if s.q != field.q:
            raise FieldMismatchError(field.q, s.q)


def sumset_bits(field, bits_a: int, bits_b: int) -> int:
    """Bit-level {a + b} for two masks; iterates the smaller operand."""
    if bits_a == 0 or bits_b == 0:
        return 0
    if bits_a.bit_count() > bits_b.bit_count():
        bits_a, bits_b = bits_b, bits_a
    out = 0
    b = bits_a
    while b:
        lsb = b & -b
        b ^= lsb
        out |= field.translate(bits_b, lsb.bit_length() - 1)
    return out


def sumset(field, a: ElementSet, b: ElementSet) -> ElementSet:
    """{x + y : x in a, y in b}; empty whenever either operand is empty."""
    _check_same_field(field, a, b)
    return ElementSet(sumset_bits(field, a.bits, b.bits), field.q)


def is_decomposition(field, a: ElementSet, b: ElementSet) -> bool:
    """True iff both sets have at least 2 elements and a + b equals Q exactly."""
    _check_same_field(field, a, b)
    if len(a) < 2 or len(b) < 2:
        return False
    return sumset_bits(field, a.bits, b.bits) == field.residue_bits


def max_compatible_set(field, a: ElementSet) -> ElementSet:
    """The unique maximal partner of a: the intersection of Q - x over x in a.

    Every set b with a + b inside Q is contained in this one, and the
    result itself always satisfies a + result inside Q.
    """
    _check_same_field(field, a)
    if len(a) == 0:
        raise EmptySetError("maximal compatible partner of the empty set is all of F_q")
    acc = field.full_mask
    for x in a:
        acc &= field.res_minus(x)
        if acc == 0:
            break
    return ElementSet(acc, field.q)
