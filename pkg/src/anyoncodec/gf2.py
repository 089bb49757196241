"""Exact linear algebra over F2: bit-packed vectors, linear codes, duals,
weight distributions, and the column-independence criterion for the dual
distance.

Vectors are packed into Python ints (bit j of the int is coordinate j), so
all row operations are single XORs and weights are ``int.bit_count`` calls.
Large weight enumerations switch to chunked numpy uint64 scans.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .errors import CapacityError, PreconditionError

DEFAULT_MAX_ENUM_BITS = 28

#: Returned by dual_distance_by_columns when the dual code is {0} and the
#: column criterion is vacuous for every subset size.
UNBOUNDED = "unbounded"

# Enumerations at or below this many basis vectors run as a plain Python
# Gray-code walk; above it they run as chunked numpy scans (length <= 64).
_NUMPY_ENUM_THRESHOLD = 18
_CHUNK_BITS = 20


@dataclass(frozen=True, slots=True)
class BitVector:
    """A vector in F2^length, bit-packed into an int (bit j = coordinate j)."""

    length: int
    bits: int

    def __post_init__(self):
        if self.length < 1:
            raise PreconditionError(f"vector length must be >= 1, got {self.length}")
        if not 0 <= self.bits < (1 << self.length):
            raise PreconditionError(f"bits out of range for length {self.length}")

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        if not text or any(c not in "01" for c in text):
            raise PreconditionError(f"not a 0/1 string: {text!r}")
        return cls(len(text), int(text[::-1], 2))

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length, 0)

    @classmethod
    def ones(cls, length: int) -> "BitVector":
        return cls(length, (1 << length) - 1)

    @classmethod
    def unit(cls, length: int, index: int) -> "BitVector":
        if not 0 <= index < length:
            raise PreconditionError(f"coordinate {index} out of range")
        return cls(length, 1 << index)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    @property
    def parity(self) -> int:
        return self.bits.bit_count() & 1

    @property
    def is_zero(self) -> bool:
        return self.bits == 0

    def dot(self, other: "BitVector") -> int:
        self._check_length(other)
        return (self.bits & other.bits).bit_count() & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        self._check_length(other)
        return BitVector(self.length, self.bits ^ other.bits)

    def __getitem__(self, index: int) -> int:
        if not 0 <= index < self.length:
            raise IndexError(index)
        return (self.bits >> index) & 1

    def support(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.length) if (self.bits >> j) & 1)

    def concat(self, other: "BitVector") -> "BitVector":
        return BitVector(self.length + other.length, self.bits | (other.bits << self.length))

    def append(self, bit: int) -> "BitVector":
        return BitVector(self.length + 1, self.bits | ((bit & 1) << self.length))

    def delete(self, index: int) -> "BitVector":
        """Remove one coordinate (used by code puncturing)."""
        if self.length < 2:
            raise PreconditionError("cannot delete the only coordinate")
        if not 0 <= index < self.length:
            raise PreconditionError(f"coordinate {index} out of range")
        low = self.bits & ((1 << index) - 1)
        high = self.bits >> (index + 1)
        return BitVector(self.length - 1, low | (high << index))

    def _check_length(self, other: "BitVector") -> None:
        if self.length != other.length:
            raise PreconditionError(
                f"length mismatch: {self.length} vs {other.length}"
            )

    def __str__(self) -> str:
        return "".join("1" if (self.bits >> j) & 1 else "0" for j in range(self.length))

    def __repr__(self) -> str:
        return f"BitVector({self})"


def _rref(rows: Sequence[int]) -> tuple[list[int], list[int]]:
    """Reduced row-echelon form of int-packed rows.

    Returns (basis, pivots) with basis sorted by pivot column (lowest
    coordinate first) and every pivot column cleared in all other rows.
    """
    basis: list[int] = []
    pivots: list[int] = []
    for row in rows:
        for b, p in zip(basis, pivots):
            if (row >> p) & 1:
                row ^= b
        if row == 0:
            continue
        p = (row & -row).bit_length() - 1
        basis = [b ^ row if (b >> p) & 1 else b for b in basis]
        at = bisect.bisect_left(pivots, p)
        pivots.insert(at, p)
        basis.insert(at, row)
    return basis, pivots


class BinaryCode:
    """A linear code over F2, canonicalized to a reduced row-echelon basis.

    The generator list is kept as given; ``basis`` is its RREF with pivot
    columns leftmost, which makes equality of codes a tuple comparison.
    """

    __slots__ = ("length", "generators", "basis", "pivots", "dimension")

    def __init__(self, length: int, generators: Sequence[BitVector] = ()):
        if length < 1:
            raise PreconditionError(f"code length must be >= 1, got {length}")
        gens = tuple(generators)
        for g in gens:
            if g.length != length:
                raise PreconditionError(
                    f"generator length {g.length} does not match code length {length}"
                )
        rows, pivots = _rref([g.bits for g in gens])
        self.length = length
        self.generators = gens
        self.basis = tuple(BitVector(length, r) for r in rows)
        self.pivots = tuple(pivots)
        self.dimension = len(rows)

    def contains(self, vector: BitVector) -> bool:
        if vector.length != self.length:
            raise PreconditionError(
                f"vector length {vector.length} does not match code length {self.length}"
            )
        return self._reduce_bits(vector.bits) == 0

    def _reduce_bits(self, bits: int) -> int:
        for b, p in zip(self.basis, self.pivots):
            if (bits >> p) & 1:
                bits ^= b.bits
        return bits

    def codewords(self) -> Iterator[BitVector]:
        """All 2^k codewords in Gray-code order (starts at zero)."""
        for bits in self._codeword_bits():
            yield BitVector(self.length, bits)

    def _codeword_bits(self) -> Iterator[int]:
        rows = [b.bits for b in self.basis]
        cur = 0
        yield cur
        for i in range(1, 1 << len(rows)):
            cur ^= rows[(i & -i).bit_length() - 1]
            yield cur

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BinaryCode)
            and self.length == other.length
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.length, self.basis))

    def __repr__(self) -> str:
        return f"BinaryCode(n={self.length}, k={self.dimension})"


@dataclass(frozen=True)
class WeightProfile:
    """Weight distribution of a code: counts[w] = number of weight-w words.

    ``min_nonzero_weight`` is the code's minimum distance, or None for the
    zero code.
    """

    counts: dict[int, int]
    min_nonzero_weight: int | None


def make_code(length: int, generators: Sequence[BitVector]) -> BinaryCode:
    """Build a code from (possibly dependent) generators; basis is their RREF."""
    return BinaryCode(length, generators)


def dual(code: BinaryCode) -> BinaryCode:
    """The dual code {x : x.c = 0 for all c in code}; dim = n - k."""
    n = code.length
    pivot_set = set(code.pivots)
    rows = []
    for j in range(n):
        if j in pivot_set:
            continue
        v = 1 << j
        for b, p in zip(code.basis, code.pivots):
            if (b.bits >> j) & 1:
                v |= 1 << p
        rows.append(BitVector(n, v))
    return BinaryCode(n, rows)


def _popcounts(words: np.ndarray) -> np.ndarray:
    return np.bitwise_count(words)


def _span_blocks(rows: Sequence[int], chunk_bits: int = _CHUNK_BITS) -> Iterator[tuple[int, np.ndarray]]:
    """Enumerate the span of `rows` (ints, < 2^64) as numpy uint64 blocks.

    Yields (selector, block): `selector` packs the combination bits for
    rows[chunk_bits:], and block[i] is the word using combination bits `i`
    over rows[:chunk_bits].  Together they cover all 2^len(rows) words once.
    """
    low = rows[:chunk_bits]
    high = rows[chunk_bits:]
    block = np.zeros(1, dtype=np.uint64)
    for b in low:
        block = np.concatenate([block, block ^ np.uint64(b)])
    for sel in range(1 << len(high)):
        base = 0
        s = sel
        i = 0
        while s:
            if s & 1:
                base ^= high[i]
            s >>= 1
            i += 1
        yield sel, block ^ np.uint64(base)


def min_distance(code: BinaryCode, max_enum_bits: int = DEFAULT_MAX_ENUM_BITS) -> WeightProfile:
    """Exhaustive weight distribution over all 2^k codewords.

    Raises CapacityError when k exceeds `max_enum_bits`.
    """
    k = code.dimension
    if k > max_enum_bits:
        raise CapacityError(
            f"enumeration of 2^{k} codewords exceeds the cap of 2^{max_enum_bits}"
        )
    n = code.length
    if k == 0:
        return WeightProfile({0: 1}, None)
    if k > _NUMPY_ENUM_THRESHOLD and n <= 64:
        counts = np.zeros(n + 1, dtype=np.int64)
        for _, block in _span_blocks([b.bits for b in code.basis]):
            counts += np.bincount(_popcounts(block), minlength=n + 1)
        count_map = {w: int(c) for w, c in enumerate(counts) if c}
    else:
        raw = [0] * (n + 1)
        for bits in code._codeword_bits():
            raw[bits.bit_count()] += 1
        count_map = {w: c for w, c in enumerate(raw) if c}
    nonzero = [w for w in count_map if w > 0]
    return WeightProfile(count_map, min(nonzero))


def _columns(code: BinaryCode) -> list[int]:
    """Columns of the basis matrix, packed as k-bit ints (bit i = row i)."""
    cols = []
    for j in range(code.length):
        c = 0
        for i, b in enumerate(code.basis):
            if (b.bits >> j) & 1:
                c |= 1 << i
        cols.append(c)
    return cols


def _dependent(vectors: list[int]) -> bool:
    basis: dict[int, int] = {}  # highest set bit -> reduced vector
    for v in vectors:
        while v:
            hb = v.bit_length() - 1
            if hb not in basis:
                basis[hb] = v
                break
            v ^= basis[hb]
        else:
            return True
    return False


def dual_distance_by_columns(code: BinaryCode) -> int | str:
    """Dual distance via the column-independence criterion.

    Returns the smallest t for which some t columns of the generator matrix
    are linearly dependent (equivalently: the largest L with every L-1
    columns independent).  Returns UNBOUNDED when no dependent subset exists,
    i.e. when the dual code is {0}.
    """
    n = code.length
    cols = _columns(code)
    if code.dimension == 0:
        # every column is the empty vector, dependent on its own
        return 1
    for t in range(1, n + 1):
        for subset in combinations(range(n), t):
            if _dependent([cols[j] for j in subset]):
                return t
    return UNBOUNDED


def hamming_dual(s: int) -> BinaryCode:
    """The [2^s - 1, s] simplex code: columns are all nonzero s-bit values.

    Column j carries the binary digits of j+1 (ascending order), so the
    result is deterministic; every nonzero codeword has weight 2^(s-1).
    """
    if s < 2:
        raise PreconditionError(f"s must be >= 2, got {s}")
    n = (1 << s) - 1
    rows = []
    for i in range(s):
        bits = 0
        for j in range(n):
            if ((j + 1) >> i) & 1:
                bits |= 1 << j
        rows.append(BitVector(n, bits))
    return BinaryCode(n, rows)
