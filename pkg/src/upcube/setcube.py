"""Dense bit-vector engine for set systems on the subset cube Q_n.

A family over Q_n (all subsets of {1..n}) is one Python int of 2^n
membership bits: bit m is set iff the subset with characteristic mask m
belongs to the family.  Element i of the ground set is mask bit i-1, so
adding element i to a subset moves its membership bit up by 2^(i-1).
This makes every structural operation (closure, minimality, boolean
algebra) a handful of word-parallel shift/and/or passes instead of a
per-point scan.

Measures and biases are `fractions.Fraction` values throughout; floats
never enter any computation here.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import DimensionMismatch, InvalidBias, InvalidParams, NotUpwardClosed, OutOfRange

N_MAX = 24

PointMask = int


@lru_cache(maxsize=None)
def full_mask(n: int) -> int:
    """Membership vector of the family containing every subset of [n]."""
    return (1 << (1 << n)) - 1


@lru_cache(maxsize=None)
def absent_masks(n: int) -> tuple[int, ...]:
    """absent_masks(n)[i] marks the points whose mask has bit i clear.

    Each mask is the 2^n-bit pattern 0^(2^i) 1^(2^i) repeated, built by
    doubling so construction is O(n) big-int operations.
    """
    size = 1 << n
    out = []
    for i in range(n):
        pattern = (1 << (1 << i)) - 1
        span = 1 << (i + 1)
        while span < size:
            pattern |= pattern << span
            span <<= 1
        out.append(pattern)
    return tuple(out)


@lru_cache(maxsize=None)
def level_masks(n: int) -> tuple[int, ...]:
    """level_masks(n)[k] marks the points whose mask has exactly k set bits."""
    if n == 0:
        return (1,)
    prev = level_masks(n - 1)
    shift = 1 << (n - 1)
    out = [prev[0]]
    for k in range(1, n):
        out.append(prev[k] | (prev[k - 1] << shift))
    out.append(prev[n - 1] << shift)
    return tuple(out)


def check_bias(p: Fraction | int | str) -> Fraction:
    """Validate and normalize a bias to a Fraction in [0, 1]."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise InvalidBias(f"bias {p} outside [0, 1]")
    return p


def mask_from_elements(elements: Iterable[int], n: int) -> PointMask:
    """Bitmask of a subset given by its elements (1-based, within [n])."""
    mask = 0
    for e in elements:
        if not 1 <= e <= n:
            raise OutOfRange(f"element {e} outside 1..{n}")
        mask |= 1 << (e - 1)
    return mask


def elements_from_mask(mask: PointMask) -> tuple[int, ...]:
    """Ascending 1-based elements of the subset encoded by a bitmask."""
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of an int, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def select_bit(mask: int, idx: int) -> int:
    """Position of the idx-th (ascending, 0-based) set bit of mask."""
    base = 0
    for byte in mask.to_bytes((mask.bit_length() + 7) // 8, "little"):
        c = byte.bit_count()
        if idx < c:
            b = byte
            while True:
                low = b & -b
                if idx == 0:
                    return base + low.bit_length() - 1
                idx -= 1
                b ^= low
        idx -= c
        base += 8
    raise OutOfRange(f"bit index {idx} beyond population of mask")


def parallel_bit_count(value: int, workers: int = 1) -> int:
    """Population count, optionally split across a thread pool.

    The byte-range split is deterministic, so the result is identical
    for every worker count.
    """
    if workers <= 1 or value.bit_length() < (1 << 16):
        return value.bit_count()
    data = value.to_bytes((value.bit_length() + 7) // 8, "little")
    chunk = -(-len(data) // workers)
    pieces = [data[i : i + chunk] for i in range(0, len(data), chunk)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(lambda piece: int.from_bytes(piece, "little").bit_count(), pieces))


@dataclass(frozen=True)
class Family:
    """A set system over Q_n stored as a 2^n-bit membership vector."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        if not 0 <= self.n <= N_MAX:
            raise OutOfRange(f"dimension {self.n} outside 0..{N_MAX}")
        if not 0 <= self.bits <= full_mask(self.n):
            raise OutOfRange(f"membership vector does not fit in Q_{self.n}")

    @property
    def count(self) -> int:
        cached = self.__dict__.get("_count")
        if cached is None:
            cached = self.bits.bit_count()
            self.__dict__["_count"] = cached
        return cached

    def __contains__(self, point: PointMask) -> bool:
        return 0 <= point < (1 << self.n) and bool(self.bits >> point & 1)

    def __len__(self) -> int:
        return self.count

    def __iter__(self) -> Iterator[PointMask]:
        return iter_bits(self.bits)

    def _check_dim(self, other: "Family") -> None:
        if self.n != other.n:
            raise DimensionMismatch(f"Q_{self.n} vs Q_{other.n}")

    def __or__(self, other: "Family") -> "Family":
        self._check_dim(other)
        return Family(self.n, self.bits | other.bits)

    def __and__(self, other: "Family") -> "Family":
        self._check_dim(other)
        return Family(self.n, self.bits & other.bits)

    def __xor__(self, other: "Family") -> "Family":
        self._check_dim(other)
        return Family(self.n, self.bits ^ other.bits)

    def __sub__(self, other: "Family") -> "Family":
        self._check_dim(other)
        return Family(self.n, self.bits & ~other.bits)

    def __invert__(self) -> "Family":
        return Family(self.n, full_mask(self.n) ^ self.bits)


def empty_family(n: int) -> Family:
    return Family(n, 0)


def full_family(n: int) -> Family:
    return Family(n, full_mask(n))


def family_from_points(n: int, points: Iterable[PointMask]) -> Family:
    """Family containing exactly the given point masks (no closure taken)."""
    bits = 0
    for p in points:
        if not 0 <= p < (1 << n):
            raise OutOfRange(f"point mask {p} outside Q_{n}")
        bits |= 1 << p
    return Family(n, bits)


def up_closure(fam: Family) -> Family:
    """Smallest upward closed family containing fam.

    One OR-with-shifted-self pass per coordinate: after coordinate i,
    membership is closed under adding element i+1, and closure under all
    n coordinates is closure under taking arbitrary supersets.
    """
    bits = fam.bits
    for i, absent in enumerate(absent_masks(fam.n)):
        bits |= (bits & absent) << (1 << i)
    return Family(fam.n, bits)


def is_upward_closed(fam: Family) -> bool:
    """True iff every one-element superset of a member is a member."""
    bits = fam.bits
    for i, absent in enumerate(absent_masks(fam.n)):
        if ((bits & absent) << (1 << i)) & ~bits:
            return False
    return True


def minimal_mask(fam: Family) -> int:
    """Bit vector of members having no member one element below them.

    For an upward closed family these are exactly its inclusion-minimal
    members, the antichain generating it.
    """
    bits = fam.bits
    out = bits
    for i, absent in enumerate(absent_masks(fam.n)):
        out &= ~((bits & absent) << (1 << i))
    return out


def addable_mask(fam: Family) -> int:
    """Bit vector of non-members whose insertion keeps the family upward closed.

    For upward closed fam these are the points all of whose one-element
    supersets are already members.
    """
    bits = fam.bits
    out = full_mask(fam.n) & ~bits
    for i, absent in enumerate(absent_masks(fam.n)):
        out &= ~absent | ((bits >> (1 << i)) & absent)
    return out


def minimal_elements(fam: Family) -> list[PointMask]:
    """Generating antichain of an upward closed family, sorted by (size, mask)."""
    if not is_upward_closed(fam):
        raise NotUpwardClosed("minimal_elements requires an upward closed family")
    return sorted(iter_bits(minimal_mask(fam)), key=lambda m: (m.bit_count(), m))


def combine(op: str, a: Family, b: Family | None = None) -> Family:
    """Boolean algebra on families: union | intersect | difference | complement."""
    if op == "complement":
        if b is not None:
            raise InvalidParams("complement takes a single family")
        return ~a
    if b is None:
        raise InvalidParams(f"{op} needs two families")
    if op == "union":
        return a | b
    if op == "intersect":
        return a & b
    if op == "difference":
        return a - b
    raise InvalidParams(f"unknown operation {op!r}")


def level_counts(fam: Family) -> tuple[int, ...]:
    """Number of members of each cardinality 0..n."""
    return tuple((fam.bits & lm).bit_count() for lm in level_masks(fam.n))


def measure(fam: Family, p: Fraction | int | str) -> Fraction:
    """Exact product-measure of the family: sum of p^|A| (1-p)^(n-|A|)."""
    p = check_bias(p)
    q = 1 - p
    total = Fraction(0)
    for k, c in enumerate(level_counts(fam)):
        if c:
            total += c * p**k * q ** (fam.n - k)
    return total


@dataclass(frozen=True)
class OccupancyProfile:
    """Exact counts and biased densities of the classes of points lying in
    exactly 0, 1, 2, 3 of a triple of families."""

    counts: tuple[int, int, int, int]
    densities: tuple[Fraction, Fraction, Fraction, Fraction]
    bias: Fraction

    @property
    def s1(self) -> Fraction:
        return self.densities[1]


def occupancy_class_bits(x: Family, y: Family, z: Family) -> tuple[int, int, int, int]:
    """Membership vectors of the exactly-0/1/2/3 occupancy classes."""
    x._check_dim(y)
    x._check_dim(z)
    a, b, c = x.bits, y.bits, z.bits
    any_two = (a & b) | (a & c) | (b & c)
    all_three = a & b & c
    exactly0 = full_mask(x.n) & ~(a | b | c)
    exactly1 = (a | b | c) & ~any_two
    exactly2 = any_two & ~all_three
    return exactly0, exactly1, exactly2, all_three


def occupancy(
    x: Family,
    y: Family,
    z: Family,
    p: Fraction | int | str = Fraction(1, 2),
    workers: int = 1,
) -> OccupancyProfile:
    """Occupancy profile of a triple: how much of Q_n lies in exactly i of them."""
    p = check_bias(p)
    classes = occupancy_class_bits(x, y, z)
    counts = tuple(parallel_bit_count(bits, workers) for bits in classes)
    densities = tuple(measure(Family(x.n, bits), p) for bits in classes)
    assert sum(densities) == 1 and sum(counts) == 1 << x.n
    return OccupancyProfile(counts, densities, p)


def hk_defect(u: Family, v: Family, p: Fraction | int | str) -> Fraction:
    """Correlation surplus of the pair: measure(U and V) - measure(U)*measure(V).

    Nonnegative whenever both families are upward closed; may be negative
    otherwise.
    """
    u._check_dim(v)
    p = check_bias(p)
    return measure(u & v, p) - measure(u, p) * measure(v, p)


def two_set_exactly_one(x: Family, y: Family, p: Fraction | int | str) -> Fraction:
    """Exact measure of the symmetric difference of two families."""
    return measure(x ^ y, check_bias(p))


def random_upset(n: int, rng: random.Random, points: int | None = None) -> Family:
    """Upward closure of `points` uniform random point masks (seeded).

    With points=None the generator count is drawn uniformly from
    1..2^(n-1), spanning sparse to dense upsets.
    """
    if points is None:
        points = rng.randint(1, max(1, 1 << max(n - 1, 0)))
    pts = [rng.randrange(1 << n) for _ in range(points)]
    return up_closure(family_from_points(n, pts))
