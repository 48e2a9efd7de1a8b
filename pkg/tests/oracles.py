"""Deliberately naive reference implementations.

Everything here works point-by-point on explicit mask sets with per-point
subset tests — no word-parallel tricks, no shared code with the library —
so agreement is meaningful.  Families cross the boundary as plain sets of
point masks.
"""

from fractions import Fraction

import numpy as np


def fam_to_set(fam) -> set[int]:
    return set(fam)


def is_superset_point(big: int, small: int) -> bool:
    return big & small == small


def naive_up_closure(n: int, pts: set[int]) -> set[int]:
    return {x for x in range(1 << n) if any(is_superset_point(x, m) for m in pts)}


def naive_is_upward_closed(n: int, pts: set[int]) -> bool:
    return all(
        x | 1 << j in pts for x in pts for j in range(n) if not x >> j & 1
    )


def naive_minimal(pts: set[int]) -> set[int]:
    return {
        m
        for m in pts
        if not any(o != m and is_superset_point(m, o) for o in pts)
    }


def naive_addable(n: int, pts: set[int]) -> set[int]:
    """Non-members whose insertion keeps the family upward closed."""
    return {
        x
        for x in range(1 << n)
        if x not in pts and naive_is_upward_closed(n, pts | {x})
    }


def naive_measure(n: int, pts: set[int], p: Fraction) -> Fraction:
    q = 1 - p
    return sum(
        (p ** m.bit_count() * q ** (n - m.bit_count()) for m in pts), Fraction(0)
    )


def naive_occupancy_counts(n: int, xs: set[int], ys: set[int], zs: set[int]):
    counts = [0, 0, 0, 0]
    for m in range(1 << n):
        counts[(m in xs) + (m in ys) + (m in zs)] += 1
    return tuple(counts)


def naive_pull_back(s_pts: set[int], m: int, i_pts: set[int], b: int) -> set[int]:
    out = set()
    block = (1 << b) - 1
    for x in range(1 << (b * m)):
        y = 0
        for j in range(m):
            if (x >> (j * b)) & block in i_pts:
                y |= 1 << j
        if y in s_pts:
            out.add(x)
    return out


def naive_q(n: int, l: int, p: Fraction) -> Fraction:
    """Exactly-one density of the two-dictators-plus-patched-threshold triple,
    by brute-force occupancy over all 2^n points."""
    xs = {m for m in range(1 << n) if m & 1}
    ys = {m for m in range(1 << n) if m & 2}
    zs = {
        m
        for m in range(1 << n)
        if m.bit_count() > l or (m.bit_count() == l and not m & 3)
    }
    q = 1 - p
    total = Fraction(0)
    for m in range(1 << n):
        if (m in xs) + (m in ys) + (m in zs) == 1:
            total += p ** m.bit_count() * q ** (n - m.bit_count())
    return total


def popcount_numpy(x: int) -> int:
    """Foreign popcount: bytes -> numpy unpackbits -> sum."""
    if x == 0:
        return 0
    raw = np.frombuffer(x.to_bytes((x.bit_length() + 7) // 8, "little"), dtype=np.uint8)
    return int(np.unpackbits(raw).sum())
