"""Finite weighted posets: upset enumeration, correlation scans, occupancy.

Elements are labeled; the strict order is stored transitively closed as
index pairs.  Upsets are bitmasks over element indices, so the same
bit-twiddling style as the cube module applies at miniature scale.
Weights are exact rationals summing to 1 — a probability measure on the
poset's points.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .setcube import check_bias, iter_bits
from .errors import InvalidBias, InvalidParams, NotUpwardClosed, TooLarge

MAX_POSET = 20


@dataclass(frozen=True)
class WeightedPoset:
    """Labeled poset with a rational weight per element.

    `covers` may be any generating set of relations; the constructor
    stores the transitive closure in `less` and rejects cycles.
    """

    elements: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]
    weights: tuple[Fraction, ...]
    less: frozenset[tuple[int, int]] = field(init=False)

    def __post_init__(self) -> None:
        idx = {e: i for i, e in enumerate(self.elements)}
        if len(idx) != len(self.elements):
            raise InvalidParams("duplicate element labels")
        if len(self.weights) != len(self.elements):
            raise InvalidParams("need exactly one weight per element")
        if any(w < 0 for w in self.weights):
            raise InvalidParams("weights must be nonnegative")
        if sum(self.weights) != 1:
            raise InvalidParams("weights must sum to 1 exactly")
        k = len(self.elements)
        below = [0] * k  # below[j] has bit i set iff i < j
        for x, y in self.covers:
            if x not in idx or y not in idx:
                raise InvalidParams(f"cover ({x!r}, {y!r}) names unknown element")
            below[idx[y]] |= 1 << idx[x]
        changed = True
        while changed:
            changed = False
            for j in range(k):
                merged = below[j]
                for i in iter_bits(below[j]):
                    merged |= below[i]
                if merged != below[j]:
                    below[j] = merged
                    changed = True
        pairs = set()
        for j in range(k):
            if below[j] >> j & 1:
                raise InvalidParams(f"order relation has a cycle through {self.elements[j]!r}")
            pairs.update((i, j) for i in iter_bits(below[j]))
        object.__setattr__(self, "less", frozenset(pairs))

    def __len__(self) -> int:
        return len(self.elements)

    def up_bits(self, i: int) -> int:
        """Bitmask of elements strictly above element i."""
        out = 0
        for a, b in self.less:
            if a == i:
                out |= 1 << b
        return out

    def is_upset(self, mask: int) -> bool:
        return all(not (mask >> i & 1) or (mask >> j & 1) for i, j in self.less)

    def weight_of(self, mask: int) -> Fraction:
        return sum((self.weights[i] for i in iter_bits(mask)), Fraction(0))

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in iter_bits(mask))


def enumerate_upsets(poset: WeightedPoset) -> list[int]:
    """All upward closed subsets as bitmasks, sorted by (size, mask).

    Backtracks over a deterministic top-down linear extension; an element
    may be included only when everything above it is already in, so no
    branch ever dead-ends.
    """
    k = len(poset)
    if k > MAX_POSET:
        raise TooLarge(f"poset has {k} elements, limit {MAX_POSET}")
    ups = [poset.up_bits(i) for i in range(k)]
    placed: list[int] = []
    remaining = set(range(k))
    while remaining:
        ready = [i for i in remaining if not (ups[i] & sum(1 << j for j in remaining))]
        nxt = min(ready)
        placed.append(nxt)
        remaining.remove(nxt)

    found: list[int] = []

    def grow(pos: int, mask: int) -> None:
        if pos == k:
            found.append(mask)
            return
        i = placed[pos]
        grow(pos + 1, mask)
        if ups[i] & ~mask == 0:
            grow(pos + 1, mask | 1 << i)

    grow(0, 0)
    return sorted(found, key=lambda m: (m.bit_count(), m))


def diamond_poset(p: Fraction | int | str) -> WeightedPoset:
    """The five-point diamond a < p_1,p_2,p_3 < A with cube-matched weights.

    The weights ((1-p)^2/(1+p), p(1-p)/(1+p) each, 2p^2/(1+p)) make every
    upset's weight a plausible biased-cube density while the three
    two-element upsets {A, p_i} overlap pairwise only in A.
    """
    p = check_bias(p)
    if p == 0 or p == 1:
        raise InvalidBias("diamond poset needs 0 < p < 1")
    d = 1 + p
    w_a = (1 - p) ** 2 / d
    w_p = p * (1 - p) / d
    w_A = 2 * p**2 / d
    return WeightedPoset(
        elements=("a", "p1", "p2", "p3", "A"),
        covers=(("a", "p1"), ("a", "p2"), ("a", "p3"), ("p1", "A"), ("p2", "A"), ("p3", "A")),
        weights=(w_a, w_p, w_p, w_p, w_A),
    )


def poset_hk_defect(poset: WeightedPoset, u: int, v: int) -> Fraction:
    """w(U∩V) − w(U)w(V) for two upsets given as element bitmasks."""
    for m in (u, v):
        if not poset.is_upset(m):
            raise NotUpwardClosed(f"{poset.labels_of(m)} is not an upset")
    return poset.weight_of(u & v) - poset.weight_of(u) * poset.weight_of(v)


def poset_hk_scan(poset: WeightedPoset) -> tuple[Fraction, tuple[int, int]]:
    """Minimum correlation defect over all ordered pairs of upsets, with witness."""
    upsets = enumerate_upsets(poset)
    best: Fraction | None = None
    arg = (0, 0)
    for u in upsets:
        wu = poset.weight_of(u)
        for v in upsets:
            d = poset.weight_of(u & v) - wu * poset.weight_of(v)
            if best is None or d < best:
                best, arg = d, (u, v)
    assert best is not None
    return best, arg


def poset_occupancy(
    poset: WeightedPoset, x: int, y: int, z: int
) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Weighted (s_0, s_1, s_2, s_3): mass lying in exactly i of three upsets."""
    for m in (x, y, z):
        if not poset.is_upset(m):
            raise NotUpwardClosed(f"{poset.labels_of(m)} is not an upset")
    s = [Fraction(0)] * 4
    for i, w in enumerate(poset.weights):
        hits = (x >> i & 1) + (y >> i & 1) + (z >> i & 1)
        s[hits] += w
    assert sum(s) == 1
    return tuple(s)


def poset_to_json(poset: WeightedPoset) -> dict:
    return {
        "elements": list(poset.elements),
        "covers": [list(c) for c in poset.covers],
        "weights": [str(w) for w in poset.weights],
    }


def poset_from_json(data: dict) -> WeightedPoset:
    try:
        return WeightedPoset(
            elements=tuple(data["elements"]),
            covers=tuple((x, y) for x, y in data["covers"]),
            weights=tuple(Fraction(w) for w in data["weights"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidParams(f"bad poset description: {exc}") from None


def load_poset(path: str | Path) -> WeightedPoset:
    return poset_from_json(json.loads(Path(path).read_text()))


def save_poset(poset: WeightedPoset, path: str | Path) -> None:
    Path(path).write_text(json.dumps(poset_to_json(poset), indent=2) + "\n")
