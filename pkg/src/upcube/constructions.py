"""Named explicit families: dictators, thresholds, and the two hand-built
triples (the Q_5 counterexample and the two-dictators-plus-shifted-threshold
template), plus the closed-form occupancy value q(n, l, p) of the latter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .setcube import (
    Family,
    absent_masks,
    check_bias,
    full_mask,
    is_upward_closed,
    level_masks,
    mask_from_elements,
)
from .errors import InvalidParams, NotUpwardClosed, OutOfRange


@dataclass(frozen=True)
class TripleSystem:
    """Three upward closed families over the same cube."""

    x: Family
    y: Family
    z: Family
    label: str = ""

    def __post_init__(self) -> None:
        self.x._check_dim(self.y)
        self.x._check_dim(self.z)
        for name, fam in (("X", self.x), ("Y", self.y), ("Z", self.z)):
            if not is_upward_closed(fam):
                raise NotUpwardClosed(f"{name} of triple {self.label!r} is not upward closed")

    @property
    def n(self) -> int:
        return self.x.n


@dataclass(frozen=True)
class ConstructionParams:
    """Dimension, level threshold, bias for the parametric triple."""

    n: int
    l: int
    p: Fraction = Fraction(1, 2)

    def __post_init__(self) -> None:
        if not 1 <= self.l <= self.n - 2:
            raise InvalidParams(f"need 1 <= l <= n-2, got n={self.n}, l={self.l}")
        object.__setattr__(self, "p", check_bias(self.p))


def dictator(n: int, i: int) -> Family:
    """All subsets containing element i; count 2^(n-1)."""
    if not 1 <= i <= n:
        raise OutOfRange(f"dictator coordinate {i} outside 1..{n}")
    return Family(n, full_mask(n) & ~absent_masks(n)[i - 1])


def threshold(n: int, l: int) -> Family:
    """All subsets of size at least l (l=0 full cube, l=n+1 empty)."""
    if not 0 <= l <= n + 1:
        raise OutOfRange(f"threshold level {l} outside 0..{n + 1}")
    bits = 0
    for k in range(l, n + 1):
        bits |= level_masks(n)[k]
    return Family(n, bits)


def q5_triple() -> TripleSystem:
    """The modified-threshold triple in Q_5.

    X, Y are the dictators on elements 1 and 2; Z starts from the
    majority family (size >= 3), gains {3,4} and {3,5}, and loses
    {1,4,5} and {2,4,5}.  The trades keep Z upward closed with count 16
    and push the exactly-one occupancy count to 13 of 32.
    """
    n = 5
    add = (1 << mask_from_elements((3, 4), n)) | (1 << mask_from_elements((3, 5), n))
    drop = (1 << mask_from_elements((1, 4, 5), n)) | (1 << mask_from_elements((2, 4, 5), n))
    z_bits = (threshold(n, 3).bits | add) & ~drop
    return TripleSystem(dictator(n, 1), dictator(n, 2), Family(n, z_bits), label="q5")


def kahn_triple(params: ConstructionParams) -> TripleSystem:
    """Two dictators plus a threshold family patched at level l.

    Z holds every set of size > l together with the size-l sets avoiding
    both dictator coordinates; adding those keeps Z upward closed while
    shifting mass into the exactly-one class.
    """
    n, l = params.n, params.l
    patch = level_masks(n)[l] & absent_masks(n)[0] & absent_masks(n)[1]
    z_bits = threshold(n, l + 1).bits | patch
    return TripleSystem(
        dictator(n, 1), dictator(n, 2), Family(n, z_bits), label=f"kahn(n={n},l={l})"
    )


def q_formula(params: ConstructionParams) -> Fraction:
    """Closed form for the exactly-one density of kahn_triple at bias p.

    q = 2 sum_{k=1}^{l} C(n-2, k-1) p^k (1-p)^(n-k)
          + sum_{k=l}^{n-2} C(n-2, k) p^k (1-p)^(n-k)
    """
    n, l, p = params.n, params.l, params.p
    q = 1 - p
    dict_part = sum(
        (comb(n - 2, k - 1) * p**k * q ** (n - k) for k in range(1, l + 1)), Fraction(0)
    )
    z_part = sum((comb(n - 2, k) * p**k * q ** (n - k) for k in range(l, n - 1)), Fraction(0))
    return 2 * dict_part + z_part


def qcurve(n: int, l: int, p_grid: list[Fraction]) -> list[tuple[Fraction, Fraction]]:
    """q_formula sampled along a grid of biases."""
    return [(p, q_formula(ConstructionParams(n, l, p))) for p in (check_bias(p) for p in p_grid)]
