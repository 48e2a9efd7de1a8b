"""Exhaustive and heuristic search over triples of equal-count upsets.

The exhaustive path enumerates every upward closed family of Q_n (the
Dedekind-number-many monotone families, so n <= 5 for listing and n <= 4
for triples) and scans triples class-by-class.  The heuristic path
hill-climbs with count-preserving swap moves: insert a point whose
supersets are all present, delete a minimal point, accept on ties so
plateaus can be crossed.  All objective comparisons happen on integer
numerators over the common denominator b^n, so the climb never touches
floats or allocates Fractions in the hot loop.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .setcube import (
    Family,
    addable_mask,
    check_bias,
    level_masks,
    measure,
    minimal_mask,
    occupancy,
    random_upset,
    select_bit,
)
from .constructions import TripleSystem
from .errors import InvalidBias, InvalidDensity, InvalidParams, TooLarge

ENUM_MAX_N = 5
EXHAUSTIVE_MAX_N = 4

DEDEKIND = (2, 3, 6, 20, 168, 7581)


@dataclass(frozen=True)
class SearchObjective:
    """What to maximize over a triple: the exactly-one density, or the
    smallest of the three single-family parts."""

    kind: str = "s1_density"
    bias: Fraction = Fraction(1, 2)

    def __post_init__(self) -> None:
        if self.kind not in ("s1_density", "min_part_density"):
            raise InvalidParams(f"unknown objective kind {self.kind!r}")
        object.__setattr__(self, "bias", check_bias(self.bias))
        if not 0 < self.bias < 1:
            raise InvalidBias("search bias must lie strictly inside (0, 1)")

    def value(self, triple: TripleSystem) -> Fraction:
        """Exact objective value of a triple."""
        if self.kind == "s1_density":
            return occupancy(triple.x, triple.y, triple.z, self.bias).s1
        return min(part_measures(triple, self.bias))


def part_measures(triple: TripleSystem, p: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    """Biased measures of the three exactly-one parts X\\(Y∪Z), Y\\(X∪Z), Z\\(X∪Y)."""
    x, y, z = triple.x, triple.y, triple.z
    return (measure(x - (y | z), p), measure(y - (x | z), p), measure(z - (x | y), p))


class _Scorer:
    """Integer-numerator objective evaluation for the hot loop.

    With bias a/b, a size-k point carries weight a^k (b-a)^(n-k); scores
    are measures scaled by b^n, compared as plain ints.
    """

    def __init__(self, n: int, objective: SearchObjective):
        a, b = objective.bias.numerator, objective.bias.denominator
        self.n = n
        self.kind = objective.kind
        self.levels = level_masks(n)
        self.weights = [a**k * (b - a) ** (n - k) for k in range(n + 1)]
        self.denom = b**n

    def _mass(self, bits: int) -> int:
        return sum(
            w * (bits & lm).bit_count() for w, lm in zip(self.weights, self.levels) if w
        )

    def score(self, bx: int, by: int, bz: int) -> int:
        if self.kind == "s1_density":
            return self._mass((bx & ~by & ~bz) | (by & ~bx & ~bz) | (bz & ~bx & ~by))
        return min(
            self._mass(bx & ~by & ~bz), self._mass(by & ~bx & ~bz), self._mass(bz & ~bx & ~by)
        )


@dataclass(frozen=True)
class SearchResult:
    triple: TripleSystem
    value: Fraction
    iterations: int
    seed: int


def enumerate_upsets_qn(n: int) -> list[Family]:
    """Every upward closed family of Q_n exactly once (Dedekind many).

    Points are decided in descending-cardinality order; a point may join
    only once all its one-larger supersets are in, so every leaf of the
    decision tree is a distinct upset.
    """
    if n > ENUM_MAX_N:
        raise TooLarge(f"upset enumeration capped at n={ENUM_MAX_N}, got {n}")
    pts = sorted(range(1 << n), key=lambda m: (-m.bit_count(), m))
    out: list[Family] = []

    def grow(pos: int, bits: int) -> None:
        if pos == len(pts):
            out.append(Family(n, bits))
            return
        m = pts[pos]
        grow(pos + 1, bits)
        if all(bits >> (m | 1 << j) & 1 for j in range(n) if not m >> j & 1):
            grow(pos + 1, bits | 1 << m)

    grow(0, 0)
    assert len(out) == DEDEKIND[n]
    return out


def exhaustive_best(n: int, objective: SearchObjective) -> SearchResult:
    """Exact maximum of the objective over all equal-count upset triples.

    Both objectives are symmetric in (X, Y, Z), so unordered triples with
    repetition suffice.
    """
    if n > EXHAUSTIVE_MAX_N:
        raise TooLarge(f"exhaustive triple scan capped at n={EXHAUSTIVE_MAX_N}, got {n}")
    scorer = _Scorer(n, objective)
    by_count: dict[int, list[Family]] = {}
    for fam in enumerate_upsets_qn(n):
        by_count.setdefault(fam.count, []).append(fam)
    best_score = -1
    best_triple: tuple[Family, Family, Family] | None = None
    examined = 0
    for count in sorted(by_count):
        for x, y, z in combinations_with_replacement(by_count[count], 3):
            examined += 1
            s = scorer.score(x.bits, y.bits, z.bits)
            if s > best_score:
                best_score, best_triple = s, (x, y, z)
    assert best_triple is not None
    triple = TripleSystem(*best_triple, label=f"exhaustive(n={n})")
    return SearchResult(
        triple=triple,
        value=Fraction(best_score, scorer.denom),
        iterations=examined,
        seed=0,
    )


def _random_upset_with_count(n: int, count: int, rng: random.Random) -> Family:
    """A seeded random upset with exactly `count` members."""
    bits = random_upset(n, rng).bits
    while bits.bit_count() > count:
        mm = minimal_mask(Family(n, bits))
        bits &= ~(1 << select_bit(mm, rng.randrange(mm.bit_count())))
    while bits.bit_count() < count:
        am = addable_mask(Family(n, bits))
        bits |= 1 << select_bit(am, rng.randrange(am.bit_count()))
    return Family(n, bits)


def local_search(
    n: int,
    rho_target: Fraction | int | str,
    objective: SearchObjective,
    seed: int = 0,
    max_iters: int = 100_000,
    stop_at: Fraction | None = None,
) -> SearchResult:
    """Seeded hill-climb over equal-count triples with swap moves.

    One move adds an insertable point and deletes a different minimal
    point of one family, preserving count and upward closure; moves that
    do not lower the score are accepted.  Deterministic per seed; returns
    the best triple seen (no optimality claim).  `stop_at` ends the climb
    early once the exact objective reaches the given value.
    """
    rho_target = check_bias(rho_target)
    count_f = rho_target * (1 << n)
    if count_f.denominator != 1:
        raise InvalidDensity(f"rho={rho_target} is not a multiple of 2^-{n}")
    count = count_f.numerator
    rng = random.Random(seed)
    scorer = _Scorer(n, objective)
    fams = [_random_upset_with_count(n, count, rng).bits for _ in range(3)]
    cur = scorer.score(*fams)
    best_score, best_fams = cur, tuple(fams)
    stop_score = None if stop_at is None else Fraction(stop_at) * scorer.denom
    it = 0
    while it < max_iters and not (stop_score is not None and best_score >= stop_score):
        it += 1
        f = rng.randrange(3)
        bits = fams[f]
        am = addable_mask(Family(n, bits))
        if not am:
            continue
        a = select_bit(am, rng.randrange(am.bit_count()))
        grown = bits | 1 << a
        mm = minimal_mask(Family(n, grown)) & ~(1 << a)
        if not mm:
            continue
        r = select_bit(mm, rng.randrange(mm.bit_count()))
        cand = grown & ~(1 << r)
        trial = fams.copy()
        trial[f] = cand
        s = scorer.score(*trial)
        if s >= cur:
            fams, cur = trial, s
            if s > best_score:
                best_score, best_fams = s, tuple(trial)
    triple = TripleSystem(
        *(Family(n, b) for b in best_fams), label=f"local(n={n},seed={seed})"
    )
    return SearchResult(
        triple=triple,
        value=Fraction(best_score, scorer.denom),
        iterations=it,
        seed=seed,
    )


def best_of_restarts(
    n: int,
    rho_target: Fraction | int | str,
    objective: SearchObjective,
    seeds: list[int],
    max_iters: int = 100_000,
    stop_at: Fraction | None = None,
) -> SearchResult:
    """Best local_search outcome over several seeds (ties: smallest seed)."""
    if not seeds:
        raise InvalidParams("need at least one seed")
    results = [
        local_search(n, rho_target, objective, seed=s, max_iters=max_iters, stop_at=stop_at)
        for s in seeds
    ]
    return max(results, key=lambda r: (r.value, -r.seed))
