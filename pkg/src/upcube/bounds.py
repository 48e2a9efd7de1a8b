"""The exact 4-variable occupancy LP and its closed-form optimum.

For three upward closed families of common density rho, the occupancy
profile (s_0..s_3) obeys two exact linear equalities (total mass, first
moment) and two correlation inequalities; maximizing s_1 over that
polytope gives the closed form 3*rho*(1-rho)/(1+rho).  Everything here
is solved in Fractions by enumerating basic solutions — four variables
never justify a real LP solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .setcube import check_bias
from .errors import InvalidParams, InvalidRho, InvalidTolerance

Profile = tuple[Fraction, Fraction, Fraction, Fraction]


def _constraint_rows(rho: Fraction) -> list[tuple[str, tuple[Fraction, ...]]]:
    """Inequality rows (name, coefficients) with sense row·s >= 0."""
    one = Fraction(1)
    zero = Fraction(0)
    return [
        ("s0_nonneg", (one, zero, zero, zero)),
        ("s1_nonneg", (zero, one, zero, zero)),
        ("s2_nonneg", (zero, zero, one, zero)),
        ("s3_nonneg", (zero, zero, zero, one)),
        ("hk_top", (zero, zero, -rho, 3 * (1 - rho))),
        ("hk_bottom", (3 * rho, -(1 - rho), zero, zero)),
    ]


def profile_feasible(s: Sequence[Fraction | int | str], rho: Fraction | int | str) -> bool:
    """Exact check of all occupancy constraints at common density rho."""
    rho = check_bias(rho)
    s = tuple(Fraction(v) for v in s)
    if len(s) != 4:
        raise InvalidParams("profile must have exactly four entries")
    if sum(s) != 1 or s[1] + 2 * s[2] + 3 * s[3] != 3 * rho:
        return False
    return all(sum(c * v for c, v in zip(row, s)) >= 0 for _, row in _constraint_rows(rho))


def s1_upper_bound(rho: Fraction | int | str) -> Fraction:
    """Closed-form maximum of s_1 at common density rho: 3rho(1-rho)/(1+rho)."""
    rho = check_bias(rho)
    return 3 * rho * (1 - rho) / (1 + rho)


def _solve4(rows: list[tuple[Fraction, ...]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Unique solution of a 4x4 rational system, or None if singular."""
    a = [list(row) + [b] for row, b in zip(rows, rhs)]
    for col in range(4):
        pivot = next((r for r in range(col, 4) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(4):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[r][4] for r in range(4)]


@dataclass(frozen=True)
class LPSolution:
    """Optimal profile, objective value s_1, and the binding constraints."""

    rho: Fraction
    profile: Profile
    objective: Fraction
    tight: tuple[str, ...]


def lp_max_s1(rho: Fraction | int | str) -> LPSolution:
    """Exact maximum of s_1 over feasible profiles at common density rho.

    Every optimum of a bounded 4-variable LP with 2 equalities sits at a
    basic point where 2 of the 6 inequalities bind; all C(6,2) candidate
    bases are solved and the feasible best kept.
    """
    rho = check_bias(rho)
    if not 0 < rho < 1:
        raise InvalidRho(f"need 0 < rho < 1, got {rho}")
    ineqs = _constraint_rows(rho)
    eq_rows = [
        (Fraction(1), Fraction(1), Fraction(1), Fraction(1)),
        (Fraction(0), Fraction(1), Fraction(2), Fraction(3)),
    ]
    rhs = [Fraction(1), 3 * rho, Fraction(0), Fraction(0)]
    best: tuple[Fraction, Profile] | None = None
    for i, j in combinations(range(len(ineqs)), 2):
        sol = _solve4(eq_rows + [ineqs[i][1], ineqs[j][1]], rhs)
        if sol is None:
            continue
        if any(sum(c * v for c, v in zip(row, sol)) < 0 for _, row in ineqs):
            continue
        if best is None or sol[1] > best[0]:
            best = (sol[1], tuple(sol))
    assert best is not None, "LP polytope is never empty for 0 < rho < 1"
    value, profile = best
    tight = tuple(
        name for name, row in ineqs if sum(c * v for c, v in zip(row, profile)) == 0
    )
    return LPSolution(rho=rho, profile=profile, objective=value, tight=tight)


def optimal_profile(rho: Fraction | int | str) -> Profile:
    """The closed-form maximizing profile ((1-r)^2, 3r(1-r), 0, 2r^2) / (1+r)."""
    rho = check_bias(rho)
    d = 1 + rho
    return ((1 - rho) ** 2 / d, 3 * rho * (1 - rho) / d, Fraction(0), 2 * rho**2 / d)


def bound_maximizer(
    tolerance: Fraction | int | str,
) -> tuple[Fraction, Fraction]:
    """Rational (rho*, value*) within `tolerance` of the true maximizer.

    The bound 6 - 3rho - 6/(1+rho) is strictly concave, so exact-rational
    ternary search brackets its argmax (sqrt(2)-1, with value 9-6*sqrt(2));
    the returned point satisfies (1+rho*)*value* = 3*rho*(1-rho*) exactly.
    """
    tolerance = Fraction(tolerance)
    if tolerance <= 0:
        raise InvalidTolerance(f"tolerance must be positive, got {tolerance}")
    lo, hi = Fraction(0), Fraction(1)
    while hi - lo > tolerance / 2:
        third = (hi - lo) / 3
        m1, m2 = lo + third, hi - third
        if s1_upper_bound(m1) < s1_upper_bound(m2):
            lo = m1
        else:
            hi = m2
    rho_star = (lo + hi) / 2
    value = s1_upper_bound(rho_star)
    assert (1 + rho_star) * value == 3 * rho_star * (1 - rho_star)
    # certify |rho* - (sqrt(2)-1)| <= tolerance by squaring the sandwich
    assert (rho_star + 1 - tolerance) ** 2 <= 2 <= (rho_star + 1 + tolerance) ** 2
    assert (9 - value - tolerance) ** 2 <= 72 <= (9 - value + tolerance) ** 2
    return rho_star, value
