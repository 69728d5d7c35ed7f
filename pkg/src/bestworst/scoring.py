"""Expected scores, deviation payoffs and exact best deviations.

Ties are resolved by a fair lottery, which in expectation means that the
``n`` candidates sharing a position split that position's first-place
(and, at an extreme, last-place) mass equally. Voters exactly midway
between two positions form a null set and are ignored.

A candidate relocating to ``t`` while everyone else stays put sees a
payoff that is piecewise affine in ``t``. The breakpoints are 0, 1 and
the positions still occupied by the others. Between two occupied
positions the payoff is constant (half the gap); outside the others'
hull it moves with slope +-(1+c)/2. The supremum over [0, 1] is
therefore found among finitely many point evaluations and one-sided
limits.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .core import (
    ONE,
    ZERO,
    CanonicalProfile,
    Profile,
    Rule,
    as_rational,
    canonicalize,
    check_profile,
    electorates,
)
from .errors import InvalidTarget, OutOfRange


@dataclass(frozen=True)
class ScoreReport:
    per_candidate: tuple[Fraction, ...]
    positive_part: tuple[Fraction, ...]
    negative_part: tuple[Fraction, ...]


def score_all(rule: Rule, profile: Profile) -> ScoreReport:
    check_profile(rule, profile)
    cp = canonicalize(profile)
    emap = electorates(cp)
    pos = [ZERO] * rule.m
    neg = [ZERO] * rule.m
    for j, group in enumerate(cp.owners):
        n = cp.counts[j]
        if emap.degenerate:
            p_share = n_share = Fraction(1, n)
        else:
            p_share = emap.full[j].length / n
            if j == 0:
                n_share = emap.neg_left.length / n
            elif j == cp.q - 1:
                n_share = emap.neg_right.length / n
            else:
                n_share = ZERO
        for i in group:
            pos[i] = p_share
            neg[i] = n_share
    values = tuple(p - rule.c * n for p, n in zip(pos, neg))
    return ScoreReport(values, tuple(pos), tuple(neg))


def deviation_payoff(rule: Rule, profile: Profile, i: int, t) -> Fraction:
    """Score of candidate ``i`` after moving alone to ``t``."""
    t = as_rational(t)
    if not ZERO <= t <= ONE:
        raise OutOfRange(f"deviation target {t} outside [0, 1]")
    return score_all(rule, profile.replace(i, t)).per_candidate[i]


# -- fast path on the others' canonical layout ------------------------------
#
# ``ys``/``ns`` are the distinct positions and counts of everyone except the
# deviator. These helpers compute the same quantities as ``score_all`` without
# rebuilding profiles, and are cross-checked against it in the tests.


def _group_value(c: Fraction, xs, ns, j: int) -> Fraction:
    q = len(xs)
    n = ns[j]
    if q == 1:
        return (1 - c) / n
    lo = ZERO if j == 0 else (xs[j - 1] + xs[j]) / 2
    hi = ONE if j == q - 1 else (xs[j] + xs[j + 1]) / 2
    if j == 0:
        neg = 1 - (xs[0] + xs[-1]) / 2
    elif j == q - 1:
        neg = (xs[0] + xs[-1]) / 2
    else:
        neg = ZERO
    return (hi - lo - c * neg) / n


def _payoff_at(c: Fraction, ys, ns, t: Fraction) -> Fraction:
    k = bisect_left(ys, t)
    if k < len(ys) and ys[k] == t:
        bumped = list(ns)
        bumped[k] += 1
        return _group_value(c, ys, bumped, k)
    xs = list(ys)
    xs.insert(k, t)
    counts = list(ns)
    counts.insert(k, 1)
    return _group_value(c, xs, counts, k)


def _left_limit(c: Fraction, ys, j: int) -> Fraction:
    """Payoff as the deviator approaches ``ys[j]`` from below."""
    y = ys[j]
    if j == 0:
        # alone on the far left: gains [0, y], ranked last beyond the midpoint
        return y - c * (1 - (y + ys[-1]) / 2)
    return (y - ys[j - 1]) / 2


def _right_limit(c: Fraction, ys, j: int) -> Fraction:
    y = ys[j]
    if j == len(ys) - 1:
        return 1 - y - c * (ys[0] + y) / 2
    return (ys[j + 1] - y) / 2


def others_layout(cp: CanonicalProfile, i: int) -> tuple[list, list]:
    """Occupied positions and counts once candidate ``i`` is removed."""
    j = cp.index_of(i)
    ys, ns = list(cp.occupied), list(cp.counts)
    if ns[j] == 1:
        del ys[j], ns[j]
    else:
        ns[j] -= 1
    return ys, ns


def deviation_limit(rule: Rule, profile: Profile, i: int, at: int, side: str) -> Fraction:
    """One-sided limit of ``deviation_payoff`` at occupied position ``at``.

    ``at`` indexes the occupied positions of the full profile. If candidate
    ``i`` was alone there, the point is interior to a gap of the others'
    layout, the payoff is continuous, and the limit is the point value.
    """
    check_profile(rule, profile)
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    cp = canonicalize(profile)
    if not 0 <= at < cp.q:
        raise InvalidTarget(f"occupied-position index {at} out of range 0..{cp.q - 1}")
    x = cp.occupied[at]
    if (side == "left" and x == ZERO) or (side == "right" and x == ONE):
        raise InvalidTarget(f"no {side} neighbourhood of {x} inside [0, 1]")
    ys, ns = others_layout(cp, i)
    k = bisect_left(ys, x)
    if k == len(ys) or ys[k] != x:
        return _payoff_at(rule.c, ys, ns, x)
    if side == "left":
        return _left_limit(rule.c, ys, k)
    return _right_limit(rule.c, ys, k)


@dataclass(frozen=True)
class Point:
    t: Fraction


@dataclass(frozen=True)
class LeftLimitAt:
    x: Fraction


@dataclass(frozen=True)
class RightLimitAt:
    x: Fraction


Witness = Union[Point, LeftLimitAt, RightLimitAt]


@dataclass(frozen=True)
class DeviationAnalysis:
    candidate: int
    sup_value: Fraction
    witness: Witness
    attained: bool


def _best_from_layout(c: Fraction, ys, ns) -> tuple[Fraction, Witness, bool]:
    attained: list[tuple[Fraction, Witness]] = []
    for t in (ZERO, ONE, *ys):
        attained.append((_payoff_at(c, ys, ns, t), Point(t)))
    # interior gaps are flat; the midpoint stands for the whole gap and for
    # both one-sided limits at its ends
    for a, b in zip(ys, ys[1:]):
        attained.append(((b - a) / 2, Point((a + b) / 2)))
    limits: list[tuple[Fraction, Witness]] = []
    if ys[0] > ZERO:
        limits.append((_left_limit(c, ys, 0), LeftLimitAt(ys[0])))
    if ys[-1] < ONE:
        limits.append((_right_limit(c, ys, len(ys) - 1), RightLimitAt(ys[-1])))

    best_val, best_wit = max(attained, key=lambda vw: vw[0])
    if limits:
        lim_val, lim_wit = max(limits, key=lambda vw: vw[0])
        if lim_val > best_val:
            return lim_val, lim_wit, False
    return best_val, best_wit, True


def best_deviation(rule: Rule, profile: Profile, i: int) -> DeviationAnalysis:
    check_profile(rule, profile)
    cp = canonicalize(profile)
    return best_deviation_canonical(rule, cp, i)


def best_deviation_canonical(rule: Rule, cp: CanonicalProfile, i: int) -> DeviationAnalysis:
    ys, ns = others_layout(cp, i)
    sup, wit, attained = _best_from_layout(rule.c, ys, ns)
    return DeviationAnalysis(i, sup, wit, attained)
