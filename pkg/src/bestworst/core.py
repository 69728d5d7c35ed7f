"""Domain types shared by every other module.

Positions and the negative-vote weight are :class:`fractions.Fraction`
throughout. Floats are refused at the boundary, because equilibrium
conditions are equalities and a rounding error flips a verdict.

Candidates are indexed from 0 in code.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Sequence

from .errors import NegativeWeight, OutOfRange, ProfileMismatch, TooFewCandidates

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def as_rational(value) -> Fraction:
    """Coerce ``value`` to an exact Fraction.

    Accepts ints, Fractions (or any ``numbers.Rational``) and strings such
    as ``"3/8"``. Floats are rejected outright.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(
        f"expected an exact rational (int, Fraction or 'p/q' string), got {type(value).__name__}"
    )


def fmt(x: Fraction) -> str:
    """Serialize a rational as ``"p/q"`` (the denominator is always written)."""
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Rule:
    """Best-worst rule: +1 for a first place, -c for a last place."""

    c: Fraction
    m: int

    def __post_init__(self):
        object.__setattr__(self, "c", as_rational(self.c))
        if self.c < 0:
            raise NegativeWeight(f"c must be >= 0, got {self.c}")
        if not isinstance(self.m, int) or isinstance(self.m, bool):
            raise TypeError("m must be an int")
        if self.m < 2:
            raise TooFewCandidates(f"m must be >= 2, got {self.m}")

    def score_vector(self) -> tuple[Fraction, ...]:
        """The equivalent positional score vector (1, 0, ..., 0, -c)."""
        return (ONE,) + (ZERO,) * (self.m - 2) + (-self.c,)


def validate_rule(c, m: int) -> Rule:
    return Rule(as_rational(c), m)


@dataclass(frozen=True)
class Profile:
    positions: tuple[Fraction, ...]

    def __post_init__(self):
        pos = tuple(as_rational(x) for x in self.positions)
        for i, x in enumerate(pos):
            if not ZERO <= x <= ONE:
                raise OutOfRange(f"position of candidate {i} is {x}, outside [0, 1]")
        object.__setattr__(self, "positions", pos)

    @classmethod
    def of(cls, *positions) -> "Profile":
        return cls(tuple(positions))

    def __len__(self):
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)

    def __getitem__(self, i):
        return self.positions[i]

    def replace(self, i: int, t) -> "Profile":
        pos = list(self.positions)
        pos[i] = as_rational(t)
        return Profile(tuple(pos))

    def mirrored(self) -> "Profile":
        return Profile(tuple(ONE - x for x in self.positions))


def check_profile(rule: Rule, profile: Profile) -> None:
    if len(profile) != rule.m:
        raise ProfileMismatch(
            f"profile has {len(profile)} positions but the rule has m={rule.m}"
        )


@dataclass(frozen=True)
class CanonicalProfile:
    """Distinct occupied positions with multiplicities and owners."""

    occupied: tuple[Fraction, ...]
    counts: tuple[int, ...]
    owners: tuple[frozenset, ...]

    @property
    def q(self) -> int:
        return len(self.occupied)

    @property
    def m(self) -> int:
        return sum(self.counts)

    def index_of(self, candidate: int) -> int:
        """Occupied-position index of ``candidate``."""
        for j, group in enumerate(self.owners):
            if candidate in group:
                return j
        raise IndexError(f"no candidate {candidate}")

    def expand(self) -> Profile:
        pos = [ZERO] * self.m
        for x, group in zip(self.occupied, self.owners):
            for i in group:
                pos[i] = x
        return Profile(tuple(pos))


def canonicalize(profile: Profile | Sequence) -> CanonicalProfile:
    if not isinstance(profile, Profile):
        profile = Profile(tuple(profile))
    groups: dict[Fraction, list[int]] = {}
    for i, x in enumerate(profile.positions):
        groups.setdefault(x, []).append(i)
    occupied = tuple(sorted(groups))
    return CanonicalProfile(
        occupied=occupied,
        counts=tuple(len(groups[x]) for x in occupied),
        owners=tuple(frozenset(groups[x]) for x in occupied),
    )


class Interval(NamedTuple):
    lo: Fraction
    hi: Fraction

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def mirrored(self) -> "Interval":
        return Interval(ONE - self.hi, ONE - self.lo)


@dataclass(frozen=True)
class ElectorateMap:
    """Full and half electorates of each occupied position.

    ``neg_left`` holds the voters who rank the leftmost position last and
    ``neg_right`` those who rank the rightmost position last. Both are
    ``None`` when every candidate shares one position (q = 1): everyone
    is then tied for last and the split is handled by the scorer.
    """

    full: tuple[Interval, ...]
    left_half: tuple[Interval, ...]
    right_half: tuple[Interval, ...]
    neg_left: Interval | None
    neg_right: Interval | None

    @property
    def degenerate(self) -> bool:
        return self.neg_left is None

    @property
    def q(self) -> int:
        return len(self.full)


def electorates(cp: CanonicalProfile) -> ElectorateMap:
    xs = cp.occupied
    q = len(xs)
    bounds = [ZERO] + [(xs[k] + xs[k + 1]) / 2 for k in range(q - 1)] + [ONE]
    full = tuple(Interval(bounds[k], bounds[k + 1]) for k in range(q))
    left = tuple(Interval(bounds[k], xs[k]) for k in range(q))
    right = tuple(Interval(xs[k], bounds[k + 1]) for k in range(q))
    if q == 1:
        return ElectorateMap(full, left, right, None, None)
    split = (xs[0] + xs[-1]) / 2
    return ElectorateMap(full, left, right, Interval(split, ONE), Interval(ZERO, split))
