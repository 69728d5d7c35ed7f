"""Closed-form constructors for equilibrium profiles.

Every nonconvergent constructor works the same way: fix how many
candidates sit at each occupied position, choose the half-electorate
lengths, and lay positions out from the left. The outer half-electorates
are always ``Ip + c/2`` and every gap between adjacent positions is the
sum of the two half-electorates that meet in it.

At ``c == 1`` the nonconvergent families collapse onto the median. The
constructors return that collapsed profile flagged ``limit=True`` rather
than raising, so sweeps can show the endpoint; it is certified as a
convergent equilibrium, never as a nonconvergent one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import HALF, ZERO, Profile, Rule, as_rational, fmt
from .equilibrium import cne_bounds
from .errors import EpsilonOutOfRange, InfeasibleConfig, WrongRegime


@dataclass(frozen=True)
class NcneConfig:
    """Candidates per occupied position, plus a dispersion parameter."""

    counts: tuple[int, ...]
    epsilon: Fraction = ZERO

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(k) for k in self.counts))
        object.__setattr__(self, "epsilon", as_rational(self.epsilon))

    @property
    def q(self) -> int:
        return len(self.counts)

    @property
    def m(self) -> int:
        return sum(self.counts)

    def validate(self) -> None:
        n = self.counts
        if len(n) < 2:
            raise InfeasibleConfig("need at least two occupied positions")
        if any(k < 1 or k > 2 for k in n):
            raise InfeasibleConfig(f"every position must hold one or two candidates: {n}")
        if n[0] != 2 or n[-1] != 2:
            raise InfeasibleConfig(f"outermost positions must be paired: {n}")
        if self.epsilon < 0:
            raise InfeasibleConfig("epsilon must be >= 0")


@dataclass(frozen=True)
class Construction:
    family: str
    rule: Rule
    profile: Profile
    limit: bool = False
    metadata: dict = field(default_factory=dict)

    @property
    def x1(self) -> Fraction:
        return min(self.profile)


def default_config(m: int) -> NcneConfig:
    """Most dispersed configuration for ``m``: paired ends, singles inside."""
    if m < 4:
        raise InfeasibleConfig(f"no nonconvergent equilibrium exists for m={m}")
    return NcneConfig((2,) + (1,) * (m - 4) + (2,))


def cne_interval(rule: Rule) -> tuple[Fraction, Fraction] | None:
    lo, hi = cne_bounds(rule)
    return (lo, hi) if lo <= hi else None


def cne_profile(rule: Rule, x1=None) -> Construction:
    interval = cne_interval(rule)
    if interval is None:
        raise WrongRegime(f"no convergent equilibrium for c={fmt(rule.c)} < 1")
    x = HALF if x1 is None else as_rational(x1)
    if not interval[0] <= x <= interval[1]:
        raise InfeasibleConfig(
            f"x1={fmt(x)} outside [{fmt(interval[0])}, {fmt(interval[1])}]"
        )
    return Construction(
        "cne", rule, Profile((x,) * rule.m),
        metadata={"interval": [fmt(interval[0]), fmt(interval[1])]},
    )


def _regime(rule: Rule) -> bool:
    """True when the rule sits exactly at the convergence limit c = 1."""
    if rule.c > 1:
        raise WrongRegime(f"no nonconvergent equilibrium for c={fmt(rule.c)} >= 1")
    return rule.c == 1


def _limit(family: str, rule: Rule, **meta) -> Construction:
    return Construction(family, rule, Profile((HALF,) * rule.m), limit=True,
                        metadata={"note": "limit, not NCNE", **meta})


def _layout(c: Fraction, ip: Fraction, counts, halves) -> Profile:
    """Place positions given the non-end half-electorate lengths.

    ``halves[k]`` is the half-length of the gap between positions k and k+1,
    shared by I_k^R and I_{k+1}^L.
    """
    x = ip + c / 2
    pos = [x] * counts[0]
    for k, h in enumerate(halves, start=1):
        x += 2 * h
        pos.extend([x] * counts[k])
    return Profile(tuple(pos))


def ncne_max_dispersed(rule: Rule, config: NcneConfig | None = None) -> Construction:
    """All non-end half-electorates set to the smallest admissible Ip."""
    config = config or default_config(rule.m)
    config.validate()
    if config.m != rule.m:
        raise InfeasibleConfig(f"config places {config.m} candidates, rule has m={rule.m}")
    q = config.q
    if _regime(rule):
        return _limit("max_dispersed", rule, q=q, counts=list(config.counts))
    ip = (1 - rule.c) / (2 * q)
    prof = _layout(rule.c, ip, config.counts, [ip] * (q - 1))
    return Construction(
        "max_dispersed", rule, prof,
        metadata={"q": q, "counts": list(config.counts), "Ip": fmt(ip)},
    )


def ncne_m4(rule: Rule) -> Construction:
    if rule.m != 4:
        raise InfeasibleConfig("ncne_m4 needs m = 4")
    if _regime(rule):
        return _limit("m4", rule)
    x1 = (1 + rule.c) / 4
    return Construction("m4", rule, Profile((x1, x1, 1 - x1, 1 - x1)))


def ncne_m5(rule: Rule) -> Construction:
    if rule.m != 5:
        raise InfeasibleConfig("ncne_m5 needs m = 5")
    if _regime(rule):
        return _limit("m5", rule)
    x1 = (1 + 2 * rule.c) / 6
    return Construction("m5", rule, Profile((x1, x1, HALF, 1 - x1, 1 - x1)))


def family_config(m: int) -> tuple[tuple[int, ...], int]:
    """Counts for the one-parameter family and the index of its centre.

    A central run of ``s`` unpaired candidates (s in 2..5, s = m mod 4 up to
    shifting by 4) is flanked by equal numbers of pairs, so the profile is
    symmetric. For even ``s`` the centre is the gap between the two middle
    singles; for odd ``s`` it is the single at the median.
    """
    if m < 6:
        raise InfeasibleConfig(f"the dispersion family needs m >= 6, got m={m}")
    s = 2 + (m - 2) % 4
    pairs = (m - s) // 4
    counts = (2,) * pairs + (1,) * s + (2,) * pairs
    q = len(counts)
    centre = q // 2 - 1 if s % 2 == 0 else (q - 1) // 2
    return counts, centre


def epsilon_max(rule: Rule, m: int) -> Fraction:
    """Largest perturbation for which the family stays an equilibrium.

    Even centre: the central gap has half-length Ip - (q-1)eps, which must
    stay >= 0. Odd centre: both gaps beside the median single have
    half-length Ip - (q-2)eps/2, and the median's full electorate
    2*Ip - (q-2)eps must stay >= Ip + eps. Both give Ip / (q-1).
    """
    counts, _ = family_config(m)
    q = len(counts)
    ip = (1 - rule.c) / (2 * q)
    return ip / (q - 1)


def ncne_family(rule: Rule, m: int, epsilon) -> Construction:
    """Member of the infinite equilibrium family for ``m >= 6``.

    Every non-end half-electorate away from the centre grows from Ip to
    Ip + eps (the end ones keep Ip + eps + c/2); the halves at the centre
    shrink to absorb it. ``epsilon = 0`` is the equal-spacing profile.
    """
    if rule.m != m:
        raise InfeasibleConfig(f"m={m} does not match rule.m={rule.m}")
    eps = as_rational(epsilon)
    counts, centre = family_config(m)
    q = len(counts)
    if _regime(rule):
        return _limit("family", rule, q=q, counts=list(counts))
    emax = epsilon_max(rule, m)
    if not ZERO <= eps <= emax:
        raise EpsilonOutOfRange(eps, emax)
    prof, meta = _family_profile(rule, counts, centre, eps)
    return Construction("family", rule, prof, metadata={**meta, "epsilon_max": fmt(emax)})


def _family_profile(rule: Rule, counts, centre: int, eps: Fraction):
    q = len(counts)
    ip = (1 - rule.c) / (2 * q)
    grown = ip + eps
    halves = [grown] * (q - 1)
    if counts.count(1) % 2 == 0:
        # J: increased halves on one side of the centre
        J = q - 1
        halves[centre] = ip - J * eps
    else:
        J = q - 2
        halves[centre - 1] = halves[centre] = ip - J * eps / 2
    prof = _layout(rule.c, grown, counts, halves)
    meta = {"q": q, "counts": list(counts), "J": J, "Ip": fmt(grown), "epsilon": fmt(eps)}
    return prof, meta


def ncne_min_dispersed(rule: Rule, m: int | None = None) -> Construction:
    """Least dispersed nonconvergent equilibrium.

    For six candidates this is three pairs at x1, 1/2 and 1 - x1. For
    four and five it is the unique equilibrium; above six it is the
    boundary member of the dispersion family.
    """
    m = rule.m if m is None else m
    if m != rule.m:
        raise InfeasibleConfig(f"m={m} does not match rule.m={rule.m}")
    if m < 4:
        raise InfeasibleConfig(f"no nonconvergent equilibrium exists for m={m}")
    if m == 4:
        out = ncne_m4(rule)
    elif m == 5:
        out = ncne_m5(rule)
    elif m == 6:
        if _regime(rule):
            return _limit("min_dispersed", rule)
        x1 = (1 + 2 * rule.c) / 6
        return Construction(
            "min_dispersed", rule, Profile((x1, x1, HALF, HALF, 1 - x1, 1 - x1)),
            metadata={"q": 3, "counts": [2, 2, 2], "Ip": fmt((1 - rule.c) / 6)},
        )
    else:
        if _regime(rule):
            return _limit("min_dispersed", rule)
        out = ncne_family(rule, m, epsilon_max(rule, m))
        return Construction("min_dispersed", rule, out.profile, metadata={**out.metadata, "source": "family boundary"})
    return Construction("min_dispersed", rule, out.profile, out.limit, out.metadata)


def construct(rule: Rule, family: str, *, epsilon=None, counts=None, x1=None) -> Construction:
    """Dispatch by family name (the names the command line accepts)."""
    if family == "cne":
        return cne_profile(rule, x1)
    if family == "m4":
        return ncne_m4(rule)
    if family == "m5":
        return ncne_m5(rule)
    if family == "max_dispersed":
        cfg = NcneConfig(tuple(counts)) if counts else None
        return ncne_max_dispersed(rule, cfg)
    if family == "min_dispersed":
        return ncne_min_dispersed(rule)
    if family == "family":
        return ncne_family(rule, rule.m, ZERO if epsilon is None else epsilon)
    raise ValueError(f"unknown family {family!r}")


FAMILIES = ("cne", "m4", "m5", "max_dispersed", "min_dispersed", "family")
