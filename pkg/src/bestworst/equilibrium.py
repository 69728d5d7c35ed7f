"""Nash certification.

Two independent routes reach a verdict:

* ``is_nash`` enumerates every unilateral deviation exactly (via
  :func:`bestworst.scoring.best_deviation`) and compares suprema.
* ``cne_check`` and ``ncne_conditions`` evaluate the closed-form
  characterisations: the convergent interval and the five conditions on
  electorate lengths.

``classify`` runs both and refuses to answer if they disagree.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction

from .core import (
    ONE,
    CanonicalProfile,
    Profile,
    Rule,
    canonicalize,
    check_profile,
    electorates,
    fmt,
)
from .errors import InternalInconsistency, NotConvergent, WrongRegime
from .scoring import Witness, _group_value, best_deviation_canonical


class Verdict(str, Enum):
    CNE = "CNE"
    NCNE = "NCNE"
    NOT_EQUILIBRIUM = "NotEquilibrium"

    def __str__(self):
        return self.value

    @property
    def is_equilibrium(self) -> bool:
        return self is not Verdict.NOT_EQUILIBRIUM


@dataclass(frozen=True)
class CandidateCheck:
    candidate: int
    score: Fraction
    sup_deviation: Fraction
    witness: Witness
    attained: bool

    @property
    def slack(self) -> Fraction:
        return self.score - self.sup_deviation


@dataclass(frozen=True)
class Condition:
    name: str
    holds: bool
    evidence: dict = field(default_factory=dict)


@dataclass(frozen=True)
class EquilibriumCertificate:
    verdict: Verdict
    per_candidate: tuple[CandidateCheck, ...] = ()
    conditions: tuple[Condition, ...] = ()
    cne_interval: tuple[Fraction, Fraction] | None = None
    in_cne_interval: bool | None = None
    violated_by: str | None = None


def _equilibrium_verdict(cp: CanonicalProfile) -> Verdict:
    return Verdict.CNE if cp.q == 1 else Verdict.NCNE


def is_nash(rule: Rule, profile: Profile) -> EquilibriumCertificate:
    check_profile(rule, profile)
    cp = canonicalize(profile)
    checks: list[CandidateCheck | None] = [None] * rule.m
    violated = None
    for j, group in enumerate(cp.owners):
        # co-located candidates face identical deviation problems
        score = _group_value(rule.c, cp.occupied, cp.counts, j)
        rep = min(group)
        dev = best_deviation_canonical(rule, cp, rep)
        for i in group:
            checks[i] = CandidateCheck(i, score, dev.sup_value, dev.witness, dev.attained)
        if violated is None and dev.sup_value > score:
            violated = f"candidate {rep}: deviation to {_describe(dev.witness)} yields {fmt(dev.sup_value)} > {fmt(score)}"
    verdict = Verdict.NOT_EQUILIBRIUM if violated else _equilibrium_verdict(cp)
    return EquilibriumCertificate(verdict, tuple(checks), violated_by=violated)


def _describe(w: Witness) -> str:
    name = type(w).__name__
    value = w.t if hasattr(w, "t") else w.x
    return f"{name}({fmt(value)})"


def equilibrium_verdict(rule: Rule, profile: Profile) -> Verdict:
    """Deviation-route verdict only, stopping at the first profitable move."""
    check_profile(rule, profile)
    cp = canonicalize(profile)
    for j, group in enumerate(cp.owners):
        score = _group_value(rule.c, cp.occupied, cp.counts, j)
        if best_deviation_canonical(rule, cp, min(group)).sup_value > score:
            return Verdict.NOT_EQUILIBRIUM
    return _equilibrium_verdict(cp)


def cne_bounds(rule: Rule) -> tuple[Fraction, Fraction]:
    """Raw endpoints of the convergent-equilibrium interval (possibly inverted)."""
    c, m = rule.c, rule.m
    lo = (m - 1 + c) / (m * (1 + c))
    return lo, ONE - lo


def cne_check(rule: Rule, profile: Profile) -> EquilibriumCertificate:
    check_profile(rule, profile)
    cp = canonicalize(profile)
    if cp.q != 1:
        raise NotConvergent(f"profile has {cp.q} occupied positions")
    lo, hi = cne_bounds(rule)
    x = cp.occupied[0]
    # lo <= hi iff c >= 1 (or m = 2, where the interval is {1/2} for every c)
    inside = lo <= x <= hi
    verdict = Verdict.CNE if inside else Verdict.NOT_EQUILIBRIUM
    violated = None
    if not inside:
        if lo > hi:
            violated = f"interval empty: c={fmt(rule.c)} < 1"
        else:
            violated = f"x={fmt(x)} outside [{fmt(lo)}, {fmt(hi)}]"
    return EquilibriumCertificate(
        verdict,
        cne_interval=(lo, hi) if lo <= hi else None,
        in_cne_interval=inside,
        violated_by=violated,
    )


def ncne_conditions(rule: Rule, profile: Profile) -> EquilibriumCertificate:
    check_profile(rule, profile)
    if rule.c >= 1:
        raise WrongRegime(f"the five-condition test presupposes c < 1, got c={fmt(rule.c)}")
    cp = canonicalize(profile)
    q = cp.q
    if q < 2:
        raise WrongRegime("the five-condition test needs at least two occupied positions")
    em = electorates(cp)
    n = cp.counts
    L = [iv.length for iv in em.left_half]
    R = [iv.length for iv in em.right_half]
    full = [iv.length for iv in em.full]
    ip = R[0]
    # non-end half-electorates: I_k^L for k != first, I_k^R for k != last
    halves = L[1:] + R[:-1]
    widest = max(halves)

    c1 = Condition(
        "(i) at most two per position, ends paired",
        all(k <= 2 for k in n) and n[0] == 2 and n[-1] == 2,
        {"counts": list(n)},
    )

    off = []
    if L[-1] != ip:
        off.append(f"I_{q}^L={fmt(L[-1])}")
    for k in range(1, q - 1):
        if n[k] == 2:
            if L[k] != ip:
                off.append(f"I_{k + 1}^L={fmt(L[k])}")
            if R[k] != ip:
                off.append(f"I_{k + 1}^R={fmt(R[k])}")
    c2 = Condition("(ii) paired half-electorates equal", not off, {"Ip": fmt(ip), "mismatched": off})

    target = ip + rule.c / 2
    c3 = Condition(
        "(iii) end half-electorates equal Ip + c/2",
        L[0] == target and R[-1] == target,
        {"I_1^L": fmt(L[0]), "I_q^R": fmt(R[-1]), "target": fmt(target)},
    )

    short = [k + 1 for k in range(q) if n[k] == 1 and full[k] < widest]
    c4 = Condition(
        "(iv) unpaired full electorates dominate non-end halves",
        not short,
        {"max_non_end_half": fmt(widest), "failing_positions": short},
    )

    c5 = Condition(
        "(v) Ip dominates non-end halves",
        ip >= widest,
        {"Ip": fmt(ip), "max_non_end_half": fmt(widest)},
    )

    conds = (c1, c2, c3, c4, c5)
    failed = next((cd for cd in conds if not cd.holds), None)
    return EquilibriumCertificate(
        Verdict.NOT_EQUILIBRIUM if failed else Verdict.NCNE,
        conditions=conds,
        violated_by=failed.name if failed else None,
    )


def classify(rule: Rule, profile: Profile) -> EquilibriumCertificate:
    """Certify by deviation enumeration and cross-check with the closed forms."""
    cert = is_nash(rule, profile)
    cp = canonicalize(profile)
    if cp.q == 1:
        other = cne_check(rule, profile)
        if other.verdict != cert.verdict:
            raise InternalInconsistency(
                f"deviation route says {cert.verdict}, interval route says {other.verdict} "
                f"for c={fmt(rule.c)}, x={fmt(cp.occupied[0])}"
            )
        return replace(cert, cne_interval=other.cne_interval, in_cne_interval=other.in_cne_interval)
    if rule.c >= 1:
        if cert.verdict is not Verdict.NOT_EQUILIBRIUM:
            raise InternalInconsistency(
                f"deviation route certified a nonconvergent profile at c={fmt(rule.c)} >= 1"
            )
        return cert
    other = ncne_conditions(rule, profile)
    if other.verdict != cert.verdict:
        raise InternalInconsistency(
            f"deviation route says {cert.verdict}, five-condition route says {other.verdict} "
            f"for c={fmt(rule.c)}, positions={[fmt(x) for x in profile]}"
        )
    return replace(cert, conditions=other.conditions)
