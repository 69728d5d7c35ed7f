"""Acceptance criteria, one test each, run at their stated tolerance and time budget.

The terminal summary (see conftest) prints a PASS/FAIL line per criterion.
"""

import csv
import io
import random
import time
from contextlib import contextmanager
from fractions import Fraction as F


from bestworst.cli import sweep_csv
from bestworst.construct import (
    cne_interval,
    epsilon_max,
    ncne_family,
    ncne_m4,
    ncne_m5,
    ncne_max_dispersed,
    ncne_min_dispersed,
)
from bestworst.core import Profile, Rule, canonicalize
from bestworst.equilibrium import Verdict, equilibrium_verdict, is_nash, ncne_conditions
from bestworst.errors import EpsilonOutOfRange
from bestworst.mc_oracle import sample_scores
from bestworst.scoring import deviation_limit, score_all

from gen import near_equilibrium_profile, random_profile

C_BELOW = [F(0), F(1, 4), F(1, 2), F(3, 4)]


@contextmanager
def budget(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f}s, budget {seconds}s"


def report(failures):
    assert not failures, f"{len(failures)} failed check(s): " + "; ".join(failures[:6])


def test_ac1_convergent_interval():
    failures = []
    with budget(1):
        for c, m in [(F(1), 3), (F(3, 2), 4), (F(2), 3), (F(2), 5)]:
            rule = Rule(c, m)
            lo = (m - 1 + c) / (m * (1 + c))
            if cne_interval(rule) != (lo, 1 - lo):
                failures.append(f"interval {c},{m}: {cne_interval(rule)}")
            expect = [((lo + 1 - lo) / 2, Verdict.CNE), (lo, Verdict.CNE), (1 - lo, Verdict.CNE),
                      (lo - F(1, 1000), Verdict.NOT_EQUILIBRIUM), (1 - lo + F(1, 1000), Verdict.NOT_EQUILIBRIUM)]
            for x, want in expect:
                got = is_nash(rule, Profile((x,) * m)).verdict
                if got is not want:
                    failures.append(f"c={c} m={m} x={x}: {got}")
        if cne_interval(Rule(2, 3)) != (F(4, 9), F(5, 9)):
            failures.append("(2,3) is not [4/9,5/9]")
    report(failures)


def test_ac2_four_and_five_candidates():
    failures = []
    with budget(1):
        for c in C_BELOW:
            for con, x1 in [(ncne_m4(Rule(c, 4)), (1 + c) / 4), (ncne_m5(Rule(c, 5)), (1 + 2 * c) / 6)]:
                if con.x1 != x1:
                    failures.append(f"{con.family} c={c}: x1={con.x1}")
                if is_nash(con.rule, con.profile).verdict is not Verdict.NCNE:
                    failures.append(f"{con.family} c={c}: is_nash")
                if ncne_conditions(con.rule, con.profile).verdict is not Verdict.NCNE:
                    failures.append(f"{con.family} c={c}: conditions")
    report(failures)


def test_ac3_regime_exclusivity():
    rng = random.Random(2024)
    failures = []
    n = 10_000
    with budget(60):
        for _ in range(n):
            m = rng.randint(3, 8)
            prof = random_profile(rng, m, rng.randint(2, min(5, m)))
            for c in (F(1), F(3, 2), F(2)):
                if equilibrium_verdict(Rule(c, m), prof) is Verdict.NCNE:
                    failures.append(f"NCNE at c={c}: {prof}")
            for c in (F(0), F(1, 2)):
                v = equilibrium_verdict(Rule(c, m), prof)
                if v is Verdict.CNE:
                    failures.append(f"CNE with q>=2 at c={c}: {prof}")
                if m == 3 and v is Verdict.NCNE:
                    failures.append(f"m=3 NCNE at c={c}: {prof}")
    report(failures)


def _constructor_outputs():
    out = []
    for c in C_BELOW:
        out += [ncne_m4(Rule(c, 4)), ncne_m5(Rule(c, 5))]
        for m in range(4, 11):
            out += [ncne_max_dispersed(Rule(c, m)), ncne_min_dispersed(Rule(c, m))]
        for m in range(6, 11):
            em = epsilon_max(Rule(c, m), m)
            out += [ncne_family(Rule(c, m), m, e) for e in (0, em / 2, em)]
    return [(con.rule, con.profile) for con in out]


def test_ac4_characterization_equivalence():
    rng = random.Random(7)
    cases = []
    while len(cases) < 1000:
        c = F(rng.randint(0, 7), 8)
        m = rng.randint(3, 8)
        if rng.random() < 0.5 and m >= 4:
            prof = near_equilibrium_profile(rng, c, m)
        else:
            prof = random_profile(rng, m, rng.randint(2, m))
        cases.append((Rule(c, m), prof))
    cases += _constructor_outputs()
    failures = []
    ncne = 0
    with budget(60):
        for rule, prof in cases:
            a = is_nash(rule, prof).verdict
            b = ncne_conditions(rule, prof).verdict
            ncne += a is Verdict.NCNE
            if a is not b:
                failures.append(f"{rule} {prof}: is_nash {a}, conditions {b}")
    assert ncne >= 100, "corpus holds too few equilibria to be a meaningful check"
    report(failures)


def test_ac5_six_candidate_sweep():
    failures = []
    with budget(5):
        maxd = list(csv.DictReader(io.StringIO(sweep_csv(6, "max_dispersed", C_BELOW))))
        mind = list(csv.DictReader(io.StringIO(sweep_csv(6, "min_dispersed", C_BELOW))))
        for c, row in zip(C_BELOW, maxd):
            occupied = sorted(set(F(x) for x in row["positions"].split(";")))
            if F(row["x1"]) != (1 + 3 * c) / 8:
                failures.append(f"max x1 at c={c}: {row['x1']}")
            if occupied[1] != 3 * (1 + c) / 8:
                failures.append(f"max x2 at c={c}: {occupied[1]} != {3 * (1 + c) / 8}")
            if row["verdict"] != "NCNE":
                failures.append(f"max row c={c}: {row['verdict']}")
        for c, row in zip(C_BELOW, mind):
            if F(row["x1"]) != (1 + 2 * c) / 6:
                failures.append(f"min x1 at c={c}: {row['x1']}")
            if row["verdict"] != "NCNE":
                failures.append(f"min row c={c}: {row['verdict']}")
        for rows in (maxd, mind):
            xs = [F(r["x1"]) for r in rows]
            if not all(a < b for a, b in zip(xs, xs[1:])):
                failures.append(f"x1 not increasing: {xs}")
    report(failures)


def _certified_corpus(n=600, seed=0):
    rng = random.Random(seed)
    found = []
    while len(found) < n:
        c = F(rng.randint(0, 7), 8)
        m = rng.randint(4, 10)
        prof = near_equilibrium_profile(rng, c, m)
        if equilibrium_verdict(Rule(c, m), prof) is Verdict.NCNE:
            found.append((Rule(c, m), prof))
    return found + _constructor_outputs()


def test_ac6_structural_properties():
    rng = random.Random(11)
    failures = []
    with budget(10):
        checked = 0
        while checked < 200:
            m = rng.randint(2, 8)
            prof = random_profile(rng, m, rng.randint(1, m), interior=True)
            cp = canonicalize(prof)
            if 2 not in cp.counts:
                continue
            rule = Rule(F(rng.randint(0, 12), 4), m)
            v = score_all(rule, prof).per_candidate
            for j, k in enumerate(cp.counts):
                if k == 2:
                    i = min(cp.owners[j])
                    total = deviation_limit(rule, prof, i, j, "left") + deviation_limit(rule, prof, i, j, "right")
                    if total != 2 * v[i]:
                        failures.append(f"limit identity {rule} {prof} at {j}")
            checked += 1
        for rule, prof in _certified_corpus():
            cp = canonicalize(prof)
            v = score_all(rule, prof).per_candidate
            paired = {v[i] for j, g in enumerate(cp.owners) if cp.counts[j] == 2 for i in g}
            if len(paired) != 1:
                failures.append(f"paired scores differ {prof}")
            if max(cp.counts) > 2 or cp.counts[0] != 2 or cp.counts[-1] != 2:
                failures.append(f"multiplicities {cp.counts}")
            if not (0 < cp.occupied[0] <= cp.occupied[-1] < 1):
                failures.append(f"extreme position {prof}")
    report(failures)


def test_ac7_conservation():
    rng = random.Random(5)
    failures = []
    with budget(10):
        for _ in range(1000):
            m = rng.randint(2, 10)
            prof = random_profile(rng, m, rng.randint(1, m))
            c = F(rng.randint(0, 40), rng.randint(1, 10))
            rep = score_all(Rule(c, m), prof)
            if sum(rep.positive_part) != 1 or sum(rep.negative_part) != 1 or sum(rep.per_candidate) != 1 - c:
                failures.append(f"c={c} {prof}")
    report(failures)


def test_ac8_monte_carlo():
    corpus = [
        (Rule(F(1, 2), 4), Profile.of(F(3, 8), F(3, 8), F(5, 8), F(5, 8))),
        (Rule(0, 4), Profile.of(F(1, 4), F(1, 4), F(3, 4), F(3, 4))),
        (Rule(2, 3), Profile((F(1, 2),) * 3)),
        (Rule(F(3, 2), 4), Profile((F(1, 2),) * 4)),
        (Rule(F(1, 2), 4), Profile.of(F(1, 4), F(1, 4), F(3, 4), F(3, 4))),
        (ncne_m5(Rule(F(1, 4), 5)).rule, ncne_m5(Rule(F(1, 4), 5)).profile),
        (Rule(F(1, 2), 6), ncne_max_dispersed(Rule(F(1, 2), 6)).profile),
        (Rule(F(3, 4), 6), ncne_min_dispersed(Rule(F(3, 4), 6)).profile),
        (Rule(0, 7), ncne_family(Rule(0, 7), 7, F(1, 40)).profile),
        (Rule(F(1, 3), 5), Profile.of(0, F(1, 5), F(1, 5), F(7, 10), 1)),
    ]
    failures = []
    with budget(120):
        for k, (rule, prof) in enumerate(corpus):
            exact = score_all(rule, prof).per_candidate
            est = sample_scores(rule, prof, 10**6, seed=1000 + k)
            for i, (v, mu, se) in enumerate(zip(exact, est.per_candidate_mean, est.per_candidate_stderr)):
                diff = abs(float(v) - mu)
                if se > 0 and diff / se > 4:
                    failures.append(f"profile {k} candidate {i}: z={diff / se:.2f}")
                if se == 0 and diff > 0:
                    failures.append(f"profile {k} candidate {i}: zero stderr but diff {diff}")
                if se < 2.5e-4 and diff > 1e-3:
                    failures.append(f"profile {k} candidate {i}: diff {diff}")
    report(failures)


def test_ac9_epsilon_family():
    failures = []
    with budget(10):
        for m in (6, 7, 8):
            for c in (F(0), F(1, 2)):
                rule = Rule(c, m)
                em = epsilon_max(rule, m)
                for eps in (F(0), em / 2, em):
                    prof = ncne_family(rule, m, eps).profile
                    if is_nash(rule, prof).verdict is not Verdict.NCNE:
                        failures.append(f"m={m} c={c} eps={eps}")
                try:
                    ncne_family(rule, m, em + F(1, 1000))
                    failures.append(f"m={m} c={c}: accepted eps_max + 1/1000")
                except EpsilonOutOfRange:
                    pass
                if m == 6 and ncne_family(rule, 6, em).profile != ncne_min_dispersed(rule).profile:
                    failures.append(f"c={c}: boundary differs from min dispersed")
    report(failures)
