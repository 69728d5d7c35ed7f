"""Numerical oracles for cross-checking the exact engine.

``sample_scores`` simulates a finite electorate with a literal lottery for
tied rankings. ``grid_best_deviation`` probes deviation payoffs on a
dense rational grid. Neither is used to certify anything.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import ONE, ZERO, Profile, Rule, as_rational, canonicalize, check_profile
from .scoring import deviation_payoff, others_layout

# Voters are drawn in fixed-size blocks, each from its own seed-derived
# stream, so the totals do not depend on how blocks are spread over workers.
BLOCK = 1 << 16


@dataclass(frozen=True)
class McEstimate:
    per_candidate_mean: tuple[float, ...]
    per_candidate_stderr: tuple[float, ...]
    n_voters: int
    seed: int


def _block_counts(positions: np.ndarray, n: int, seed: int, block: int):
    """First- and last-place tallies for one block of voters."""
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))
    voters = rng.random(n)
    dist = np.abs(voters[:, None] - positions[None, :])
    # a random key per (voter, candidate) orders each tie group uniformly:
    # rank by distance, then by descending key
    key = rng.random(dist.shape)
    dmin = dist.min(axis=1, keepdims=True)
    dmax = dist.max(axis=1, keepdims=True)
    first = np.argmax(np.where(dist == dmin, key, -1.0), axis=1)
    last = np.argmin(np.where(dist == dmax, key, 2.0), axis=1)
    m = len(positions)
    return np.bincount(first, minlength=m), np.bincount(last, minlength=m)


def sample_scores(rule: Rule, profile: Profile, n_voters: int, seed: int, workers: int = 1) -> McEstimate:
    check_profile(rule, profile)
    if n_voters < 1:
        raise ValueError("n_voters must be >= 1")
    positions = np.array([float(x) for x in profile], dtype=float)
    sizes = [BLOCK] * (n_voters // BLOCK)
    if n_voters % BLOCK:
        sizes.append(n_voters % BLOCK)

    def run(b):
        return _block_counts(positions, sizes[b], seed, b)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, range(len(sizes))))
    else:
        parts = [run(b) for b in range(len(sizes))]
    firsts = sum(p[0] for p in parts)
    lasts = sum(p[1] for p in parts)

    # first and last are distinct for m >= 2, so per voter the score is
    # 1, -c or 0 and both moments follow from integer tallies
    c = float(rule.c)
    n = n_voters
    means, errs = [], []
    for f, l in zip(firsts.tolist(), lasts.tolist()):
        mean = (f - c * l) / n
        second = (f + c * c * l) / n
        if n > 1:
            var = max(second - mean * mean, 0.0) * n / (n - 1)
            errs.append(math.sqrt(var / n))
        else:
            errs.append(0.0)
        means.append(mean)
    return McEstimate(tuple(means), tuple(errs), n_voters, seed)


def grid_probes(rule: Rule, profile: Profile, i: int, grid_step) -> list[Fraction]:
    step = as_rational(grid_step)
    if step <= 0:
        raise ValueError("grid_step must be > 0")
    pts = set()
    k = 0
    while k * step <= ONE:
        pts.add(k * step)
        k += 1
    pts.add(ONE)
    ys, _ = others_layout(canonicalize(profile), i)
    edges = [ZERO, *ys, ONE]
    for a, b in zip(edges, edges[1:]):
        pts.add((a + b) / 2)
    for y in ys:
        for d in (-step / 10, step / 10):
            if ZERO <= y + d <= ONE:
                pts.add(y + d)
    return sorted(pts)


def grid_best_deviation(rule: Rule, profile: Profile, i: int, grid_step) -> tuple[Fraction, Fraction]:
    """Best exact deviation payoff over a rational grid, and where it occurs."""
    check_profile(rule, profile)
    best_val, best_t = None, None
    for t in grid_probes(rule, profile, i, grid_step):
        v = deviation_payoff(rule, profile, i, t)
        if best_val is None or v > best_val:
            best_val, best_t = v, t
    return best_val, best_t
