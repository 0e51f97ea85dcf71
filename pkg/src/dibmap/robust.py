"""Finite-sample frontier mapping: plug-in estimates, bootstrap, filtering.

The search itself runs on the empirical (plug-in) joint. Every discovered
frontier point then gets bootstrap standard deviations for both
objectives, and a significance filter keeps only points that are
statistically distinguishable - in at least one coordinate - from every
point already kept, visiting points in ascending order of uncertainty so
low-variance points win ties.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._util import derive_seed
from .distributions import EmpiricalCounts, normalize_counts, xlog2x
from .encoders import Encoder
from .mapper import SearchConfig, SearchStats, pareto_mapper
from .pareto import ParetoPoint, ParetoSet


@dataclass(frozen=True)
class RobustConfig:
    """Search scale, seed, bootstrap replicate count, and interval width z.

    z scales the +/- z*sigma intervals used by the significance filter
    (1.0 keeps points whose one-sigma intervals separate in some axis).
    """

    epsilon: float
    seed: int
    bootstrap_reps: int = 100
    z: float = 1.0

    def __post_init__(self):
        if self.bootstrap_reps < 2:
            raise ValueError("bootstrap_reps must be at least 2")
        if self.z <= 0:
            raise ValueError("z must be positive")


def bootstrap_uncertainty(
    counts: EmpiricalCounts, f: Encoder, reps: int, seed: int
) -> tuple[float, float]:
    """Bootstrap standard deviations of (-H(f(X)), I(f(X); Y)).

    Draws `reps` multinomial resamples of the original sample size from the
    empirical PMF, pushes each through f, and returns the sample standard
    deviations of the two objectives across replicates.
    """
    if reps < 2:
        raise ValueError("reps must be at least 2")
    rng = np.random.default_rng(seed)
    p_flat = (counts.n / counts.total).ravel()
    draws = rng.multinomial(counts.total, p_flat, size=reps)
    arr = draws.reshape(reps, counts.nx, counts.ny) / counts.total
    onehot = np.zeros((f.m, f.n))
    onehot[np.asarray(f.assignment), np.arange(f.n)] = 1.0
    pushed = np.einsum("mi,riy->rmy", onehot, arr)
    hz = -xlog2x(pushed.sum(axis=2)).sum(axis=1)
    hy = -xlog2x(pushed.sum(axis=1)).sum(axis=1)
    hzy = -xlog2x(pushed.reshape(reps, -1)).sum(axis=1)
    xs = -np.maximum(hz, 0.0)
    ys = np.maximum(hz + hy - hzy, 0.0)
    return float(np.std(xs, ddof=1)), float(np.std(ys, ddof=1))


def _distinguishable(p: ParetoPoint, q: ParetoPoint, z: float) -> bool:
    return abs(p.x - q.x) > z * (p.dx + q.dx) or abs(p.y - q.y) > z * (p.dy + q.dy)


def significance_filter(frontier: ParetoSet, z: float) -> ParetoSet:
    """Keep points distinguishable from every already-kept point.

    Points are visited in ascending order of uncertainty (the product
    dx*dy, ties broken by x); a point is kept iff its z-intervals are
    disjoint from each kept point's in at least one coordinate.
    """
    for p in frontier:
        if p.dx is None or p.dy is None:
            raise ValueError("significance_filter requires points with uncertainties")
    kept = ParetoSet()
    for p in sorted(frontier, key=lambda p: (p.dx * p.dy, p.x)):
        if all(_distinguishable(p, q, z) for q in kept):
            kept.add(p)
    return kept


def robust_pareto_mapper(
    counts: EmpiricalCounts, cfg: RobustConfig
) -> tuple[ParetoSet, ParetoSet, SearchStats]:
    """Map the frontier of an empirical sample with quantified uncertainty.

    Returns (filtered, unfiltered, stats): the significance-filtered
    frontier, the full discovered frontier with (dx, dy) attached to every
    point, and the search counters. Deterministic per config.
    """
    joint = normalize_counts(counts)
    frontier, stats = pareto_mapper(joint, SearchConfig(cfg.epsilon, cfg.seed))
    for i, p in enumerate(frontier):
        p.dx, p.dy = bootstrap_uncertainty(
            counts, p.encoder, cfg.bootstrap_reps, derive_seed(cfg.seed, i)
        )
    return significance_filter(frontier, cfg.z), frontier, stats
