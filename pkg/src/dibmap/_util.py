"""Internal helpers: deterministic seed derivation and least-squares fits."""

from __future__ import annotations

import numpy as np


def derive_seed(base: int, *key: int) -> int:
    """Derive an independent integer seed from a base seed and an index key.

    Uses numpy's SeedSequence spawn-key mechanism, so derived streams are
    statistically independent and stable across runs and platforms.
    """
    ss = np.random.SeedSequence(base, spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1, np.uint64)[0])


def least_squares_line(u, v) -> tuple[float, float, float]:
    """Fit v = slope * u + intercept; returns (slope, intercept, r_squared)."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    slope, intercept = np.polyfit(u, v, 1)
    resid = v - (slope * u + intercept)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((v - v.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return float(slope), float(intercept), r2
