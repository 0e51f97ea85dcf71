"""Ground truth by exhaustive enumeration, and frontier scoring against it.

Set partitions are enumerated as restricted growth strings in lexicographic
order, so each partition of [n] is visited exactly once; the count is the
Bell number B(n). A hard cap of n = 13 (B(13) ~ 2.7e7) keeps exhaustive
runs desk-scale. Objectives are evaluated in vectorized batches.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .distributions import JointPMF, xlog2x
from .encoders import Encoder
from .errors import CapacityError
from .pareto import ParetoPoint, ParetoSet

MAX_EXHAUSTIVE_N = 13
_CACHE_MAX_N = 10
_BATCH = 8192


def bell_number(n: int) -> int:
    """B(n), the number of partitions of an n-element set (Bell triangle)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def _rgs_iter(n: int) -> Iterator[list[int]]:
    """Yield every restricted growth string of length n, in lex order.

    The yielded list is reused between steps; copy before storing.
    """
    a = [0] * n
    if n == 1:
        yield a
        return
    b = [1] * n  # b[j] = 1 + max(a[:j]); positions j >= 1
    while True:
        yield a
        j = n - 1
        while j > 0 and a[j] == b[j]:
            j -= 1
        if j == 0:
            return
        a[j] += 1
        grow = max(b[j], a[j] + 1)
        for k in range(j + 1, n):
            a[k] = 0
            b[k] = grow


def _rgs_batches(n: int, batch: int = _BATCH) -> Iterator[np.ndarray]:
    buf = np.empty((batch, n), dtype=np.uint8)
    fill = 0
    for a in _rgs_iter(n):
        buf[fill] = a
        fill += 1
        if fill == batch:
            yield buf
            buf = np.empty((batch, n), dtype=np.uint8)
            fill = 0
    if fill:
        yield buf[:fill]


@lru_cache(maxsize=None)
def _all_rgs(n: int) -> np.ndarray:
    out = np.concatenate(list(_rgs_batches(n)))
    out.setflags(write=False)
    return out


def enumerate_partitions(n: int) -> Iterator[Encoder]:
    """Every canonical partition of [n] exactly once, in lex order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > MAX_EXHAUSTIVE_N:
        raise CapacityError(f"n = {n} exceeds the exhaustive cap {MAX_EXHAUSTIVE_N}")
    for a in _rgs_iter(n):
        yield Encoder(tuple(a))


def _batch_objectives(rows: np.ndarray, hy: float, asn: np.ndarray):
    """Vectorized (-H(Z), I(Z;Y)) for a (K, n) batch of label rows.

    Pushed matrices are padded to n clusters; absent clusters are all-zero
    rows and contribute nothing to either entropy.
    """
    k, n = asn.shape
    onehot = np.zeros((k, n, n))
    onehot[np.arange(k)[:, None], np.arange(n)[None, :], asn] = 1.0
    z = np.einsum("kic,iy->kcy", onehot, rows)
    hz = np.maximum(-xlog2x(z.sum(axis=2)).sum(axis=1), 0.0)
    hzy = -xlog2x(z.reshape(k, -1)).sum(axis=1)
    return -hz, np.maximum(hz + hy - hzy, 0.0)


def brute_force_frontier(joint: JointPMF) -> ParetoSet:
    """The exact frontier: every partition evaluated and offered in lex order."""
    n = joint.nx
    if n > MAX_EXHAUSTIVE_N:
        raise CapacityError(f"nx = {n} exceeds the exhaustive cap {MAX_EXHAUSTIVE_N}")
    rows = joint.p
    hy = float(-xlog2x(joint.marginal_y()).sum())
    frontier = ParetoSet()
    if n <= _CACHE_MAX_N:
        batches: Iterator[np.ndarray] = iter([_all_rgs(n)])
    else:
        batches = _rgs_batches(n)
    for asn in batches:
        xs, ys = _batch_objectives(rows, hy, asn)
        for i in range(asn.shape[0]):
            x, y = float(xs[i]), float(ys[i])
            if frontier.is_optimal(x, y):
                enc = Encoder(tuple(int(v) for v in asn[i]))
                frontier.add(ParetoPoint(x, y, encoder=enc))
    return frontier


@dataclass(frozen=True)
class FrontierScore:
    """Match counts of a candidate frontier against the true one."""

    points: int
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float


def precision_recall(
    candidate: ParetoSet, truth: ParetoSet, tol: float = 1e-9
) -> FrontierScore:
    """Score a candidate frontier: a point is a true positive iff some truth
    point matches both coordinates within tol."""
    if tol < 0:
        raise ValueError("tolerance must be >= 0")
    cand = candidate.objectives()
    true = truth.objectives()
    if len(cand) and len(true):
        close = (np.abs(cand[:, None, 0] - true[None, :, 0]) <= tol) & (
            np.abs(cand[:, None, 1] - true[None, :, 1]) <= tol
        )
        tp = int(close.any(axis=1).sum())
        fn = int((~close.any(axis=0)).sum())
    else:
        tp = 0
        fn = len(true)
    points = len(cand)
    precision = tp / points if points else 1.0
    recall = tp / (tp + fn) if tp + fn else 1.0
    return FrontierScore(points, tp, points - tp, fn, precision, recall)
