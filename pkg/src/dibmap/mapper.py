"""Epsilon-greedy agglomerative frontier search plus frontier post-processing.

The search starts from the identity clustering and explores the merge
lattice breadth-first: each dequeued clustering's single-merge children are
evaluated on the objective plane, offered to the maintained frontier, and
enqueued with probability exp(-d / epsilon), where d is the child's
distance to the frontier *before* it is offered. epsilon = 0 degenerates to
a greedy search that enqueues only currently-optimal children; an infinite
epsilon enqueues everything (brute force).

Frontier offers are strictly sequential in lexicographic merge-pair order;
objective evaluation is batched per parent. A child's entropies are
computed from the parent's pushed-forward matrix by updating only the
cells its merge touches, vectorized across all m*(m-1)/2 children at once.
Clusterings travel as canonical label byte strings; Encoder objects are
materialized only for points that enter the frontier.
"""

from __future__ import annotations

import math
import time
from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .distributions import JointPMF, xlog2x
from .encoders import Encoder
from .pareto import ParetoPoint, ParetoSet


@dataclass(frozen=True)
class SearchConfig:
    """Tuning knobs for one search run.

    epsilon is the search depth scale in bits (math.inf for brute force).
    dedup skips clusterings whose partition was already evaluated via a
    different merge order; disable it to follow the literal re-enqueueing
    procedure. max_queue is an optional safety cap on pending entries.
    """

    epsilon: float
    seed: int
    dedup: bool = True
    max_queue: Optional[int] = None

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError("epsilon must be >= 0")


@dataclass
class SearchStats:
    """Work counters for one run.

    points_searched counts objective evaluations actually consumed (one per
    offered child plus the identity); with dedup on, every canonical
    partition is counted at most once. enqueued counts queue insertions.
    """

    points_searched: int
    enqueued: int
    elapsed: float


def enqueue_probability(d: float, epsilon: float) -> float:
    """exp(-d / epsilon), with the greedy and brute-force limits.

    epsilon = 0 returns 1 for d = 0 and 0 otherwise; an infinite epsilon
    always returns 1.
    """
    if d < 0:
        raise ValueError("distance must be >= 0")
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    if math.isinf(epsilon):
        return 1.0
    if epsilon == 0.0:
        return 1.0 if d == 0.0 else 0.0
    return math.exp(-d / epsilon)


def _child_keys(parent: bytes, i_idx: np.ndarray, j_idx: np.ndarray) -> list[bytes]:
    """Canonical label strings of every merge child, in pair order.

    Because the parent is canonical, uniting clusters i < j relabels as:
    j -> i, labels above j shift down by one, everything else unchanged.
    """
    arr = np.frombuffer(parent, dtype=np.uint8)
    a = np.broadcast_to(arr, (len(i_idx), len(arr)))
    child = np.where(a == j_idx[:, None], i_idx[:, None], a - (a > j_idx[:, None]))
    flat = child.astype(np.uint8).tobytes()
    n = len(arr)
    return [flat[k * n : (k + 1) * n] for k in range(len(i_idx))]


class _JointEvaluator:
    """(x, y) = (-H(f(X)), I(f(X); Y)) for clusterings of a fixed joint."""

    def __init__(self, joint: JointPMF):
        self.rows = joint.p
        self.hy = float(-xlog2x(joint.marginal_y()).sum())

    @property
    def domain_size(self) -> int:
        return self.rows.shape[0]

    def prepare(self, labels) -> np.ndarray:
        idx = np.frombuffer(bytes(labels), dtype=np.uint8)
        pushed = np.zeros((int(idx.max()) + 1, self.rows.shape[1]))
        np.add.at(pushed, idx, self.rows)
        return pushed

    def evaluate(self, labels) -> tuple[float, float]:
        pushed = self.prepare(labels)
        hz = max(0.0, float(-xlog2x(pushed.sum(axis=1)).sum()))
        hzy = float(-xlog2x(pushed).sum())
        return -hz, max(0.0, hz + self.hy - hzy)

    def pair_objectives(self, pushed: np.ndarray, i_idx, j_idx):
        """Objectives of every merge child of `pushed`, batched over pairs.

        Only the two folded rows change, so each child's cell sums are the
        parent's with those rows' contributions swapped for the fold's.
        """
        cell = xlog2x(pushed)
        s_cells = cell.sum()
        row_cells = cell.sum(axis=1)
        fold_cells = xlog2x(pushed[i_idx] + pushed[j_idx]).sum(axis=1)
        hzy = -(s_cells - row_cells[i_idx] - row_cells[j_idx] + fold_cells)

        pz = pushed.sum(axis=1)
        pzx = xlog2x(pz)
        s_pz = pzx.sum()
        fold_pz = xlog2x(pz[i_idx] + pz[j_idx])
        hz = np.maximum(-(s_pz - pzx[i_idx] - pzx[j_idx] + fold_pz), 0.0)
        return -hz, np.maximum(hz + self.hy - hzy, 0.0)


def _run_search(evaluator, cfg: SearchConfig) -> tuple[ParetoSet, SearchStats]:
    """The agglomerative search loop shared by the plain and symmetric mappers."""
    n = evaluator.domain_size
    if n > 255:
        raise ValueError("search supports at most 255 input symbols")
    t0 = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    epsilon = cfg.epsilon
    frontier = ParetoSet()

    identity = bytes(range(n))
    x0, y0 = evaluator.evaluate(identity)
    frontier.add(ParetoPoint(x0, y0, encoder=Encoder(tuple(identity))))
    queue: deque[bytes] = deque([identity])
    visited = {identity}
    searched = 1
    enqueued = 1

    pair_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    distance = frontier.distance
    is_optimal = frontier.is_optimal
    add = frontier.add

    while queue:
        parent = queue.popleft()
        m = max(parent) + 1
        if m == 1:
            continue
        pairs = pair_cache.get(m)
        if pairs is None:
            pairs = np.triu_indices(m, k=1)
            pair_cache[m] = pairs
        i_idx, j_idx = pairs
        keys = _child_keys(parent, i_idx, j_idx)
        ctx = evaluator.prepare(parent)
        xs, ys = evaluator.pair_objectives(ctx, i_idx, j_idx)
        u = rng.random(len(keys))  # one draw per child, in pair order
        for k, key in enumerate(keys):
            if cfg.dedup:
                if key in visited:
                    continue
                visited.add(key)
            x = float(xs[k])
            y = float(ys[k])
            searched += 1
            d = distance(x, y)
            if d == 0.0 and is_optimal(x, y):
                add(ParetoPoint(x, y, encoder=Encoder(tuple(key))))
            if u[k] < enqueue_probability(d, epsilon):
                if cfg.max_queue is None or len(queue) < cfg.max_queue:
                    queue.append(key)
                    enqueued += 1

    stats = SearchStats(searched, enqueued, time.perf_counter() - t0)
    return frontier, stats


def pareto_mapper(joint: JointPMF, cfg: SearchConfig) -> tuple[ParetoSet, SearchStats]:
    """Map the full frontier of -H(f(X)) vs I(f(X); Y) over hard clusterings.

    Returns the frontier (points carry their encoders) and search counters.
    Deterministic for a fixed config.
    """
    return _run_search(_JointEvaluator(joint), cfg)


def dmc_points(frontier: ParetoSet) -> list[ParetoPoint]:
    """Best stored point for each occurring cluster count, ascending in count.

    These are the frontier's representatives of the coarser trade-off
    between I(Z; Y) and the number of clusters.
    """
    best: dict[int, ParetoPoint] = {}
    for p in frontier:
        if p.encoder is None:
            raise ValueError("dmc_points requires points with stored encoders")
        cur = best.get(p.encoder.m)
        if cur is None or p.y > cur.y:
            best[p.encoder.m] = p
    return [best[m] for m in sorted(best)]


def upper_hull(frontier) -> list[ParetoPoint]:
    """The subset of points lying on the upper concave envelope.

    These are the points a Lagrangian optimizer could find. Accepts a
    ParetoSet or any sequence of points sorted ascending in x. Points
    exactly on a hull edge (collinear runs) are retained; endpoints always
    are.
    """
    pts = frontier.points if isinstance(frontier, ParetoSet) else list(frontier)
    if len(pts) <= 2:
        return pts
    hull: list[ParetoPoint] = []
    for c in pts:
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x)
            if cross > 0:  # b strictly below chord a--c
                hull.pop()
            else:
                break
        hull.append(c)
    return hull
