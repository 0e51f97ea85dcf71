"""Symmetric compression: one shared encoder applied to both inputs.

For a triple (X1, X2, Y) with X1 and X2 on a common domain, one encoder f
compresses both inputs at once; the objectives become
x = -H(f(X1), f(X2)) / 2 (so independent uniform inputs report the
single-input entropy) and y = I((f(X1), f(X2)); Y). The search over
encoders is identical to the plain mapper.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import MASS_TOL, xlog2x
from .encoders import Encoder
from .errors import DimensionMismatchError, InvalidDistributionError
from .mapper import SearchConfig, SearchStats, _run_search
from .pareto import ParetoSet


@dataclass(frozen=True)
class TripleJointPMF:
    """A joint distribution p(x1, x2, y) with x1, x2 on one domain of size g."""

    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.ndim != 3 or p.shape[0] != p.shape[1] or p.shape[2] < 1:
            raise InvalidDistributionError("triple PMF must be a g*g*ny array")
        if np.any(p < 0):
            raise InvalidDistributionError("negative probability entry")
        total = float(p.sum())
        if abs(total - 1.0) > MASS_TOL:
            raise InvalidDistributionError(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "p", p)

    @property
    def g(self) -> int:
        return self.p.shape[0]

    @property
    def ny(self) -> int:
        return self.p.shape[2]


def _fold_cell_sums(q: np.ndarray, i_idx: np.ndarray, j_idx: np.ndarray) -> np.ndarray:
    """Sum of xlog2x over each merge child's cells, batched over pairs.

    Merging clusters i and j folds row j into row i and column j into
    column i of q (an m*m*k cell array). Only those rows/columns change, so
    each child's sum is the parent's with the touched cells' contributions
    replaced: subtract both rows and both columns, add back the four corner
    cells counted twice, then add the folded row, folded column, and folded
    corner.
    """
    cell = xlog2x(q)
    s = cell.sum()
    row = cell.sum(axis=(1, 2))
    col = cell.sum(axis=(0, 2))

    qii = q[i_idx, i_idx]
    qij = q[i_idx, j_idx]
    qji = q[j_idx, i_idx]
    qjj = q[j_idx, j_idx]

    fold_rows = xlog2x(q[i_idx] + q[j_idx]).sum(axis=(1, 2))
    fold_rows -= xlog2x(qii + qji).sum(axis=1) + xlog2x(qij + qjj).sum(axis=1)
    qt = q.transpose(1, 0, 2)
    fold_cols = xlog2x(qt[i_idx] + qt[j_idx]).sum(axis=(1, 2))
    fold_cols -= xlog2x(qii + qij).sum(axis=1) + xlog2x(qji + qjj).sum(axis=1)
    corner = xlog2x(qii + qij + qji + qjj).sum(axis=1)
    twice = (xlog2x(qii) + xlog2x(qij) + xlog2x(qji) + xlog2x(qjj)).sum(axis=1)

    return s - row[i_idx] - row[j_idx] - col[i_idx] - col[j_idx] + twice \
        + fold_rows + fold_cols + corner


class _TripleEvaluator:
    """Objectives for shared-encoder compression of a fixed triple."""

    def __init__(self, triple: TripleJointPMF):
        self.p = triple.p
        self.hy = float(-xlog2x(self.p.sum(axis=(0, 1))).sum())

    @property
    def domain_size(self) -> int:
        return self.p.shape[0]

    def prepare(self, labels) -> np.ndarray:
        """Aggregate both input axes by the encoder: q[z1, z2, y]."""
        idx = np.frombuffer(bytes(labels), dtype=np.uint8)
        g = idx.shape[0]
        onehot = np.zeros((int(idx.max()) + 1, g))
        onehot[idx, np.arange(g)] = 1.0
        t = np.tensordot(onehot, self.p, axes=(1, 0))  # (z1, x2, y)
        q = np.tensordot(onehot, t, axes=(1, 1))  # (z2, z1, y)
        return np.ascontiguousarray(q.transpose(1, 0, 2))

    def evaluate(self, labels) -> tuple[float, float]:
        q = self.prepare(labels)
        hz = max(0.0, float(-xlog2x(q.sum(axis=2)).sum()))
        hzy = float(-xlog2x(q).sum())
        return -hz / 2.0, max(0.0, hz + self.hy - hzy)

    def pair_objectives(self, q: np.ndarray, i_idx, j_idx):
        hzy = -_fold_cell_sums(q, i_idx, j_idx)
        pz = q.sum(axis=2)
        hz = np.maximum(-_fold_cell_sums(pz[:, :, None], i_idx, j_idx), 0.0)
        return -hz / 2.0, np.maximum(hz + self.hy - hzy, 0.0)


def symmetric_objectives(triple: TripleJointPMF, f: Encoder) -> tuple[float, float]:
    """(x, y) = (-H(f(X1), f(X2)) / 2, I((f(X1), f(X2)); Y)) for one encoder."""
    if f.n != triple.g:
        raise DimensionMismatchError(
            f"encoder domain {f.n} != triple domain {triple.g}"
        )
    return _TripleEvaluator(triple).evaluate(f.assignment)


def symmetric_pareto_mapper(
    triple: TripleJointPMF, cfg: SearchConfig
) -> tuple[ParetoSet, SearchStats]:
    """The agglomerative frontier search with the shared-encoder objectives."""
    return _run_search(_TripleEvaluator(triple), cfg)


def save_triple_csv(path, triple: TripleJointPMF) -> None:
    """Write a triple PMF as g^2 rows * ny columns (row index = x1*g + x2)."""
    g = triple.g
    np.savetxt(path, triple.p.reshape(g * g, triple.ny), delimiter=",", fmt="%.17g")


def load_triple_csv(path) -> TripleJointPMF:
    """Read a triple PMF written by save_triple_csv."""
    flat = np.loadtxt(path, delimiter=",", ndmin=2)
    g = math.isqrt(flat.shape[0])
    if g * g != flat.shape[0]:
        raise InvalidDistributionError(
            f"triple CSV must have a square number of rows, got {flat.shape[0]}"
        )
    return TripleJointPMF(flat.reshape(g, g, flat.shape[1]))
