"""Sorted two-objective Pareto frontier with log-time optimality checks.

Points live in the (x, y) plane with both objectives maximized; the search
stores x = -H(Z) and y = I(Z; Y), both in bits. The container keeps points
sorted strictly ascending in x with strictly descending y, so an optimality
query is a single binary search and an insertion evicts a contiguous run of
newly dominated points.

Dominance is weak with strict rejection of exact duplicates: a point equal
to a stored point in both coordinates is not optimal, so one representative
per objective pair is kept (first arrival wins).
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .encoders import Encoder


@dataclass
class ParetoPoint:
    """One evaluated encoder: objectives, optional uncertainties and encoder."""

    x: float
    y: float
    dx: Optional[float] = None
    dy: Optional[float] = None
    encoder: Optional[Encoder] = None


class ParetoSet:
    """The maintained frontier of mutually non-dominated points."""

    def __init__(self, points: Optional[Iterator[ParetoPoint]] = None):
        self._xs: list[float] = []
        self._points: list[ParetoPoint] = []
        if points is not None:
            for p in points:
                self.add(p)

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self) -> Iterator[ParetoPoint]:
        return iter(self._points)

    def __getitem__(self, i: int) -> ParetoPoint:
        return self._points[i]

    @property
    def points(self) -> list[ParetoPoint]:
        return list(self._points)

    def objectives(self) -> np.ndarray:
        """The frontier as an (m, 2) array of (x, y) rows, ascending in x."""
        return np.array([(p.x, p.y) for p in self._points]).reshape(-1, 2)

    def is_optimal(self, x: float, y: float) -> bool:
        """True iff no stored point has both coordinates >= (x, y).

        Binary search: the stored points with x' >= x have their largest y
        first, so only one comparison is needed.
        """
        i = bisect_left(self._xs, x)
        return i == len(self._xs) or self._points[i].y < y

    def add(self, p: ParetoPoint) -> bool:
        """Insert p if optimal, evicting the points it weakly dominates.

        Returns True iff p was inserted; the set is unchanged otherwise.
        """
        i = bisect_left(self._xs, p.x)
        if i < len(self._xs) and self._points[i].y >= p.y:
            return False
        # Newly dominated points sit contiguously left of the insertion slot
        # (x' < x and y' <= y), plus an equal-x point which must have smaller y.
        k = i
        while k > 0 and self._points[k - 1].y <= p.y:
            k -= 1
        end = i + 1 if i < len(self._xs) and self._xs[i] == p.x else i
        if k < end:
            del self._xs[k:end]
            del self._points[k:end]
        self._xs.insert(k, p.x)
        self._points.insert(k, p)
        return True

    def offer(self, x: float, y: float, encoder: Optional[Encoder] = None) -> bool:
        """add() without constructing a point object unless it is accepted."""
        if not self.is_optimal(x, y):
            return False
        return self.add(ParetoPoint(x, y, encoder=encoder))

    def distance(self, x: float, y: float) -> float:
        """Minimum Euclidean displacement of (x, y) before it would be optimal.

        Zero for optimal points (and for points exactly on the dominated
        region's boundary). A dominated point exits the region either
        straight up through the first ceiling above it, straight right
        through the last wall at height >= y, or diagonally through one of
        the staircase's inner corners; the minimum is taken over all exits,
        walking right only while the wall is closer than the best exit found.
        """
        i = bisect_left(self._xs, x)
        m = len(self._xs)
        if i == m or self._points[i].y < y:
            return 0.0
        d = self._points[i].y - y
        k = i
        while k < m and self._xs[k] - x < d:
            if k + 1 < m and self._points[k + 1].y >= y:
                d = min(d, math.hypot(self._xs[k] - x, self._points[k + 1].y - y))
                k += 1
            else:
                d = min(d, self._xs[k] - x)
                break
        return d
