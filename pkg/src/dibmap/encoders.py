"""Deterministic hard clusterings in canonical form, plus the merge operator.

An encoder maps the n input symbols onto m <= n cluster labels. The
canonical form is the restricted-growth labeling: cluster labels appear in
order of first occurrence, so two label arrays inducing the same partition
of the inputs canonicalize to the same tuple. That tuple doubles as the
partition's dedup key during search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


def _canonical(labels: Sequence[int]) -> tuple[int, ...]:
    relabel: dict[int, int] = {}
    out = []
    for a in labels:
        new = relabel.get(a)
        if new is None:
            new = len(relabel)
            relabel[a] = new
        out.append(new)
    return tuple(out)


def _merge_labels(labels: Sequence[int], i: int, j: int) -> tuple[int, ...]:
    """Canonical labels after uniting clusters i and j (i < j)."""
    return _canonical([i if a == j else a for a in labels])


@dataclass(frozen=True)
class Encoder:
    """A hard clustering of [n] in canonical (restricted-growth) form."""

    assignment: tuple[int, ...]
    m: int = field(init=False)

    def __post_init__(self):
        assignment = tuple(int(a) for a in self.assignment)
        if not assignment:
            raise ValueError("encoder assignment must be non-empty")
        mx = -1
        for a in assignment:
            if a < 0 or a > mx + 1:
                raise ValueError(
                    f"assignment {assignment} is not in first-occurrence canonical form"
                )
            if a > mx:
                mx = a
        object.__setattr__(self, "assignment", assignment)
        object.__setattr__(self, "m", mx + 1)

    @classmethod
    def identity(cls, n: int) -> "Encoder":
        """The n-cluster encoder mapping every input to its own cluster."""
        if n < 1:
            raise ValueError("domain size must be at least 1")
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        """Domain size."""
        return len(self.assignment)

    def merge(self, i: int, j: int) -> "Encoder":
        """The child encoder with clusters i and j united (0 <= i < j < m)."""
        if not 0 <= i < j < self.m:
            raise ValueError(f"invalid merge pair ({i}, {j}) for {self.m} clusters")
        return Encoder(_merge_labels(self.assignment, i, j))

    def children(self) -> list["Encoder"]:
        """All m*(m-1)/2 single-merge children, in lexicographic (i, j) order."""
        return [
            self.merge(i, j) for i in range(self.m) for j in range(i + 1, self.m)
        ]

    def blocks(self) -> list[frozenset[int]]:
        """The partition of [n] induced by this encoder, ordered by label."""
        members: list[set[int]] = [set() for _ in range(self.m)]
        for idx, a in enumerate(self.assignment):
            members[a].add(idx)
        return [frozenset(b) for b in members]


def canonicalize(labels: Iterable[int]) -> Encoder:
    """Relabel an arbitrary non-negative label array by first occurrence."""
    labels = list(labels)
    if not labels:
        raise ValueError("label array must be non-empty")
    if any(a < 0 for a in labels):
        raise ValueError("labels must be non-negative")
    return Encoder(_canonical(labels))
