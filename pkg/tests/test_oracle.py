import math

import numpy as np
import pytest

import dibmap as dm
from dibmap import (
    CapacityError,
    JointPMF,
    ParetoPoint,
    ParetoSet,
    bell_number,
    brute_force_frontier,
    enumerate_partitions,
    precision_recall,
    sample_simplex,
)


class TestEnumeration:
    def test_single_element(self):
        assert [f.assignment for f in enumerate_partitions(1)] == [(0,)]

    def test_three_elements(self):
        got = [f.assignment for f in enumerate_partitions(3)]
        assert got == [
            (0, 0, 0),
            (0, 0, 1),
            (0, 1, 0),
            (0, 1, 1),
            (0, 1, 2),
        ]

    @pytest.mark.parametrize("n", range(1, 9))
    def test_counts_match_bell(self, n):
        assert sum(1 for _ in enumerate_partitions(n)) == bell_number(n)

    def test_bell_ten(self):
        assert bell_number(10) == 115_975
        assert sum(1 for _ in enumerate_partitions(10)) == 115_975

    def test_unique_and_lexicographic(self):
        seen = [f.assignment for f in enumerate_partitions(6)]
        assert len(set(seen)) == len(seen) == bell_number(6)
        assert seen == sorted(seen)

    def test_cap(self):
        with pytest.raises(CapacityError):
            next(enumerate_partitions(14))
        with pytest.raises(ValueError):
            next(enumerate_partitions(0))

    def test_bell_recurrence(self):
        # B(n+1) = sum_k C(n, k) B(k)
        for n in range(12):
            rhs = sum(math.comb(n, k) * bell_number(k) for k in range(n + 1))
            assert bell_number(n + 1) == rhs


class TestBruteForceFrontier:
    def test_two_by_two_diag(self):
        frontier = brute_force_frontier(JointPMF(np.diag([0.5, 0.5])))
        assert sorted((p.x, p.y) for p in frontier) == [(-1.0, 1.0), (0.0, 0.0)]

    def test_diagonal_joint_keeps_every_partition(self):
        rng = np.random.default_rng(6)
        r = rng.exponential(size=6)
        frontier = brute_force_frontier(JointPMF(np.diag(r / r.sum())))
        assert len(frontier) == bell_number(6) == 203

    def test_independent_joint_collapses_to_origin(self):
        # dyadic marginals keep every log2 exact, so I is exactly 0 for
        # every encoder and only the origin survives
        u = np.array([0.5, 0.5])
        v = np.array([0.5, 0.25, 0.25])
        frontier = brute_force_frontier(JointPMF(np.outer(u, v)))
        assert [(p.x, p.y) for p in frontier] == [(0.0, 0.0)]

    def test_independent_joint_generic_marginals(self):
        # general product joints evaluate I to float noise, not exact zero
        u = np.array([0.1, 0.2, 0.3, 0.4])
        v = np.array([0.5, 0.25, 0.25])
        frontier = brute_force_frontier(JointPMF(np.outer(u, v)))
        assert all(abs(p.y) <= 1e-12 for p in frontier)
        assert max(p.x for p in frontier) == 0.0

    def test_output_mutually_non_dominated(self):
        frontier = brute_force_frontier(sample_simplex(7, 4, seed=3))
        pts = [(p.x, p.y) for p in frontier]
        for i, (x, y) in enumerate(pts):
            for j, (qx, qy) in enumerate(pts):
                if i != j:
                    assert not (qx >= x and qy >= y)

    def test_encoders_attached_and_valid(self):
        joint = sample_simplex(6, 3, seed=9)
        for p in brute_force_frontier(joint):
            pushed = dm.push_forward(joint, p.encoder)
            assert -dm.entropy(pushed.marginal_x()) == pytest.approx(p.x, abs=1e-9)
            assert dm.mutual_information(pushed) == pytest.approx(p.y, abs=1e-9)

    def test_capacity(self):
        with pytest.raises(CapacityError):
            brute_force_frontier(sample_simplex(14, 2, seed=0))


class TestPrecisionRecall:
    def test_perfect_match(self):
        truth = brute_force_frontier(sample_simplex(6, 4, seed=2))
        score = precision_recall(truth, truth)
        assert score.precision == 1.0 and score.recall == 1.0
        assert score.fp == 0 and score.fn == 0
        assert score.tp == score.points == len(truth)

    def test_empty_candidate(self):
        truth = brute_force_frontier(sample_simplex(5, 3, seed=4))
        score = precision_recall(ParetoSet(), truth)
        assert score.recall == 0.0
        assert score.precision == 1.0
        assert score.fn == len(truth)

    def test_partial_overlap(self):
        truth = ParetoSet()
        for x, y in [(-2.0, 2.0), (-1.0, 1.5), (0.0, 0.0)]:
            truth.add(ParetoPoint(x, y))
        cand = ParetoSet()
        for x, y in [(-2.0, 2.0), (-0.5, 0.5)]:
            cand.add(ParetoPoint(x, y))
        score = precision_recall(cand, truth)
        assert (score.points, score.tp, score.fp, score.fn) == (2, 1, 1, 2)
        assert score.precision == pytest.approx(0.5)
        assert score.recall == pytest.approx(1 / 3)

    def test_tolerance_window(self):
        truth = ParetoSet()
        truth.add(ParetoPoint(-1.0, 1.0))
        cand = ParetoSet()
        cand.add(ParetoPoint(-1.0 + 5e-10, 1.0 - 5e-10))
        assert precision_recall(cand, truth).tp == 1
        assert precision_recall(cand, truth, tol=1e-12).tp == 0
