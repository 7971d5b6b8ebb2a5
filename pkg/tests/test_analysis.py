import math

import pytest

from sawlab.analysis import (
    HoleReport,
    avoidance_probability,
    holes,
    space_filling_experiment,
)
from sawlab.boxes import BoxSpec, bdist, box_family
from sawlab.counting import enumerate_domain_walks
from sawlab.errors import PreconditionViolation
from sawlab.lattice import Walk, rectangle_domain, walk_from_directions
from sawlab.sampler import SamplerConfig, sample_exact_many


def snake_walk(size):
    """Boustrophedon walk visiting every site of a size x size square."""
    vs = []
    for y in range(size):
        xs = range(size) if y % 2 == 0 else range(size - 1, -1, -1)
        vs.extend((x, y) for x in xs)
    return Walk(tuple(vs), _validated=True)


class TestHoles:
    def test_space_filling_walk_leaves_nothing(self):
        dom = rectangle_domain(4, 4, (0, 0), (3, 0))
        w = snake_walk(4)
        for xi in (1, 2, 3):
            assert holes(dom, w, xi).largest == 0

    def test_straight_walk_across_5x5(self):
        dom = rectangle_domain(5, 5, (0, 2), (4, 2))
        w = Walk(tuple((i, 2) for i in range(5)), _validated=True)
        hr = holes(dom, w, 1)
        # the walk occupies the middle row; two 5x2 slabs remain
        assert hr.component_sizes == (10, 10)
        assert hr.covered == 5
        hr2 = holes(dom, w, 2)
        assert hr2.component_sizes == (5, 5)

    def test_accounting_identity_random_fixtures(self):
        dom = rectangle_domain(6, 6, (0, 0), (5, 5))
        cfg = SamplerConfig(x=0.8, seed=21)
        for w in sample_exact_many(
            rectangle_domain(4, 4, (0, 0), (3, 3)), cfg, 25
        ):
            for xi in (1, 2):
                hr = holes(rectangle_domain(4, 4, (0, 0), (3, 3)), w, xi)
                assert sum(hr.component_sizes) + hr.covered == hr.domain_size

    def test_direction_reversal_invariant(self):
        dom = rectangle_domain(5, 5, (0, 0), (4, 4))
        w = walk_from_directions((0, 0), "RRUURR")
        fwd = holes(dom, w, 1)
        bwd = holes(dom, w.reversed(), 1)
        assert fwd.component_sizes == bwd.component_sizes

    def test_doubling_xi_never_grows_components(self):
        dom = rectangle_domain(6, 6, (0, 0), (5, 5))
        w = walk_from_directions((0, 0), "RRRUULLDR")
        for xi in (1, 2):
            small = holes(dom, w, 2 * xi)
            big = holes(dom, w, xi)
            assert small.largest <= big.largest

    def test_rejects_walk_outside_domain(self):
        dom = rectangle_domain(3, 3, (0, 0), (2, 2))
        with pytest.raises(PreconditionViolation):
            holes(dom, walk_from_directions((5, 5), "R"), 1)


class TestAvoidanceProbability:
    def dom(self):
        return rectangle_domain(5, 5, (0, 2), (4, 2))

    def test_matches_brute_force(self):
        dom = self.dom()
        fam_all = box_family(dom, 0)
        sub = fam_all.subfamily([BoxSpec((2, 0), 0)])
        exact, bound = avoidance_probability(dom, sub, 0.6)
        x, z, zt = 0.6, 0.0, 0.0
        for w in enumerate_domain_walks(dom):
            wt = x ** w.length
            z += wt
            if bdist(w.vertices, sub.vertex_set(), fam_all) == 1:
                zt += wt
        assert exact == pytest.approx(zt / z)
        assert exact <= bound

    def test_monotone_in_family_size(self):
        dom = self.dom()
        fam_all = box_family(dom, 0)
        sub1 = fam_all.subfamily([BoxSpec((2, 0), 0)])
        sub2 = fam_all.subfamily([BoxSpec((2, 0), 0), BoxSpec((2, 2), 0)])
        p1, _ = avoidance_probability(dom, sub1, 0.6)
        p2, _ = avoidance_probability(dom, sub2, 0.6)
        assert p2 <= p1

    def test_covering_family_zero(self):
        dom = self.dom()
        exact, bound = avoidance_probability(dom, box_family(dom, 0), 0.6)
        assert exact == 0.0


class TestMaximalAvoidance:
    def test_connected_family_gives_finite_bdist(self):
        # with a connected ambient family, no walk can be infinitely far
        # from a family it stays inside the domain with
        dom = rectangle_domain(5, 5, (0, 2), (4, 2))
        fam = box_family(dom, 0)
        assert fam.is_connected()
        target = fam.subfamily([BoxSpec((2, 0), 0)]).vertex_set()
        for w in enumerate_domain_walks(dom):
            assert bdist(w.vertices, target, fam) < math.inf


class TestSpaceFilling:
    def test_rows_and_trend_small(self):
        cfg = SamplerConfig(x=0.6, seed=7, burn_in=100, thinning=5)
        rows = space_filling_experiment([6, 8], 0.6, 2, 0, 20, cfg)
        assert [r.radius for r in rows] == [6, 8]
        for r in rows:
            assert r.mean_length > 0
            assert 0 < r.theta < 1
            assert r.mean_largest_hole >= 0

    def test_rejects_bad_arguments(self):
        cfg = SamplerConfig(x=0.6, seed=7)
        with pytest.raises(PreconditionViolation):
            space_filling_experiment([6], -1.0, 2, 0, 10, cfg)
