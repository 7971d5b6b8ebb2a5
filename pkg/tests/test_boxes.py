import math
from collections import deque

import pytest

from sawlab.boxes import BoxFamily, BoxSpec, bdist, box_family, boxes_meeting
from sawlab.lattice import GridDomain, discretize_disk, rectangle_domain


class TestBoxSpec:
    def test_anchor_must_sit_on_grid(self):
        BoxSpec((2, 4), 0)
        with pytest.raises(ValueError):
            BoxSpec((1, 0), 0)
        BoxSpec((4, 8), 1)
        with pytest.raises(ValueError):
            BoxSpec((2, 0), 1)

    def test_vertices_and_side(self):
        b = BoxSpec((0, 0), 1)
        assert b.side == 3
        assert len(b.vertices()) == 16

    def test_cardinal_edges_are_middle_edges(self):
        b = BoxSpec((0, 0), 0)
        assert set(b.cardinal_edges().values()) == {
            ((0, 0), (1, 0)),
            ((1, 0), (1, 1)),
            ((0, 1), (1, 1)),
            ((0, 0), (0, 1)),
        }
        m1 = BoxSpec((0, 0), 1).cardinal_edges()
        assert m1["S"] == ((1, 0), (2, 0))
        assert m1["N"] == ((1, 3), (2, 3))
        assert m1["W"] == ((0, 1), (0, 2))
        assert m1["E"] == ((3, 1), (3, 2))

    def test_neighbor_geometry(self):
        b = BoxSpec((0, 0), 1)
        assert b.neighbor("E").anchor == (4, 0)
        assert b.neighbor("N").anchor == (0, 4)


class TestBoxFamily:
    def test_adjacency_requires_facing_cardinal_edges(self):
        fam = BoxFamily(0, [BoxSpec((0, 0), 0), BoxSpec((2, 0), 0), BoxSpec((0, 2), 0)])
        assert fam.is_connected()
        far = BoxFamily(0, [BoxSpec((0, 0), 0), BoxSpec((4, 4), 0)])
        assert not far.is_connected()

    def test_vertex_and_edge_sets(self):
        fam = BoxFamily(0, [BoxSpec((0, 0), 0), BoxSpec((2, 0), 0)])
        assert fam.vertex_set() == frozenset(
            {(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (3, 0), (2, 1), (3, 1)}
        )
        # the two rungs joining the boxes belong to the edge set
        assert ((1, 0), (2, 0)) in fam.edge_set()
        assert ((1, 1), (2, 1)) in fam.edge_set()

    def test_external_cardinal_edges(self):
        fam = BoxFamily(0, [BoxSpec((0, 0), 0), BoxSpec((2, 0), 0)])
        ext = fam.external_cardinal_edges()
        assert ((1, 0), (1, 1)) not in ext  # faces the partner box
        assert ((0, 0), (0, 1)) in ext


class TestBoxFamilyFromDomain:
    def test_radius2_disk_matches_anchor_scan(self):
        dom = discretize_disk(2, 0.0, math.pi)
        fam = box_family(dom, 0)
        expected = set()
        for ax in range(-4, 5, 2):
            for ay in range(-4, 5, 2):
                box = [(ax + dx, ay + dy) for dx in (0, 1) for dy in (0, 1)]
                if all(p in dom.sites for p in box):
                    expected.add((ax, ay))
        assert {b.anchor for b in fam.boxes} == expected

    def test_disks_give_connected_families(self):
        for r, m in [(8, 0), (16, 0), (16, 1), (24, 1)]:
            if r < 8 * (2 * m + 2):
                continue
            dom = discretize_disk(r, 0.0, math.pi)
            assert box_family(dom, m).is_connected(), (r, m)

    def test_dumbbell_family_disconnected(self):
        sites = set()
        for x in range(0, 5):
            for y in range(0, 5):
                sites.add((x, y))
                sites.add((x + 12, y))
        for x in range(5, 12):
            sites.add((x, 2))
        dom = GridDomain(1, sites, (0, 0), (16, 0))
        fam = box_family(dom, 1)
        assert {b.anchor for b in fam.boxes} == {(0, 0), (12, 0)}
        assert not fam.is_connected()


class TestBdist:
    def fam(self):
        return BoxFamily(
            0,
            [BoxSpec((2 * i, 0), 0) for i in range(5)]
            + [BoxSpec((0, 2), 0), BoxSpec((8, 2), 0)],
        )

    def test_shared_box_distance_zero(self):
        fam = self.fam()
        assert bdist([(0, 0)], [(1, 1)], fam) == 0

    def test_adjacent_boxes_distance_one(self):
        fam = self.fam()
        assert bdist([(0, 0)], [(2, 0)], fam) == 1

    def test_disconnected_infinite(self):
        fam = BoxFamily(0, [BoxSpec((0, 0), 0), BoxSpec((4, 4), 0)])
        assert bdist([(0, 0)], [(4, 4)], fam) == math.inf

    def test_matches_bfs_oracle(self):
        fam = self.fam()
        boxes = sorted(fam.boxes, key=lambda b: b.anchor)
        for i, src in enumerate(boxes):
            for dst in boxes[i:]:
                got = bdist(src.vertices(), dst.vertices(), fam)
                want = _bfs_box_distance(fam, src, dst)
                assert got == want, (src.anchor, dst.anchor)

    def test_points_outside_all_boxes(self):
        fam = self.fam()
        assert bdist([(100, 100)], [(0, 0)], fam) == math.inf


def _bfs_box_distance(fam, src, dst):
    if src == dst:
        return 0
    adj = {
        b: [n for n in fam.boxes if _adjacent(b, n)] for b in fam.boxes
    }
    dist = {src: 0}
    q = deque([src])
    while q:
        b = q.popleft()
        for n in adj[b]:
            if n not in dist:
                dist[n] = dist[b] + 1
                q.append(n)
    return dist.get(dst, math.inf)


def _adjacent(a, b):
    dx = abs(a.anchor[0] - b.anchor[0])
    dy = abs(a.anchor[1] - b.anchor[1])
    return {dx, dy} == {0, 2 * a.m + 2}


def test_boxes_meeting():
    fam = BoxFamily(0, [BoxSpec((0, 0), 0), BoxSpec((2, 0), 0)])
    hit = boxes_meeting(fam, [(0, 1), (5, 5)])
    assert {b.anchor for b in hit} == {(0, 0)}
