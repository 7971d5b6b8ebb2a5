"""Box families on the (2m+2)-spaced anchor grid and the box distance.

A box of parameter m covers the (2m+2) x (2m+2) vertices from its anchor
(lower-left corner); its side length as an edge count is 2m+1.  Each side
carries one cardinal edge in its middle.  Two boxes are adjacent when they
are disjoint and a cardinal edge of one faces a cardinal edge of the other
across a single lattice step.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .lattice import Edge, GridDomain, Point


@dataclass(frozen=True, order=True)
class BoxSpec:
    """A (2m+1)-box anchored on the (2m+2)-spaced grid."""

    anchor: Point
    m: int

    def __post_init__(self):
        step = 2 * self.m + 2
        if self.anchor[0] % step or self.anchor[1] % step:
            raise ValueError(f"anchor {self.anchor} not on the {step}-grid")

    @property
    def side(self) -> int:
        return 2 * self.m + 1

    def vertices(self) -> frozenset[Point]:
        ax, ay = self.anchor
        s = self.side
        return frozenset(
            (ax + i, ay + j) for i in range(s + 1) for j in range(s + 1)
        )

    def cardinal_edges(self) -> dict[str, Edge]:
        """The four middle-of-side edges, keyed by side name."""
        ax, ay = self.anchor
        m, s = self.m, self.side
        return {
            "S": ((ax + m, ay), (ax + m + 1, ay)),
            "N": ((ax + m, ay + s), (ax + m + 1, ay + s)),
            "W": ((ax, ay + m), (ax, ay + m + 1)),
            "E": ((ax + s, ay + m), (ax + s, ay + m + 1)),
        }

    def neighbor(self, side: str) -> "BoxSpec":
        step = 2 * self.m + 2
        dx, dy = {"E": (step, 0), "W": (-step, 0), "N": (0, step), "S": (0, -step)}[side]
        return BoxSpec((self.anchor[0] + dx, self.anchor[1] + dy), self.m)


_OPPOSITE = {"N": "S", "S": "N", "E": "W", "W": "E"}


class BoxFamily:
    """A set of m-boxes together with their cardinal-edge adjacency graph."""

    __slots__ = ("m", "boxes", "adjacency")

    def __init__(self, m: int, boxes: Iterable[BoxSpec]):
        bs = frozenset(boxes)
        if any(b.m != m for b in bs):
            raise ValueError("all boxes must share the same m")
        adj: dict[BoxSpec, frozenset[BoxSpec]] = {}
        for b in bs:
            adj[b] = frozenset(
                b.neighbor(s) for s in "NSEW" if b.neighbor(s) in bs
            )
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "boxes", bs)
        object.__setattr__(self, "adjacency", adj)

    def __setattr__(self, name, value):
        raise AttributeError("BoxFamily is immutable")

    def __len__(self) -> int:
        return len(self.boxes)

    def __contains__(self, b: BoxSpec) -> bool:
        return b in self.boxes

    def is_connected(self) -> bool:
        if not self.boxes:
            return False
        start = next(iter(self.boxes))
        seen = {start}
        queue = deque([start])
        while queue:
            b = queue.popleft()
            for nb in self.adjacency[b]:
                if nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        return len(seen) == len(self.boxes)

    def subfamily(self, boxes: Iterable[BoxSpec]) -> "BoxFamily":
        bs = frozenset(boxes)
        if not bs <= self.boxes:
            raise ValueError("not a subset of this family")
        return BoxFamily(self.m, bs)

    def vertex_set(self) -> frozenset[Point]:
        """V_F: every vertex covered by a box of the family."""
        out: set[Point] = set()
        for b in self.boxes:
            out |= b.vertices()
        return frozenset(out)

    def edge_set(self) -> frozenset[Edge]:
        """E_F: lattice edges with both endpoints in V_F."""
        vf = self.vertex_set()
        out: set[Edge] = set()
        for p in vf:
            for q in ((p[0] + 1, p[1]), (p[0], p[1] + 1)):
                if q in vf:
                    out.add((p, q))
        return frozenset(out)

    def external_cardinal_edges(self) -> frozenset[Edge]:
        """Cardinal edges on sides whose facing box is outside the family."""
        out: set[Edge] = set()
        for b in self.boxes:
            for side, e in b.cardinal_edges().items():
                if b.neighbor(side) not in self.boxes:
                    out.add(e)
        return frozenset(out)


def box_family(domain: GridDomain, m: int) -> BoxFamily:
    """All m-boxes fully inside the domain, on the (2m+2) anchor grid."""
    if m < 0:
        raise ValueError("m must be >= 0")
    step = 2 * m + 2
    side = 2 * m + 1
    xs = [p[0] for p in domain.sites]
    ys = [p[1] for p in domain.sites]
    boxes = []
    ax = (min(xs) // step) * step
    while ax <= max(xs):
        ay = (min(ys) // step) * step
        while ay <= max(ys):
            b = BoxSpec((ax, ay), m)
            if all(
                (ax + i, ay + j) in domain.sites
                for i in range(side + 1)
                for j in range(side + 1)
            ):
                boxes.append(b)
            ay += step
        ax += step
    return BoxFamily(m, boxes)


def boxes_meeting(family: BoxFamily, points: Iterable[Point]) -> frozenset[BoxSpec]:
    pts = set(points)
    return frozenset(b for b in family.boxes if b.vertices() & pts)


def bdist(A: Iterable[Point], B: Iterable[Point], family: BoxFamily) -> float:
    """Box distance: size of the smallest connected box set joining the two
    point sets, minus one.  0 when a single box meets both, infinity when
    no connecting set exists."""
    src = boxes_meeting(family, A)
    dst = boxes_meeting(family, B)
    if not src or not dst:
        return float("inf")
    if src & dst:
        return 0
    dist = {b: 0 for b in src}
    queue = deque(src)
    while queue:
        b = queue.popleft()
        for nb in family.adjacency[b]:
            if nb not in dist:
                dist[nb] = dist[b] + 1
                if nb in dst:
                    return dist[nb]
                queue.append(nb)
    return float("inf")
