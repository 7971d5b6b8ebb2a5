"""Lattice geometry primitives: walks, polygons, edge sets, domains.

All coordinates are exact integers in lattice units.  The continuum mesh
size delta only appears as ``GridDomain`` metadata; the single place where
floating point touches geometry is the boundary snapping inside
``discretize_disk``.

Points are plain ``(x, y)`` tuples and edges are canonically ordered pairs
of points, so ordinary Python sets work as edge sets.
"""

from __future__ import annotations

import math
from collections import deque
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import DegenerateDomain, NotAPath, SelfIntersection

Point = tuple[int, int]
Edge = tuple[Point, Point]

DIRECTIONS: dict[str, Point] = {
    "U": (0, 1),
    "D": (0, -1),
    "L": (-1, 0),
    "R": (1, 0),
}
_DIR_NAMES = {v: k for k, v in DIRECTIONS.items()}


def neighbors(p: Point) -> tuple[Point, Point, Point, Point]:
    x, y = p
    return ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1))


def edge(p: Point, q: Point) -> Edge:
    """Canonical (lexicographically sorted) nearest-neighbor edge."""
    if abs(p[0] - q[0]) + abs(p[1] - q[1]) != 1:
        raise ValueError(f"not a lattice edge: {p}-{q}")
    return (p, q) if p < q else (q, p)


class Walk:
    """An ordered self-avoiding nearest-neighbor vertex path.

    The empty walk (a single vertex, zero edges) is legal.  Instances are
    immutable; all operations return new walks.
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices: Sequence[Point], _validated: bool = False):
        vs = tuple(vertices)
        if not _validated:
            if not vs:
                raise ValueError("a walk needs at least one vertex")
            for p, q in zip(vs, vs[1:]):
                if abs(p[0] - q[0]) + abs(p[1] - q[1]) != 1:
                    raise ValueError(f"vertices {p} and {q} are not neighbors")
            if len(set(vs)) != len(vs):
                raise SelfIntersection("walk revisits a vertex")
        object.__setattr__(self, "vertices", vs)

    def __setattr__(self, name, value):
        raise AttributeError("Walk is immutable")

    @property
    def length(self) -> int:
        """Number of edges."""
        return len(self.vertices) - 1

    @property
    def start(self) -> Point:
        return self.vertices[0]

    @property
    def end(self) -> Point:
        return self.vertices[-1]

    def edges(self) -> frozenset[Edge]:
        vs = self.vertices
        return frozenset(edge(p, q) for p, q in zip(vs, vs[1:]))

    def translate(self, dx: int, dy: int) -> "Walk":
        return Walk(tuple((x + dx, y + dy) for x, y in self.vertices), _validated=True)

    def reversed(self) -> "Walk":
        return Walk(self.vertices[::-1], _validated=True)

    def directions(self) -> str:
        vs = self.vertices
        return "".join(
            _DIR_NAMES[(q[0] - p[0], q[1] - p[1])] for p, q in zip(vs, vs[1:])
        )

    def __len__(self) -> int:
        return self.length

    def __eq__(self, other) -> bool:
        return isinstance(other, Walk) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        x, y = self.start
        return f"Walk({x},{y}:{self.directions()})"


class Polygon:
    """A closed self-avoiding cycle, stored as a set of canonical edges."""

    __slots__ = ("edges",)

    def __init__(self, edges: Iterable[Edge], _validated: bool = False):
        es = frozenset(edges)
        if not _validated:
            _validate_polygon(es)
        object.__setattr__(self, "edges", es)

    def __setattr__(self, name, value):
        raise AttributeError("Polygon is immutable")

    @property
    def length(self) -> int:
        return len(self.edges)

    def vertices(self) -> frozenset[Point]:
        return frozenset(p for e in self.edges for p in e)

    def canonical(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def __len__(self) -> int:
        return self.length

    def __eq__(self, other) -> bool:
        return isinstance(other, Polygon) and self.edges == other.edges

    def __hash__(self) -> int:
        return hash(self.edges)

    def __repr__(self) -> str:
        return f"Polygon(<{self.length} edges>)"


def _validate_polygon(es: frozenset[Edge]) -> None:
    if len(es) < 4 or len(es) % 2 != 0:
        raise ValueError("polygon length must be even and >= 4")
    deg: dict[Point, int] = {}
    for a, b in es:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    if any(d != 2 for d in deg.values()):
        raise ValueError("polygon has a vertex of degree != 2")
    # single cycle <=> connected given all degrees are 2
    adj: dict[Point, list[Point]] = {v: [] for v in deg}
    for a, b in es:
        adj[a].append(b)
        adj[b].append(a)
    start = next(iter(deg))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(deg):
        raise ValueError("polygon edge set is not a single cycle")


class GridDomain:
    """A discretized domain: connected lattice sites plus two marked
    boundary sites.  ``delta`` is carried as metadata only."""

    __slots__ = ("delta", "sites", "a_site", "b_site")

    def __init__(
        self,
        delta: Fraction,
        sites: Iterable[Point],
        a_site: Point,
        b_site: Point,
        _validated: bool = False,
    ):
        ss = frozenset(sites)
        if not _validated:
            if delta <= 0:
                raise ValueError("delta must be positive")
            if a_site not in ss or b_site not in ss:
                raise ValueError("marked sites must belong to the domain")
            if ss and len(_component_of(ss, next(iter(ss)))) != len(ss):
                raise ValueError("domain sites must be connected")
        object.__setattr__(self, "delta", Fraction(delta))
        object.__setattr__(self, "sites", ss)
        object.__setattr__(self, "a_site", a_site)
        object.__setattr__(self, "b_site", b_site)

    def __setattr__(self, name, value):
        raise AttributeError("GridDomain is immutable")

    def __contains__(self, p: Point) -> bool:
        return p in self.sites

    def __len__(self) -> int:
        return len(self.sites)

    def __repr__(self) -> str:
        return (
            f"GridDomain(delta={self.delta}, |sites|={len(self.sites)}, "
            f"a={self.a_site}, b={self.b_site})"
        )


def walk_from_directions(start: Point, dirs: str) -> Walk:
    """Decode the canonical ``start + direction string`` walk format."""
    vs = [start]
    seen = {start}
    x, y = start
    for d in dirs:
        dx, dy = DIRECTIONS[d]
        x, y = x + dx, y + dy
        if (x, y) in seen:
            raise SelfIntersection(f"direction string revisits {(x, y)}")
        seen.add((x, y))
        vs.append((x, y))
    return Walk(vs, _validated=True)


def reflect_vertical(w: Walk) -> Walk:
    """Reflect across the vertical line through the walk's first vertex."""
    x0 = w.start[0]
    return Walk(tuple((2 * x0 - x, y) for x, y in w.vertices), _validated=True)


def reflect_diagonal(w: Walk) -> Walk:
    """Reflect across the diagonal y = x through the walk's first vertex."""
    x0, y0 = w.start
    return Walk(
        tuple((x0 + (y - y0), y0 + (x - x0)) for x, y in w.vertices),
        _validated=True,
    )


def concatenate(w1: Walk, w2: Walk) -> Walk:
    """Join w2 (translated so it starts at w1's end) onto w1."""
    dx = w1.end[0] - w2.start[0]
    dy = w1.end[1] - w2.start[1]
    tail = tuple((x + dx, y + dy) for x, y in w2.vertices[1:])
    vs = w1.vertices + tail
    if len(set(vs)) != len(vs):
        raise SelfIntersection("concatenation revisits a vertex")
    return Walk(vs, _validated=True)


def symmetric_difference(sets: Iterable[Iterable[Edge]]) -> frozenset[Edge]:
    """Edges appearing in an odd number of the input sets."""
    acc: set[Edge] = set()
    for s in sets:
        acc ^= set(s)
    return frozenset(acc)


def edge_set_to_walk(edges: Iterable[Edge], a: Point, b: Point) -> Walk:
    """Reconstruct the simple path from a to b formed by ``edges``.

    Raises NotAPath on any degree violation, disconnection or stray cycle.
    """
    es = set(edges)
    if not es:
        raise NotAPath("empty edge set")
    adj: dict[Point, list[Point]] = {}
    for p, q in es:
        adj.setdefault(p, []).append(q)
        adj.setdefault(q, []).append(p)
    for v, nb in adj.items():
        want = 1 if v in (a, b) else 2
        if len(nb) != want:
            raise NotAPath(f"vertex {v} has degree {len(nb)}, expected {want}")
    if a == b or a not in adj or b not in adj:
        raise NotAPath("endpoints missing from the edge set")
    vs = [a]
    prev = None
    cur = a
    while cur != b:
        nxt = [w for w in adj[cur] if w != prev]
        if len(nxt) != 1:
            raise NotAPath("broken chain while tracing")
        prev, cur = cur, nxt[0]
        vs.append(cur)
    if len(vs) - 1 != len(es):
        raise NotAPath("edge set contains a component disjoint from the path")
    return Walk(vs, _validated=True)


def _component_of(points: frozenset[Point] | set[Point], start: Point) -> set[Point]:
    seen = {start}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for q in neighbors(p):
            if q in points and q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def components(points: Iterable[Point]) -> list[frozenset[Point]]:
    """Lattice-connected components, largest first, ties by smallest member."""
    todo = set(points)
    out: list[frozenset[Point]] = []
    while todo:
        start = next(iter(todo))
        comp = _component_of(todo, start)
        todo -= comp
        out.append(frozenset(comp))
    out.sort(key=lambda c: (-len(c), min(c)))
    return out


def discretize_disk(radius: int, a_angle: float, b_angle: float) -> GridDomain:
    """Discretize the unit disk at mesh 1/radius.

    Sites are the largest connected component of lattice points within
    Euclidean distance ``radius`` of the origin.  The marked sites are the
    in-domain points closest to radius*(cos t, sin t) for the two angles,
    ties broken lexicographically.
    """
    if radius < 2:
        raise ValueError("radius must be >= 2")
    r2 = radius * radius
    pts = {
        (x, y)
        for x in range(-radius, radius + 1)
        for y in range(-radius, radius + 1)
        if x * x + y * y <= r2
    }
    comps = components(pts)
    sites = comps[0]

    def closest(angle: float) -> Point:
        tx = radius * math.cos(angle)
        ty = radius * math.sin(angle)
        return min(sites, key=lambda p: ((p[0] - tx) ** 2 + (p[1] - ty) ** 2, p))

    a_site = closest(a_angle)
    b_site = closest(b_angle)
    if a_site == b_site:
        raise DegenerateDomain(f"both angles snap to {a_site}")
    return GridDomain(Fraction(1, radius), sites, a_site, b_site, _validated=True)


def rectangle_domain(
    nx: int,
    ny: int,
    a_site: Point | None = None,
    b_site: Point | None = None,
    delta: Fraction = Fraction(1),
) -> GridDomain:
    """An nx-by-ny block of sites [0,nx) x [0,ny); default marks are the
    lower-left and upper-right corners."""
    if nx < 1 or ny < 1 or nx * ny < 2:
        raise ValueError("rectangle needs at least two sites")
    sites = frozenset((x, y) for x in range(nx) for y in range(ny))
    a = a_site if a_site is not None else (0, 0)
    b = b_site if b_site is not None else (nx - 1, ny - 1)
    return GridDomain(delta, sites, a, b)


def dilate(domain: GridDomain, walk: Walk, xi: int) -> frozenset[Point]:
    """Sites of the domain at graph distance (inside the domain) strictly
    less than xi from some vertex of the walk."""
    if xi < 1:
        return frozenset()
    seeds = [p for p in walk.vertices if p in domain.sites]
    dist = {p: 0 for p in seeds}
    queue = deque(seeds)
    while queue:
        p = queue.popleft()
        d = dist[p]
        if d + 1 >= xi:
            continue
        for q in neighbors(p):
            if q in domain.sites and q not in dist:
                dist[q] = d + 1
                queue.append(q)
    return frozenset(dist)


def domain_edges(domain: GridDomain) -> frozenset[Edge]:
    """All lattice edges with both endpoints in the domain."""
    out = set()
    for p in domain.sites:
        for q in ((p[0] + 1, p[1]), (p[0], p[1] + 1)):
            if q in domain.sites:
                out.add((p, q))
    return frozenset(out)


def shortest_path(domain: GridDomain, a: Point, b: Point) -> Walk:
    """BFS geodesic inside the domain; used as an initial MCMC state."""
    prev: dict[Point, Point | None] = {a: None}
    queue = deque([a])
    while queue:
        p = queue.popleft()
        if p == b:
            break
        for q in neighbors(p):
            if q in domain.sites and q not in prev:
                prev[q] = p
                queue.append(q)
    if b not in prev:
        raise NotAPath("no path between the marked sites")
    vs = [b]
    cur: Point | None = b
    while prev[cur] is not None:
        cur = prev[cur]
        vs.append(cur)
    return Walk(vs[::-1], _validated=True)


def iter_saws(
    start: Point,
    allowed: frozenset[Point] | None,
    n_max: int,
) -> Iterator[Walk]:
    """Yield every self-avoiding walk from ``start`` of length 1..n_max,
    optionally restricted to ``allowed`` sites.  Pure-Python reference
    enumerator; the hot counting paths live in :mod:`sawlab.kernels`."""
    path = [start]
    occupied = {start}

    def rec() -> Iterator[Walk]:
        if len(path) - 1 >= n_max:
            return
        for q in neighbors(path[-1]):
            if q in occupied:
                continue
            if allowed is not None and q not in allowed:
                continue
            path.append(q)
            occupied.add(q)
            yield Walk(tuple(path), _validated=True)
            yield from rec()
            occupied.discard(q)
            path.pop()

    return rec()
