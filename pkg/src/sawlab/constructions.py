"""Executable versions of the constructive maps behind the counting bounds:
bridge unfolding, rectangle-to-square gluing, the four-walk polygon
assembly, polygon merging across adjacent boxes, and the link-polygon
splice surgery.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .boxes import _OPPOSITE, BoxFamily, BoxSpec
from .errors import (
    NoAdjacentCardinalEdge,
    NoLinkFound,
    NotABridge,
    PreconditionViolation,
)
from .lattice import (
    Edge,
    GridDomain,
    Point,
    Polygon,
    Walk,
    concatenate,
    edge_set_to_walk,
    neighbors,
    reflect_diagonal,
    reflect_vertical,
    symmetric_difference,
)


def is_bridge(w: Walk, strict: bool = False) -> bool:
    ys = [p[1] for p in w.vertices]
    if strict:
        return all(y > ys[0] for y in ys[1:]) and ys[-1] == max(ys)
    return ys[0] == min(ys) and ys[-1] == max(ys)


def iter_bridges(n_max: int, strict: bool = False) -> Iterator[Walk]:
    """All bridges of length 1..n_max from the origin, depth-first order."""
    path: list[Point] = [(0, 0)]
    occupied = {(0, 0)}

    def rec() -> Iterator[Walk]:
        if len(path) - 1 >= n_max:
            return
        maxy = max(p[1] for p in path)
        for q in neighbors(path[-1]):
            if q in occupied:
                continue
            if q[1] < 0 or (strict and q[1] <= 0):
                continue
            path.append(q)
            occupied.add(q)
            if q[1] >= maxy:
                yield Walk(tuple(path), _validated=True)
            yield from rec()
            occupied.discard(q)
            path.pop()

    return rec()


@dataclass(frozen=True)
class BridgeDecomposition:
    """A bridge cut at its alternating horizontal-extreme record times.

    The prefix marks walk backwards in time from the global leftmost point
    (first-time records), the suffix marks forwards to the walk's end
    (last-time records).  Pieces are the subwalks between consecutive cut
    times; their horizontal widths strictly increase over the prefix and
    strictly decrease over the suffix, except that the first two
    suffix widths may tie when the walk revisits its global leftmost
    column after the last rightmost record (e.g. RRRRULLLL).
    """

    m_times: tuple[int, ...]
    n_times: tuple[int, ...]
    p_times: tuple[int, ...]
    q_times: tuple[int, ...]
    pieces: tuple[Walk, ...]
    prefix_widths: tuple[int, ...]
    suffix_widths: tuple[int, ...]


def _first_argmin(xs: Sequence[int], hi: int) -> int:
    best = min(xs[: hi + 1])
    return xs.index(best)


def _first_argmax(xs: Sequence[int], hi: int) -> int:
    best = max(xs[: hi + 1])
    return xs.index(best)


def _last_argmax(xs: Sequence[int], lo: int) -> int:
    best = max(xs[lo:])
    return len(xs) - 1 - xs[::-1].index(best)


def _last_argmin(xs: Sequence[int], lo: int) -> int:
    best = min(xs[lo:])
    return len(xs) - 1 - xs[::-1].index(best)


def decompose_bridge(gamma: Walk) -> BridgeDecomposition:
    """Cut a bridge at its recursive horizontal record times."""
    if not is_bridge(gamma):
        raise NotABridge(f"{gamma!r} fails the height condition")
    xs = [p[0] for p in gamma.vertices]
    n = gamma.length

    m_times: list[int] = []
    n_times: list[int] = []
    hi = n
    while True:
        m = _first_argmin(xs, hi)
        m_times.append(m)
        if m == 0:
            break
        nk = _first_argmax(xs, m)
        n_times.append(nk)
        if nk == 0:
            m_times.append(0)  # convention: close with a leading cut at 0
            break
        hi = nk

    m1 = m_times[0]
    p_times: list[int] = []
    q_times: list[int] = []
    lo = m1
    while True:
        p = _last_argmax(xs, lo)
        p_times.append(p)
        if p == n:
            break
        qk = _last_argmin(xs, p)
        q_times.append(qk)
        if qk == n:
            p_times.append(n)  # mirrored convention at the far end
            break
        assert qk > p, "suffix recursion must advance"
        lo = qk

    prefix_cuts = sorted(set([0, *m_times, *n_times, m1]))
    suffix_cuts = sorted(set([m1, *p_times, *q_times, n]))

    def subwalk(i: int, j: int) -> Walk:
        return Walk(gamma.vertices[i : j + 1], _validated=True)

    prefix_pieces = [
        subwalk(i, j) for i, j in zip(prefix_cuts, prefix_cuts[1:])
    ]
    suffix_pieces = [
        subwalk(i, j) for i, j in zip(suffix_cuts, suffix_cuts[1:])
    ]
    widths = lambda ps: tuple(abs(p.end[0] - p.start[0]) for p in ps)
    return BridgeDecomposition(
        m_times=tuple(m_times),
        n_times=tuple(n_times),
        p_times=tuple(p_times),
        q_times=tuple(q_times),
        pieces=tuple(prefix_pieces + suffix_pieces),
        prefix_widths=widths(prefix_pieces),
        suffix_widths=widths(suffix_pieces),
    )


def unfold_bridge(gamma: Walk) -> tuple[Walk, tuple[tuple[int, ...], tuple[int, ...]]]:
    """Straighten a bridge into a corner-to-corner walk of a rectangle.

    Each decomposition piece is reflected (about the vertical line through
    its own start) whenever its net horizontal displacement points left,
    then the pieces are re-joined in time order.  The result starts at
    (0,0), ends at some (k,l) and stays inside [0,k] x [0,l]; together
    with the two width sequences it determines the bridge uniquely.
    """
    dec = decompose_bridge(gamma)
    out: Walk | None = None
    for piece in dec.pieces:
        if piece.end[0] < piece.start[0]:
            piece = reflect_vertical(piece)
        out = piece if out is None else concatenate(out, piece)
    assert out is not None
    dx, dy = -out.start[0], -out.start[1]
    out = out.translate(dx, dy)
    return out, (dec.prefix_widths, dec.suffix_widths)


def in_rectangle(w: Walk) -> bool:
    """Membership in the corner-confined family: starts at (0,0), ends at
    (k,l), and stays inside [0,k] x [0,l]."""
    if w.start != (0, 0):
        return False
    k, l = w.end
    if k < 0 or l < 0:
        return False
    return all(0 <= x <= k and 0 <= y <= l for x, y in w.vertices)


def is_squared_walk(w: Walk) -> bool:
    """A corner-to-corner walk of a square [0,k]^2; k is its span."""
    if not in_rectangle(w):
        return False
    return w.end[0] == w.end[1]


def rectangle_pair_to_square(g1: Walk, g2: Walk) -> Walk:
    """Glue two corner-confined walks with a common endpoint (k,l) into a
    corner-to-corner walk of the square [0,k+l]^2: reflect the first walk
    across the diagonal, then append the second."""
    if not in_rectangle(g1) or not in_rectangle(g2):
        raise PreconditionViolation("both walks must be corner-confined")
    if g1.end != g2.end:
        raise PreconditionViolation(
            f"endpoint mismatch: {g1.end} != {g2.end}"
        )
    return concatenate(reflect_diagonal(g1), g2)


def _rotate_quarter(w: Walk) -> Walk:
    """Rotate by +90 degrees about the origin: (x,y) -> (-y,x)."""
    return Walk(tuple((-y, x) for x, y in w.vertices), _validated=True)


def cardinal_edges_of_square(m: int) -> list[Edge]:
    """The four middle-of-side edges of [0,2m+1]^2."""
    s = 2 * m + 1
    return [
        ((m, 0), (m + 1, 0)),
        ((s, m), (s, m + 1)),
        ((m, s), (m + 1, s)),
        ((0, m), (0, m + 1)),
    ]


def four_to_polygon(g1: Walk, g2: Walk, g3: Walk, g4: Walk, m: int) -> Polygon:
    """Assemble four span-m squared walks into a middle-edge polygon of
    [0,2m+1]^2 of length |g1|+|g2|+|g3|+|g4|+4: the walks fill the four
    quadrant squares and the cardinal edges stitch them into a cycle."""
    for g in (g1, g2, g3, g4):
        if not is_squared_walk(g) or g.end != (m, m):
            raise PreconditionViolation(f"{g!r} is not a span-{m} squared walk")
    t1 = g1.translate(m + 1, 0)
    r2 = _rotate_quarter(g2).translate(m, 0)
    t3 = g3.translate(0, m + 1)
    r4 = _rotate_quarter(g4).translate(2 * m + 1, m + 1)
    edges: set[Edge] = set(cardinal_edges_of_square(m))
    for w in (t1, r2, t3, r4):
        edges |= w.edges()
    return Polygon(edges)


def merge_family_polygons(
    p1: Polygon, box: BoxSpec, p2: Polygon, rest: BoxFamily
) -> Polygon:
    """Merge a single-box polygon with a family polygon across a pair of
    facing cardinal edges: the two facing edges are removed and replaced
    by the two rungs joining them, so lengths add exactly."""
    candidates = []
    for side, ab in sorted(box.cardinal_edges().items(), key=lambda kv: kv[1]):
        nb = box.neighbor(side)
        if nb not in rest.boxes:
            continue
        cd = nb.cardinal_edges()[_OPPOSITE[side]]
        if ab in p1.edges and cd in p2.edges:
            candidates.append((ab, cd))
    if not candidates:
        raise NoAdjacentCardinalEdge(
            "no facing cardinal-edge pair present in both polygons"
        )
    ab, cd = candidates[0]
    (a, b), (c, d) = ab, cd
    ac = (a, c) if a < c else (c, a)
    bd = (b, d) if b < d else (d, b)
    edges = (set(p1.edges) | set(p2.edges)) - {ab, cd} | {ac, bd}
    return Polygon(edges)


def _overlap_ok(
    cycle_edges: frozenset[Edge],
    walk_edges: frozenset[Edge],
    walk_vertices: frozenset[Point],
) -> bool:
    shared = cycle_edges & walk_edges
    if len(shared) == 1:
        pass
    elif len(shared) == 2:
        (e1, e2) = shared
        if not set(e1) & set(e2):
            return False
    else:
        return False
    # every cycle vertex on the walk must sit on a shared edge, else the
    # three-way symmetric difference would grow a degree-4 vertex
    allowed = {v for e in shared for v in e}
    touched = {v for e in cycle_edges for v in e} & walk_vertices
    return touched <= allowed


def find_link_polygon(
    gamma: Walk,
    e: Edge,
    m: int,
    forbidden: frozenset[Edge],
    domain: GridDomain | None = None,
) -> Polygon:
    """Find the canonical link polygon for splicing: a cycle through the
    cardinal edge ``e`` that avoids the family's edge set, overlaps the
    walk in exactly one edge or two adjacent edges, and is shorter than
    10m+10.  Deterministic choice: smallest length, then lexicographically
    smallest canonical edge list.  Raises NoLinkFound if no such cycle
    exists (a scene this geometry should never produce)."""
    bound = 10 * m + 10  # cycle length must be strictly below this
    walk_edges = gamma.edges()
    walk_vertices = frozenset(gamma.vertices)
    u, v = e

    def allowed(p: Point, q: Point) -> bool:
        if domain is not None and (p not in domain.sites or q not in domain.sites):
            return False
        ed = (p, q) if p < q else (q, p)
        return ed != e and ed not in forbidden

    best: tuple[int, tuple[Edge, ...]] | None = None
    path = [u]
    occupied = {u}

    def rec(shared: int) -> None:
        nonlocal best
        cur = path[-1]
        d = len(path) - 1
        for q in sorted(neighbors(cur)):
            if not allowed(cur, q):
                continue
            ed = (cur, q) if cur < q else (q, cur)
            s2 = shared + (1 if ed in walk_edges else 0)
            if s2 > 2:
                continue
            if q == v:
                cyc = frozenset(
                    [e, ed]
                    + [
                        (a, b) if a < b else (b, a)
                        for a, b in zip(path, path[1:])
                    ]
                )
                if len(cyc) == d + 2 and _overlap_ok(cyc, walk_edges, walk_vertices):
                    key = (len(cyc), tuple(sorted(cyc)))
                    if best is None or key < best:
                        best = key
                continue
            if q in occupied:
                continue
            # remaining length must close the cycle under the bound
            dist = abs(q[0] - v[0]) + abs(q[1] - v[1])
            if (d + 1) + dist + 1 >= bound:
                continue
            path.append(q)
            occupied.add(q)
            rec(s2)
            occupied.discard(q)
            path.pop()

    rec(0)
    if best is None:
        raise NoLinkFound(
            f"no link polygon through {e} under length {bound}"
        )
    return Polygon(frozenset(best[1]), _validated=True)


def splice(gamma1: Walk, link: Polygon, gamma2: Polygon) -> Walk:
    """Symmetric-difference surgery: absorb a family polygon into a walk
    through a link polygon.  The result keeps gamma1's endpoints and loses
    exactly 4 or 6 edges to the shared-edge cancellations."""
    edges = symmetric_difference([gamma1.edges(), link.edges, gamma2.edges])
    return edge_set_to_walk(edges, gamma1.start, gamma1.end)
