"""Exact enumeration and weighted counting of walk and polygon families.

Counts are exact integers; partition-function values are evaluated in
64-bit floating point at the very end.  The counts, not the floats, are
the source of truth.

The heavy depth-first searches run through :mod:`sawlab.kernels`, which
compiles them with numba unless ``SAWLAB_PURE_PYTHON=1`` is set.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .boxes import BoxFamily
from .errors import ResourceLimit
from .lattice import Edge, GridDomain, Point, Polygon, Walk, neighbors


@dataclass
class Budget:
    """Soft resource limits for the exponential enumerators."""

    seconds: float | None = None
    max_n: int = 14
    max_m: int = 2
    max_family: int = 3
    max_exact_sites: int = 64
    started: float = field(default_factory=time.monotonic, repr=False)

    def check_time(self) -> None:
        if self.seconds is not None and time.monotonic() - self.started > self.seconds:
            raise ResourceLimit(f"time budget of {self.seconds}s exceeded")

    def restart(self) -> "Budget":
        self.started = time.monotonic()
        return self


@dataclass(frozen=True)
class WeightedCount:
    """Exact configuration tally by length, evaluable at any weight x > 0."""

    counts_by_length: dict[int, int]

    def evaluate(self, x: float) -> float:
        return float(sum(c * x**n for n, c in sorted(self.counts_by_length.items())))

    def total(self) -> int:
        return sum(self.counts_by_length.values())

    def __getitem__(self, n: int) -> int:
        return self.counts_by_length.get(n, 0)

    @staticmethod
    def from_array(counts) -> "WeightedCount":
        return WeightedCount({n: int(c) for n, c in enumerate(counts) if c})


# ---------------------------------------------------------------------------
# walk-family counters (origin-rooted): plain SAWs and bridges


def _origin_family_counts(n_max, mode, threads=1, budget=None) -> list[int]:
    """counts[n] for n in 1..n_max under the kernel's walk condition."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    budget = budget or Budget()
    if n_max > budget.max_n:
        raise ResourceLimit(f"n_max={n_max} exceeds the budget cap {budget.max_n}")
    off = n_max + 1
    size = 2 * n_max + 3
    counts = np.zeros(n_max + 1, dtype=np.int64)

    # python-side prefix enumeration: count shallow walks directly and
    # collect depth-d0 prefixes as independent kernel tasks
    d0 = min(3, n_max)
    tasks: list[tuple[tuple[Point, ...], int]] = []

    def gen(path: list[Point], maxy: int):
        d = len(path) - 1
        if d > 0 and (mode == 0 or path[-1][1] == maxy):
            counts[d] += 1
        if d == n_max:
            return
        if d == d0:
            tasks.append((tuple(path), maxy))
            return
        for q in neighbors(path[-1]):
            if q in path:
                continue
            if mode == 1 and q[1] < 0:
                continue
            if mode == 2 and q[1] <= 0:
                continue
            path.append(q)
            gen(path, max(maxy, q[1]))
            path.pop()

    gen([(0, 0)], 0)

    def run_task(task):
        path, maxy = task
        occ = np.zeros((size, size), dtype=np.int8)
        for x, y in path:
            occ[x + off, y + off] = 1
        local = np.zeros(n_max + 1, dtype=np.int64)
        hx, hy = path[-1]
        kernels.dfs_count(
            occ, hx + off, hy + off, maxy + off, len(path) - 1, n_max, local, mode, off
        )
        return local

    if threads > 1 and tasks:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for local in pool.map(run_task, tasks):
                counts += local
                budget.check_time()
    else:
        for task in tasks:
            counts += run_task(task)
            budget.check_time()
    return [int(c) for c in counts[1:]]


def count_saws(n_max: int, threads: int = 1, budget: Budget | None = None) -> list[int]:
    """Exact counts c_1..c_n of origin-rooted self-avoiding walks."""
    return _origin_family_counts(n_max, 0, threads, budget)


def count_bridges(
    n_max: int,
    strict: bool = False,
    threads: int = 1,
    budget: Budget | None = None,
) -> list[int]:
    """Exact counts b_1..b_n of self-avoiding bridges.

    Default is the non-strict height condition: the starting height is a
    (not necessarily unique) minimum and the final height a maximum, so
    b_1 = 3.  With ``strict=True`` every interior height must exceed the
    starting one (the classical convention, b_1 = 1); only the strict
    counts satisfy supermultiplicativity and the b_n <= mu^n bound used by
    :func:`mu_bounds`.
    """
    return _origin_family_counts(n_max, 2 if strict else 1, threads, budget)


def mu_bounds(n_max: int, threads: int = 1, budget: Budget | None = None) -> tuple[float, float]:
    """Rigorous sandwich for the connective constant from counts up to
    n_max: max_n b_n^(1/n) <= mu <= min_n c_n^(1/n), with b_n the strict
    bridge counts (the non-strict variant overshoots mu already at n=1)."""
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    budget = budget or Budget()
    cs = count_saws(n_max, threads, budget)
    bs = count_bridges(n_max, strict=True, threads=threads, budget=budget)
    lower = max(b ** (1.0 / n) for n, b in enumerate(bs, start=1))
    upper = min(c ** (1.0 / n) for n, c in enumerate(cs, start=1))
    return lower, upper


# ---------------------------------------------------------------------------
# squared walks


def _paths_in_mask(
    allowed: np.ndarray, start: tuple[int, int], target: tuple[int, int], n_max: int
) -> np.ndarray:
    """Kernel wrapper: path counts by length inside a 0/1 mask."""
    occ = np.zeros_like(allowed)
    occ[start] = 1
    counts = np.zeros(n_max + 2, dtype=np.int64)
    kernels.count_paths(
        allowed, occ, start[0], start[1], target[0], target[1], n_max, counts
    )
    return counts


def _box_mask(k: int) -> np.ndarray:
    """Mask for [0,k]^2 with a one-cell guard ring (grid offset +1)."""
    mask = np.zeros((k + 3, k + 3), dtype=np.int8)
    mask[1 : k + 2, 1 : k + 2] = 1
    return mask


def count_squared_walks(n: int, budget: Budget | None = None) -> tuple[dict[int, int], int]:
    """Counts of length-n walks from (0,0) to (k,k) confined to [0,k]^2,
    keyed by span k, plus the total a_n."""
    if n < 0 or n % 2:
        raise ValueError("length must be even and >= 0")
    budget = budget or Budget()
    if n > budget.max_n:
        raise ResourceLimit(f"n={n} exceeds the budget cap {budget.max_n}")
    by_span: dict[int, int] = {}
    if n == 0:
        return {0: 1}, 1
    for k in range(1, n // 2 + 1):
        if 2 * k > n:
            break
        counts = _paths_in_mask(_box_mask(k), (1, 1), (k + 1, k + 1), n)
        c = int(counts[n])
        if c:
            by_span[k] = c
        budget.check_time()
    return by_span, sum(by_span.values())


def best_span(n: int, budget: Budget | None = None) -> tuple[int, int]:
    """The span k maximizing the confined-walk count a_{n,k}, with the
    count itself; ties resolved toward the smaller span."""
    by_span, _ = count_squared_walks(n, budget)
    if not by_span:
        raise ValueError(f"no confined corner-to-corner walks of length {n}")
    k = max(sorted(by_span), key=lambda s: by_span[s])
    return k, by_span[k]


def squared_walk_table(n_max: int, budget: Budget | None = None) -> dict[int, dict[int, int]]:
    """a_{n,k} for all even n <= n_max; table[n][k]."""
    budget = budget or Budget()
    if n_max > budget.max_n:
        raise ResourceLimit(f"n_max={n_max} exceeds the budget cap {budget.max_n}")
    table: dict[int, dict[int, int]] = {0: {0: 1}}
    for k in range(1, n_max // 2 + 1):
        counts = _paths_in_mask(_box_mask(k), (1, 1), (k + 1, k + 1), n_max)
        for n in range(2 * k, n_max + 1, 2):
            if counts[n]:
                table.setdefault(n, {})[k] = int(counts[n])
        budget.check_time()
    return table


def iter_squared_walks(n: int, k: int) -> Iterator[Walk]:
    """Stream the span-k squared walks of length n."""
    if n == 0:
        if k == 0:
            yield Walk([(0, 0)], _validated=True)
        return
    target = (k, k)

    def inside(p: Point) -> bool:
        return 0 <= p[0] <= k and 0 <= p[1] <= k

    path: list[Point] = [(0, 0)]
    occupied = {(0, 0)}

    def rec() -> Iterator[Walk]:
        d = len(path) - 1
        if d == n:
            if path[-1] == target:
                yield Walk(tuple(path), _validated=True)
            return
        for q in neighbors(path[-1]):
            if not inside(q) or q in occupied:
                continue
            if q == target and d + 1 < n:
                continue
            # parity/distance prune: must still be able to reach the corner
            rem = n - d - 1
            dist = abs(q[0] - k) + abs(q[1] - k)
            if dist > rem or (rem - dist) % 2:
                continue
            path.append(q)
            occupied.add(q)
            yield from rec()
            occupied.discard(q)
            path.pop()

    yield from rec()


# ---------------------------------------------------------------------------
# cycle families: the middle-edge polygons P_m and the box polygons S_F


def _required_cardinal_edges(m: int) -> list[Edge]:
    s = 2 * m + 1
    return [
        ((m, 0), (m + 1, 0)),
        ((s, m), (s, m + 1)),
        ((m, s), (m + 1, s)),
        ((0, m), (0, m + 1)),
    ]


_DIRS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def _cycle_counts(
    edges: frozenset[Edge] | set[Edge], required: Sequence[Edge]
) -> WeightedCount:
    """Count simple cycles within ``edges`` containing every required
    edge, by length, via the compiled DFS kernel."""
    verts = sorted({p for e in edges for p in e})
    xs = [p[0] for p in verts]
    ys = [p[1] for p in verts]
    ox, oy = min(xs) - 1, min(ys) - 1
    w = max(xs) - ox + 2
    h = max(ys) - oy + 2
    edge_ok = np.zeros((w, h, 4), dtype=np.int8)
    req_id = np.full((w, h, 4), -1, dtype=np.int16)

    def put(arr, e, val):
        (x1, y1), (x2, y2) = e
        for k, (dx, dy) in enumerate(_DIRS):
            if (x1 + dx, y1 + dy) == (x2, y2):
                arr[x1 - ox, y1 - oy, k] = val
            if (x2 + dx, y2 + dy) == (x1, y1):
                arr[x2 - ox, y2 - oy, k] = val

    for e in edges:
        put(edge_ok, e, 1)
    closing = required[0]
    for i, e in enumerate(required[1:]):
        put(req_id, e, i)
    put(edge_ok, closing, 0)  # traversed implicitly as the closing edge
    (sx, sy), (txy, tyy) = closing
    occ = np.zeros((w, h), dtype=np.int8)
    occ[sx - ox, sy - oy] = 1
    max_len = len(verts)
    counts = np.zeros(max_len + 3, dtype=np.int64)
    kernels.count_cycles(
        edge_ok,
        req_id,
        occ,
        sx - ox,
        sy - oy,
        txy - ox,
        tyy - oy,
        len(required) - 1,
        max_len,
        counts,
    )
    return WeightedCount.from_array(counts)


def _cycle_stream(
    edges: frozenset[Edge] | set[Edge], required: Sequence[Edge]
) -> Iterator[Polygon]:
    """Pure-Python mirror of :func:`_cycle_counts` that yields the actual
    polygons.  Used for streaming APIs and as the kernel's oracle."""
    closing = required[0]
    start, target = closing
    need = set(required[1:])
    adj: dict[Point, list[Point]] = {}
    for p, q in edges:
        if (p, q) == closing:
            continue
        adj.setdefault(p, []).append(q)
        adj.setdefault(q, []).append(p)
    for v in adj:
        adj[v].sort()
    if start not in adj or target not in adj:
        return
    path = [start]
    occupied = {start}
    used: set[Edge] = set()

    def dead_after_burying(v: Point) -> bool:
        # v can never be revisited: unused required edges at v are dead
        for q in adj.get(v, ()):
            e = (v, q) if v < q else (q, v)
            if e in need and e not in used:
                return True
        return False

    def rec() -> Iterator[Polygon]:
        cur = path[-1]
        for q in adj[cur]:
            e = (cur, q) if cur < q else (q, cur)
            if q == target:
                if need <= (used | {e}):
                    cyc = {closing, e}
                    cyc.update(
                        (a, b) if a < b else (b, a)
                        for a, b in zip(path, path[1:])
                    )
                    yield Polygon(frozenset(cyc), _validated=True)
                continue
            if q in occupied:
                continue
            was_needed = e in need and e not in used
            if was_needed:
                used.add(e)
            if dead_after_burying(cur):
                if was_needed:
                    used.discard(e)
                continue
            path.append(q)
            occupied.add(q)
            yield from rec()
            occupied.discard(q)
            path.pop()
            if was_needed:
                used.discard(e)

    yield from rec()


def _box_grid_edges(m: int) -> frozenset[Edge]:
    s = 2 * m + 1
    out = set()
    for x in range(s + 1):
        for y in range(s + 1):
            if x < s:
                out.add(((x, y), (x + 1, y)))
            if y < s:
                out.add(((x, y), (x, y + 1)))
    return frozenset(out)


def enumerate_Pm(m: int, budget: Budget | None = None) -> Iterator[Polygon]:
    """Stream the polygons in [0,2m+1]^2 containing all four cardinal
    edges, each exactly once."""
    if m < 0:
        raise ValueError("m must be >= 0")
    budget = budget or Budget()
    if m > budget.max_m:
        raise ResourceLimit(f"m={m} exceeds the budget cap {budget.max_m}")
    yield from _cycle_stream(_box_grid_edges(m), _required_cardinal_edges(m))


def zm_counts(m: int, budget: Budget | None = None) -> WeightedCount:
    if m < 0:
        raise ValueError("m must be >= 0")
    budget = budget or Budget()
    if m > budget.max_m:
        raise ResourceLimit(f"m={m} exceeds the budget cap {budget.max_m}")
    return _cycle_counts(_box_grid_edges(m), _required_cardinal_edges(m))


def zm(m: int, x: float, budget: Budget | None = None) -> float:
    """Partition function of the middle-edge polygons in [0,2m+1]^2."""
    return zm_counts(m, budget).evaluate(x)


def enumerate_SF(family: BoxFamily, budget: Budget | None = None) -> Iterator[Polygon]:
    """Stream the polygons confined to the family's edge set that contain
    every external cardinal edge."""
    _check_family(family, budget)
    required = sorted(family.external_cardinal_edges())
    yield from _cycle_stream(family.edge_set(), required)


def zf_counts(family: BoxFamily, budget: Budget | None = None) -> WeightedCount:
    _check_family(family, budget)
    required = sorted(family.external_cardinal_edges())
    return _cycle_counts(family.edge_set(), required)


def zf(family: BoxFamily, x: float, budget: Budget | None = None) -> float:
    return zf_counts(family, budget).evaluate(x)


def _check_family(family: BoxFamily, budget: Budget | None) -> None:
    budget = budget or Budget()
    if not family.boxes:
        raise ValueError("family must be nonempty")
    if not family.is_connected():
        raise ValueError("family must be connected")
    if len(family) > budget.max_family or family.m > budget.max_m:
        raise ResourceLimit(
            f"family size {len(family)} (m={family.m}) exceeds the budget caps "
            f"|F|<={budget.max_family}, m<={budget.max_m}"
        )


# ---------------------------------------------------------------------------
# domain walks


def enumerate_domain_walks(
    domain: GridDomain, budget: Budget | None = None
) -> Iterator[Walk]:
    """Stream every self-avoiding walk from a_site to b_site inside the
    domain, exactly once (in depth-first order)."""
    budget = budget or Budget()
    if len(domain.sites) > budget.max_exact_sites:
        raise ResourceLimit(
            f"{len(domain.sites)} sites exceed the exact-enumeration cap "
            f"{budget.max_exact_sites}"
        )
    a, b = domain.a_site, domain.b_site
    path = [a]
    occupied = {a}

    def rec() -> Iterator[Walk]:
        cur = path[-1]
        if cur == b:
            yield Walk(tuple(path), _validated=True)
            return
        for q in sorted(neighbors(cur)):
            if q in occupied or q not in domain.sites:
                continue
            path.append(q)
            occupied.add(q)
            yield from rec()
            occupied.discard(q)
            path.pop()

    if a == b:
        return
    yield from rec()


def domain_walk_counts(domain: GridDomain, budget: Budget | None = None) -> WeightedCount:
    """Exact a->b walk counts by length, via the compiled path counter."""
    budget = budget or Budget()
    if len(domain.sites) > budget.max_exact_sites:
        raise ResourceLimit(
            f"{len(domain.sites)} sites exceed the exact-enumeration cap "
            f"{budget.max_exact_sites}"
        )
    xs = [p[0] for p in domain.sites]
    ys = [p[1] for p in domain.sites]
    ox, oy = min(xs) - 1, min(ys) - 1
    w = max(xs) - ox + 2
    h = max(ys) - oy + 2
    allowed = np.zeros((w, h), dtype=np.int8)
    for x, y in domain.sites:
        allowed[x - ox, y - oy] = 1
    n_max = len(domain.sites) - 1
    a = (domain.a_site[0] - ox, domain.a_site[1] - oy)
    b = (domain.b_site[0] - ox, domain.b_site[1] - oy)
    counts = _paths_in_mask(allowed, a, b, n_max)
    return WeightedCount.from_array(counts)


def partition_function(domain: GridDomain, x: float, budget: Budget | None = None) -> float:
    """Z(x) = sum over a->b walks of x^length."""
    return domain_walk_counts(domain, budget).evaluate(x)


# ---------------------------------------------------------------------------
# integer partitions and lattice animals


def count_partitions_distinct(A: int) -> int:
    """Number of partitions of A into strictly decreasing positive parts."""
    if A < 1:
        raise ValueError("A must be >= 1")
    dp = [0] * (A + 1)
    dp[0] = 1
    for part in range(1, A + 1):
        for s in range(A, part - 1, -1):
            dp[s] += dp[s - part]
    return dp[A]


def count_animals(n_max: int, budget: Budget | None = None) -> list[int]:
    """A_1..A_n: connected n-site subsets of the lattice containing the
    origin.  Counted as n times the fixed polyomino numbers."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    budget = budget or Budget()
    if n_max > budget.max_n:
        raise ResourceLimit(f"n_max={n_max} exceeds the budget cap {budget.max_n}")
    fixed = [0] * (n_max + 1)

    # Redelmeier: grow in the half-plane so every fixed polyomino appears
    # exactly once, rooted at its lowest-then-leftmost cell.
    def allowed(c: Point) -> bool:
        return c[1] > 0 or (c[1] == 0 and c[0] >= 0)

    seen: set[Point] = {(0, 0)}

    def rec(untried: list[Point], size: int) -> None:
        while untried:
            c = untried.pop()
            fixed[size + 1] += 1
            if size + 1 < n_max:
                fresh = [
                    q for q in neighbors(c) if allowed(q) and q not in seen
                ]
                seen.update(fresh)
                rec(untried + fresh, size + 1)
                seen.difference_update(fresh)
        budget.check_time()

    rec([(0, 0)], 0)
    return [n * fixed[n] for n in range(1, n_max + 1)]


def lambda_estimate(n_max: int, budget: Budget | None = None) -> float:
    """Empirical growth-rate surrogate: max_n A_n^(1/n)."""
    animals = count_animals(n_max, budget)
    return max(a ** (1.0 / n) for n, a in enumerate(animals, start=1))
