"""Hot numeric kernels with a numba fast path and a pure-Python fallback.

Every kernel here is written against numpy arrays in a style that compiles
under ``numba.njit`` unchanged.  Set the environment variable
``SAWLAB_PURE_PYTHON=1`` to skip compilation and run the same functions as
plain Python; results are bit-identical in both modes (the samplers use
numba's numpy-compatible Mersenne Twister).  ``benchmarks/bench_kernels.py``
compares the two paths.
"""

from __future__ import annotations

import os

import numpy as np

PURE_PYTHON = os.environ.get("SAWLAB_PURE_PYTHON", "") not in ("", "0")

if not PURE_PYTHON:
    try:
        from numba import njit as _njit
    except ImportError:  # pragma: no cover - numba is a hard dep, but degrade
        PURE_PYTHON = True

USING_NUMBA = not PURE_PYTHON


def _jit(func):
    if USING_NUMBA:
        return _njit(cache=True, nogil=True)(func)
    return func


# direction tables shared by all kernels: +x, -x, +y, -y
_DX = np.array([1, -1, 0, 0], dtype=np.int64)
_DY = np.array([0, 0, 1, -1], dtype=np.int64)


def _dfs_count_impl(occ, x0, y0, maxy0, depth0, n_max, counts, mode, ybase):
    """DFS-count self-avoiding extensions of a marked prefix.

    ``occ`` must already contain the prefix, including its head (x0, y0);
    ``maxy0`` is the prefix's running maximum height.  ``counts[d]``
    accumulates walks of length d for depth0 < d <= n_max.

    mode 0: every walk counts.
    mode 1: walks whose final height equals the running maximum count;
            heights below ybase are pruned.
    mode 2: as mode 1 but heights <= ybase are pruned after the start.
    """
    xs = np.empty(n_max + 2, np.int64)
    ys = np.empty(n_max + 2, np.int64)
    mys = np.empty(n_max + 2, np.int64)
    tried = np.empty(n_max + 2, np.int64)
    d = depth0
    xs[d] = x0
    ys[d] = y0
    mys[d] = maxy0
    tried[d] = 0
    while True:
        if d == n_max or tried[d] == 4:
            if d == depth0:
                break
            occ[xs[d], ys[d]] = 0
            d -= 1
            continue
        k = tried[d]
        tried[d] += 1
        nx = xs[d] + _DX[k]
        ny = ys[d] + _DY[k]
        if occ[nx, ny] != 0:
            continue
        if mode == 1 and ny < ybase:
            continue
        if mode == 2 and ny <= ybase:
            continue
        occ[nx, ny] = 1
        d += 1
        xs[d] = nx
        ys[d] = ny
        my = mys[d - 1]
        if ny > my:
            my = ny
        mys[d] = my
        tried[d] = 0
        if mode == 0 or ny == my:
            counts[d] += 1


def _count_paths_impl(allowed, occ, x0, y0, tx, ty, n_max, counts):
    """Count self-avoiding paths from (x0,y0) to (tx,ty) inside the mask
    ``allowed``, tallied by length into ``counts``.  The start must already
    be marked in ``occ``.  Paths stop at the target (a self-avoiding walk
    can visit its endpoint only once)."""
    xs = np.empty(n_max + 2, np.int64)
    ys = np.empty(n_max + 2, np.int64)
    tried = np.empty(n_max + 2, np.int64)
    d = 0
    xs[0] = x0
    ys[0] = y0
    tried[0] = 0
    if x0 == tx and y0 == ty:
        counts[0] += 1
        return
    while True:
        if d == n_max or tried[d] == 4:
            if d == 0:
                break
            occ[xs[d], ys[d]] = 0
            d -= 1
            continue
        k = tried[d]
        tried[d] += 1
        nx = xs[d] + _DX[k]
        ny = ys[d] + _DY[k]
        if allowed[nx, ny] == 0 or occ[nx, ny] != 0:
            continue
        if nx == tx and ny == ty:
            counts[d + 1] += 1
            continue
        occ[nx, ny] = 1
        d += 1
        xs[d] = nx
        ys[d] = ny
        tried[d] = 0


def _count_cycles_impl(edge_ok, req_id, occ, x0, y0, tx, ty, n_req, max_len, counts):
    """Count simple cycles containing every required edge, by length.

    The cycle is searched as a path from (x0,y0) to (tx,ty); the closing
    required edge (id 0, from target back to start) is excluded from
    ``edge_ok`` by the caller and accounts for the +1 in the recorded
    length.  ``req_id[x,y,k]`` is -1 or the id of the required edge leaving
    (x,y) in direction k (both orientations carry the same id).

    Prune: once a vertex is buried in the path interior, any unused
    required edge incident to it can never be traversed.
    """
    xs = np.empty(max_len + 2, np.int64)
    ys = np.empty(max_len + 2, np.int64)
    tried = np.empty(max_len + 2, np.int64)
    used_at = np.empty(max_len + 2, np.int64)  # req id consumed entering depth d
    used = np.zeros(n_req, np.int8)
    n_used = 0
    d = 0
    xs[0] = x0
    ys[0] = y0
    tried[0] = 0
    used_at[0] = -1
    while True:
        if d == max_len or tried[d] == 4:
            if d == 0:
                break
            occ[xs[d], ys[d]] = 0
            rid = used_at[d]
            if rid >= 0:
                used[rid] = 0
                n_used -= 1
            d -= 1
            continue
        k = tried[d]
        tried[d] += 1
        cx = xs[d]
        cy = ys[d]
        if edge_ok[cx, cy, k] == 0:
            continue
        nx = cx + _DX[k]
        ny = cy + _DY[k]
        if nx == tx and ny == ty:
            rid = req_id[cx, cy, k]
            take = n_used
            if rid >= 0 and used[rid] == 0:
                take += 1
            if take == n_req:
                counts[d + 2] += 1  # path edges + this edge + closing edge
            continue
        if occ[nx, ny] != 0:
            continue
        rid = req_id[cx, cy, k]
        consumed = -1
        if rid >= 0 and used[rid] == 0:
            used[rid] = 1
            n_used += 1
            consumed = rid
        # cx is now buried in the path interior and can never be revisited,
        # so any required edge at cx that is still unused is unreachable
        dead = False
        for j in range(4):
            r2 = req_id[cx, cy, j]
            if r2 >= 0 and used[r2] == 0:
                dead = True
                break
        if dead:
            if consumed >= 0:
                used[consumed] = 0
                n_used -= 1
            continue
        occ[nx, ny] = 1
        d += 1
        xs[d] = nx
        ys[d] = ny
        tried[d] = 0
        used_at[d] = consumed


def _seed_impl(seed):
    np.random.seed(seed)


def _mcmc_sweep_impl(wx, wy, length, occ, dom, x, nprop, acc):
    """Run ``nprop`` local-move proposals on a fixed-endpoint walk.

    wx/wy hold the walk's vertices (length+1 of them) in grid coordinates;
    occ marks occupied sites, dom marks the domain.  Moves:

      * corner flip: reflect an interior vertex across its neighbors
        (length change 0, symmetric proposal, always accepted if legal);
      * kink insertion at an edge, chosen uniformly among the L edges and
        2 sides (length +2, accepted with min(1, 2 x^2));
      * kink deletion at a U-turn triple, chosen uniformly among the L-2
        triples (length -2, accepted with min(1, x^-2 / 2)).

    The asymmetric acceptance factors are the Metropolis-Hastings
    corrections for the mismatched proposal counts, so detailed balance
    holds for the stationary weight x^length.

    Returns the new length.  acc[0..2] count accepted flips, insertions
    and deletions; acc[3] counts total accepted moves.
    """
    L = length
    cap = wx.shape[0]
    p_ins = min(1.0, 2.0 * x * x)
    p_del = min(1.0, 1.0 / (2.0 * x * x))
    for _ in range(nprop):
        r = np.random.random()
        if r < 1.0 / 3.0:
            # corner flip
            if L < 2:
                continue
            i = 1 + int(np.random.random() * (L - 1))
            if i > L - 1:
                i = L - 1
            ax = wx[i - 1]
            ay = wy[i - 1]
            bx = wx[i + 1]
            by = wy[i + 1]
            if ax == bx or ay == by:
                continue  # straight or doubled-back: no corner
            qx = ax + bx - wx[i]
            qy = ay + by - wy[i]
            if dom[qx, qy] == 0 or occ[qx, qy] != 0:
                continue
            occ[wx[i], wy[i]] = 0
            occ[qx, qy] = 1
            wx[i] = qx
            wy[i] = qy
            acc[0] += 1
            acc[3] += 1
        elif r < 2.0 / 3.0:
            # kink insertion
            if L + 2 > cap - 1:
                continue
            j = int(np.random.random() * L)
            if j > L - 1:
                j = L - 1
            ex = wx[j + 1] - wx[j]
            ey = wy[j + 1] - wy[j]
            side = 1.0 if np.random.random() < 0.5 else -1.0
            px = int(side) * (-ey)
            py = int(side) * ex
            ux = wx[j] + px
            uy = wy[j] + py
            vx = wx[j + 1] + px
            vy = wy[j + 1] + py
            if dom[ux, uy] == 0 or dom[vx, vy] == 0:
                continue
            if occ[ux, uy] != 0 or occ[vx, vy] != 0:
                continue
            if p_ins < 1.0 and np.random.random() >= p_ins:
                continue
            for t in range(L, j, -1):
                wx[t + 2] = wx[t]
                wy[t + 2] = wy[t]
            wx[j + 1] = ux
            wy[j + 1] = uy
            wx[j + 2] = vx
            wy[j + 2] = vy
            occ[ux, uy] = 1
            occ[vx, vy] = 1
            L += 2
            acc[1] += 1
            acc[3] += 1
        else:
            # kink deletion
            if L < 3:
                continue
            j = int(np.random.random() * (L - 2))
            if j > L - 3:
                j = L - 3
            e1x = wx[j + 1] - wx[j]
            e1y = wy[j + 1] - wy[j]
            e3x = wx[j + 3] - wx[j + 2]
            e3y = wy[j + 3] - wy[j + 2]
            if e3x != -e1x or e3y != -e1y:
                continue
            # middle edge is perpendicular automatically (self-avoidance)
            if p_del < 1.0 and np.random.random() >= p_del:
                continue
            occ[wx[j + 1], wy[j + 1]] = 0
            occ[wx[j + 2], wy[j + 2]] = 0
            for t in range(j + 1, L - 1):
                wx[t] = wx[t + 2]
                wy[t] = wy[t + 2]
            L -= 2
            acc[2] += 1
            acc[3] += 1
    return L


dfs_count = _jit(_dfs_count_impl)
count_paths = _jit(_count_paths_impl)
count_cycles = _jit(_count_cycles_impl)
seed_rng = _jit(_seed_impl)
mcmc_sweep = _jit(_mcmc_sweep_impl)
