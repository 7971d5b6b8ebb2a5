"""Samplers for the fixed-endpoint walk ensemble on a grid domain.

The target distribution puts weight x^|gamma| on every self-avoiding walk
gamma between the domain's two marked boundary sites.  Small domains are
sampled exactly from the enumerated distribution; larger ones with a
local-move Markov chain (corner flips plus kink insertion/deletion) whose
acceptance rules satisfy detailed balance for the same weights.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from math import sqrt

import numpy as np

from . import kernels
from .counting import Budget, WeightedCount, domain_walk_counts, enumerate_domain_walks
from .errors import NonErgodicWarning, PreconditionViolation
from .lattice import GridDomain, Point, Walk, shortest_path


@dataclass(frozen=True)
class SamplerConfig:
    """Knobs for the Markov-chain sampler.

    ``burn_in`` and ``thinning`` are measured in sweeps; one sweep is
    ``len(domain.sites)`` elementary proposals.
    """

    x: float
    seed: int = 0
    burn_in: int = 200
    thinning: int = 10
    max_length: int | None = None

    def __post_init__(self) -> None:
        if not self.x > 0:
            raise PreconditionViolation("the weight x must be positive")
        if self.burn_in < 0 or self.thinning < 0:
            raise PreconditionViolation("burn_in and thinning must be >= 0")


def sample_exact_many(
    domain: GridDomain,
    config: SamplerConfig,
    n_samples: int,
    budget: Budget | None = None,
) -> list[Walk]:
    """Draw i.i.d. walks from the exact x^length distribution by full
    enumeration of the domain's a-to-b walks."""
    walks = list(enumerate_domain_walks(domain, budget))
    weights = np.array([float(config.x) ** w.length for w in walks])
    probs = weights / weights.sum()
    rng = np.random.default_rng(config.seed)
    idx = rng.choice(len(walks), size=n_samples, p=probs)
    return [walks[i] for i in idx]


def sample_exact(
    domain: GridDomain, config: SamplerConfig, budget: Budget | None = None
) -> Walk:
    """One exact draw; deterministic given the config's seed."""
    return sample_exact_many(domain, config, 1, budget)[0]


def length_moments(
    domain: GridDomain, x: float, budget: Budget | None = None
) -> tuple[float, float]:
    """Exact mean and variance of the walk length under the x^length
    distribution, from the enumerated length counts."""
    wc = domain_walk_counts(domain, budget)
    z = m1 = m2 = 0.0
    for length, count in wc.counts_by_length.items():
        w = count * float(x) ** length
        z += w
        m1 += length * w
        m2 += length * length * w
    mean = m1 / z
    return mean, m2 / z - mean * mean


class _ChainState:
    """Array-backed walk state shared with the compiled sweep kernel."""

    def __init__(self, domain: GridDomain, max_length: int | None):
        xs = [p[0] for p in domain.sites]
        ys = [p[1] for p in domain.sites]
        self.ox, self.oy = min(xs) - 1, min(ys) - 1
        w = max(xs) - self.ox + 2
        h = max(ys) - self.oy + 2
        self.dom = np.zeros((w, h), dtype=np.int8)
        for px, py in domain.sites:
            self.dom[px - self.ox, py - self.oy] = 1
        cap = (max_length or len(domain.sites)) + 1
        self.wx = np.zeros(cap, dtype=np.int64)
        self.wy = np.zeros(cap, dtype=np.int64)
        self.occ = np.zeros((w, h), dtype=np.int8)
        init = shortest_path(domain, domain.a_site, domain.b_site)
        self.length = init.length
        for i, (px, py) in enumerate(init.vertices):
            self.wx[i] = px - self.ox
            self.wy[i] = py - self.oy
            self.occ[px - self.ox, py - self.oy] = 1

    def walk(self) -> Walk:
        vs = tuple(
            (int(self.wx[i] + self.ox), int(self.wy[i] + self.oy))
            for i in range(self.length + 1)
        )
        return Walk(vs, _validated=True)


def sample_mcmc(
    domain: GridDomain,
    config: SamplerConfig,
    n_samples: int,
    acceptance: np.ndarray | None = None,
):
    """Stream walks (approximately independent, given enough thinning)
    from the x^length distribution via the local-move chain.

    ``acceptance``, if given, must be a length-4 int64 array; it
    accumulates accepted flips, insertions, deletions, and the total.
    """
    state = _ChainState(domain, config.max_length)
    kernels.seed_rng(config.seed)
    acc = acceptance if acceptance is not None else np.zeros(4, dtype=np.int64)
    sweep = len(domain.sites)
    state.length = int(
        kernels.mcmc_sweep(
            state.wx, state.wy, state.length, state.occ, state.dom,
            config.x, config.burn_in * sweep, acc,
        )
    )
    if config.burn_in and acc[3] == 0 and len(domain.sites) > 2:
        warnings.warn(
            "no accepted moves during burn-in; the chain may be frozen",
            NonErgodicWarning,
        )
    for _ in range(n_samples):
        state.length = int(
            kernels.mcmc_sweep(
                state.wx, state.wy, state.length, state.occ, state.dom,
                config.x, config.thinning * sweep, acc,
            )
        )
        yield state.walk()


def estimate_theta(
    domain: GridDomain, x: float, n_samples: int, config: SamplerConfig
) -> tuple[float, float]:
    """Mean occupied fraction |gamma|/|domain| over chain samples, with
    its standard error."""
    if n_samples <= 0:
        raise PreconditionViolation("need at least one sample")
    cfg = SamplerConfig(
        x=x, seed=config.seed, burn_in=config.burn_in,
        thinning=config.thinning, max_length=config.max_length,
    )
    size = len(domain.sites)
    dens = np.array([w.length / size for w in sample_mcmc(domain, cfg, n_samples)])
    return float(dens.mean()), float(dens.std(ddof=1) / sqrt(n_samples)) if n_samples > 1 else 0.0


def transition_probabilities(
    walk: Walk, domain: GridDomain, x: float
) -> dict[tuple[Point, ...], float]:
    """Exact one-proposal transition kernel of the chain from ``walk``,
    mirroring the compiled sweep move by move; used to verify detailed
    balance on small domains."""
    L = walk.length
    vs = list(walk.vertices)
    occupied = set(vs)
    probs: dict[tuple[Point, ...], float] = {}

    def add(target: list[Point], p: float) -> None:
        key = tuple(target)
        probs[key] = probs.get(key, 0.0) + p

    p_ins = min(1.0, 2.0 * x * x)
    p_del = min(1.0, 1.0 / (2.0 * x * x))

    # corner flips: move type 1/3, interior vertex 1/(L-1)
    if L >= 2:
        for i in range(1, L):
            (ax, ay), (cx, cy) = vs[i - 1], vs[i + 1]
            if ax == cx or ay == cy:
                continue
            q = (ax + cx - vs[i][0], ay + cy - vs[i][1])
            if q not in domain.sites or q in occupied:
                continue
            add(vs[:i] + [q] + vs[i + 1 :], (1 / 3) * (1 / (L - 1)))

    # kink insertions: move type 1/3, edge 1/L, side 1/2
    for j in range(L):
        ex, ey = vs[j + 1][0] - vs[j][0], vs[j + 1][1] - vs[j][1]
        for side in (1, -1):
            px, py = side * -ey, side * ex
            u = (vs[j][0] + px, vs[j][1] + py)
            v = (vs[j + 1][0] + px, vs[j + 1][1] + py)
            if u not in domain.sites or v not in domain.sites:
                continue
            if u in occupied or v in occupied:
                continue
            add(vs[: j + 1] + [u, v] + vs[j + 1 :], (1 / 3) * (1 / (2 * L)) * p_ins)

    # kink deletions: move type 1/3, triple 1/(L-2)
    if L >= 3:
        for j in range(L - 2):
            e1 = (vs[j + 1][0] - vs[j][0], vs[j + 1][1] - vs[j][1])
            e3 = (vs[j + 3][0] - vs[j + 2][0], vs[j + 3][1] - vs[j + 2][1])
            if e3 != (-e1[0], -e1[1]):
                continue
            add(vs[: j + 1] + vs[j + 3 :], (1 / 3) * (1 / (L - 2)) * p_del)

    staying = 1.0 - sum(probs.values())
    add(vs, staying)
    return probs


def chi_squared_pvalue(observed: dict, expected: dict, n: int) -> float:
    """Goodness-of-fit p-value for observed category counts against
    expected probabilities (chi-squared survival via the Wilson-Hilferty
    normal approximation is avoided; we use the exact gamma tail)."""
    from math import erfc, exp, lgamma

    chi2 = 0.0
    dof = -1
    for key, p in expected.items():
        e = p * n
        if e <= 0:
            continue
        o = observed.get(key, 0)
        chi2 += (o - e) ** 2 / e
        dof += 1
    if dof <= 0:
        return 1.0
    # regularized upper incomplete gamma Q(dof/2, chi2/2) by series/CF
    return _gamma_q(dof / 2.0, chi2 / 2.0)


def _gamma_q(a: float, z: float) -> float:
    """Regularized upper incomplete gamma function Q(a, z)."""
    from math import exp, lgamma

    if z <= 0:
        return 1.0
    if z < a + 1:
        # lower series
        term = 1.0 / a
        total = term
        k = a
        while True:
            k += 1
            term *= z / k
            total += term
            if term < total * 1e-15:
                break
        p = total * exp(-z + a * np.log(z) - lgamma(a))
        return max(0.0, 1.0 - p)
    # continued fraction for Q
    tiny = 1e-300
    b = z + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 500):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-15:
            break
    return h * exp(-z + a * np.log(z) - lgamma(a))
