"""Box-family observables and space-filling experiments.

Given a sampled (or enumerated) walk in a grid domain, this module
measures the holes it leaves (components of the domain minus the walk's
xi-neighborhood), the probability that a walk stays just outside a chosen
family of boxes, and how these statistics scale as the domain grows.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi

from .boxes import BoxFamily, BoxSpec, bdist, box_family, boxes_meeting
from .constructions import find_link_polygon, splice
from .counting import Budget, enumerate_SF, enumerate_domain_walks, zf
from .errors import NoLinkFound, PreconditionViolation
from .lattice import GridDomain, Point, Walk, components, dilate, discretize_disk
from .sampler import SamplerConfig, sample_mcmc


@dataclass(frozen=True)
class HoleReport:
    """Sizes of the walk-free components of a domain.

    component_sizes lists the components of the domain minus the walk's
    open xi-neighborhood, largest first; the sizes plus the neighborhood's
    footprint partition the domain exactly.
    """

    xi: int
    component_sizes: tuple[int, ...]
    largest: int
    walk_length: int
    domain_size: int

    @property
    def covered(self) -> int:
        """|xi-neighborhood of the walk, intersected with the domain|."""
        return self.domain_size - sum(self.component_sizes)


def holes(domain: GridDomain, walk: Walk, xi: int) -> HoleReport:
    """Components of the domain outside the walk's open xi-neighborhood."""
    if any(p not in domain.sites for p in walk.vertices):
        raise PreconditionViolation("walk leaves the domain")
    blocked = dilate(domain, walk, xi)
    free = frozenset(domain.sites) - blocked
    sizes = tuple(sorted((len(c) for c in components(free)), reverse=True))
    return HoleReport(
        xi=xi,
        component_sizes=sizes,
        largest=sizes[0] if sizes else 0,
        walk_length=walk.length,
        domain_size=len(domain.sites),
    )


def _theta_walks(
    domain: GridDomain, family: BoxFamily, ambient: BoxFamily, budget: Budget | None
) -> tuple[list[Walk], list[Walk]]:
    """Split the domain's walks into those at box distance exactly 1 from
    the family's vertex set and the rest."""
    target = family.vertex_set()
    inside, outside = [], []
    for w in enumerate_domain_walks(domain, budget):
        d = bdist(w.vertices, target, ambient)
        (inside if d == 1 else outside).append(w)
    return inside, outside


def avoidance_probability(
    domain: GridDomain,
    family: BoxFamily,
    x: float,
    budget: Budget | None = None,
) -> tuple[float, float]:
    """Exact probability that a walk sits at box distance 1 from the
    family, and the splice-argument upper bound for it.

    The bound multiplies the worst-case weight loss of the splice surgery
    (a link polygon of length below 10m+10 is added, 4 or 6 edges cancel)
    by the measured multiplicity of the surgery's output map, divided by
    the family's polygon weight Z_F(x).
    """
    if not x > 0:
        raise PreconditionViolation("the weight x must be positive")
    budget = budget or Budget()
    m = family.m
    ambient = box_family(domain, m)
    theta, _ = _theta_walks(domain, family, ambient, budget)
    z = sum(
        float(x) ** w.length for w in enumerate_domain_walks(domain, budget)
    )
    z_theta = sum(float(x) ** w.length for w in theta)
    exact_prob = z_theta / z
    if not theta:
        return 0.0, 0.0

    z_family = zf(family, x, budget)
    sf = list(enumerate_SF(family, budget))
    forbidden_base = family.edge_set()
    outputs: dict[tuple, int] = {}
    for w in theta:
        link = None
        for e in sorted(family.external_cardinal_edges()):
            try:
                link = e, find_link_polygon(w, e, m, forbidden_base - {e}, domain)
                break
            except NoLinkFound:
                continue
        if link is None:
            continue
        e, lp = link
        for p in sf:
            if e not in p.edges:
                continue
            out = splice(w, lp, p)
            key = out.vertices
            outputs[key] = outputs.get(key, 0) + 1
    multiplicity = max(outputs.values(), default=1)
    loss = max(float(x) ** 6, float(x) ** (4 - (10 * m + 10)))
    bound = multiplicity * loss * z / z_family
    return exact_prob, bound


@dataclass(frozen=True)
class SpaceFillingRow:
    radius: int
    mean_largest_hole: float
    std_largest_hole: float
    mean_length: float
    theta: float


def space_filling_experiment(
    radii: list[int],
    x: float,
    xi: int,
    m: int,
    n_samples: int,
    config: SamplerConfig,
    a_angle: float = 0.0,
    b_angle: float = pi,
) -> list[SpaceFillingRow]:
    """For each disk radius, sample walks and record hole and density
    statistics; one row per radius."""
    if not x > 0 or n_samples <= 0:
        raise PreconditionViolation("x and n_samples must be positive")
    rows = []
    for r in radii:
        domain = discretize_disk(r, a_angle, b_angle)
        cfg = SamplerConfig(
            x=x, seed=config.seed, burn_in=config.burn_in,
            thinning=config.thinning, max_length=config.max_length,
        )
        largest, lengths = [], []
        for w in sample_mcmc(domain, cfg, n_samples):
            largest.append(holes(domain, w, xi).largest)
            lengths.append(w.length)
        n = len(largest)
        mean_l = sum(largest) / n
        var_l = sum((v - mean_l) ** 2 for v in largest) / (n - 1) if n > 1 else 0.0
        mean_len = sum(lengths) / n
        rows.append(
            SpaceFillingRow(
                radius=r,
                mean_largest_hole=mean_l,
                std_largest_hole=var_l ** 0.5,
                mean_length=mean_len,
                theta=mean_len / len(domain.sites),
            )
        )
    return rows
