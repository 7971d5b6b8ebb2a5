"""Square-lattice self-avoiding-walk laboratory.

Exact enumeration of walks, bridges, confined walks and polygons;
constructive maps relating them (bridge unfolding, square gluing, polygon
assembly and splice surgery); exact and Markov-chain samplers for the
fixed-endpoint weighted-walk ensemble; and box-family / space-filling
analysis on discretized domains.
"""

from .analysis import (
    HoleReport,
    SpaceFillingRow,
    avoidance_probability,
    holes,
    space_filling_experiment,
)
from .boxes import BoxFamily, BoxSpec, bdist, box_family, boxes_meeting
from .constructions import (
    BridgeDecomposition,
    decompose_bridge,
    find_link_polygon,
    four_to_polygon,
    is_bridge,
    iter_bridges,
    merge_family_polygons,
    rectangle_pair_to_square,
    splice,
    unfold_bridge,
)
from .counting import (
    Budget,
    WeightedCount,
    best_span,
    count_animals,
    count_bridges,
    count_partitions_distinct,
    count_saws,
    count_squared_walks,
    enumerate_Pm,
    enumerate_SF,
    enumerate_domain_walks,
    iter_squared_walks,
    lambda_estimate,
    mu_bounds,
    partition_function,
    zf,
    zm,
)
from .errors import (
    DegenerateDomain,
    NoAdjacentCardinalEdge,
    NoLinkFound,
    NonErgodicWarning,
    NotABridge,
    NotAPath,
    PreconditionViolation,
    ResourceLimit,
    SawlabError,
    SelfIntersection,
)
from .lattice import (
    GridDomain,
    Polygon,
    Walk,
    discretize_disk,
    rectangle_domain,
    walk_from_directions,
)
from .sampler import (
    SamplerConfig,
    length_moments,
    sample_exact,
    sample_exact_many,
    sample_mcmc,
    transition_probabilities,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "1.0.0"
