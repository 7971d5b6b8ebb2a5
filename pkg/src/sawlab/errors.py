"""Exception types shared across sawlab."""


class SawlabError(Exception):
    """Base class for all sawlab errors."""


class SelfIntersection(SawlabError):
    """A walk (or a concatenation of walks) revisits a vertex."""


class NotAPath(SawlabError):
    """An edge set does not form a single simple path between the
    requested endpoints (degree violation, disconnection, or stray cycle)."""


class NotABridge(SawlabError):
    """A walk does not satisfy the bridge height condition."""


class DegenerateDomain(SawlabError):
    """Domain discretization produced coinciding boundary sites."""


class PreconditionViolation(SawlabError):
    """An operation was called with inputs outside its contract."""


class NoAdjacentCardinalEdge(SawlabError):
    """No pair of facing cardinal edges is available for a polygon merge."""


class NoLinkFound(SawlabError):
    """No link polygon satisfies the three link properties.

    This must never be swallowed silently: for the geometries we target a
    link always exists, so raising it signals a genuinely broken scene.
    """


class ResourceLimit(SawlabError):
    """A configured time or size budget was exceeded."""


class NonErgodicWarning(UserWarning):
    """The Markov chain accepted no moves over a whole diagnostic window."""
