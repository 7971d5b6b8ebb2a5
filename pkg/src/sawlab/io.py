"""Text, JSON and CSV serialization for walks, polygons, domains and run
manifests.

Canonical formats:
  * walk: ``x,y:DIRS`` — start vertex plus a direction string over UDLR;
  * polygon: one ``x1,y1-x2,y2`` line per edge, canonically sorted;
  * domain: JSON object with delta (exact fraction string), sites and the
    two marked boundary sites;
  * manifest: JSON record describing the command that produced an output.
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import metadata
from pathlib import Path
from typing import Any, Iterable, Sequence

from .lattice import Edge, GridDomain, Point, Polygon, Walk, walk_from_directions


def walk_to_text(w: Walk) -> str:
    return f"{w.start[0]},{w.start[1]}:{w.directions()}"


def walk_from_text(text: str) -> Walk:
    head, _, dirs = text.strip().partition(":")
    xs, ys = head.split(",")
    return walk_from_directions((int(xs), int(ys)), dirs)


def polygon_to_text(p: Polygon) -> str:
    return "\n".join(
        f"{a[0]},{a[1]}-{b[0]},{b[1]}" for a, b in sorted(p.edges)
    )


def polygon_from_text(text: str) -> Polygon:
    edges = set()
    for line in text.strip().splitlines():
        left, _, right = line.strip().partition("-")
        ax, ay = (int(v) for v in left.split(","))
        bx, by = (int(v) for v in right.split(","))
        e = ((ax, ay), (bx, by))
        edges.add(e if e[0] < e[1] else (e[1], e[0]))
    return Polygon(frozenset(edges))


def domain_to_json(d: GridDomain) -> str:
    return json.dumps(
        {
            "delta": str(d.delta),
            "sites": sorted([x, y] for x, y in d.sites),
            "a": list(d.a_site),
            "b": list(d.b_site),
        }
    )


def domain_from_json(text: str) -> GridDomain:
    obj = json.loads(text)
    return GridDomain(
        Fraction(obj["delta"]),
        [(int(x), int(y)) for x, y in obj["sites"]],
        tuple(obj["a"]),
        tuple(obj["b"]),
    )


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def tool_version() -> str:
    try:
        return metadata.version("sawlab")
    except metadata.PackageNotFoundError:
        return "unknown"


@dataclass(frozen=True)
class RunManifest:
    """Record of a command invocation, written next to its artifacts so
    every output file can name the run that produced it."""

    command: str
    parameters: dict[str, Any]
    seed: int
    tool_version: str = field(default_factory=tool_version)
    wall_time: float = 0.0
    budgets: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, default=str)

    def write(self, path: Path) -> None:
        Path(path).write_text(self.to_json() + "\n")
