"""Command-line entry point.

Every library operation is exposed as a subcommand.  Results go to stdout
as CSV (default) or JSON; ``--out DIR`` writes the same artifact to files
together with a JSON run manifest.  Exit codes: 0 success, 2 precondition
or validation failure, 3 resource budget exceeded, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from math import pi
from pathlib import Path

from . import analysis, boxes, constructions, counting, io, sampler
from .errors import ResourceLimit, SawlabError
from .lattice import GridDomain, Polygon, Walk, discretize_disk, rectangle_domain

USAGE_EXIT = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _read_domain(path: str) -> GridDomain:
    return io.domain_from_json(Path(path).read_text())


def _read_polygon(path: str) -> Polygon:
    return io.polygon_from_text(Path(path).read_text())


def _family(m: int, anchors: str) -> boxes.BoxFamily:
    specs = []
    for part in anchors.split(";"):
        x, y = (int(v) for v in part.split(","))
        specs.append(boxes.BoxSpec((x, y), m))
    return boxes.BoxFamily(m, specs)


def _budget(args) -> counting.Budget:
    kwargs = {}
    if getattr(args, "budget_seconds", None):
        kwargs["seconds"] = args.budget_seconds
    if getattr(args, "max_n", None):
        kwargs["max_n"] = max(args.max_n, 14)
    if getattr(args, "m", None) is not None:
        kwargs["max_m"] = max(args.m, 2)
    return counting.Budget(**kwargs)


# --- subcommand handlers: each returns (header, rows) ---------------------


def _cmd_count_walks(args):
    cs = counting.count_saws(args.max_n, args.threads, _budget(args))
    return ["n", "count"], [[n + 1, c] for n, c in enumerate(cs)]


def _cmd_count_bridges(args):
    bs = counting.count_bridges(args.max_n, args.strict, args.threads, _budget(args))
    return ["n", "count"], [[n + 1, b] for n, b in enumerate(bs)]


def _cmd_count_squared(args):
    by_span, total = counting.count_squared_walks(args.n, _budget(args))
    rows = [[k, c] for k, c in sorted(by_span.items())]
    rows.append(["total", total])
    return ["span", "count"], rows


def _cmd_count_polygons(args):
    wc = counting.zm_counts(args.m, _budget(args))
    return ["length", "count"], [
        [l, c] for l, c in sorted(wc.counts_by_length.items())
    ]


def _cmd_count_animals(args):
    ans = counting.count_animals(args.max_n, _budget(args))
    return ["n", "count"], [[n + 1, a] for n, a in enumerate(ans)]


def _cmd_partitions(args):
    return ["A", "count"], [[args.A, counting.count_partitions_distinct(args.A)]]


def _cmd_mu_bounds(args):
    lo, hi = counting.mu_bounds(args.max_n, args.threads, _budget(args))
    return ["bound", "value"], [["lower", lo], ["upper", hi]]


def _cmd_zm(args):
    return ["m", "x", "value"], [[args.m, args.x, counting.zm(args.m, args.x, _budget(args))]]


def _cmd_zf(args):
    fam = _family(args.m, args.anchors)
    return ["m", "x", "value"], [[args.m, args.x, counting.zf(fam, args.x, _budget(args))]]


def _cmd_unfold(args):
    w = io.walk_from_text(args.walk)
    out, (pw, sw) = constructions.unfold_bridge(w)
    return ["field", "value"], [
        ["walk", io.walk_to_text(out)],
        ["prefix_widths", " ".join(map(str, pw))],
        ["suffix_widths", " ".join(map(str, sw))],
    ]


def _cmd_build_square(args):
    g1 = io.walk_from_text(args.g1)
    g2 = io.walk_from_text(args.g2)
    out = constructions.rectangle_pair_to_square(g1, g2)
    return ["walk"], [[io.walk_to_text(out)]]


def _cmd_build_polygon(args):
    gs = [io.walk_from_text(g) for g in (args.g1, args.g2, args.g3, args.g4)]
    p = constructions.four_to_polygon(*gs, args.m)
    return ["edge"], [[line] for line in io.polygon_to_text(p).splitlines()]


def _cmd_merge(args):
    x, y = (int(v) for v in args.box.split(","))
    box = boxes.BoxSpec((x, y), args.m)
    rest = _family(args.m, args.rest)
    p = constructions.merge_family_polygons(
        _read_polygon(args.p1), box, _read_polygon(args.p2), rest
    )
    return ["edge"], [[line] for line in io.polygon_to_text(p).splitlines()]


def _cmd_splice(args):
    out = constructions.splice(
        io.walk_from_text(args.walk),
        _read_polygon(args.link),
        _read_polygon(args.polygon),
    )
    return ["walk"], [[io.walk_to_text(out)]]


def _mk_config(args) -> sampler.SamplerConfig:
    return sampler.SamplerConfig(
        x=args.x, seed=args.seed, burn_in=args.burn_in, thinning=args.thinning
    )


def _cmd_sample_exact(args):
    dom = _read_domain(args.domain)
    ws = sampler.sample_exact_many(dom, _mk_config(args), args.n_samples)
    return ["walk"], [[io.walk_to_text(w)] for w in ws]


def _cmd_sample_mcmc(args):
    dom = _read_domain(args.domain)
    ws = sampler.sample_mcmc(dom, _mk_config(args), args.n_samples)
    return ["walk"], [[io.walk_to_text(w)] for w in ws]


def _cmd_theta(args):
    dom = _read_domain(args.domain)
    mean, se = sampler.estimate_theta(dom, args.x, args.n_samples, _mk_config(args))
    return ["statistic", "value"], [["mean_density", mean], ["std_error", se]]


def _cmd_holes(args):
    dom = _read_domain(args.domain)
    hr = analysis.holes(dom, io.walk_from_text(args.walk), args.xi)
    rows = [
        ["xi", hr.xi],
        ["largest", hr.largest],
        ["walk_length", hr.walk_length],
        ["domain_size", hr.domain_size],
        ["component_sizes", " ".join(map(str, hr.component_sizes))],
    ]
    return ["field", "value"], rows


def _cmd_avoidance(args):
    dom = _read_domain(args.domain)
    fam = _family(args.m, args.anchors)
    exact, bound = analysis.avoidance_probability(dom, fam, args.x, _budget(args))
    return ["statistic", "value"], [["exact_prob", exact], ["bound", bound]]


def _cmd_spacefill(args):
    radii = [int(r) for r in args.radii.split(",")]
    rows = analysis.space_filling_experiment(
        radii, args.x, args.xi, args.m, args.n_samples, _mk_config(args)
    )
    header = ["radius", "mean_largest_hole", "std_largest_hole", "mean_length", "theta"]
    table = [
        [r.radius, r.mean_largest_hole, r.std_largest_hole, r.mean_length, r.theta]
        for r in rows
    ]
    if args.plot:
        _plot_spacefill(rows, args)
    return header, table


def _cmd_report(args):
    cs = counting.count_saws(args.max_n, args.threads, _budget(args))
    bs = counting.count_bridges(args.max_n, False, args.threads, _budget(args))
    lo, hi = counting.mu_bounds(args.max_n, args.threads, _budget(args))
    rows = [["walks_" + str(n + 1), c] for n, c in enumerate(cs)]
    rows += [["bridges_" + str(n + 1), b] for n, b in enumerate(bs)]
    rows += [["mu_lower", lo], ["mu_upper", hi]]
    rows += [["partitions_distinct_40", counting.count_partitions_distinct(40)]]
    return ["quantity", "value"], rows


def _plot_spacefill(rows, args):
    try:
        import matplotlib

        matplotlib.use("svg")
        import matplotlib.pyplot as plt
    except ImportError as exc:
        raise SawlabError("--plot requires matplotlib") from exc
    import math

    fig, ax = plt.subplots()
    ax.errorbar(
        [math.log(r.radius) for r in rows],
        [r.mean_largest_hole for r in rows],
        yerr=[r.std_largest_hole for r in rows],
        marker="o",
    )
    ax.set_xlabel("log R")
    ax.set_ylabel("mean largest hole")
    out = Path(args.out or ".") / "spacefill.svg"
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out)
    plt.close(fig)


_HANDLERS = {
    "count-walks": _cmd_count_walks,
    "count-bridges": _cmd_count_bridges,
    "count-squared": _cmd_count_squared,
    "count-polygons": _cmd_count_polygons,
    "count-animals": _cmd_count_animals,
    "partitions": _cmd_partitions,
    "mu-bounds": _cmd_mu_bounds,
    "zm": _cmd_zm,
    "zf": _cmd_zf,
    "unfold": _cmd_unfold,
    "build-square": _cmd_build_square,
    "build-polygon": _cmd_build_polygon,
    "merge": _cmd_merge,
    "splice": _cmd_splice,
    "sample-exact": _cmd_sample_exact,
    "sample-mcmc": _cmd_sample_mcmc,
    "theta": _cmd_theta,
    "holes": _cmd_holes,
    "avoidance": _cmd_avoidance,
    "spacefill": _cmd_spacefill,
    "report": _cmd_report,
}


REQUIRED: dict[str, list[str]] = {}
FLAG_TYPES: dict[tuple[str, str], type] = {}


def build_parser() -> _Parser:
    parser = _Parser(prog="sawlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **args_spec):
        p = sub.add_parser(name)
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--out", default=None, help="directory for artifacts")
        p.add_argument("--plot", action="store_true")
        p.add_argument("--config", default=None, help="key=value config file")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--budget-seconds", type=float, default=None)
        for flag, spec in args_spec.items():
            # required flags are validated after config-file merge, so a
            # config file may supply them
            dest = flag.lstrip("-").replace("-", "_")
            if spec.pop("required", False):
                REQUIRED.setdefault(name, []).append(dest)
            if "type" in spec:
                FLAG_TYPES[(name, dest)] = spec["type"]
            p.add_argument(flag, **spec)
        return p

    intarg = lambda **kw: dict(type=int, **kw)
    add("count-walks", **{"--max-n": intarg(required=True)})
    add("count-bridges", **{"--max-n": intarg(required=True),
                            "--strict": dict(action="store_true")})
    add("count-squared", **{"--n": intarg(required=True)})
    add("count-polygons", **{"--m": intarg(required=True)})
    add("count-animals", **{"--max-n": intarg(required=True)})
    add("partitions", **{"--A": intarg(required=True)})
    add("mu-bounds", **{"--max-n": intarg(required=True)})
    add("zm", **{"--m": intarg(required=True), "--x": dict(type=float, required=True)})
    add("zf", **{"--m": intarg(required=True), "--x": dict(type=float, required=True),
                 "--anchors": dict(required=True)})
    add("unfold", **{"--walk": dict(required=True)})
    add("build-square", **{"--g1": dict(required=True), "--g2": dict(required=True)})
    add("build-polygon", **{"--g1": dict(required=True), "--g2": dict(required=True),
                            "--g3": dict(required=True), "--g4": dict(required=True),
                            "--m": intarg(required=True)})
    add("merge", **{"--p1": dict(required=True), "--p2": dict(required=True),
                    "--box": dict(required=True), "--m": intarg(required=True),
                    "--rest": dict(required=True)})
    add("splice", **{"--walk": dict(required=True), "--link": dict(required=True),
                     "--polygon": dict(required=True)})
    mcmc_flags = {"--domain": dict(required=True), "--x": dict(type=float, required=True),
                  "--n-samples": intarg(default=1), "--burn-in": intarg(default=200),
                  "--thinning": intarg(default=10)}
    add("sample-exact", **mcmc_flags)
    add("sample-mcmc", **mcmc_flags)
    add("theta", **mcmc_flags)
    add("holes", **{"--domain": dict(required=True), "--walk": dict(required=True),
                    "--xi": intarg(default=1)})
    add("avoidance", **{"--domain": dict(required=True), "--m": intarg(required=True),
                        "--anchors": dict(required=True),
                        "--x": dict(type=float, required=True)})
    add("spacefill", **{"--radii": dict(required=True),
                        "--x": dict(type=float, required=True),
                        "--xi": intarg(default=2), "--m": intarg(default=0),
                        "--n-samples": intarg(default=200),
                        "--burn-in": intarg(default=500),
                        "--thinning": intarg(default=10)})
    add("report", **{"--max-n": intarg(default=10)})
    return parser


def _apply_config(args: argparse.Namespace, argv: list[str]) -> None:
    """Fill in values from a key=value config file; explicit flags win."""
    if not args.config:
        return
    explicit = {a.split("=", 1)[0] for a in argv if a.startswith("--")}
    for raw in Path(args.config).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        key = key.strip()
        flag = "--" + key.replace("_", "-")
        dest = key.replace("-", "_")
        if flag in explicit or not hasattr(args, dest):
            continue
        current = getattr(args, dest)
        if isinstance(current, bool):
            setattr(args, dest, value.strip().lower() in ("1", "true", "yes"))
            continue
        cast = FLAG_TYPES.get((args.command, dest))
        if cast is None and current is not None:
            cast = type(current)
        setattr(args, dest, (cast or str)(value.strip()))


def _emit(args, header, rows, wall_time: float) -> None:
    if args.format == "json":
        payload = [dict(zip(header, row)) for row in rows]
        text = json.dumps(payload, indent=2, default=str) + "\n"
    else:
        lines = [",".join(str(v) for v in header)]
        lines += [",".join(str(v) for v in row) for row in rows]
        text = "\n".join(lines) + "\n"
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        ext = "json" if args.format == "json" else "csv"
        (out_dir / f"{args.command}.{ext}").write_text(text)
        params = {
            k: v for k, v in vars(args).items()
            if k not in ("command", "format", "out", "config") and v is not None
        }
        manifest = io.RunManifest(
            command=args.command,
            parameters={k: str(v) for k, v in params.items()},
            seed=args.seed,
            wall_time=round(wall_time, 3),
            budgets={"budget_seconds": args.budget_seconds},
        )
        manifest.write(out_dir / f"{args.command}.manifest.json")
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        _apply_config(args, argv)
        missing = [
            d for d in REQUIRED.get(args.command, ())
            if getattr(args, d, None) is None
        ]
        if missing:
            flags = ", ".join("--" + d.replace("_", "-") for d in missing)
            print(f"sawlab {args.command}: missing required: {flags}", file=sys.stderr)
            return USAGE_EXIT
        start = time.monotonic()
        header, rows = _HANDLERS[args.command](args)
        _emit(args, header, rows, time.monotonic() - start)
        return 0
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except (SawlabError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
