"""Compare the compiled kernels against the pure-Python fallback.

Runs the same workloads twice — once in each mode, in subprocesses so the
mode flag is honored at import time — asserts identical results, and
prints a timing table.

Usage: python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import json
import os
import subprocess
import sys
import textwrap

WORKLOAD = textwrap.dedent(
    """
    import json, sys, time
    import sawlab
    from sawlab import kernels
    from sawlab.lattice import rectangle_domain
    from sawlab.sampler import SamplerConfig, sample_mcmc

    results = {"numba": kernels.USING_NUMBA}
    timings = {}

    t0 = time.perf_counter()
    results["saws"] = sawlab.count_saws(12)
    timings["count_saws_12"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    results["bridges"] = sawlab.count_bridges(12)
    timings["count_bridges_12"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    wc = sawlab.zm(1, 0.6)
    results["zm1"] = wc
    timings["zm_1"] = time.perf_counter() - t0

    dom = rectangle_domain(6, 6, (0, 0), (5, 5))
    t0 = time.perf_counter()
    ws = list(sample_mcmc(dom, SamplerConfig(x=0.6, seed=3, burn_in=200,
                                             thinning=10), 500))
    timings["mcmc_6x6_500"] = time.perf_counter() - t0
    results["mcmc"] = [w.directions() for w in ws[:20]]
    results["mcmc_mean_len"] = sum(w.length for w in ws) / len(ws)

    json.dump({"results": results, "timings": timings}, sys.stdout)
    """
)


def run(pure: bool) -> dict:
    env = dict(os.environ, SAWLAB_PURE_PYTHON="1" if pure else "")
    out = subprocess.run(
        [sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True
    )
    if out.returncode != 0:
        raise RuntimeError(out.stderr)
    return json.loads(out.stdout)


def main() -> None:
    fast = run(pure=False)
    slow = run(pure=True)
    assert fast["results"]["numba"] is True, "compiled mode did not engage"
    assert slow["results"]["numba"] is False, "fallback mode did not engage"
    for key in ("saws", "bridges", "zm1", "mcmc", "mcmc_mean_len"):
        assert fast["results"][key] == slow["results"][key], (
            f"mode mismatch for {key}"
        )
    print(f"{'workload':<20} {'numba [s]':>10} {'pure [s]':>10} {'speedup':>8}")
    for key in fast["timings"]:
        a, b = fast["timings"][key], slow["timings"][key]
        print(f"{key:<20} {a:>10.3f} {b:>10.3f} {b / a:>7.1f}x")
    print("results identical across modes")


if __name__ == "__main__":
    main()
