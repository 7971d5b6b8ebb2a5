"""The compiled kernels and the pure-Python fallback must be drop-in
equivalent, including the random stream of the chain sampler."""

import json
import os
import subprocess
import sys
import textwrap

import pytest

import sawlab.kernels as kernels

WORKLOAD = textwrap.dedent(
    """
    import json, sys
    import sawlab
    from sawlab import kernels
    from sawlab.lattice import rectangle_domain
    from sawlab.sampler import SamplerConfig, sample_mcmc

    dom = rectangle_domain(4, 4, (0, 0), (3, 3))
    ws = [w.directions() for w in sample_mcmc(
        dom, SamplerConfig(x=0.6, seed=99, burn_in=30, thinning=4), 40)]
    json.dump({
        "numba": kernels.USING_NUMBA,
        "saws": sawlab.count_saws(9),
        "bridges": sawlab.count_bridges(9),
        "strict": sawlab.count_bridges(9, strict=True),
        "zm1": sawlab.zm(1, 0.6),
        "mcmc": ws,
    }, sys.stdout)
    """
)


def _run(pure: bool) -> dict:
    env = dict(os.environ)
    if pure:
        env["SAWLAB_PURE_PYTHON"] = "1"
    else:
        env.pop("SAWLAB_PURE_PYTHON", None)
    proc = subprocess.run(
        [sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout)


def test_modes_produce_identical_results():
    fast = _run(pure=False)
    slow = _run(pure=True)
    assert fast["numba"] is True
    assert slow["numba"] is False
    for key in ("saws", "bridges", "strict", "zm1", "mcmc"):
        assert fast[key] == slow[key], key


def test_mode_flag_honored_in_process():
    expected = not os.environ.get("SAWLAB_PURE_PYTHON")
    assert kernels.USING_NUMBA is expected
