import warnings
from collections import Counter

import numpy as np
import pytest

from sawlab.counting import enumerate_domain_walks
from sawlab.errors import PreconditionViolation
from sawlab.lattice import Walk, rectangle_domain
from sawlab.sampler import (
    SamplerConfig,
    chi_squared_pvalue,
    length_moments,
    sample_exact,
    sample_exact_many,
    sample_mcmc,
    transition_probabilities,
    estimate_theta,
)

UNIT = rectangle_domain(2, 2, (0, 0), (1, 0))  # adjacent corners: 2 walks


class TestConfig:
    def test_rejects_bad_values(self):
        with pytest.raises(PreconditionViolation):
            SamplerConfig(x=0.0)
        with pytest.raises(PreconditionViolation):
            SamplerConfig(x=0.5, burn_in=-1)


class TestExactSampler:
    def test_single_draw_deterministic(self):
        cfg = SamplerConfig(x=1.0, seed=9)
        assert sample_exact(UNIT, cfg).vertices == sample_exact(UNIT, cfg).vertices

    def test_uniform_at_x1(self):
        draws = sample_exact_many(UNIT, SamplerConfig(x=1.0, seed=3), 10000)
        counts = Counter(w.length for w in draws)
        p = chi_squared_pvalue(counts, {1: 0.5, 3: 0.5}, 10000)
        assert p > 0.001

    def test_large_x_prefers_long_walk(self):
        draws = sample_exact_many(UNIT, SamplerConfig(x=10.0, seed=3), 2000)
        frac3 = sum(w.length == 3 for w in draws) / len(draws)
        assert abs(frac3 - 1000 / 1010) < 0.02

    def test_law_matches_weights(self):
        x = 0.5
        draws = sample_exact_many(UNIT, SamplerConfig(x=x, seed=5), 20000)
        counts = Counter(w.length for w in draws)
        z = x + x ** 3
        p = chi_squared_pvalue(counts, {1: x / z, 3: x ** 3 / z}, 20000)
        assert p > 0.001


class TestTransitionKernel:
    @pytest.mark.parametrize("x", [0.3, 0.7, 1.0, 1.5])
    def test_detailed_balance(self, x):
        dom = rectangle_domain(3, 3, (0, 0), (2, 2))
        walks = list(enumerate_domain_walks(dom))
        pi = {w.vertices: x ** w.length for w in walks}
        for w in walks:
            probs = transition_probabilities(w, dom, x)
            assert sum(probs.values()) == pytest.approx(1.0)
            for tgt, p in probs.items():
                if tgt == w.vertices:
                    continue
                assert tgt in pi  # chain never leaves the state space
                back = transition_probabilities(
                    Walk(tgt, _validated=True), dom, x
                )[w.vertices]
                assert pi[w.vertices] * p == pytest.approx(pi[tgt] * back)

    def test_moves_change_length_by_0_or_2(self):
        dom = rectangle_domain(3, 3, (0, 0), (2, 2))
        for w in enumerate_domain_walks(dom):
            for tgt in transition_probabilities(w, dom, 0.6):
                assert abs(len(tgt) - 1 - w.length) in (0, 2)


class TestMcmc:
    def test_emitted_walks_valid(self):
        dom = rectangle_domain(4, 4, (0, 0), (3, 3))
        for w in sample_mcmc(dom, SamplerConfig(x=0.6, seed=1, burn_in=50, thinning=5), 50):
            assert w.start == dom.a_site and w.end == dom.b_site
            assert all(p in dom.sites for p in w.vertices)
            assert len(set(w.vertices)) == len(w.vertices)

    def test_deterministic_given_seed(self):
        dom = rectangle_domain(3, 3, (0, 0), (2, 2))
        cfg = SamplerConfig(x=0.6, seed=11, burn_in=20, thinning=3)
        a = [w.vertices for w in sample_mcmc(dom, cfg, 30)]
        b = [w.vertices for w in sample_mcmc(dom, cfg, 30)]
        assert a == b

    def test_unit_square_distribution(self):
        counts = Counter(
            w.length
            for w in sample_mcmc(
                UNIT, SamplerConfig(x=1.0, seed=2, burn_in=100, thinning=3), 20000
            )
        )
        # 3 sigma on a fair-coin proportion over ~20000/tau draws
        frac = counts[3] / (counts[1] + counts[3])
        assert abs(frac - 0.5) < 0.03

    def test_mean_length_within_3_sigma(self):
        for size in (3, 4):
            dom = rectangle_domain(size, size, (0, 0), (size - 1, size - 1))
            for x in (0.3, 0.6, 1.0):
                mean, var = length_moments(dom, x)
                n = 1500
                samples = list(
                    sample_mcmc(
                        dom,
                        SamplerConfig(x=x, seed=13, burn_in=300, thinning=20),
                        n,
                    )
                )
                m = np.mean([w.length for w in samples])
                sigma = np.sqrt(var / n)
                assert abs(m - mean) < 3 * sigma, (size, x, m, mean)

    def test_acceptance_counter(self):
        dom = rectangle_domain(4, 4, (0, 0), (3, 3))
        acc = np.zeros(4, dtype=np.int64)
        list(
            sample_mcmc(
                dom, SamplerConfig(x=0.6, seed=1, burn_in=50, thinning=5), 20, acc
            )
        )
        assert acc[3] == acc[0] + acc[1] + acc[2] > 0


class TestEstimateTheta:
    def test_unit_square_density(self):
        cfg = SamplerConfig(x=1.0, seed=4, burn_in=200, thinning=5)
        mean, se = estimate_theta(UNIT, 1.0, 4000, cfg)
        # exact: (1/2 * 1 + 1/2 * 3) / 4 = 0.5
        assert abs(mean - 0.5) < 0.05
        assert se > 0

    def test_density_increases_with_x(self):
        dom = rectangle_domain(6, 6, (0, 0), (5, 5))
        cfg = SamplerConfig(x=1.0, seed=4, burn_in=300, thinning=10)
        lo, _ = estimate_theta(dom, 0.3, 800, cfg)
        hi, _ = estimate_theta(dom, 0.6, 800, cfg)
        assert hi > lo


class TestChiSquared:
    def test_uniform_fit(self):
        rng = np.random.default_rng(0)
        draws = rng.integers(0, 4, size=8000)
        obs = Counter(draws.tolist())
        p = chi_squared_pvalue(obs, {k: 0.25 for k in range(4)}, 8000)
        assert p > 0.001

    def test_bad_fit_rejected(self):
        obs = {0: 7000, 1: 1000}
        p = chi_squared_pvalue(obs, {0: 0.5, 1: 0.5}, 8000)
        assert p < 1e-6
