import json

import numpy as np
import pytest
from scipy import integrate, special, stats

from app.domain.constants import DEFAULT_ESTIMANDS
from app.domain.entities import Dataset, Priors, UnitRecord
from app.domain.exceptions import SamplerFault
from app.domain.services.estimands import EstimandContext
from app.domain.services.strata import N_CELLS, N_STRATA, compatible_strata
from app.domain.value_objects import ComplianceType, EstimandRequest, Mechanism, OutcomeFamily
from app.infrastructure.mcmc import ChainConfig, ChainJob, GibbsSampler, ParameterArrays
from app.infrastructure.mcmc.runner import (
    chain_diagnostics,
    collect_chain,
    run_chains,
    summarize_estimands,
)

ALPHA = 0.01
N_DRAWS = 2000


@pytest.fixture
def observed(simulated):
    return simulated.observed


def _fixed_state(sampler, seed=3):
    rng = np.random.default_rng(seed)
    params = sampler.initial_params(rng)
    g = sampler.step_sample_strata(params, rng)
    return params, g


def _busiest_positive_cell(sampler, g):
    cells = sampler.routed_cells(g)[sampler.positive]
    return int(np.bincount(cells, minlength=N_CELLS).argmax())


def _singleton_dataset(y_always, y_never):
    """Always-takers under a0 with z=0 and never-takers under a1 with z=1 only.

    Both triples admit exactly one stratum, so the strata are fixed by the data.
    """
    records = [
        UnitRecord(cluster="c0", unit=f"a{i}", mechanism=Mechanism.A0, z=0, d=1, y=float(y))
        for i, y in enumerate(y_always)
    ]
    records += [
        UnitRecord(cluster="c1", unit=f"n{i}", mechanism=Mechanism.A1, z=1, d=0, y=float(y))
        for i, y in enumerate(y_never)
    ]
    return Dataset(records=records)


class TestConjugateUpdates:
    def test_zero_probability_is_beta(self, observed):
        sampler = GibbsSampler(observed)
        params, g = _fixed_state(sampler)
        cells = sampler.routed_cells(g)
        c = int(np.bincount(cells, minlength=N_CELLS).argmax())
        n_zero = int(np.sum(sampler.is_zero[cells == c]))
        n_pos = int(np.sum(sampler.positive[cells == c]))
        rng = np.random.default_rng(11)
        draws = [sampler.step_update_params(g, params, rng).p[c] for _ in range(N_DRAWS)]
        assert stats.kstest(draws, stats.beta(1 + n_zero, 1 + n_pos).cdf).pvalue > ALPHA

    def test_stratum_probabilities_are_dirichlet(self, observed):
        sampler = GibbsSampler(observed)
        params, g = _fixed_state(sampler)
        counts = np.bincount(g, minlength=N_STRATA) + 1.0
        rng = np.random.default_rng(12)
        draws = np.array([sampler.step_update_params(g, params, rng).pi for _ in range(N_DRAWS)])
        assert np.allclose(draws.sum(axis=1), 1.0)
        for k in (0, 3):
            marginal = stats.beta(counts[k], counts.sum() - counts[k])
            assert stats.kstest(draws[:, k], marginal.cdf).pvalue > ALPHA

    @pytest.mark.parametrize("half_count", [True, False])
    def test_lognormal_variance_and_location(self, observed, half_count):
        priors = Priors(ig_shape_uses_half_count=half_count)
        sampler = GibbsSampler(observed, priors)
        params, g = _fixed_state(sampler)
        c = _busiest_positive_cell(sampler, g)
        routed = sampler.routed_cells(g)
        logs = sampler.log_y[sampler.positive & (routed == c)]
        s0 = logs.size
        s1 = np.sum((logs - params.loc[c]) ** 2) / 2.0
        shape = priors.ig_shape + (s0 / 2.0 if half_count else s0)
        rng = np.random.default_rng(13)
        sigma2, mu = [], []
        for _ in range(N_DRAWS):
            new = sampler.step_update_params(g, params, rng)
            sigma2.append(new.scale[c])
            mu.append(new.loc[c])
        ig = stats.invgamma(a=shape, scale=priors.ig_scale + s1)
        assert stats.kstest(sigma2, ig.cdf).pvalue > ALPHA

        sigma2 = np.array(sigma2)
        precision = s0 / sigma2 + 1.0 / priors.mu_var
        mean = (logs.sum() / sigma2 + priors.mu_mean / priors.mu_var) / precision
        standardized = (np.array(mu) - mean) * np.sqrt(precision)
        assert stats.kstest(standardized, "norm").pvalue > ALPHA

    def test_default_variance_shape_adds_the_whole_count(self, observed):
        sampler = GibbsSampler(observed)
        assert not sampler.priors.ig_shape_uses_half_count
        params, g = _fixed_state(sampler)
        c = _busiest_positive_cell(sampler, g)
        routed = sampler.routed_cells(g)
        logs = sampler.log_y[sampler.positive & (routed == c)]
        s1 = np.sum((logs - params.loc[c]) ** 2) / 2.0
        rng = np.random.default_rng(15)
        sigma2 = [sampler.step_update_params(g, params, rng).scale[c] for _ in range(N_DRAWS)]
        whole = stats.invgamma(a=0.01 + logs.size, scale=0.01 + s1)
        half = stats.invgamma(a=0.01 + logs.size / 2.0, scale=0.01 + s1)
        assert stats.kstest(sigma2, whole.cdf).pvalue > ALPHA
        assert stats.kstest(sigma2, half.cdf).pvalue < ALPHA

    def test_gamma_rate_given_shape(self, observed):
        priors = Priors()
        sampler = GibbsSampler(observed, priors, OutcomeFamily.GAMMA)
        params, g = _fixed_state(sampler)
        c = _busiest_positive_cell(sampler, g)
        routed = sampler.routed_cells(g)
        y = observed.y[sampler.positive & (routed == c)]
        rng = np.random.default_rng(14)
        u = []
        for _ in range(N_DRAWS):
            new = sampler.step_update_params(g, params, rng)
            shape = priors.gamma_rate_shape + y.size * new.loc[c]
            rate_dist = stats.gamma(a=shape, scale=1.0 / (priors.gamma_rate_rate + y.sum()))
            u.append(rate_dist.cdf(1.0 / new.scale[c]))
        assert stats.kstest(u, "uniform").pvalue > ALPHA

    def test_alpha_chain_matches_its_full_conditional(self):
        y = np.round(np.random.default_rng(5).gamma(2.0, 50.0, size=30), 2)
        data = _singleton_dataset(y, [0.0, 3.5])
        arrays = data.to_arrays()
        priors = Priors()
        sampler = GibbsSampler(arrays, priors, OutcomeFamily.GAMMA)
        params, g = _fixed_state(sampler)
        cells = sampler.routed_cells(g)
        c = _busiest_positive_cell(sampler, g)
        theta = 50.0
        params = ParameterArrays(
            pi=params.pi, p=params.p, loc=np.full(N_CELLS, 2.0), scale=np.full(N_CELLS, theta)
        )
        pos_cells = cells[sampler.positive]
        n_pos = np.bincount(cells, weights=sampler.positive, minlength=N_CELLS)

        rng = np.random.default_rng(16)
        draws = []
        for i in range(42_000):
            alpha, _ = sampler._update_gamma(pos_cells, n_pos, params, rng, adapt=i < 2_000)
            params = ParameterArrays(pi=params.pi, p=params.p, loc=alpha, scale=params.scale)
            if i >= 2_000 and i % 40 == 0:
                draws.append(alpha[c])

        cell_y = arrays.y[sampler.positive & (cells == c)]
        grid = np.linspace(1e-4, 20.0, 40_001)
        log_density = (
            (grid - 1.0) * np.log(cell_y).sum()
            - cell_y.size * (special.gammaln(grid) + grid * np.log(theta))
            + (priors.alpha_prior_shape - 1.0) * np.log(grid)
            - priors.alpha_prior_rate * grid
        )
        density = np.exp(log_density - log_density.max())
        cdf = integrate.cumulative_trapezoid(density, grid, initial=0.0)
        cdf /= cdf[-1]
        assert len(draws) == 1000
        assert stats.kstest(draws, lambda x: np.interp(x, grid, cdf)).pvalue > ALPHA

    def test_alpha_step_adapts_toward_target(self, observed):
        sampler = GibbsSampler(observed, family=OutcomeFamily.GAMMA)
        start = sampler.alpha_log_step.copy()
        for _ in range(50):
            sampler._adapt_alpha_step(np.ones(N_CELLS, dtype=bool))
        assert np.allclose(sampler.alpha_log_step, start + 0.5)
        for _ in range(50):
            sampler._adapt_alpha_step(np.zeros(N_CELLS, dtype=bool))
        assert np.allclose(sampler.alpha_log_step, start)


class TestStrata:
    def test_sampled_strata_are_compatible(self, observed):
        sampler = GibbsSampler(observed)
        params, _ = _fixed_state(sampler)
        rng = np.random.default_rng(21)
        for _ in range(20):
            g = sampler.step_sample_strata(params, rng)
            assert np.all(sampler.compatible[np.arange(observed.n_units), g])

    def test_frequencies_match_normalised_weights(self, observed):
        sampler = GibbsSampler(observed)
        params, _ = _fixed_state(sampler)
        log_w = sampler.stratum_log_weights(params)[0]
        expected = np.exp(log_w - log_w.max())
        expected /= expected.sum()
        rng = np.random.default_rng(22)
        draws = np.array([sampler.step_sample_strata(params, rng)[0] for _ in range(4000)])
        observed_freq = np.bincount(draws, minlength=N_STRATA) / draws.size
        assert np.allclose(observed_freq, expected, atol=0.03)

    def test_singleton_triples_give_the_exact_dirichlet_posterior(self):
        data = _singleton_dataset(
            [0.0, 12.0, 40.5, 0.0, 310.0, 95.0, 7.5, 0.0, 64.0, 150.0, 22.0, 5.0],
            [0.0, 18.0, 0.0, 250.0, 33.0],
        ).to_arrays()
        assert all(
            len(compatible_strata(Mechanism(a), z, d)) == 1
            for a, z, d in {("a0", 0, 1), ("a1", 1, 0)}
        )
        config = ChainConfig(iterations=N_DRAWS + 1, burn_in=1, seed=17)
        draws = list(GibbsSampler(data).run_chain(config))
        aa, nn = ComplianceType.AA.index, ComplianceType.NN.index
        assert all(np.sum(d.g == aa) == 12 and np.sum(d.g == nn) == 5 for d in draws)

        counts = np.zeros(N_STRATA)
        counts[aa], counts[nn] = 12, 5
        concentration = counts + 1.0
        pi = np.array([d.params.pi for d in draws])
        for k in range(N_STRATA):
            marginal = stats.beta(concentration[k], concentration.sum() - concentration[k])
            assert stats.kstest(pi[:, k], marginal.cdf).pvalue > ALPHA / N_STRATA

    def test_impossible_unit_raises_with_its_index(self, tiny_dataset):
        data = tiny_dataset.to_arrays()
        sampler = GibbsSampler(data)
        params = ParameterArrays(
            pi=np.full(N_STRATA, 1 / N_STRATA),
            p=np.zeros(N_CELLS),
            loc=np.zeros(N_CELLS),
            scale=np.ones(N_CELLS),
        )
        with pytest.raises(SamplerFault) as excinfo:
            sampler.step_sample_strata(params, np.random.default_rng(0))
        assert excinfo.value.unit == 0
        assert "u0" in str(excinfo.value)


class TestChains:
    def test_retention_schedule(self, observed):
        config = ChainConfig(iterations=30, burn_in=10, thin=4, seed=5)
        draws = list(GibbsSampler(observed).run_chain(config))
        assert config.n_retained == 5
        assert [d.iteration for d in draws] == [14, 18, 22, 26, 30]

    def test_same_seed_reproduces_bit_for_bit(self, observed):
        config = ChainConfig(iterations=15, burn_in=5, seed=99)
        first = [d.params.loc.copy() for d in GibbsSampler(observed).run_chain(config)]
        second = [d.params.loc.copy() for d in GibbsSampler(observed).run_chain(config)]
        for a, b in zip(first, second):
            np.testing.assert_array_equal(a, b)

    def test_chains_use_distinct_streams(self, observed):
        config = ChainConfig(iterations=6, burn_in=1, seed=99)
        sampler = GibbsSampler(observed)
        zero = [d.params.pi for d in sampler.run_chain(config, chain=0)]
        one = [d.params.pi for d in sampler.run_chain(config, chain=1)]
        assert not np.array_equal(zero[-1], one[-1])

    @pytest.mark.parametrize("family", list(OutcomeFamily))
    def test_invariant_checks_hold_along_the_chain(self, observed, family):
        sampler = GibbsSampler(observed, family=family, debug_invariants=True)
        config = ChainConfig(iterations=25, burn_in=5, seed=1, family=family)
        for draw in sampler.run_chain(config):
            assert np.all(np.isfinite(draw.params.scale))
            assert np.all(draw.tables.y >= 0)

    def test_receipt_effect_is_recovered(self, simulated):
        config = ChainConfig(iterations=400, burn_in=200, seed=3)
        requests = (EstimandRequest.parse("DED(a0)"), EstimandRequest.parse("DED(a1)"))
        context = EstimandContext.from_design(simulated.observed.cluster, simulated.design)
        job = ChainJob(simulated.observed, Priors(), config, 0, requests, context)
        summaries = summarize_estimands([collect_chain(job)], ["DED(a0)", "DED(a1)"])
        assert abs(summaries["DED(a0)"].mean - 0.5) < 0.2
        assert abs(summaries["DED(a1)"].mean - 0.45) < 0.2


class TestRunner:
    def test_spool_and_diagnostics(self, simulated, tmp_path):
        config = ChainConfig(iterations=20, burn_in=10, seed=8, chains=2)
        requests = tuple(EstimandRequest.parse(k) for k in DEFAULT_ESTIMANDS)
        context = EstimandContext.from_design(simulated.observed.cluster, simulated.design)
        jobs = [
            ChainJob(
                simulated.observed,
                Priors(),
                config,
                k,
                requests,
                context,
                spool_path=tmp_path / f"draws_chain{k}.ndjson",
            )
            for k in range(2)
        ]
        results = run_chains(jobs, workers=1)
        assert [r.chain for r in results] == [0, 1]
        assert all(r.n_draws == 10 for r in results)

        lines = (tmp_path / "draws_chain1.ndjson").read_text().splitlines()
        header = json.loads(lines[0])
        assert header["type"] == "header" and header["chain"] == 1
        assert len(lines) == 11
        record = json.loads(lines[-1])
        assert set(record["estimands"]) == set(DEFAULT_ESTIMANDS)
        assert sum(record["strata_counts"].values()) == simulated.observed.n_units

        traces = chain_diagnostics(results)
        assert "pi[cc]" in traces and "sigma2[cc/z1/a1]" in traces
        assert traces["pi[cc]"].rhat is not None
