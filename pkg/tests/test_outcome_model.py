import math

import numpy as np
import pytest
from scipy import integrate, stats

from app.domain.constants import GAMMA_CELLS, GAMMA_PI, LOGNORMAL_CELLS, LOGNORMAL_PI
from app.domain.entities import GammaCell, LogNormalCell, ModelParams, make_cell
from app.domain.exceptions import ModelDomainError
from app.domain.services.outcome_model import (
    log_density,
    log_density_arrays,
    mixture_mean,
    sample_outcome,
    sample_outcomes,
)
from app.domain.services.potential_outcomes import draw_tables, table_violations
from app.domain.services.strata import N_CELLS
from app.domain.value_objects import CANONICAL_CELLS, STRATA, OutcomeFamily


class TestLogDensity:
    def test_zero_is_the_point_mass(self):
        cell = LogNormalCell(p=0.3, mu=1.0, sigma2=2.0)
        assert log_density(0.0, cell) == pytest.approx(math.log(0.3))

    def test_positive_value_matches_scipy(self):
        cell = LogNormalCell(p=0.3, mu=1.0, sigma2=2.0)
        expected = math.log(0.7) + stats.lognorm.logpdf(5.0, s=math.sqrt(2.0), scale=math.e)
        assert log_density(5.0, cell) == pytest.approx(expected)

    def test_gamma_cell_matches_scipy(self):
        cell = GammaCell(p=0.1, alpha=3.0, theta=20.0)
        expected = math.log(0.9) + stats.gamma.logpdf(55.0, a=3.0, scale=20.0)
        assert log_density(55.0, cell) == pytest.approx(expected)

    def test_impossible_zero_gives_minus_infinity(self):
        cell = LogNormalCell(p=0.0, mu=1.0, sigma2=1.0)
        assert log_density(0.0, cell) == -math.inf

    def test_negative_outcome_raises(self):
        with pytest.raises(ModelDomainError):
            log_density(-1.0, LogNormalCell(p=0.3, mu=1.0, sigma2=1.0))

    def test_degenerate_variance_has_no_density(self):
        with pytest.raises(ModelDomainError):
            log_density(2.0, LogNormalCell(p=0.3, mu=1.0, sigma2=0.0))

    def test_vectorised_form_agrees_with_scalar_form(self):
        y = np.array([0.0, 0.5, 12.0, 4000.0])
        cell = LogNormalCell(p=0.2, mu=3.0, sigma2=1.5)
        values = log_density_arrays(OutcomeFamily.LOGNORMAL, y, cell.p, cell.loc, cell.scale)
        assert values == pytest.approx([log_density(v, cell) for v in y])


class TestCells:
    @pytest.mark.parametrize(
        "factory",
        [
            lambda: LogNormalCell(p=1.5, mu=0.0, sigma2=1.0),
            lambda: LogNormalCell(p=0.5, mu=0.0, sigma2=-1.0),
            lambda: LogNormalCell(p=0.5, mu=math.nan, sigma2=1.0),
            lambda: GammaCell(p=0.5, alpha=0.0, theta=1.0),
            lambda: GammaCell(p=0.5, alpha=1.0, theta=-2.0),
        ],
    )
    def test_invalid_cells_are_rejected(self, factory):
        with pytest.raises(ModelDomainError):
            factory()

    def test_mixture_means(self):
        assert mixture_mean(LogNormalCell(p=0.2, mu=7.5, sigma2=2.5)) == pytest.approx(
            0.8 * math.exp(8.75)
        )
        assert mixture_mean(GammaCell(p=0.1, alpha=10.0, theta=100.0)) == pytest.approx(900.0)

    def test_published_table_in_canonical_order(self):
        params = ModelParams.from_table(OutcomeFamily.GAMMA, GAMMA_PI, GAMMA_CELLS)
        pi, p, loc, scale = params.as_arrays()
        assert pi.tolist() == [GAMMA_PI[g.value] for g in STRATA]
        for i, key in enumerate(CANONICAL_CELLS):
            assert (p[i], loc[i], scale[i]) == tuple(GAMMA_CELLS[key.label])
        with pytest.raises(ModelDomainError):
            ModelParams.from_table(OutcomeFamily.GAMMA, {"cc": 1.0}, GAMMA_CELLS)

    def test_pi_must_be_a_simplex(self):
        params = ModelParams.from_table(OutcomeFamily.LOGNORMAL, LOGNORMAL_PI, LOGNORMAL_CELLS)
        with pytest.raises(ModelDomainError):
            ModelParams(OutcomeFamily.LOGNORMAL, (0.5, 0.5, 0.5, 0, 0, 0), params.cells)
        with pytest.raises(ModelDomainError):
            ModelParams(
                OutcomeFamily.LOGNORMAL,
                params.pi,
                {**params.cells, next(iter(params.cells)): make_cell(OutcomeFamily.GAMMA, 0.1, 1.0, 1.0)},
            )


class TestSampling:
    def test_zero_frequency_and_positive_part(self, rng):
        n = 20000
        draws = sample_outcomes(OutcomeFamily.LOGNORMAL, np.full(n, 0.25), 2.0, 0.5, rng)
        zeros = np.mean(draws == 0)
        assert abs(zeros - 0.25) < 4 * math.sqrt(0.25 * 0.75 / n)
        positive = np.log(draws[draws > 0])
        assert stats.kstest(positive, stats.norm(loc=2.0, scale=math.sqrt(0.5)).cdf).pvalue > 0.01

    def test_gamma_positive_part(self, rng):
        draws = sample_outcomes(OutcomeFamily.GAMMA, np.zeros(5000), 4.0, 30.0, rng)
        assert np.all(draws > 0)
        assert stats.kstest(draws, stats.gamma(a=4.0, scale=30.0).cdf).pvalue > 0.01


class TestPotentialTables:
    def test_drawn_tables_respect_collapses_and_observed_values(self, rng):
        n = 600
        g = rng.integers(0, 6, size=n)
        slot = rng.integers(0, 4, size=n)
        observed = rng.exponential(100.0, size=n)
        p = np.full(N_CELLS, 0.2)
        loc = np.linspace(1.0, 6.0, N_CELLS)
        scale = np.full(N_CELLS, 1.0)
        tables = draw_tables(OutcomeFamily.LOGNORMAL, g, p, loc, scale, rng, slot, observed)
        assert tables.y.shape == (n, 4)
        np.testing.assert_array_equal(tables.observed, observed)
        assert table_violations(tables, g, observed).size == 0

    def test_violation_is_reported(self, rng):
        g = np.array([1])  # always-taker: Y(0,a) == Y(1,a)
        tables = draw_tables(
            OutcomeFamily.LOGNORMAL,
            g,
            np.full(N_CELLS, 0.0),
            np.zeros(N_CELLS),
            np.ones(N_CELLS),
            rng,
            np.array([0]),
        )
        tables.y[0, 1] = tables.y[0, 0] + 1.0
        assert table_violations(tables, g).tolist() == [0]


class TestNormalisation:
    @pytest.mark.parametrize(
        "cell",
        [
            LogNormalCell(p=0.0, mu=0.0, sigma2=1.0),
            LogNormalCell(p=0.1, mu=5.0, sigma2=1.5),
            LogNormalCell(p=0.6, mu=9.0, sigma2=0.2),
            GammaCell(p=0.1, alpha=10.0, theta=100.0),
            GammaCell(p=0.3, alpha=0.5, theta=2.0),
        ],
    )
    def test_mass_and_density_sum_to_one(self, cell):
        # Integrate the positive part on the log scale: dy = e^t dt.
        center = cell.loc if isinstance(cell, LogNormalCell) else math.log(cell.alpha * cell.theta)
        area, _ = integrate.quad(
            lambda t: math.exp(log_density(math.exp(t), cell) + t),
            center - 40.0,
            center + 40.0,
            points=[center],
            limit=200,
        )
        mass = math.exp(log_density(0.0, cell)) if cell.p > 0 else 0.0
        assert mass + area == pytest.approx(1.0, abs=1e-6)

    def test_hand_computed_values(self):
        half_log_two_pi = 0.5 * math.log(2 * math.pi)
        assert log_density(0.0, LogNormalCell(p=0.5, mu=0.0, sigma2=1.0)) == pytest.approx(
            math.log(0.5)
        )
        assert log_density(1.0, LogNormalCell(p=0.0, mu=0.0, sigma2=1.0)) == pytest.approx(
            -half_log_two_pi
        )
        assert log_density(math.e, LogNormalCell(p=0.1, mu=1.0, sigma2=1.0)) == pytest.approx(
            math.log(0.9) - half_log_two_pi - 1.0
        )

    def test_certain_zero_and_empirical_mean(self, rng):
        assert all(sample_outcome(LogNormalCell(p=1.0, mu=3.0, sigma2=1.0), rng) == 0.0 for _ in range(50))
        cell = LogNormalCell(p=0.1, mu=5.0, sigma2=1.5)
        draws = sample_outcomes(OutcomeFamily.LOGNORMAL, np.full(200_000, cell.p), cell.mu, cell.sigma2, rng)
        se = draws.std(ddof=1) / math.sqrt(draws.size)
        assert abs(draws.mean() - mixture_mean(cell)) < 4 * se
        assert mixture_mean(LogNormalCell(p=0.0, mu=0.0, sigma2=0.0)) == 1.0
