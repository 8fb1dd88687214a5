import math

import numpy as np
import pytest

from app.domain.constants import DEFAULT_ESTIMANDS
from app.domain.entities import DesignConfig, EstimandSummary
from app.domain.exceptions import ConfigError, EstimandError
from app.domain.services.estimands import (
    EstimandContext,
    EstimandEvaluator,
    complier_effects,
    direct_effects,
    evaluate_requests,
    overall_effect,
    population_average,
    spillover_effects,
    summarize,
    unit_average,
    unit_overall,
)
from app.domain.services.strata import CANONICAL_SLOT, N_STRATA
from app.domain.value_objects import EstimandKind, EstimandRequest, Mechanism

A0, A1 = Mechanism.A0, Mechanism.A1


def _context(cluster_sizes, q0=0.4, q1=0.8):
    design = DesignConfig(cluster_sizes=tuple(cluster_sizes), j1=1, q0=q0, q1=q1)
    cluster = np.repeat(np.arange(len(cluster_sizes)), cluster_sizes)
    return EstimandContext.from_design(cluster, design)


def _random_tables(rng, n):
    """Tables that honour the collapse equalities of randomly drawn strata."""
    g = rng.integers(0, N_STRATA, size=n)
    raw = rng.lognormal(5.0, 1.0, size=(n, 4)) * (rng.random((n, 4)) > 0.2)
    y = raw[np.arange(n)[:, None], CANONICAL_SLOT[g]]
    return y, g


class TestRequests:
    @pytest.mark.parametrize("key", DEFAULT_ESTIMANDS)
    def test_default_keys_parse_back_to_themselves(self, key):
        assert EstimandRequest.parse(key).key == key

    def test_short_overall_key_is_accepted(self):
        assert EstimandRequest.parse("OEY()").key == "OEY(a0,a1)"

    @pytest.mark.parametrize("key", ["DEY(1)", "SEY(a0)", "CADE(a0)", "CAOE(a0,a1)", "XYZ(a0)"])
    def test_malformed_keys_are_rejected(self, key):
        with pytest.raises(ConfigError):
            EstimandRequest.parse(key)

    def test_kind_flags(self):
        assert EstimandKind.CASE.is_complier_kind
        assert not EstimandKind.SEY.target_is_mechanism
        assert EstimandKind.CADE.target_is_mechanism


class TestIdentities:
    def test_overall_decomposition_per_unit(self, rng):
        ctx = _context([7, 9, 11, 13], q0=0.3, q1=0.7)
        for _ in range(25):
            y, _ = _random_tables(rng, ctx.n_units)
            residual = (unit_average(y, ctx, A1) - unit_average(y, ctx, A0)) - unit_overall(y, ctx)
            assert np.max(np.abs(residual)) < 1e-10 * max(1.0, np.abs(y).max())

    def test_decomposition_on_a_thousand_random_tables(self, rng):
        ctx = _context([250, 250, 250, 250])
        for _ in range(1000):
            y, _ = _random_tables(rng, 4)
            small = EstimandContext(
                cluster=np.arange(4) % 4,
                cluster_sizes=np.ones(4, dtype=np.int64),
                treated_fraction=ctx.treated_fraction,
            )
            lhs = unit_average(y, small, A1) - unit_average(y, small, A0)
            assert np.max(np.abs(lhs - unit_overall(y, small))) < 1e-10 * max(1.0, y.max())

    def test_null_effects_are_exactly_zero(self, rng):
        ctx = _context([10, 10, 10])
        n = ctx.n_units
        y = np.repeat(rng.lognormal(4.0, 1.0, size=(n, 1)), 4, axis=1)
        g = np.zeros(n, dtype=np.int64)  # all compliers under both mechanisms
        values = evaluate_requests(y, g, ctx, [EstimandRequest.parse(k) for k in DEFAULT_ESTIMANDS])
        for key, value in values.items():
            if key.startswith(("DED", "SED")):
                continue
            assert value == 0.0, key

    def test_receipt_effects_for_pure_compliers(self):
        ctx = _context([4, 4])
        y = np.zeros((8, 4))
        g = np.zeros(8, dtype=np.int64)
        assert direct_effects(y, g, ctx)["DED(a0)"] == 1.0
        assert spillover_effects(y, g, ctx)["SED(0)"] == 0.0

    def test_population_average_equals_flat_mean(self, rng):
        sizes = np.array([3, 10, 27])
        cluster = np.repeat(np.arange(3), sizes)
        values = rng.normal(size=sizes.sum())
        assert population_average(values, cluster, sizes) == pytest.approx(values.mean())

    def test_averaging_order_matters_only_with_unequal_sizes(self):
        values = np.array([1.0, 1.0, 1.0, 10.0])
        unequal = np.array([0, 0, 0, 1])
        sizes = np.array([3, 1])
        means = np.bincount(unequal, weights=values) / sizes
        assert population_average(values, unequal, sizes) == pytest.approx(13.0 / 4)
        assert means.mean() == pytest.approx(5.5)

        equal = np.array([0, 0, 1, 1])
        sizes = np.array([2, 2])
        means = np.bincount(equal, weights=values) / sizes
        assert population_average(values, equal, sizes) == pytest.approx(means.mean())


class TestComplierEffects:
    def test_complier_direct_effect_uses_only_base_compliers(self):
        ctx = _context([2, 2])
        # cc unit gains 10, nn unit gains nothing, nc unit gains 100 only under a1
        y = np.array(
            [
                [0.0, 10.0, 0.0, 10.0],
                [5.0, 5.0, 5.0, 5.0],
                [1.0, 1.0, 2.0, 102.0],
                [3.0, 3.0, 3.0, 3.0],
            ]
        )
        g = np.array([0, 2, 4, 2])
        cade_a1_base_a1 = EstimandRequest(EstimandKind.CADE, A1, A1)
        cade_a0_base_a0 = EstimandRequest(EstimandKind.CADE, A0, A0)
        assert complier_effects(y, g, ctx, cade_a1_base_a1) == pytest.approx(55.0)
        assert complier_effects(y, g, ctx, cade_a0_base_a0) == pytest.approx(10.0)

    def test_no_compliers_gives_nan(self):
        ctx = _context([2, 2])
        y = np.ones((4, 4))
        g = np.full(4, 1)  # always-takers only
        request = EstimandRequest(EstimandKind.CASE, 0, A0)
        assert math.isnan(complier_effects(y, g, ctx, request))

    def test_evaluator_matches_standalone_functions(self, rng):
        ctx = _context([6, 8, 10, 12])
        y, g = _random_tables(rng, ctx.n_units)
        requests = [EstimandRequest.parse(k) for k in DEFAULT_ESTIMANDS]
        values = EstimandEvaluator(requests, ctx).evaluate(y, g)
        expected = {**direct_effects(y, g, ctx), **spillover_effects(y, g, ctx)}
        expected["OEY(a0,a1)"] = overall_effect(y, ctx)
        for r in requests:
            if r.kind.is_complier_kind:
                expected[r.key] = complier_effects(y, g, ctx, r)
        for key in values:
            if math.isnan(expected[key]):
                assert math.isnan(values[key])
            else:
                assert values[key] == pytest.approx(expected[key]), key


class TestObservedContext:
    def test_own_mechanism_uses_observed_counts(self, tiny_dataset):
        data = tiny_dataset.to_arrays()
        ctx = EstimandContext.from_observed(data, q0=0.4, q1=0.8)
        # Both clusters treated 2 of 4.
        assert ctx.treated_fraction[0, 0] == pytest.approx(0.5)
        assert ctx.treated_fraction[1, 1] == pytest.approx(0.5)
        # Counterfactual mechanism follows the design proportion.
        assert ctx.treated_fraction[0, 1] == pytest.approx(0.75)
        assert ctx.treated_fraction[1, 0] == pytest.approx(0.5)

    def test_pooled_rate_without_design(self, tiny_dataset):
        data = tiny_dataset.to_arrays()
        ctx = EstimandContext.from_observed(data)
        assert ctx.treated_fraction.tolist() == [[0.5, 0.5], [0.5, 0.5]]


class TestSummaries:
    def test_quantiles_use_linear_interpolation(self):
        values = np.arange(101, dtype=float)
        summary = summarize(values, "DEY(a0)")
        assert summary.median == 50.0
        assert summary.q025 == pytest.approx(2.5)
        assert summary.q975 == pytest.approx(97.5)
        assert summary.covers(3.0) and not summary.covers(99.0)

    def test_non_finite_draws_are_counted(self):
        summary = summarize([1.0, float("nan"), 2.0, 3.0], "CASE(0;a0)")
        assert summary.n_draws == 3
        assert summary.n_skipped == 1

    def test_too_few_draws(self):
        with pytest.raises(EstimandError):
            summarize([float("nan"), 1.0], "CADE(a0;a0)")
        with pytest.raises(EstimandError):
            EstimandSummary("k", 0.0, 1.0, 2.0, 0.5, n_draws=10)
