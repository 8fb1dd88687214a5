"""Data-augmentation Gibbs sampler over strata, missing potential outcomes and parameters.

One iteration runs three steps in order: draw every unit's stratum given the
parameters, impute the unobserved potential outcomes given the strata, then
redraw the parameters from their full conditionals. The parameter step uses
observed outcomes only; imputed tables feed the estimands.
"""

import logging
from collections.abc import Iterator
from typing import Optional

import numpy as np
from scipy import special

from app.domain.entities import ObservedData, Priors
from app.domain.exceptions import DataValidationError, SamplerFault
from app.domain.services.outcome_model import log_density_arrays
from app.domain.services.potential_outcomes import draw_tables, table_violations
from app.domain.services.strata import (
    CANONICAL_CELLS,
    CELL_INDEX,
    N_CELLS,
    N_STRATA,
    compatibility_mask,
)
from app.domain.value_objects import OutcomeFamily

from .random_streams import chain_rng
from .state import ChainConfig, ParameterArrays, PosteriorDraw

logger = logging.getLogger(__name__)

# Initial values for arms without usable observations.
_FALLBACK_P = 0.1
_FALLBACK_MU = 0.0
_FALLBACK_SIGMA2 = 1.0
_INITIAL_P_RANGE = (0.01, 0.99)

# Vague-prior draws for empty cells stay inside this range.
_SCALE_RANGE = (1e-10, 1e10)
_LOC_RANGE = (-1e3, 1e3)

_ADAPT_BATCH = 50


class GibbsSampler:
    """Sampler bound to one dataset, prior and outcome family.

    Args:
        data: Column view of the observed dataset.
        priors: Prior hyperparameters.
        family: Outcome family of the fitted model.
        debug_invariants: Check strata compatibility and table equalities after every
            iteration.
    """

    def __init__(
        self,
        data: ObservedData,
        priors: Optional[Priors] = None,
        family: OutcomeFamily = OutcomeFamily.LOGNORMAL,
        debug_invariants: bool = False,
    ) -> None:
        if data.n_units == 0:
            raise DataValidationError("cannot fit an empty dataset")
        self.data = data
        self.priors = priors or Priors()
        self.family = family
        self.debug_invariants = debug_invariants

        self.observed_slot = data.observed_slot
        self.compatible = compatibility_mask(data.a, data.z, data.d)
        self.is_zero = data.y == 0
        self.positive = ~self.is_zero
        with np.errstate(divide="ignore"):
            self.log_y = np.where(self.positive, np.log(np.where(self.positive, data.y, 1.0)), 0.0)
        # Observed cell per (unit, stratum).
        self.observed_cells = CELL_INDEX[:, self.observed_slot].T
        self.reset_adaptation()

    def reset_adaptation(self) -> None:
        """Restore the initial Metropolis step on log alpha."""
        self.alpha_log_step = np.full(N_CELLS, np.log(self.priors.alpha_step))
        self._alpha_accepted = np.zeros(N_CELLS)
        self._alpha_iterations = 0

    # ------------------------------------------------------------------
    # Initialisation
    # ------------------------------------------------------------------

    def initial_params(self, rng: np.random.Generator, jitter: bool = False) -> ParameterArrays:
        """Data-driven starting values per (z, a) arm; uniform ``pi``.

        With ``jitter`` the positive-part parameters are perturbed so that several
        chains start from different points.
        """
        p = np.empty(N_CELLS)
        loc = np.empty(N_CELLS)
        scale = np.empty(N_CELLS)
        for i, key in enumerate(CANONICAL_CELLS):
            arm = self._arm_mask(key.z, key.a.index, collapsed=key.g.behavior(key.a) != "c")
            p[i], loc[i], scale[i] = self._arm_start(arm)
        if jitter:
            if self.family is OutcomeFamily.LOGNORMAL:
                scale = scale * rng.uniform(0.5, 2.0, size=N_CELLS)
                loc = loc + rng.normal(0.0, 0.5, size=N_CELLS)
            else:
                loc = loc * rng.uniform(0.5, 2.0, size=N_CELLS)
                scale = scale * rng.uniform(0.5, 2.0, size=N_CELLS)
        return ParameterArrays(pi=np.full(N_STRATA, 1.0 / N_STRATA), p=p, loc=loc, scale=scale)

    def _arm_mask(self, z: int, a: int, collapsed: bool) -> np.ndarray:
        in_mechanism = self.data.a == a
        if collapsed:
            return in_mechanism
        return in_mechanism & (self.data.z == z)

    def _arm_start(self, arm: np.ndarray) -> tuple[float, float, float]:
        n = int(arm.sum())
        p = float(np.clip(self.is_zero[arm].mean(), *_INITIAL_P_RANGE)) if n else _FALLBACK_P
        positive = arm & self.positive
        if self.family is OutcomeFamily.LOGNORMAL:
            logs = self.log_y[positive]
            mu = float(logs.mean()) if logs.size else _FALLBACK_MU
            sigma2 = float(logs.var(ddof=1)) if logs.size >= 2 else 0.0
            return p, mu, sigma2 if sigma2 > 0 else _FALLBACK_SIGMA2
        values = self.data.y[positive]
        if values.size >= 2 and values.var(ddof=1) > 0:
            mean, var = float(values.mean()), float(values.var(ddof=1))
            return p, mean**2 / var, var / mean
        return p, 1.0, float(values.mean()) if values.size else 1.0

    # ------------------------------------------------------------------
    # Step 1: strata
    # ------------------------------------------------------------------

    def stratum_log_weights(self, params: ParameterArrays) -> np.ndarray:
        """Unnormalised ``(n_units, 6)`` log weights; incompatible strata get ``-inf``."""
        cells = self.observed_cells
        with np.errstate(divide="ignore"):
            log_pi = np.log(params.pi)
        log_lik = log_density_arrays(
            self.family,
            self.data.y[:, None],
            params.p[cells],
            params.loc[cells],
            params.scale[cells],
        )
        weights = log_pi[None, :] + log_lik
        weights[~self.compatible] = -np.inf
        return np.where(np.isnan(weights), -np.inf, weights)

    def step_sample_strata(self, params: ParameterArrays, rng: np.random.Generator) -> np.ndarray:
        """Draw each unit's stratum from its categorical full conditional.

        Raises:
            SamplerFault: If every compatible stratum has zero weight for some unit.
        """
        log_w = self.stratum_log_weights(params)
        top = log_w.max(axis=1)
        dead = ~np.isfinite(top)
        if np.any(dead):
            unit = int(np.flatnonzero(dead)[0])
            raise SamplerFault(
                f"all stratum weights are zero for unit {self.data.unit_ids[unit]!r} "
                f"(a={self.data.a[unit]}, z={self.data.z[unit]}, d={self.data.d[unit]}, "
                f"y={self.data.y[unit]})",
                unit=unit,
            )
        weights = np.exp(log_w - top[:, None])
        cumulative = np.cumsum(weights, axis=1)
        u = rng.random(log_w.shape[0]) * cumulative[:, -1]
        return np.sum(cumulative <= u[:, None], axis=1).astype(np.int64)

    # ------------------------------------------------------------------
    # Step 2: missing potential outcomes
    # ------------------------------------------------------------------

    def step_impute_missing(self, g: np.ndarray, params: ParameterArrays, rng: np.random.Generator):
        """Redraw every unobserved canonical slot; collapsed slots are mirrored."""
        return draw_tables(
            self.family,
            g,
            params.p,
            params.loc,
            params.scale,
            rng,
            observed_slot=self.observed_slot,
            observed_y=self.data.y,
        )

    # ------------------------------------------------------------------
    # Step 3: parameters
    # ------------------------------------------------------------------

    def routed_cells(self, g: np.ndarray) -> np.ndarray:
        """Canonical cell of each unit's observed outcome under strata ``g``."""
        return self.observed_cells[np.arange(g.shape[0]), g]

    def step_update_params(
        self,
        g: np.ndarray,
        params: ParameterArrays,
        rng: np.random.Generator,
        adapt: bool = False,
    ) -> ParameterArrays:
        """Conjugate updates for ``pi`` and ``p``; positive-part update per family."""
        priors = self.priors
        counts = np.bincount(g, minlength=N_STRATA)
        pi = rng.dirichlet(counts + np.asarray(priors.dirichlet_alpha))

        cells = self.routed_cells(g)
        n_zero = np.bincount(cells, weights=self.is_zero, minlength=N_CELLS)
        n_pos = np.bincount(cells, weights=self.positive, minlength=N_CELLS)
        p = rng.beta(priors.beta_a + n_zero, priors.beta_b + n_pos)

        pos_cells = cells[self.positive]
        if self.family is OutcomeFamily.LOGNORMAL:
            loc, scale = self._update_lognormal(pos_cells, n_pos, params, rng)
        else:
            loc, scale = self._update_gamma(pos_cells, n_pos, params, rng, adapt)
        return ParameterArrays(pi=pi, p=p, loc=loc, scale=scale)

    def _update_lognormal(
        self,
        pos_cells: np.ndarray,
        n_pos: np.ndarray,
        params: ParameterArrays,
        rng: np.random.Generator,
    ) -> tuple[np.ndarray, np.ndarray]:
        priors = self.priors
        logs = self.log_y[self.positive]
        s0 = n_pos
        s1 = np.bincount(pos_cells, weights=(logs - params.loc[pos_cells]) ** 2, minlength=N_CELLS)
        s1 = s1 / 2.0
        s2 = np.bincount(pos_cells, weights=logs, minlength=N_CELLS)

        shape = priors.ig_shape + (s0 / 2.0 if priors.ig_shape_uses_half_count else s0)
        with np.errstate(divide="ignore", over="ignore"):
            sigma2 = (priors.ig_scale + s1) / rng.gamma(shape)
        sigma2 = np.clip(sigma2, *_SCALE_RANGE)

        precision = s0 / sigma2 + 1.0 / priors.mu_var
        mean = (s2 / sigma2 + priors.mu_mean / priors.mu_var) / precision
        mu = rng.normal(mean, np.sqrt(1.0 / precision))
        return np.clip(mu, *_LOC_RANGE), sigma2

    def _update_gamma(
        self,
        pos_cells: np.ndarray,
        n_pos: np.ndarray,
        params: ParameterArrays,
        rng: np.random.Generator,
        adapt: bool,
    ) -> tuple[np.ndarray, np.ndarray]:
        priors = self.priors
        sum_log = np.bincount(pos_cells, weights=self.log_y[self.positive], minlength=N_CELLS)
        sum_y = np.bincount(pos_cells, weights=self.data.y[self.positive], minlength=N_CELLS)
        theta = params.scale

        def log_target(log_alpha: np.ndarray) -> np.ndarray:
            alpha = np.exp(log_alpha)
            log_lik = (alpha - 1.0) * sum_log - n_pos * (
                special.gammaln(alpha) + alpha * np.log(theta)
            )
            log_prior = (priors.alpha_prior_shape - 1.0) * log_alpha - priors.alpha_prior_rate * alpha
            # log-alpha Jacobian
            return log_lik + log_prior + log_alpha

        current = np.log(params.loc)
        proposal = current + np.exp(self.alpha_log_step) * rng.normal(size=N_CELLS)
        with np.errstate(over="ignore", invalid="ignore"):
            log_ratio = log_target(proposal) - log_target(current)
        accept = np.log(rng.random(N_CELLS)) < np.nan_to_num(log_ratio, nan=-np.inf)
        alpha = np.clip(np.exp(np.where(accept, proposal, current)), *_SCALE_RANGE)
        if adapt:
            self._adapt_alpha_step(accept)

        rate = rng.gamma(priors.gamma_rate_shape + n_pos * alpha) / (
            priors.gamma_rate_rate + sum_y
        )
        with np.errstate(divide="ignore"):
            theta = np.clip(1.0 / rate, *_SCALE_RANGE)
        return alpha, theta

    def _adapt_alpha_step(self, accept: np.ndarray) -> None:
        self._alpha_accepted += accept
        self._alpha_iterations += 1
        if self._alpha_iterations % _ADAPT_BATCH:
            return
        rate = self._alpha_accepted / _ADAPT_BATCH
        delta = min(0.5, 1.0 / np.sqrt(self._alpha_iterations / _ADAPT_BATCH))
        self.alpha_log_step += np.where(rate > self.priors.alpha_target_acceptance, delta, -delta)
        self._alpha_accepted[:] = 0

    # ------------------------------------------------------------------
    # Chain driver
    # ------------------------------------------------------------------

    def check_invariants(self, g: np.ndarray, tables) -> None:
        """Raise ``SamplerFault`` if any unit breaks compatibility or table equalities."""
        incompatible = np.flatnonzero(~self.compatible[np.arange(g.shape[0]), g])
        if incompatible.size:
            raise SamplerFault("stratum incompatible with observed data", unit=int(incompatible[0]))
        broken = table_violations(tables, g, self.data.y)
        if broken.size:
            raise SamplerFault("potential table violates exclusion restriction", unit=int(broken[0]))

    def run_chain(
        self,
        config: ChainConfig,
        chain: int = 0,
        progress_interval: int = 0,
        initial: Optional[ParameterArrays] = None,
    ) -> Iterator[PosteriorDraw]:
        """Run one chain and yield its retained draws.

        Args:
            config: Iteration counts, thinning and master seed.
            chain: Chain index; selects the random stream and whether to jitter.
            progress_interval: Log progress every this many iterations (0 disables).
            initial: Starting parameters; data-driven when omitted.

        Yields:
            PosteriorDraw for each retained iteration.

        Raises:
            SamplerFault: If a step reaches an impossible state.
        """
        rng = chain_rng(config.seed, chain)
        self.reset_adaptation()
        params = initial.copy() if initial is not None else self.initial_params(rng, chain > 0)
        logger.info(
            f"[Gibbs] Chain {chain} start: {config.iterations} iterations, "
            f"burn-in {config.burn_in}, thin {config.thin}, {self.data.n_units} units"
        )
        for iteration in range(1, config.iterations + 1):
            g = self.step_sample_strata(params, rng)
            tables = self.step_impute_missing(g, params, rng)
            params = self.step_update_params(
                g, params, rng, adapt=iteration <= config.burn_in
            )
            if self.debug_invariants:
                self.check_invariants(g, tables)
            if progress_interval and iteration % progress_interval == 0:
                logger.info(f"[Gibbs] Chain {chain}: iteration {iteration}/{config.iterations}")
            if config.is_retained(iteration):
                yield PosteriorDraw(
                    chain=chain, iteration=iteration, params=params, g=g, tables=tables
                )
        logger.info(f"[Gibbs] Chain {chain} finished")
