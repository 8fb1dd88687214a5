"""Conjugate prior hyperparameters."""

from dataclasses import dataclass, fields

from ..exceptions import ConfigError


@dataclass(frozen=True)
class Priors:
    """Hyperparameters of the stratum and outcome priors.

    Attributes:
        dirichlet_alpha: Dirichlet concentration over the six strata.
        beta_a, beta_b: Beta prior on every cell's zero-inflation probability.
        mu_mean, mu_var: Normal prior on the log-normal location.
        ig_shape, ig_scale: Inverse-Gamma prior on the log-normal variance.
        ig_shape_uses_half_count: Add half the positive count to the Inverse-Gamma
            shape (the variance full conditional given the location). The default adds
            the whole count.
        gamma_rate_shape, gamma_rate_rate: Gamma prior on the Gamma-family rate 1/theta.
        alpha_prior_shape, alpha_prior_rate: Gamma prior on the Gamma-family shape.
        alpha_step: Initial random-walk step on log alpha.
        alpha_target_acceptance: Acceptance rate the step is adapted toward during burn-in.
    """

    dirichlet_alpha: tuple[float, ...] = (1.0, 1.0, 1.0, 1.0, 1.0, 1.0)
    beta_a: float = 1.0
    beta_b: float = 1.0
    mu_mean: float = 0.0
    mu_var: float = 100.0
    ig_shape: float = 0.01
    ig_scale: float = 0.01
    ig_shape_uses_half_count: bool = False
    gamma_rate_shape: float = 0.01
    gamma_rate_rate: float = 0.01
    alpha_prior_shape: float = 1.0
    alpha_prior_rate: float = 0.01
    alpha_step: float = 0.1
    alpha_target_acceptance: float = 0.44

    def __post_init__(self) -> None:
        """Require strictly positive hyperparameters."""
        if len(self.dirichlet_alpha) != 6:
            raise ConfigError(
                f"dirichlet_alpha needs 6 entries, got {len(self.dirichlet_alpha)}"
            )
        if any(not v > 0 for v in self.dirichlet_alpha):
            raise ConfigError(f"dirichlet_alpha must be positive, got {self.dirichlet_alpha}")
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name in ("dirichlet_alpha", "ig_shape_uses_half_count", "mu_mean"):
                continue
            if not value > 0:
                raise ConfigError(f"{f.name} must be positive, got {value}")
        if not self.alpha_target_acceptance < 1:
            raise ConfigError("alpha_target_acceptance must be below 1")
