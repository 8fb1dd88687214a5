"""Posterior summary of one estimand."""

from dataclasses import asdict, dataclass

from ..exceptions import EstimandError


@dataclass(frozen=True)
class EstimandSummary:
    """Mean, median and central 95% interval over retained draws."""

    key: str
    mean: float
    median: float
    q025: float
    q975: float
    n_draws: int
    n_skipped: int = 0

    def __post_init__(self) -> None:
        if self.n_draws < 2:
            raise EstimandError(f"{self.key}: summaries need at least 2 draws, got {self.n_draws}")
        if not self.q025 <= self.median <= self.q975:
            raise EstimandError(f"{self.key}: quantiles out of order")

    @property
    def interval_width(self) -> float:
        return self.q975 - self.q025

    def covers(self, value: float) -> bool:
        return self.q025 <= value <= self.q975

    def to_dict(self) -> dict[str, object]:
        return asdict(self)
