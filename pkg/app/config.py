"""Process-level settings for the two-stage principal-stratification toolkit.

=== pydantic_settings の仕組み ===

Fields of ``Settings`` are read from environment variables (upper snake case of
the field name) and from an optional ``.env`` file:
    log_level → LOG_LEVEL
    workers → WORKERS

【優先順位】
環境変数 > .envファイル > デフォルト値

Run-level options (design, priors, chains, DGP, estimands) live in the JSON run
config instead; see ``app.application.dto.run_config``.

【使い方】
    from app.config import get_settings
    settings = get_settings()
    settings.workers
"""

from functools import lru_cache
from pathlib import Path

from pydantic import Field  # フィールドにデフォルト値や説明、バリデーションを設定する
from pydantic_settings import BaseSettings  # 環境変数から自動で値を読み込むクラス


class Settings(BaseSettings):
    """環境変数から設定を読み込むクラス。

    例: progress_interval → PROGRESS_INTERVAL
    """

    # === Logging ===
    # 環境変数: LOG_LEVEL (値: DEBUG, INFO, WARNING, ERROR)
    log_level: str = Field(default="INFO", description="Root log level")

    # === Output ===
    # 環境変数: OUTPUT_DIR
    output_dir: Path = Field(
        default=Path("./output"), description="Default directory for run artifacts"
    )

    # === Parallelism ===
    # 環境変数: WORKERS
    workers: int = Field(
        default=1, ge=1, description="Process pool size for chains and study replications"
    )

    # === Sampler ===
    # 環境変数: PROGRESS_INTERVAL
    progress_interval: int = Field(
        default=1000, ge=0, description="Iterations between progress log lines (0 disables)"
    )
    # 環境変数: DEBUG_INVARIANTS (値: true または false)
    debug_invariants: bool = Field(
        default=False,
        description="Check strata compatibility and table equalities after every iteration",
    )
    # 環境変数: DEFAULT_SEED
    default_seed: int = Field(
        default=20240101, ge=0, description="Seed used when neither config nor CLI sets one"
    )

    # === pydantic_settings の設定 ===
    model_config = {
        "env_file": ".env",  # .envファイルから環境変数を読み込む
        "env_file_encoding": "utf-8",  # ファイルのエンコーディング
        "extra": "ignore",  # 定義されていない環境変数は無視する
    }


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
