"""Application entry point - delegates to the CLI in the presentation layer."""

from app.presentation.cli import build_parser, main, run

__all__ = ["build_parser", "main", "run"]


if __name__ == "__main__":
    run()
