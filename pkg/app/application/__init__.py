"""Application layer: run configuration, run context and the principal-stratification use cases."""
