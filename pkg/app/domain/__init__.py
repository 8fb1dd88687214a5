"""Domain layer - Compliance lattice, outcome model, estimands and their types."""
