"""Bayesian principal stratification for two-stage randomized experiments."""
