"""Infrastructure layer - MCMC, simulation and file persistence."""
