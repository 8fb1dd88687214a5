"""Domain services: pure functions over numpy arrays.

Import the modules directly (``strata``, ``design``, ``outcome_model``,
``potential_outcomes``, ``estimands``).
"""
