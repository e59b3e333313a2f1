"""statlab: analytic and simulation-based answers to four classic statistics problems.

Each problem is solved twice -- once with closed forms, quadrature, or 1-D
optimization, and once with seeded Monte Carlo or MCMC -- and the two tracks
are cross-checked against each other.
"""

__version__ = "0.1.0"

DEFAULT_SEED = 20070420
