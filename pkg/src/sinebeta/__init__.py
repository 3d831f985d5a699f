"""Circular beta-ensemble / sine-beta toolkit.

Exact Jack-polynomial machinery for multiplicative-functional expectations,
exact sampling of the circular beta-ensemble, simulation of the sine-beta
process, and a harness that checks the central-limit behaviour of linear
statistics numerically.
"""

__version__ = "0.1.0"
