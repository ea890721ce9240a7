"""Exact Schubert calculus, Chern-class series, and derivative-complex
homology computations for irregular varieties.

Everything is exact: integer and rational arithmetic throughout, with
polynomial coefficients where a formula is kept symbolic in (h, q).
"""

__version__ = "0.1.0"
