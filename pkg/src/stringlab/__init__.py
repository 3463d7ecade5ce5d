"""Numerical laboratory for a planar Liouville-type equation.

Tools for the equation -Delta u = e^{au} + |x|^{2N} e^u: regime
classification and mass-interval arithmetic, a radial shooting solver with
tail-corrected quadrature, the catalog of admissible limiting masses,
conical-metric solvability checks, blow-up point balance algebra, and an
explicit non-radial blow-up family.
"""

from .regime import Params, classify_regime, necessary_bounds, radial_interval

__all__ = ["Params", "classify_regime", "necessary_bounds",
           "radial_interval"]

__version__ = "0.1.0"
