"""
Vandermonde Approximation Toolkit

Polynomial interpolation through Vandermonde systems in exact rational or
floating-point arithmetic, with convergence and Taylor-coefficient studies
and reproducible worked examples.
"""

__version__ = "1.0.0"
