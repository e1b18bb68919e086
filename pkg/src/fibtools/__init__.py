"""Exact Fibonacci numeration, random Fibonacci growth, integer densities and balanced words."""

__version__ = "0.1.0"

from .fibcore import FibConvention, fib, order_r_fib, pisano_period, sqrt5_convergents, totient
from .quadratic import PHI, PSI, SQRT5, QuadraticReal

__all__ = [
    "__version__",
    "FibConvention",
    "QuadraticReal",
    "PHI",
    "PSI",
    "SQRT5",
    "fib",
    "order_r_fib",
    "pisano_period",
    "sqrt5_convergents",
    "totient",
]
