"""Exact Grassmann, Fock-space and phase-space tools for fermionic Wigner functionals."""

__version__ = "0.1.0"

from .grassmann import GrassmannElement, ParameterFunction, berezin_integrate, grassmann_exp
from .modes import ModeSet
from .rings import FLOAT, LAURENT_EPS, RATIONAL, RATIONAL_SQRT2, Exact, get_ring

__all__ = [
    "__version__", "Exact", "FLOAT", "GrassmannElement", "LAURENT_EPS", "ModeSet",
    "ParameterFunction", "RATIONAL", "RATIONAL_SQRT2", "berezin_integrate", "get_ring",
    "grassmann_exp",
]
