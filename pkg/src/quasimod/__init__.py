"""Exact computations with quasi-modular forms and the periods of Weierstrass
families."""

from .numeric import BigComplex, CycloNumber
from .qseries import PuiseuxSeries

__version__ = "0.1.0"

__all__ = ["BigComplex", "CycloNumber", "PuiseuxSeries", "__version__"]
