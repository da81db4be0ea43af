"""Exact arithmetic for Coulomb branches of quiver gauge theories with symmetrizers."""

__version__ = "0.1.0"

from .fraction import RestrictedFraction
from .poly import Poly
from .quiver import ValuedQuiver, finite_type_quiver
from .series import GradedSeries
from .shift import Ambient, ShiftOperator

__all__ = ["Ambient", "GradedSeries", "Poly", "RestrictedFraction", "ShiftOperator",
           "ValuedQuiver", "finite_type_quiver", "__version__"]
