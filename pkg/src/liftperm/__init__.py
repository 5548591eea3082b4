"""Exact computations with composition polynomials and lifted generalized permutahedra."""
from .compositions import Composition, f_reduced, g, g_closed_form
from .errors import LiftpermError
from .exactmath import Poly
from .genperm import SubsetParams, q_lift
from .nesto import BuildingSet

__version__ = "0.1.0"

__all__ = [
    "BuildingSet",
    "Composition",
    "LiftpermError",
    "Poly",
    "SubsetParams",
    "f_reduced",
    "g",
    "g_closed_form",
    "q_lift",
]
