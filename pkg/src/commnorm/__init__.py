"""Sharp constants for ||XY - YX||_p <= C ||X||_q ||Y||_r in Schatten norms."""

from .constants import BoundResult, Region, Status, classify, constant, constant_ppr, symmetry_orbit
from .indices import INF, NormIndex, conjugate, index, interpolate_index, scale_coord
from .witnesses import Kind, MatrixPair, WitnessRecipe, best_witness, build, ratio

__all__ = [
    "BoundResult", "Region", "Status", "classify", "constant", "constant_ppr", "symmetry_orbit",
    "INF", "NormIndex", "conjugate", "index", "interpolate_index", "scale_coord",
    "Kind", "MatrixPair", "WitnessRecipe", "best_witness", "build", "ratio",
]
