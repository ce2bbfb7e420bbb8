"""Exact computations for quivers with Galois actions."""
from .linalg import Matrix, QuadExt, kernel_basis, rref, solve
from .quiver import Edge, Quiver, RationalQuiver, validate
from .species import build_species, classify_rational_quiver, valued_graph

__version__ = "0.1.0"
