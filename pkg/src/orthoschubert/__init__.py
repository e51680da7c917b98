"""Combinatorics of Schubert varieties in the orthogonal Grassmannian.

Hilbert functions and multiplicities at torus-fixed points, computed through
v-chains, O-domination, the orthogonal pi/phi bijections and non-intersecting
lattice paths.
"""

from .index_sets import IdElement, IndexSetError, validate, parse_instance
from .root_lattice import Root, Monomial, Regions, build_regions

__all__ = [
    "IdElement",
    "IndexSetError",
    "validate",
    "parse_instance",
    "Root",
    "Monomial",
    "Regions",
    "build_regions",
]

__version__ = "0.1.0"
