"""Extension theory of skew-symmetric operators on exact desk-scale substrates.

Two substrates are provided: finite-dimensional linear relations on C^n
(graphs as subspaces, numpy-backed) and an exact rational model of the
derivative operator on the half line, which realizes unequal deficiency
indices.  On top of them sit boundary systems, boundary triplets, the
conversions between the two notions, and the parametrizations of
skew-self-adjoint and maximal dissipative extensions.
"""

from . import boundary, extensions, formats, halfline, linalg, relation, subspace
from .errors import SkewextError

__all__ = [
    "boundary",
    "extensions",
    "formats",
    "halfline",
    "linalg",
    "relation",
    "subspace",
    "SkewextError",
]

__version__ = "0.1.0"
