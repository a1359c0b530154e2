"""Analytic geometry of homogeneous spaces of arbitrary signature.

The kernel models an n-dimensional homogeneous space as the unit sphere
of a signature-weighted bilinear form on R^{n+1}. Subpackages:

- signature: type arithmetic and generalized trigonometry
- vectors:   metaspace products, vector index, limit vectors
- motions:   the generalized-orthogonal matrix group
- lineals:   subspace algebra and the universal measure
- triangles: metric relations and areas on the nine planes
- catalog:   named spaces and crystallographic groups
- cli/service: command line and JSON-over-HTTP front ends
"""

from .config import get_tol, set_tol
from .signature import INFINITE, Signature, gtrig, gtrig_inverse

__all__ = [
    "INFINITE",
    "Signature",
    "get_tol",
    "set_tol",
    "gtrig",
    "gtrig_inverse",
]

__version__ = "1.0.0"
