"""Exact symbolic calculus for simply-connected smooth 4-manifolds:
intersection lattices, group-ring Seiberg-Witten polynomials, the standard
surgery operations, and geography charts."""

from .knots import KnotDescriptor, alexander, fibered_genus
from .lattice import IntersectionLattice, LatticeVector
from .manifold import ManifoldModel, exotic_verdict, homeomorphic, validate
from .surgery import blowup, fiber_sum, knot_surgery, log_transform, rational_blowdown, seed
from .swring import SWPolynomial, mms_combine, reduce_by_torus

__all__ = [
    "IntersectionLattice",
    "KnotDescriptor",
    "LatticeVector",
    "ManifoldModel",
    "SWPolynomial",
    "alexander",
    "blowup",
    "exotic_verdict",
    "fiber_sum",
    "fibered_genus",
    "homeomorphic",
    "knot_surgery",
    "log_transform",
    "mms_combine",
    "rational_blowdown",
    "reduce_by_torus",
    "seed",
    "validate",
]

__version__ = "0.1.0"
