"""Exact lattice verifier for curves of maximal Clifford index on rank-2 K3 surfaces."""

from k3clifford.lattice import (
    C,
    H,
    DivisorClass,
    Regime,
    SurfaceParams,
    chi,
    discriminant,
    intersect,
    new_params,
    self_int,
)

__version__ = "0.1.0"

__all__ = [
    "C",
    "H",
    "DivisorClass",
    "Regime",
    "SurfaceParams",
    "chi",
    "discriminant",
    "intersect",
    "new_params",
    "self_int",
    "__version__",
]
