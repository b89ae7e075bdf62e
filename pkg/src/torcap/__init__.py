"""Exact capacities of toric surfaces and symplectic embedding obstructions."""

from .capacities import (
    CapacitySequence,
    ConcaveDomain,
    EmbeddingVerdict,
    XiWidth,
    alg_capacities,
    calg,
    calg_witness,
    concave_weights,
    ech_concave,
    ech_concave_capacities,
    ech_convex,
    ech_convex_capacities,
    ech_ellipsoid,
    ech_ellipsoid_capacities,
    embedding_verdict,
    gromov_width_bound,
    width_bound_check,
    xi_width,
)
from .errors import TorcapError
from .lattice import MomentPolygon, UnimodularAffineMap, lattice_width
from .toric import DivisorClass, ToricSurface, TorusDivisor, build_surface

__all__ = [
    "CapacitySequence",
    "ConcaveDomain",
    "DivisorClass",
    "EmbeddingVerdict",
    "MomentPolygon",
    "ToricSurface",
    "TorcapError",
    "TorusDivisor",
    "UnimodularAffineMap",
    "XiWidth",
    "alg_capacities",
    "build_surface",
    "calg",
    "calg_witness",
    "concave_weights",
    "ech_concave",
    "ech_concave_capacities",
    "ech_convex",
    "ech_convex_capacities",
    "ech_ellipsoid",
    "ech_ellipsoid_capacities",
    "embedding_verdict",
    "gromov_width_bound",
    "lattice_width",
    "width_bound_check",
    "xi_width",
]

__version__ = "0.1.0"
