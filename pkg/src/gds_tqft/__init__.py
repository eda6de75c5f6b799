"""Exact computations for the toric code, the GDS lattice model and Z/2
gauge-gravity TQFTs on triangulated closed manifolds."""

from .charclasses import (
    Lagrangian,
    beta2_lagrangian,
    dw_lagrangian,
    gds_lagrangian,
    lagrangian_value,
    mapping_torus_character,
    orientation_twist,
    parse_lagrangian,
    stiefel_whitney,
    wu_classes,
    zero_lagrangian,
)
from .cohomology import Cochain, CohomologyRing, betti_numbers, ring
from .lattice import character, flat_classes, gds_sign, ground_dim, sigma_loop
from .simplicial import (
    ManifoldRecord,
    SimplicialComplex,
    build_from_facets,
    builtin,
    circle,
    parse_manifold,
    simplicial_product,
    sphere,
)
from .tqft import quantum_partition, state_dim, theory

__version__ = "0.1.0"
