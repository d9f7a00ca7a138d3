"""Exact contact homology computations for good toric contact manifolds."""

from .cone import (
    ConeSpec,
    Edge,
    Face,
    GoodCone,
    GoodnessError,
    InvalidCone,
    enumerate_edges,
    enumerate_faces,
    make_ck,
    make_orthant,
    make_simplex_cone,
    make_square_cone,
    standard_cone,
    validate_good,
)
from .cz import DegenerateOrbit, DegenerateReeb, EdgeFrame, OrbitIndex, build_frame, cz_index, degree, orbit_table
from .exact import Infeasible, IntMat, hnf, snf
from .homology import ModulusError, RankTable, chain_ranks, compare_tables
from .invariants import AbelianGroup, KernelData, chern_data, fundamental_group
from .reeb import (
    GenerationFailed,
    ReebVector,
    check_admissible,
    generate_generic,
    generate_near_normal,
    nondegenerate_up_to,
)

__version__ = "0.1.0"
