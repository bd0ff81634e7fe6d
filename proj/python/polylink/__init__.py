"""Closed planar linkages: configuration-space predicates, convex atlas, energy flow.

Vertices are lists of (x, y) pairs; indices are 0-based throughout.
"""

from ._core import (
    ConvergenceFailure,
    DegenerateGeometry,
    Infeasible,
    InvalidInput,
    MotionBlocked,
    NoClosure,
    NotEmbedded,
    bump,
    canonicalize,
    classify,
    contains_prefix,
    convexify,
    elliptic_energy,
    energy_gradient,
    is_feasible,
    is_generic,
    log_modified_energy,
    max_turn_angle,
    min_turn_angle,
    modified_energy,
    region_topology,
    sample_atlas,
    straight_line_sign_vectors,
    turn_angles,
    vertices_from_turn_angles,
)

__all__ = [name for name in dir() if not name.startswith("_")]
