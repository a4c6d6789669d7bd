"""Generalized Reed-Solomon codes with sparsest and balanced generator matrices."""

from .codec import (CodeBundle, construct_code, det_identity_check, encode, generator_matrix,
                    min_distance_bruteforce, root_polys, verify_mds, verify_sbgm)
from .field import GF, make_field, smallest_field_geq
from .kernels import backend
from .support import balanced_profile, build_W, sbar, tbar, verify_claims12
from .xi import claim3_oracle, elem_sym, find_points, xi_eval

__version__ = "0.1.0"

__all__ = [
    "CodeBundle", "GF", "backend", "balanced_profile", "build_W", "claim3_oracle",
    "construct_code", "det_identity_check", "elem_sym", "encode", "find_points",
    "generator_matrix", "make_field", "min_distance_bruteforce", "root_polys", "sbar",
    "smallest_field_geq", "tbar", "verify_claims12", "verify_mds", "verify_sbgm", "xi_eval",
]
