"""Normal surfaces in generalised 3-dimensional triangulations.

Exact normal-coordinate machinery (matching equations, Euler characteristic,
extreme-ray enumeration), one-disc-per-tetrahedron surface detection, and
the gadget constructions behind two hardness reductions.
"""
from .triangulation import Gluing, Triangulation, from_text, to_text
from .normal import euler_functional, is_admissible, matching_system, surface_complex
from .cone import ConeSystem, extreme_rays, is_extreme_ray
from .abstract import ClauseSet, brute_force_sat, decide_instance, extract_assignment, reduce_sat
from .detect import (
    enumerate_spanning_central,
    find_connected_spanning_central,
    find_splitting_surface,
    verify_certificate,
)
from .gadgets import (
    NAMED_GRAPHS,
    CubicGraph,
    build_T_G,
    extract_cycle,
    gadget_surfaces,
    hamiltonian_oracle,
    node_gadget,
    pillow_chain,
    triangular_pillow,
    triangular_solid_torus,
)

__all__ = [
    "NAMED_GRAPHS", "ClauseSet", "ConeSystem", "CubicGraph", "Gluing", "Triangulation",
    "brute_force_sat", "build_T_G", "decide_instance", "extract_assignment", "extract_cycle",
    "gadget_surfaces", "hamiltonian_oracle", "pillow_chain", "enumerate_spanning_central", "euler_functional",
    "extreme_rays", "find_connected_spanning_central", "find_splitting_surface",
    "from_text", "is_admissible", "is_extreme_ray", "matching_system", "node_gadget",
    "reduce_sat", "surface_complex", "to_text", "triangular_pillow",
    "triangular_solid_torus", "verify_certificate",
]
__version__ = "0.1.0"
