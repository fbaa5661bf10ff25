"""Hamiltonian cycles become connected surfaces.

One node gadget per node of a cubic graph, glued along the arcs, gives a
closed 3-manifold.  A connected surface with one disc per tetrahedron exists
exactly when the graph has a Hamiltonian cycle, and the cycle can be read
back from the surface.
"""
import time

from normsurf import NAMED_GRAPHS, build_T_G, extract_cycle, find_connected_spanning_central, hamiltonian_oracle
from normsurf.detect import SearchStats

for name, make in NAMED_GRAPHS.items():
    G = make()
    R = build_T_G(G)
    stats = SearchStats()
    t0 = time.perf_counter()
    x = find_connected_spanning_central(R.triangulation, stats=stats)
    dt = time.perf_counter() - t0
    cycle = extract_cycle(R, x) if x is not None else None
    oracle = hamiltonian_oracle(G) is not None
    print(f"{name:9s} {R.triangulation.n:3d} tets  surface={x is not None!s:5s} oracle={oracle!s:5s} "
          f"nodes={stats.nodes:6d}  {dt * 1000:7.1f} ms  cycle={cycle}")
