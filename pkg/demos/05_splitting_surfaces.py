"""Splitting surfaces, made only of quadrilaterals, are found in linear time.

Choosing a quad in one tetrahedron forces the quad across every glued face,
so one pass per component settles the question.  Stacks of pillows show the
running time growing in step with the size.
"""
import time

from normsurf import find_splitting_surface, node_gadget, pillow_chain, triangular_solid_torus
from normsurf.normal import discs_of

for name, T in [("solid torus", triangular_solid_torus()), ("node gadget", node_gadget()[0])]:
    x = find_splitting_surface(T)
    print(f"{name}: {'none' if x is None else discs_of(x)}")

for k in (50, 100, 200, 400):
    T = pillow_chain(k)
    t0 = time.perf_counter()
    x = find_splitting_surface(T)
    print(f"pillow chain, {T.n:4d} tetrahedra: found={x is not None}  {1000 * (time.perf_counter() - t0):.2f} ms")
