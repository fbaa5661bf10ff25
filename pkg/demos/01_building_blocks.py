"""Two small triangulations and the surfaces that cross every tetrahedron once.

The triangular pillow is two tetrahedra glued along three faces.  It has a
single interior vertex, and exactly seven ways to place one normal disc in
each tetrahedron.  The triangular solid torus is three tetrahedra wrapped
around a core; its boundary edges come in degrees 1, 2 and 3.
"""
from normsurf import enumerate_spanning_central, surface_complex, triangular_pillow, triangular_solid_torus
from normsurf.normal import discs_of, is_trivial

pillow = triangular_pillow()
print(f"pillow: {pillow.n} tetrahedra, {len(pillow.gluings)} gluings")
for x in enumerate_spanning_central(pillow):
    info = surface_complex(pillow, x)
    kind = ("sphere" if info.euler == 2 else "vertex link disc") if is_trivial(pillow, x) else "quad disc"
    print(f"  discs {discs_of(x)}  chi={info.euler}  {kind}")

torus = triangular_solid_torus()
sk = torus.skeleton
print(f"\nsolid torus: {torus.n} tetrahedra")
print("  boundary edge degrees:", sorted(e.degree for e in sk.edges if e.boundary))
print("  boundary vertices:", sum(v.boundary for v in sk.vertices))
