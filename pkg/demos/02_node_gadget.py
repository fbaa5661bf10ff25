"""The node gadget: a solid torus with a pillow slipped into each internal face.

Its boundary splits into three annuli.  A connected surface that uses one
disc per tetrahedron is either a tube joining two annuli or a Moebius strip
touching all three.  Counting them confirms 24 tubes and 8 strips.
"""
from collections import Counter

from normsurf import gadget_surfaces, node_gadget

T, labels = node_gadget()
print(f"node gadget: {T.n} tetrahedra, {len(T.boundary_faces())} boundary triangles")
for i, (plus, minus) in enumerate(labels.annuli):
    print(f"  annulus {i}: triangles {plus} and {minus}")
for i, (t, a, b) in enumerate(labels.axis):
    print(f"  axis edge {i}: tetrahedron {t}, {a} -> {b}")

surfaces = gadget_surfaces()
print(f"\n{len(surfaces)} connected surfaces")
print(" ", dict(Counter(s.kind for s in surfaces)))
print("  tubes by annulus pair:", dict(Counter(tuple(sorted(s.annuli)) for s in surfaces if s.kind == "tube")))
