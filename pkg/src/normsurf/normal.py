"""
Standard normal coordinates.

Each tetrahedron contributes seven coordinates, in the order
``q1 q2 q3 t0 t1 t2 t3``.  Quadrilateral ``qj`` separates the edge joining
vertices 0 and ``j`` from the opposite edge; triangle ``ti`` cuts off vertex
``i``.  Within this module a *disc* is the local index 0..6 into that block.

A normal arc in face ``f`` is named by the face vertex it cuts off.  Triangle
``i`` contributes the arc cutting off ``i`` in each face containing ``i``;
a quadrilateral contributes, in face ``f``, the arc cutting off the vertex it
pairs with ``f``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import DimensionMismatch, NotAdmissible, UnsupportedVector
from .triangulation import EDGES, Gluing, Triangulation, edge_index, face_vertices

QUAD_DISCS = (0, 1, 2)
TRIANGLE_DISCS = (3, 4, 5, 6)
DISC_NAMES = ("quad1", "quad2", "quad3", "tri0", "tri1", "tri2", "tri3")


def quad_partition(q: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """The vertex pairs separated by quadrilateral ``q`` (0-based)."""
    j = q + 1
    rest = tuple(v for v in (1, 2, 3) if v != j)
    return (0, j), rest  # type: ignore[return-value]


def quad_for_pair(a: int, b: int) -> int:
    """0-based quadrilateral that keeps vertices ``a`` and ``b`` on the same side."""
    if a == 0:
        return b - 1
    if b == 0:
        return a - 1
    return ({1, 2, 3} - {a, b}).pop() - 1


def quad_partner(q: int, v: int) -> int:
    """The vertex on the same side of quadrilateral ``q`` as ``v``."""
    for pair in quad_partition(q):
        if v in pair:
            return pair[1] if pair[0] == v else pair[0]
    raise ValueError(v)


def disc_arc(disc: int, face: int) -> int | None:
    """Vertex of ``face`` cut off by the arc of ``disc`` in that face (``None`` if no arc)."""
    if disc >= 3:
        v = disc - 3
        return None if v == face else v
    return quad_partner(disc, face)


def disc_corners(disc: int) -> list[tuple[int, int]]:
    """Edges met by ``disc``, in cyclic order around its boundary."""
    if disc >= 3:
        i = disc - 3
        return [tuple(sorted((i, j))) for j in range(4) if j != i]  # type: ignore[misc]
    (a, b), (c, d) = quad_partition(disc)
    return [tuple(sorted(e)) for e in ((a, c), (a, d), (b, d), (b, c))]  # type: ignore[misc]


def arc_coordinates(tet: int, face: int, v: int) -> tuple[int, int]:
    """Global (triangle, quad) coordinates producing the arc cutting off ``v`` in ``face``."""
    return 7 * tet + 3 + v, 7 * tet + quad_for_pair(face, v)


@dataclass(frozen=True)
class MatchingSystem:
    dim: int
    rows: tuple[tuple[tuple[int, int], ...], ...]  # sparse (index, coefficient) pairs
    provenance: tuple[object, ...]

    def dense_rows(self) -> list[list[int]]:
        out = []
        for row in self.rows:
            dense = [0] * self.dim
            for i, c in row:
                dense[i] += c
            out.append(dense)
        return out

    def residuals(self, x: Sequence[int]) -> list[int]:
        return [sum(c * x[i] for i, c in row) for row in self.rows]

    def to_text(self) -> str:
        lines = [f"dim {self.dim}"]
        for r, row in enumerate(self.rows):
            for i, c in row:
                lines.append(f"{r} {i} {c}")
        return "\n".join(lines) + "\n"


def matching_system(T: Triangulation) -> MatchingSystem:
    rows = []
    prov: list[object] = []
    for g in T.gluings:
        for v in face_vertices(g.face):
            coeff: dict[int, int] = {}
            for idx in arc_coordinates(g.tet, g.face, v):
                coeff[idx] = coeff.get(idx, 0) + 1
            for idx in arc_coordinates(g.other_tet, g.other_face, g.perm[v]):
                coeff[idx] = coeff.get(idx, 0) - 1
            rows.append(tuple(sorted(coeff.items())))
            prov.append((g, v))
    return MatchingSystem(7 * T.n, tuple(rows), tuple(prov))


def quad_pattern(n: int) -> list[tuple[int, int, int]]:
    return [(7 * t, 7 * t + 1, 7 * t + 2) for t in range(n)]


def _check_length(T: Triangulation, x: Sequence[int]) -> None:
    if len(x) != 7 * T.n:
        raise DimensionMismatch(f"vector has length {len(x)}, expected {7 * T.n}")


def satisfies_quad_constraints(x: Sequence[int]) -> bool:
    return all(sum(1 for q in range(3) if x[7 * t + q] != 0) <= 1 for t in range(len(x) // 7))


def is_admissible(T: Triangulation, x: Sequence[int]) -> bool:
    _check_length(T, x)
    if any(v < 0 for v in x):
        return False
    if not satisfies_quad_constraints(x):
        return False
    return all(r == 0 for r in matching_system(T).residuals(x))


@dataclass(frozen=True)
class EulerFunctional:
    """Linear functional giving the Euler characteristic of a normal surface.

    ``weights`` are exact rationals; ``scale * weights`` are integers.
    """

    weights: tuple[Fraction, ...]
    scale: int

    def integer_weights(self) -> list[int]:
        return [int(w * self.scale) for w in self.weights]

    def __call__(self, x: Sequence[int]) -> Fraction:
        return sum((w * v for w, v in zip(self.weights, x) if v), Fraction(0))


def euler_functional(T: Triangulation) -> EulerFunctional:
    """Per disc: one face, minus shared arcs, plus shared corner points.

    An arc in an internal face is shared by two discs, a boundary arc by
    one; a corner on an edge of degree ``d`` is shared by ``d`` discs.
    """
    sk = T.skeleton
    weights = []
    scale = 2
    for t in range(T.n):
        iota = [1 if T.is_boundary_face(t, f) else 2 for f in range(4)]
        deg = [sk.edges[sk.edge_of[(t, e)]].degree for e in range(6)]
        scale = lcm(scale, *deg)
        for disc in range(7):
            w = Fraction(1)
            for f in range(4):
                if disc_arc(disc, f) is not None:
                    w -= Fraction(1, iota[f])
            for a, b in disc_corners(disc):
                w += Fraction(1, deg[edge_index(a, b)])
            weights.append(w)
    return EulerFunctional(tuple(weights), scale)


def euler_value(T: Triangulation, f: EulerFunctional | None, x: Sequence[int]) -> Fraction:
    if not is_admissible(T, x):
        raise NotAdmissible("Euler characteristic is only meaningful on admissible vectors")
    if f is None:
        f = euler_functional(T)
    return f(x)


def vertex_link_vector(T: Triangulation, v: int) -> list[int]:
    x = [0] * (7 * T.n)
    for t, i in T.skeleton.vertices[v].slots:
        x[7 * t + 3 + i] += 1
    return x


def is_trivial(T: Triangulation, x: Sequence[int]) -> bool:
    """Whether ``x`` is a union of vertex links (the zero vector counts)."""
    if not is_admissible(T, x):
        raise NotAdmissible("triviality is tested on admissible vectors only")
    if any(x[7 * t + q] for t in range(T.n) for q in range(3)):
        return False
    for vc in T.skeleton.vertices:
        values = {x[7 * t + 3 + i] for t, i in vc.slots}
        if len(values) > 1:
            return False
    return True


# -- one-disc-per-tetrahedron surfaces -------------------------------------

def discs_of(x: Sequence[int]) -> list[int]:
    """Disc chosen in each tetrahedron of a {0,1} vector with exactly one disc per tetrahedron."""
    if len(x) % 7:
        raise DimensionMismatch("length is not a multiple of 7")
    out = []
    for t in range(len(x) // 7):
        block = x[7 * t: 7 * t + 7]
        if any(v not in (0, 1) for v in block) or sum(block) != 1:
            raise UnsupportedVector(f"tetrahedron {t} does not hold exactly one disc")
        out.append(block.index(1))
    return out


def vector_of(discs: Sequence[int]) -> list[int]:
    x = [0] * (7 * len(discs))
    for t, d in enumerate(discs):
        x[7 * t + d] = 1
    return x


def arcs_consistent(g: Gluing, disc: int, other_disc: int) -> bool:
    a = disc_arc(disc, g.face)
    b = disc_arc(other_disc, g.other_face)
    if a is None:
        return b is None
    return b == g.perm[a]


def disc_components(T: Triangulation, discs: Sequence[int]) -> list[list[int]]:
    """Connected components of the discs, joined across shared arcs."""
    seen = [False] * T.n
    comps = []
    for start in range(T.n):
        if seen[start]:
            continue
        seen[start] = True
        comp, queue = [], deque([start])
        while queue:
            t = queue.popleft()
            comp.append(t)
            for f in range(4):
                if disc_arc(discs[t], f) is None:
                    continue
                nb = T.neighbour(t, f)
                if nb is not None and not seen[nb[0]]:
                    seen[nb[0]] = True
                    queue.append(nb[0])
        comps.append(sorted(comp))
    return comps


@dataclass(frozen=True)
class SurfaceInfo:
    euler: int
    orientable: bool
    boundary_components: int
    connected: bool


def surface_complex(T: Triangulation, x: Sequence[int]) -> SurfaceInfo:
    """Build the disc/arc/corner cell complex of a spanning central vector and classify it."""
    _check_length(T, x)
    discs = discs_of(x)
    if not is_admissible(T, x):
        raise NotAdmissible("surface_complex needs an admissible vector")

    corner_ids: dict[tuple[int, tuple[int, int]], int] = {}
    for t, d in enumerate(discs):
        for c in disc_corners(d):
            corner_ids[(t, c)] = len(corner_ids)
    parent = list(range(len(corner_ids)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def arc_ends(disc: int, face: int) -> tuple[tuple[int, int], tuple[int, int]]:
        v = disc_arc(disc, face)
        others = [w for w in face_vertices(face) if w != v]
        return tuple(sorted((v, others[0]))), tuple(sorted((v, others[1])))  # type: ignore[return-value]

    def direction(disc: int, c1: tuple[int, int], c2: tuple[int, int]) -> int:
        cyc = disc_corners(disc)
        i, j = cyc.index(c1), cyc.index(c2)
        return 1 if (i + 1) % len(cyc) == j else -1

    edges_twice = 0
    boundary_arcs = []
    # orientation constraints: sign[t2] = rel * sign[t]
    constraints: list[tuple[int, int, int]] = []
    for t, d in enumerate(discs):
        for f in range(4):
            v = disc_arc(d, f)
            if v is None:
                continue
            c1, c2 = arc_ends(d, f)
            nb = T.neighbour(t, f)
            if nb is None:
                edges_twice += 2
                boundary_arcs.append((corner_ids[(t, c1)], corner_ids[(t, c2)]))
                continue
            edges_twice += 1
            t2, _, p = nb
            m1 = tuple(sorted((p[c1[0]], p[c1[1]])))
            m2 = tuple(sorted((p[c2[0]], p[c2[1]])))
            for a, b in ((c1, m1), (c2, m2)):
                x1, x2 = find(corner_ids[(t, a)]), find(corner_ids[(t2, b)])
                parent[x1] = x2
            # matched arcs must be traversed in opposite directions
            rel = -direction(d, c1, c2) * direction(discs[t2], m1, m2)
            constraints.append((t, t2, rel))

    V = len({find(i) for i in range(len(corner_ids))})
    E = edges_twice // 2
    F = T.n
    comps = disc_components(T, discs)

    sign = [0] * T.n
    adj: dict[int, list[tuple[int, int]]] = {}
    for a, b, rel in constraints:
        adj.setdefault(a, []).append((b, rel))
        adj.setdefault(b, []).append((a, rel))
    orientable = True
    for comp in comps:
        root = comp[0]
        sign[root] = 1
        queue = deque([root])
        while queue and orientable:
            a = queue.popleft()
            for b, rel in adj.get(a, ()):
                want = sign[a] * rel
                if sign[b] == 0:
                    sign[b] = want
                    queue.append(b)
                elif sign[b] != want:
                    orientable = False
                    break

    bparent: dict[int, int] = {}

    def bfind(a: int) -> int:
        bparent.setdefault(a, a)
        while bparent[a] != a:
            a = bparent[a]
        return a

    for a, b in boundary_arcs:
        ra, rb = bfind(find(a)), bfind(find(b))
        if ra != rb:
            bparent[ra] = rb
    n_boundary = len({bfind(find(a)) for arc in boundary_arcs for a in arc})

    return SurfaceInfo(V - E + F, orientable, n_boundary, len(comps) == 1)


def edge_weights(T: Triangulation, x: Sequence[int]) -> list[int]:
    """Number of points in which the surface meets each edge class."""
    sk = T.skeleton
    out = []
    for ec in sk.edges:
        t, e = ec.slots[0]
        a, b = EDGES[e]
        total = 0
        for disc in range(7):
            if (a, b) in disc_corners(disc):
                total += x[7 * t + disc]
        out.append(total)
    return out


# -- text format ------------------------------------------------------------

def vector_to_text(x: Sequence[int]) -> str:
    lines = [" ".join(str(v) for v in x[7 * t: 7 * t + 7]) for t in range(len(x) // 7)]
    return "\n".join(lines) + "\n"


def vector_from_text(text: str) -> list[int]:
    out: list[int] = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        parts = [int(v) for v in ln.split()]
        if len(parts) != 7:
            raise DimensionMismatch(f"expected 7 integers per line, got {ln!r}")
        out.extend(parts)
    return out
