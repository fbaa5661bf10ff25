"""
Generalised 3-dimensional triangulations.

A triangulation is a collection of ``n`` tetrahedra, each with vertices
labelled 0..3, together with face identifications.  Face ``f`` of a
tetrahedron is the triangle opposite vertex ``f``.  A gluing carries a full
permutation of {0,1,2,3}: ``perm[v]`` is the vertex of the other tetrahedron
that vertex ``v`` is sent to, with ``perm[face] == other_face``.

Everything here is immutable; operations that "modify" a triangulation
return a new one.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .errors import (
    Disconnected,
    InvalidEdgePresent,
    MalformedPermutation,
    SelfFaceGluing,
    SlotAlreadyGlued,
    TriangulationError,
)

#: The six edges of a tetrahedron, as sorted vertex pairs.
EDGES: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX: dict[tuple[int, int], int] = {e: i for i, e in enumerate(EDGES)}

Perm = tuple[int, int, int, int]


def edge_index(a: int, b: int) -> int:
    """Index in :data:`EDGES` of the tetrahedron edge joining ``a`` and ``b``."""
    return EDGE_INDEX[(a, b) if a < b else (b, a)]


def face_vertices(face: int) -> tuple[int, int, int]:
    return tuple(v for v in range(4) if v != face)  # type: ignore[return-value]


def perm_sign(p: Sequence[int]) -> int:
    sign = 1
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] > p[j]:
                sign = -sign
    return sign


def perm_inverse(p: Sequence[int]) -> Perm:
    inv = [0] * 4
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)  # type: ignore[return-value]


def parse_perm(text: str) -> Perm:
    """Parse ``"1023"`` (or ``"1,0,2,3"``) into a permutation tuple."""
    digits = [c for c in text if c.isdigit()]
    return tuple(int(c) for c in digits)  # type: ignore[return-value]


def format_perm(p: Sequence[int]) -> str:
    return "".join(str(v) for v in p)


@dataclass(frozen=True, order=True)
class Gluing:
    """Identification of face ``face`` of ``tet`` with ``other_face`` of ``other_tet``."""

    tet: int
    face: int
    other_tet: int
    other_face: int
    perm: Perm

    def __post_init__(self) -> None:
        perm = tuple(int(v) for v in self.perm)
        object.__setattr__(self, "perm", perm)
        if sorted(perm) != [0, 1, 2, 3]:
            raise MalformedPermutation(f"{perm} is not a permutation of 0..3")
        if not (0 <= self.face < 4 and 0 <= self.other_face < 4):
            raise MalformedPermutation(f"face index out of range in {self}")
        if perm[self.face] != self.other_face:
            raise MalformedPermutation(
                f"perm {format_perm(perm)} sends face {self.face} to "
                f"{perm[self.face]}, expected {self.other_face}"
            )
        if self.tet == self.other_tet and self.face == self.other_face:
            raise SelfFaceGluing(f"face {self.face} of tetrahedron {self.tet} glued to itself")

    def inverse(self) -> "Gluing":
        return Gluing(self.other_tet, self.other_face, self.tet, self.face, perm_inverse(self.perm))

    def canonical(self) -> "Gluing":
        """The same identification, written from its lexicographically smaller side."""
        if (self.tet, self.face) <= (self.other_tet, self.other_face):
            return self
        return self.inverse()

    def __str__(self) -> str:
        return f"{self.tet} {self.face} {self.other_tet} {self.other_face} {format_perm(self.perm)}"


class _ParityUnionFind:
    """Union-find that also tracks a parity bit relative to the class root."""

    def __init__(self, size: int) -> None:
        self.parent = list(range(size))
        self.parity = [0] * size
        self.bad_roots: set[int] = set()

    def find(self, x: int) -> tuple[int, int]:
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        # compress, accumulating parity from the top down
        acc = 0
        for node in reversed(path):
            acc ^= self.parity[node]
            self.parity[node] = acc
            self.parent[node] = root
        return root, (self.parity[path[0]] if path else 0)

    def union(self, a: int, b: int, flip: int) -> None:
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            if pa ^ pb != flip:
                self.bad_roots.add(ra)
            return
        self.parent[rb] = ra
        self.parity[rb] = pa ^ pb ^ flip
        if rb in self.bad_roots:
            self.bad_roots.discard(rb)
            self.bad_roots.add(ra)


@dataclass(frozen=True)
class EdgeClass:
    index: int
    slots: tuple[tuple[int, int], ...]  # (tet, edge index into EDGES)
    boundary: bool
    valid: bool

    @property
    def degree(self) -> int:
        return len(self.slots)


@dataclass(frozen=True)
class VertexClass:
    index: int
    slots: tuple[tuple[int, int], ...]  # (tet, vertex)
    boundary: bool


@dataclass(frozen=True)
class Skeleton:
    edges: tuple[EdgeClass, ...]
    vertices: tuple[VertexClass, ...]
    internal_faces: tuple[Gluing, ...]
    boundary_faces: tuple[tuple[int, int], ...]
    edge_of: Mapping[tuple[int, int], int] = field(repr=False)
    vertex_of: Mapping[tuple[int, int], int] = field(repr=False)

    @property
    def valid(self) -> bool:
        return all(e.valid for e in self.edges)

    def degree_multiset(self) -> list[int]:
        return sorted(e.degree for e in self.edges)


@dataclass(frozen=True)
class VertexLink:
    vertex: int
    euler: int
    connected: bool
    closed: bool

    @property
    def classification(self) -> str:
        if self.connected and self.closed and self.euler == 2:
            return "sphere"
        if self.connected and not self.closed and self.euler == 1:
            return "disc"
        return "other"


class Triangulation:
    """An immutable generalised triangulation.

    >>> t = Triangulation(2, [Gluing(0, 2, 1, 3, (0, 1, 3, 2))])
    >>> t.n, len(t.gluings)
    (2, 1)
    """

    def __init__(
        self,
        n: int,
        gluings: Iterable[Gluing] = (),
        labels: Mapping[str, str] | None = None,
    ) -> None:
        if n < 1:
            raise TriangulationError("a triangulation needs at least one tetrahedron")
        self.n = int(n)
        adj: dict[tuple[int, int], tuple[int, int, Perm]] = {}
        canon = []
        for g in gluings:
            for t in (g.tet, g.other_tet):
                if not 0 <= t < self.n:
                    raise TriangulationError(f"tetrahedron {t} out of range in gluing {g}")
            for slot in ((g.tet, g.face), (g.other_tet, g.other_face)):
                if slot in adj:
                    raise SlotAlreadyGlued(f"face {slot[1]} of tetrahedron {slot[0]} is already glued")
            adj[(g.tet, g.face)] = (g.other_tet, g.other_face, g.perm)
            inv = g.inverse()
            adj[(inv.tet, inv.face)] = (inv.other_tet, inv.other_face, inv.perm)
            canon.append(g.canonical())
        self._adj = adj
        self.gluings: tuple[Gluing, ...] = tuple(sorted(canon))
        self.labels: dict[str, str] = dict(labels or {})

    # -- basic access -------------------------------------------------------

    def neighbour(self, tet: int, face: int) -> tuple[int, int, Perm] | None:
        """``(other_tet, other_face, perm)`` across the given face, or ``None`` if boundary."""
        return self._adj.get((tet, face))

    def is_boundary_face(self, tet: int, face: int) -> bool:
        return (tet, face) not in self._adj

    def gluing_at(self, tet: int, face: int) -> Gluing | None:
        nb = self._adj.get((tet, face))
        if nb is None:
            return None
        return Gluing(tet, face, nb[0], nb[1], nb[2])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.n == other.n and self.gluings == other.gluings and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.n, self.gluings))

    def __repr__(self) -> str:
        return f"Triangulation(n={self.n}, gluings={len(self.gluings)})"

    # -- construction -------------------------------------------------------

    def glue(self, g: Gluing) -> "Triangulation":
        return Triangulation(self.n, self.gluings + (g,), self.labels)

    def unglue(self, tet: int, face: int) -> "Triangulation":
        g = self.gluing_at(tet, face)
        if g is None:
            raise TriangulationError(f"face {face} of tetrahedron {tet} is not glued")
        keep = [h for h in self.gluings if h != g.canonical()]
        return Triangulation(self.n, keep, self.labels)

    def with_tetrahedra(self, extra: int) -> "Triangulation":
        return Triangulation(self.n + extra, self.gluings, self.labels)

    def relabel(self, order: Sequence[int]) -> "Triangulation":
        """Renumber tetrahedra: old tetrahedron ``t`` becomes ``order[t]``."""
        if sorted(order) != list(range(self.n)):
            raise TriangulationError("relabelling must be a permutation of the tetrahedra")
        new = [Gluing(order[g.tet], g.face, order[g.other_tet], g.other_face, g.perm) for g in self.gluings]
        return Triangulation(self.n, new, self.labels)

    # -- combinatorics ------------------------------------------------------

    def boundary_faces(self) -> list[tuple[int, int]]:
        return [(t, f) for t in range(self.n) for f in range(4) if (t, f) not in self._adj]

    def is_closed(self) -> bool:
        return len(self._adj) == 4 * self.n

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for start in range(self.n):
            if seen[start]:
                continue
            seen[start] = True
            comp, queue = [], deque([start])
            while queue:
                t = queue.popleft()
                comp.append(t)
                for f in range(4):
                    nb = self._adj.get((t, f))
                    if nb is not None and not seen[nb[0]]:
                        seen[nb[0]] = True
                        queue.append(nb[0])
            comps.append(sorted(comp))
        return comps

    @cached_property
    def skeleton(self) -> Skeleton:
        return compute_skeleton(self)


def glue(T: Triangulation, g: Gluing) -> Triangulation:
    return T.glue(g)


def compute_skeleton(T: Triangulation) -> Skeleton:
    n = T.n
    # edge slot (t, e) -> 6t + e; parity 1 means the slot's sorted direction is reversed
    euf = _ParityUnionFind(6 * n)
    vuf = _ParityUnionFind(4 * n)
    for g in T.gluings:
        p = g.perm
        for v in face_vertices(g.face):
            vuf.union(4 * g.tet + v, 4 * g.other_tet + p[v], 0)
        fv = face_vertices(g.face)
        for i in range(3):
            for j in range(i + 1, 3):
                a, b = fv[i], fv[j]
                flip = 1 if p[a] > p[b] else 0
                euf.union(6 * g.tet + edge_index(a, b), 6 * g.other_tet + edge_index(p[a], p[b]), flip)

    boundary_faces = tuple(T.boundary_faces())
    boundary_edge_slots = set()
    boundary_vertex_slots = set()
    for t, f in boundary_faces:
        fv = face_vertices(f)
        for v in fv:
            boundary_vertex_slots.add(4 * t + v)
        for i in range(3):
            for j in range(i + 1, 3):
                boundary_edge_slots.add(6 * t + edge_index(fv[i], fv[j]))

    groups: dict[int, list[int]] = {}
    for s in range(6 * n):
        groups.setdefault(euf.find(s)[0], []).append(s)
    edges = []
    edge_of = {}
    for root, slots in sorted(groups.items(), key=lambda kv: kv[1][0]):
        idx = len(edges)
        for s in slots:
            edge_of[divmod(s, 6)] = idx
        edges.append(EdgeClass(
            index=idx,
            slots=tuple(divmod(s, 6) for s in slots),
            boundary=any(s in boundary_edge_slots for s in slots),
            valid=root not in euf.bad_roots,
        ))

    vgroups: dict[int, list[int]] = {}
    for s in range(4 * n):
        vgroups.setdefault(vuf.find(s)[0], []).append(s)
    vertices = []
    vertex_of = {}
    for _, slots in sorted(vgroups.items(), key=lambda kv: kv[1][0]):
        idx = len(vertices)
        for s in slots:
            vertex_of[divmod(s, 4)] = idx
        vertices.append(VertexClass(
            index=idx,
            slots=tuple(divmod(s, 4) for s in slots),
            boundary=any(s in boundary_vertex_slots for s in slots),
        ))

    return Skeleton(
        edges=tuple(edges),
        vertices=tuple(vertices),
        internal_faces=T.gluings,
        boundary_faces=boundary_faces,
        edge_of=edge_of,
        vertex_of=vertex_of,
    )


def vertex_links(T: Triangulation) -> list[VertexLink]:
    """Euler characteristic, connectivity and closedness of every vertex link.

    The link of a vertex is assembled from one triangle per tetrahedron
    corner; its vertices sit on tetrahedron edges next to the corner, and its
    edges lie in the faces containing the corner.
    """
    sk = T.skeleton
    if not sk.valid:
        raise InvalidEdgePresent("vertex links are undefined when the triangulation has invalid edges")
    links = []
    for vc in sk.vertices:
        corners = list(vc.slots)
        corner_id = {c: i for i, c in enumerate(corners)}
        # link vertices: (tet, corner vertex, other edge endpoint)
        lv_index: dict[tuple[int, int, int], int] = {}
        for t, i in corners:
            for j in range(4):
                if j != i:
                    lv_index[(t, i, j)] = len(lv_index)
        lv_parent = list(range(len(lv_index)))
        corner_parent = list(range(len(corners)))

        def find(parent: list[int], x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        halves = 0
        boundary_sides = 0
        for t, i in corners:
            for f in range(4):
                if f == i:
                    continue
                nb = T.neighbour(t, f)
                if nb is None:
                    boundary_sides += 1
                    continue
                halves += 1
                t2, _, p = nb
                a, b = find(corner_parent, corner_id[(t, i)]), find(corner_parent, corner_id[(t2, p[i])])
                corner_parent[a] = b
                for j in range(4):
                    if j != i and j != f:
                        x = find(lv_parent, lv_index[(t, i, j)])
                        y = find(lv_parent, lv_index[(t2, p[i], p[j])])
                        lv_parent[x] = y
        V = len({find(lv_parent, x) for x in range(len(lv_index))})
        E = halves // 2 + boundary_sides
        F = len(corners)
        connected = len({find(corner_parent, x) for x in range(len(corners))}) == 1
        links.append(VertexLink(vc.index, V - E + F, connected, boundary_sides == 0))
    return links


def is_3manifold(T: Triangulation) -> bool:
    sk = T.skeleton
    if not sk.valid:
        return False
    for link, vc in zip(vertex_links(T), sk.vertices):
        expected = "disc" if vc.boundary else "sphere"
        if link.classification != expected:
            return False
    return True


def orientation(T: Triangulation) -> list[int] | None:
    """A consistent +/-1 orientation of the tetrahedra, or ``None`` if none exists.

    Two tetrahedra glued by ``perm`` are consistently oriented when
    ``sign[t] * sign[t'] * sign(perm) == -1``.
    """
    if not T.is_connected():
        raise Disconnected("orientability is only defined here for connected triangulations")
    sign = [0] * T.n
    sign[0] = 1
    queue = deque([0])
    while queue:
        t = queue.popleft()
        for f in range(4):
            nb = T.neighbour(t, f)
            if nb is None:
                continue
            t2, _, p = nb
            want = -sign[t] * perm_sign(p)
            if sign[t2] == 0:
                sign[t2] = want
                queue.append(t2)
            elif sign[t2] != want:
                return None
    return sign


def is_orientable(T: Triangulation) -> bool:
    return orientation(T) is not None


# -- text format ------------------------------------------------------------

def to_text(T: Triangulation) -> str:
    """Serialise as: ``n``, then one ``t f t' f' pppp`` line per gluing, then ``label`` lines."""
    lines = [str(T.n)]
    lines.extend(str(g) for g in T.gluings)
    for key in sorted(T.labels):
        lines.append(f"label {key} {T.labels[key]}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Triangulation:
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise TriangulationError("empty triangulation file")
    n = int(rows[0])
    gluings = []
    labels = {}
    for ln in rows[1:]:
        parts = ln.split()
        if parts[0] == "label":
            labels[parts[1]] = " ".join(parts[2:])
            continue
        if len(parts) != 5:
            raise TriangulationError(f"malformed gluing line: {ln!r}")
        t, f, t2, f2 = (int(x) for x in parts[:4])
        gluings.append(Gluing(t, f, t2, f2, parse_perm(parts[4])))
    return Triangulation(n, gluings, labels)


def all_face_gluings(n_tets: int = 1) -> Iterable[Gluing]:
    """Every well-formed gluing between faces of ``n_tets`` tetrahedra (small search spaces)."""
    for t in range(n_tets):
        for f in range(4):
            for t2 in range(t, n_tets):
                for f2 in range(4):
                    if (t2, f2) <= (t, f):
                        continue
                    for p in permutations(range(4)):
                        if p[f] == f2:
                            yield Gluing(t, f, t2, f2, p)
