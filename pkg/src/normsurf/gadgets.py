"""
Constructions: the triangular solid torus, the triangular pillow, pillow
insertion, the node gadget, and the closed triangulation ``T_G`` built from
a 3-regular graph ``G`` by joining one node gadget per node along the arcs.

``T_G`` contains a connected spanning central surface exactly when ``G`` has
a Hamiltonian cycle; :func:`surface_from_cycle` and :func:`extract_cycle`
convert between the two.
"""
from __future__ import annotations

import json
import random
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .detect import enumerate_spanning_central, verify_certificate
from .errors import (
    CertificateInvalid,
    Disconnected,
    LocalMoebiusFound,
    NotAGluing,
    NotCubic,
    NotHamiltonian,
    TooLarge,
)
from .normal import disc_arc, disc_components, discs_of, surface_complex, vector_of
from .triangulation import EDGES, Gluing, Triangulation, edge_index, face_vertices, orientation

TETS_PER_GADGET = 9


# -- the two building blocks -------------------------------------------------

def triangular_solid_torus() -> Triangulation:
    """Three tetrahedra stacked in a cycle; all three vertices lie on the boundary."""
    return Triangulation(3, [
        Gluing(0, 2, 1, 0, (2, 1, 0, 3)),
        Gluing(1, 1, 2, 3, (0, 3, 2, 1)),
        Gluing(0, 0, 2, 1, (1, 0, 2, 3)),
    ])


# boundary faces of the pillow and the vertex correspondence between them
PILLOW_TOP = (0, 3)
PILLOW_BOTTOM = (1, 2)
PILLOW_MATCH = {0: 0, 1: 1, 2: 3}  # top-face vertex -> bottom-face vertex
PILLOW_EDGES = {"a": ((0, 1), (0, 1)), "b": ((1, 2), (1, 3)), "c": ((0, 2), (0, 3))}


def triangular_pillow() -> Triangulation:
    """Two tetrahedra glued along three faces: a ball with one internal vertex.

    The boundary is two triangles, tetrahedron 0 face 3 and tetrahedron 1
    face 2, meeting along the edges ``a``, ``b`` and ``c``.
    """
    p = (0, 1, 3, 2)
    labels = {
        "boundary": "0:3 1:2",
        "edge_a": "0:01 1:01",
        "edge_b": "0:12 1:13",
        "edge_c": "0:02 1:03",
    }
    return Triangulation(2, [Gluing(0, 2, 1, 3, p), Gluing(0, 1, 1, 1, p), Gluing(0, 0, 1, 0, p)], labels)


def pillow_chain(k: int) -> Triangulation:
    """``k`` pillows stacked top to bottom; a ball with ``k`` internal vertices."""
    if k < 1:
        raise ValueError("need at least one pillow")
    p = (0, 1, 3, 2)
    gluings = []
    for i in range(k):
        a, b = 2 * i, 2 * i + 1
        gluings += [Gluing(a, 2, b, 3, p), Gluing(a, 1, b, 1, p), Gluing(a, 0, b, 0, p)]
        if i + 1 < k:
            gluings.append(Gluing(b, 2, b + 1, 3, p))
    return Triangulation(2 * k, gluings)


def insert_pillow(T: Triangulation, g: Gluing) -> Triangulation:
    """Replace the face identification ``g`` by a copy of the pillow.

    The pillow sits between the two face slots so that following a normal
    arc through it reproduces ``g``'s original vertex correspondence.
    """
    if T.gluing_at(g.tet, g.face) != g:
        raise NotAGluing(f"{g} is not a gluing of this triangulation")
    base = T.unglue(g.tet, g.face)
    P0, P1 = T.n, T.n + 1
    out = base.with_tetrahedra(2)
    v0, v1, v2 = face_vertices(g.face)
    top = [0] * 4
    top[v0], top[v1], top[v2], top[g.face] = 0, 1, 2, 3
    bottom = [0] * 4
    bottom[0], bottom[1], bottom[3], bottom[2] = g.perm[v0], g.perm[v1], g.perm[v2], g.other_face
    p = (0, 1, 3, 2)
    new = [
        Gluing(g.tet, g.face, P0, 3, tuple(top)),
        Gluing(P1, 2, g.other_tet, g.other_face, tuple(bottom)),
        Gluing(P0, 2, P1, 3, p),
        Gluing(P0, 1, P1, 1, p),
        Gluing(P0, 0, P1, 0, p),
    ]
    return Triangulation(out.n, out.gluings + tuple(new), T.labels)


# -- node gadget ---------------------------------------------------------------

Slot = tuple[int, int]  # (tet, face)


@dataclass(frozen=True)
class NodeGadgetLabels:
    """Boundary structure of one node gadget, in gadget-local tetrahedron numbers.

    ``annuli[i] = (plus, minus)``: ``plus`` contains axis edge ``i+1`` and is a
    face of tetrahedron ``i+1``; ``minus`` contains axis edge ``i-1``.
    ``axis[i] = (tet, tail, head)`` is the directed axis edge ``i``, a single
    edge slot of tetrahedron ``i``.
    """

    annuli: tuple[tuple[Slot, Slot], ...]
    axis: tuple[tuple[int, int, int], ...]
    vertices: tuple[int, ...]  # vertex class meeting axis edge i
    edge_kind: dict[int, tuple[str, int]] = field(compare=False)  # edge class -> (axis|minor|major, index)
    annulus_edges: tuple[tuple[int, int], ...] = ()  # (minor class, major class) per annulus

    def slots(self) -> dict[Slot, tuple[int, str]]:
        """Boundary face -> (annulus, '+' or '-')."""
        out = {}
        for i, (plus, minus) in enumerate(self.annuli):
            out[plus] = (i, "+")
            out[minus] = (i, "-")
        return out

    def to_dict(self) -> dict:
        return {
            "annuli": [{"plus": list(p), "minus": list(m)} for p, m in self.annuli],
            "axis": [{"tet": t, "tail": a, "head": b} for t, a, b in self.axis],
            "vertices": list(self.vertices),
            "edges": {str(k): list(v) for k, v in sorted(self.edge_kind.items())},
            "annulus_edges": [list(e) for e in self.annulus_edges],
        }


def _face_orientation(f: int, sign: int) -> tuple[int, int, int]:
    """Face vertices in the cyclic order of the induced boundary orientation."""
    a, b, c = face_vertices(f)
    return (a, b, c) if (-1) ** f * sign > 0 else (a, c, b)


def _direct_along(cycle: tuple[int, int, int], x: int, y: int) -> tuple[int, int]:
    i = cycle.index(x)
    return (x, y) if cycle[(i + 1) % 3] == y else (y, x)


def _gadget_labels(gadget: Triangulation) -> NodeGadgetLabels:
    torus = triangular_solid_torus()
    tsk = torus.skeleton
    gsk = gadget.skeleton
    kind_by_degree = {1: "axis", 2: "minor", 3: "major"}

    axis_slot = {}
    for ec in tsk.edges:
        if ec.degree == 1:
            t, e = ec.slots[0]
            axis_slot[t] = e
    if sorted(axis_slot) != [0, 1, 2]:
        raise AssertionError("expected one axis edge in each torus tetrahedron")

    def torus_edges(t: int, f: int) -> dict[str, tuple[int, int]]:
        out = {}
        fv = face_vertices(f)
        for a in fv:
            for b in fv:
                if a < b:
                    ec = tsk.edges[tsk.edge_of[(t, edge_index(a, b))]]
                    out[kind_by_degree[ec.degree]] = (a, b)
        return out

    groups: dict[tuple[int, int], list[Slot]] = defaultdict(list)
    for t, f in torus.boundary_faces():
        kinds = torus_edges(t, f)
        mi, ma = kinds["minor"], kinds["major"]
        key = (tsk.edge_of[(t, edge_index(*mi))], tsk.edge_of[(t, edge_index(*ma))])
        groups[key].append((t, f))

    annuli: list = [None] * 3
    annulus_edges: list = [None] * 3
    for key, faces in groups.items():
        tets = {t for t, _ in faces}
        (i,) = {0, 1, 2} - tets
        plus = next(s for s in faces if s[0] == (i + 1) % 3)
        minus = next(s for s in faces if s[0] == (i - 1) % 3)
        annuli[i] = (plus, minus)
        # edge classes of the gadget carry the torus classification
        annulus_edges[i] = tuple(gsk.edge_of[(plus[0], edge_index(*torus_edges(*plus)[k]))] for k in ("minor", "major"))

    orient = orientation(gadget)
    assert orient is not None
    axis = []
    for i in range(3):
        # the minus triangle of annulus i+1 is a face of tetrahedron i containing axis edge i
        t, f = annuli[(i + 1) % 3][1]
        assert t == i
        a, b = EDGES[axis_slot[i]]
        tail, head = _direct_along(_face_orientation(f, orient[t]), a, b)
        axis.append((t, tail, head))

    edge_kind: dict[int, tuple[str, int]] = {}
    for ec in tsk.edges:
        t, e = ec.slots[0]
        g = gsk.edge_of[(t, e)]
        if ec.degree == 1:
            edge_kind[g] = ("axis", t)
        else:
            kind = kind_by_degree[ec.degree]
            j = next(j for j in range(3) if g == annulus_edges[j][0 if kind == "minor" else 1])
            edge_kind[g] = (kind, j)
    vertices = tuple(gsk.vertex_of[(i, axis[i][1])] for i in range(3))
    return NodeGadgetLabels(tuple(annuli), tuple(axis), vertices, edge_kind, tuple(annulus_edges))


def node_gadget() -> tuple[Triangulation, NodeGadgetLabels]:
    return _node_gadget_cached()


@lru_cache(maxsize=None)
def _node_gadget_cached() -> tuple[Triangulation, NodeGadgetLabels]:
    T = triangular_solid_torus()
    for g in list(T.gluings):
        T = insert_pillow(T, g)
    return T, _gadget_labels(T)


# -- cubic graphs ------------------------------------------------------------

@dataclass(frozen=True)
class CubicGraph:
    """A connected 3-regular graph without loops.  Parallel arcs are allowed."""

    n: int
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        arcs = tuple(sorted(tuple(sorted((int(u), int(v)))) for u, v in self.arcs))
        object.__setattr__(self, "arcs", arcs)
        deg = [0] * self.n
        for u, v in arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise NotCubic(f"arc {(u, v)} has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise NotCubic(f"loop at node {u}")
            deg[u] += 1
            deg[v] += 1
        bad = [k for k, d in enumerate(deg) if d != 3]
        if bad:
            raise NotCubic(f"node {bad[0]} has degree {deg[bad[0]]}")
        if self.n == 0 or len(self._components()) != 1:
            raise Disconnected("the graph must be connected")

    @property
    def simple(self) -> bool:
        return len(set(self.arcs)) == len(self.arcs)

    def neighbours(self, u: int) -> list[int]:
        out = []
        for a, b in self.arcs:
            if a == u:
                out.append(b)
            elif b == u:
                out.append(a)
        return out

    def _components(self) -> list[set[int]]:
        parent = list(range(self.n))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v in self.arcs:
            parent[find(u)] = find(v)
        comps: dict[int, set[int]] = defaultdict(set)
        for u in range(self.n):
            comps[find(u)].add(u)
        return list(comps.values())


def _graph(n: int, arcs: Sequence[tuple[int, int]]) -> CubicGraph:
    return CubicGraph(n, tuple(arcs))


def complete_k4() -> CubicGraph:
    return _graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def prism3() -> CubicGraph:
    return _graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])


def k33() -> CubicGraph:
    return _graph(6, [(a, b) for a in range(3) for b in range(3, 6)])


def cube_graph() -> CubicGraph:
    return _graph(8, [(a, a ^ (1 << k)) for a in range(8) for k in range(3) if a < a ^ (1 << k)])


def wagner_graph() -> CubicGraph:
    return _graph(8, [(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)])


def petersen_graph() -> CubicGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return _graph(10, outer + spokes + inner)


NAMED_GRAPHS = {
    "k4": complete_k4,
    "prism": prism3,
    "k33": k33,
    "cube": cube_graph,
    "wagner": wagner_graph,
    "petersen": petersen_graph,
}


def random_cubic_graph(n: int, rng: random.Random, simple: bool = True, max_tries: int = 10_000) -> CubicGraph:
    """Uniform pairing model, rejecting loops, disconnected graphs and (optionally) parallel arcs."""
    if n < 2 or n % 2:
        raise ValueError("a cubic graph needs an even number of nodes")
    for _ in range(max_tries):
        points = [u for u in range(n) for _ in range(3)]
        rng.shuffle(points)
        arcs = [tuple(sorted(points[i: i + 2])) for i in range(0, len(points), 2)]
        if any(u == v for u, v in arcs):
            continue
        if simple and len(set(arcs)) != len(arcs):
            continue
        try:
            return CubicGraph(n, tuple(arcs))  # type: ignore[arg-type]
        except Disconnected:
            continue
    raise RuntimeError("could not sample a cubic graph")


def graph_to_text(G: CubicGraph) -> str:
    return f"{G.n} {len(G.arcs)}\n" + "".join(f"{u} {v}\n" for u, v in G.arcs)


def graph_from_text(text: str) -> CubicGraph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    n, m = (int(v) for v in rows[0])
    arcs = [(int(a), int(b)) for a, b in rows[1:]]
    if len(arcs) != m:
        raise ValueError(f"header promises {m} arcs, found {len(arcs)}")
    return CubicGraph(n, tuple(arcs))


def hamiltonian_oracle(G: CubicGraph, max_nodes: int = 20) -> list[int] | None:
    """Exhaustive backtracking for a Hamiltonian cycle, starting at node 0."""
    if G.n > max_nodes:
        raise TooLarge(f"{G.n} nodes exceeds the bound of {max_nodes}")
    adj = [sorted(set(G.neighbours(u))) for u in range(G.n)]
    if G.n == 2:
        # two nodes joined by parallel arcs
        return [0, 1] if G.arcs.count((0, 1)) >= 2 else None
    path = [0]
    used = [False] * G.n
    used[0] = True

    def rec() -> bool:
        if len(path) == G.n:
            return 0 in adj[path[-1]]
        for v in adj[path[-1]]:
            if not used[v]:
                used[v] = True
                path.append(v)
                if rec():
                    return True
                path.pop()
                used[v] = False
        return False

    return list(path) if rec() else None


def is_hamiltonian_cycle(G: CubicGraph, cycle: Sequence[int]) -> bool:
    if sorted(cycle) != list(range(G.n)) or G.n < 2:
        return False
    arcs = set(G.arcs)
    steps = [tuple(sorted((cycle[i], cycle[(i + 1) % G.n]))) for i in range(G.n)]
    if G.n == 2:
        return G.arcs.count((0, 1)) >= 2
    return all(s in arcs for s in steps)


# -- the reduction -------------------------------------------------------------

@dataclass(frozen=True)
class ArcRecord:
    """Arc ``{u, v}`` joins annulus ``i`` of ``u`` to annulus ``j`` of ``v``."""

    u: int
    i: int
    v: int
    j: int
    gluings: tuple[Gluing, Gluing]


@dataclass(frozen=True)
class GraphReduction:
    graph: CubicGraph
    triangulation: Triangulation
    labels: NodeGadgetLabels  # gadget-local; gadget k occupies tetrahedra 9k..9k+8
    arcs: tuple[ArcRecord, ...]

    def annulus_of_arc(self) -> dict[tuple[int, int], list[int]]:
        """``(u, v)`` -> annulus indices of ``u`` used by arcs to ``v``."""
        out: dict[tuple[int, int], list[int]] = defaultdict(list)
        for r in self.arcs:
            out[(r.u, r.v)].append(r.i)
            out[(r.v, r.u)].append(r.j)
        return out

    def neighbour_of_annulus(self) -> dict[tuple[int, int], int]:
        """``(node, annulus)`` -> node at the other end of that annulus's arc."""
        out = {}
        for r in self.arcs:
            out[(r.u, r.i)] = r.v
            out[(r.v, r.j)] = r.u
        return out

    def sidecar(self) -> dict:
        return {
            "tetrahedra_per_gadget": TETS_PER_GADGET,
            "gadget": self.labels.to_dict(),
            "arcs": [
                {"u": r.u, "annulus_u": r.i, "v": r.v, "annulus_v": r.j, "gluings": [str(g) for g in r.gluings]}
                for r in self.arcs
            ],
        }

    def sidecar_text(self) -> str:
        return json.dumps(self.sidecar(), indent=2, sort_keys=True) + "\n"


def _join(
    u: int, face_u: Slot, axis_u: tuple[int, int, int],
    v: int, face_v: Slot, axis_v: tuple[int, int, int],
    flip: bool = False,
) -> Gluing:
    """Glue two boundary triangles so that their directed axis edges match."""
    (tu, fu), (tv, fv) = face_u, face_v
    _, a1, b1 = axis_u
    _, a2, b2 = axis_v
    if flip:
        a2, b2 = b2, a2
    c1 = next(x for x in face_vertices(fu) if x not in (a1, b1))
    c2 = next(x for x in face_vertices(fv) if x not in (a2, b2))
    perm = [0] * 4
    perm[a1], perm[b1], perm[c1], perm[fu] = a2, b2, c2, fv
    return Gluing(TETS_PER_GADGET * u + tu, fu, TETS_PER_GADGET * v + tv, fv, tuple(perm))  # type: ignore[arg-type]


def build_T_G(G: CubicGraph, reverse_directions: bool = False, flip_arc: int | None = None) -> GraphReduction:
    """One node gadget per node, annuli glued in pairs along the arcs of ``G``.

    Arcs are taken in sorted order and each node hands out its annuli in
    index order.  ``reverse_directions`` flips every axis direction (the
    result is the same triangulation); ``flip_arc`` reverses the direction
    on the first triangle pair of one arc only, which should break the
    construction.
    """
    gadget, L = node_gadget()
    gluings: list[Gluing] = []
    for k in range(G.n):
        off = TETS_PER_GADGET * k
        gluings.extend(Gluing(g.tet + off, g.face, g.other_tet + off, g.other_face, g.perm) for g in gadget.gluings)
    axis = list(L.axis)
    if reverse_directions:
        axis = [(t, b, a) for t, a, b in axis]
    used = [0] * G.n
    records = []
    for idx, (u, v) in enumerate(G.arcs):
        i, j = used[u], used[v]
        used[u] += 1
        used[v] += 1
        plus_u, minus_u = L.annuli[i]
        plus_v, minus_v = L.annuli[j]
        g1 = _join(u, plus_u, axis[(i + 1) % 3], v, minus_v, axis[(j - 1) % 3], flip=flip_arc == idx)
        g2 = _join(u, minus_u, axis[(i - 1) % 3], v, plus_v, axis[(j + 1) % 3])
        gluings.extend((g1, g2))
        records.append(ArcRecord(u, i, v, j, (g1, g2)))
    T = Triangulation(TETS_PER_GADGET * G.n, gluings)
    return GraphReduction(G, T, L, tuple(records))


# -- surfaces inside one gadget ----------------------------------------------

@dataclass(frozen=True)
class LocalSurface:
    discs: tuple[int, ...]
    annuli: frozenset[int]  # annuli whose triangles the surface meets
    euler: int
    orientable: bool

    @property
    def kind(self) -> str:
        if len(self.annuli) == 3:
            return "moebius"
        return "tube" if self.orientable else "other"


@lru_cache(maxsize=None)
def gadget_surfaces() -> tuple[LocalSurface, ...]:
    """The connected spanning central surfaces of the node gadget, classified."""
    T, L = node_gadget()
    slots = L.slots()
    out = []
    for x in enumerate_spanning_central(T):
        discs = discs_of(x)
        if len(disc_components(T, discs)) != 1:
            continue
        met = frozenset(slots[(t, f)][0] for (t, f) in slots if disc_arc(discs[t], f) is not None)
        info = surface_complex(T, x)
        out.append(LocalSurface(tuple(discs), met, info.euler, info.orientable))
    return tuple(out)


def _local_annuli(L: NodeGadgetLabels, discs: Sequence[int], k: int) -> set[int]:
    off = TETS_PER_GADGET * k
    return {i for (t, f), (i, _) in L.slots().items() if disc_arc(discs[off + t], f) is not None}


def surface_from_cycle(R: GraphReduction, cycle: Sequence[int]) -> list[int]:
    """Connected spanning central surface of ``T_G`` following a Hamiltonian cycle."""
    G = R.graph
    if not G.simple:
        raise NotHamiltonian("cycles are given as node sequences, which needs a simple graph")
    if not is_hamiltonian_cycle(G, cycle):
        raise NotHamiltonian(f"{list(cycle)} is not a Hamiltonian cycle")
    ann = R.annulus_of_arc()
    wanted = []
    for pos, u in enumerate(cycle):
        prev, nxt = cycle[pos - 1], cycle[(pos + 1) % G.n]
        wanted.append(frozenset((ann[(u, prev)][0], ann[(u, nxt)][0])))
    tubes = [s for s in gadget_surfaces() if s.kind == "tube"]
    T = R.triangulation
    discs = [-1] * T.n
    order = list(cycle)

    def fits(k: int, local: Sequence[int]) -> bool:
        off = TETS_PER_GADGET * k
        for t, d in enumerate(local):
            for f in range(4):
                nb = T.neighbour(off + t, f)
                if nb is None or nb[0] // TETS_PER_GADGET == k:
                    continue
                other = discs[nb[0]]
                if other < 0:
                    continue
                a, b = disc_arc(d, f), disc_arc(other, nb[1])
                if (b is not None) if a is None else (b != nb[2][a]):
                    return False
        return True

    def rec(pos: int) -> bool:
        if pos == len(order):
            return True
        k = order[pos]
        off = TETS_PER_GADGET * k
        for s in tubes:
            if s.annuli != wanted[pos] or not fits(k, s.discs):
                continue
            discs[off: off + TETS_PER_GADGET] = s.discs
            if rec(pos + 1):
                return True
            discs[off: off + TETS_PER_GADGET] = [-1] * TETS_PER_GADGET
        return False

    if not rec(0):  # pragma: no cover - would contradict the construction
        raise CertificateInvalid("no consistent choice of tubes exists")
    x = vector_of(discs)
    if not verify_certificate(T, x):  # pragma: no cover
        raise CertificateInvalid("assembled surface failed verification")
    return x


def extract_cycle(R: GraphReduction, x: Sequence[int]) -> list[int]:
    """Read the Hamiltonian cycle off a connected spanning central surface of ``T_G``."""
    T = R.triangulation
    if not verify_certificate(T, x):
        raise CertificateInvalid("not a connected spanning central surface")
    discs = discs_of(x)
    L = R.labels
    nbr = R.neighbour_of_annulus()
    succ: dict[int, list[int]] = {}
    for k in range(R.graph.n):
        met = sorted(_local_annuli(L, discs, k))
        if len(met) == 3:
            raise LocalMoebiusFound(f"the surface meets all three annuli of gadget {k}")
        if len(met) != 2:
            raise CertificateInvalid(f"the surface meets {len(met)} annuli of gadget {k}")
        succ[k] = [nbr[(k, i)] for i in met]
    cycle = [0]
    prev = None
    while True:
        cur = cycle[-1]
        options = succ[cur] if prev is None else [w for w in succ[cur] if w != prev] or succ[cur][:1]
        nxt = options[0]
        if nxt == 0:
            break
        if nxt in cycle:
            raise CertificateInvalid("annulus adjacencies do not close into a single cycle")
        prev = cur
        cycle.append(nxt)
    if not is_hamiltonian_cycle(R.graph, cycle):
        raise CertificateInvalid("annulus adjacencies do not form a Hamiltonian cycle")
    return cycle
