"""
Detection of spanning central surfaces (one elementary disc per tetrahedron).

With at most one disc per tetrahedron every arc count is 0 or 1, so the
matching equations across a face say exactly that the discs on either side
induce the same arc (or both induce none).  All searches below are
backtracking over that local rule.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import BudgetExceeded, Disconnected, NormSurfError
from .normal import (
    arcs_consistent,
    disc_arc,
    disc_components,
    discs_of,
    is_admissible,
    quad_for_pair,
    vector_of,
)
from .triangulation import Triangulation

DEFAULT_BUDGET = 10**8


def find_splitting_surface(T: Triangulation) -> list[int] | None:
    """All-quadrilateral spanning central surface, or ``None``.

    A quadrilateral meets every face, and different quadrilaterals induce
    different arcs, so a quadrilateral on one side of a face forces the one
    on the other.  Three breadth-first propagations from tetrahedron 0
    therefore settle the question in linear time.
    """
    if not T.is_connected():
        raise Disconnected("splitting surfaces are searched for in connected triangulations")
    for q0 in range(3):
        quads = [-1] * T.n
        quads[0] = q0
        queue = deque([0])
        ok = True
        while queue and ok:
            t = queue.popleft()
            for f in range(4):
                nb = T.neighbour(t, f)
                if nb is None:
                    continue
                t2, f2, p = nb
                forced = quad_for_pair(f2, p[disc_arc(quads[t], f)])
                if quads[t2] == -1:
                    quads[t2] = forced
                    queue.append(t2)
                elif quads[t2] != forced:
                    ok = False
                    break
        if ok:
            return vector_of(quads)
    return None


def _consistent_with_assigned(T: Triangulation, discs: Sequence[int], t: int, d: int) -> bool:
    for f in range(4):
        nb = T.neighbour(t, f)
        if nb is None:
            continue
        t2, f2, p = nb
        other = d if t2 == t else discs[t2]
        if other < 0:
            continue
        a = disc_arc(d, f)
        b = disc_arc(other, f2)
        if (b is not None) if a is None else (b != p[a]):
            return False
    return True


def _search_order(T: Triangulation) -> list[int]:
    """Static order keeping the set of faces between placed and unplaced tetrahedra small."""
    placed = [False] * T.n
    order: list[int] = []
    for _ in range(T.n):
        best = None
        for t in range(T.n):
            if placed[t]:
                continue
            touches, delta = False, 0
            for f in range(4):
                nb = T.neighbour(t, f)
                if nb is None:
                    continue
                if placed[nb[0]]:
                    touches = True
                    delta -= 1
                elif nb[0] != t:
                    delta += 1
            # only jump to a new component when forced
            key = (bool(order) and not touches, delta, t)
            if best is None or key < best:
                best = key
        placed[best[2]] = True  # type: ignore[index]
        order.append(best[2])  # type: ignore[index]
    return order


def iter_spanning_central(T: Triangulation, budget: int = DEFAULT_BUDGET) -> Iterator[list[int]]:
    """Yield every spanning central vector, in disc order quad1 < ... < tri3 per tetrahedron."""
    order = _search_order(T)
    discs = [-1] * T.n
    nodes = 0

    def rec(k: int) -> Iterator[list[int]]:
        nonlocal nodes
        if k == T.n:
            yield vector_of(discs)
            return
        t = order[k]
        for d in range(7):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"search exceeded {budget} nodes")
            if _consistent_with_assigned(T, discs, t, d):
                discs[t] = d
                yield from rec(k + 1)
                discs[t] = -1

    yield from rec(0)


def enumerate_spanning_central(T: Triangulation, budget: int = DEFAULT_BUDGET) -> list[list[int]]:
    return sorted(iter_spanning_central(T, budget), reverse=True)


def is_connected_surface(T: Triangulation, x: Sequence[int]) -> bool:
    return len(disc_components(T, discs_of(x))) == 1


@dataclass
class SearchStats:
    nodes: int = 0
    memo_hits: int = 0
    memo_size: int = 0


def find_connected_spanning_central(
    T: Triangulation, budget: int = DEFAULT_BUDGET, stats: SearchStats | None = None
) -> list[int] | None:
    """First connected spanning central vector in search order, or ``None``.

    Tetrahedra are placed in a fixed order.  The search state after placing
    ``k`` of them is summarised by the arcs on the faces leading to unplaced
    tetrahedra together with which of those arcs already belong to the same
    piece of surface.  Nothing else about the placed discs matters to the
    rest of the search, so failed states are remembered and never revisited.
    A piece of surface with no arc leading onward is finished; if anything is
    still unplaced the surface would be disconnected, so the branch is cut.
    """
    if not T.is_connected():
        raise Disconnected("connected surfaces are searched for in connected triangulations")
    if stats is None:
        stats = SearchStats()
    n = T.n
    order = _search_order(T)
    pos = [0] * n
    for i, t in enumerate(order):
        pos[t] = i

    # frontier faces after placing order[:k], as (tet, face) on the placed side
    frontier_at: list[list[tuple[int, int]]] = []
    for k in range(n + 1):
        fr = []
        for t in order[:k]:
            for f in range(4):
                nb = T.neighbour(t, f)
                if nb is not None and pos[nb[0]] >= k:
                    fr.append((t, f))
        frontier_at.append(sorted(fr))

    discs = [-1] * n
    # per frontier face: (arc vertex or None, component id)
    state: dict[tuple[int, int], tuple[int | None, int]] = {}
    failed: set[tuple] = set()
    next_comp = [0]

    def key(k: int) -> tuple:
        relabel: dict[int, int] = {}
        out = []
        for slot in frontier_at[k]:
            arc, comp = state[slot]
            if arc is None:
                out.append(-1)
            else:
                c = relabel.setdefault(comp, len(relabel))
                out.append(arc * 64 + c)
        return (k, tuple(out))

    def place(k: int) -> bool:
        if k == n:
            return True
        kk = key(k)
        if kk in failed:
            stats.memo_hits += 1
            return False
        t = order[k]
        incoming = []
        for f in range(4):
            nb = T.neighbour(t, f)
            if nb is not None and nb[0] != t and pos[nb[0]] < k:
                incoming.append((nb[0], nb[1]))
        for d in range(7):
            stats.nodes += 1
            if stats.nodes > budget:
                raise BudgetExceeded(f"search exceeded {budget} nodes")
            if not _consistent_with_assigned(T, discs, t, d):
                continue
            merged = {state[slot][1] for slot in incoming if state[slot][0] is not None}
            new_comp = next_comp[0]
            next_comp[0] += 1
            saved = [(slot, state.pop(slot)) for slot in incoming]
            log = []
            if merged:
                for slot, (arc, comp) in state.items():
                    if comp in merged:
                        log.append((slot, comp))
                for slot, _ in log:
                    state[slot] = (state[slot][0], new_comp)
            opened = []
            for f in range(4):
                nb = T.neighbour(t, f)
                if nb is not None and pos[nb[0]] > k:
                    state[(t, f)] = (disc_arc(d, f), new_comp)
                    opened.append((t, f))
            alive = any(arc is not None and comp == new_comp for arc, comp in state.values())
            discs[t] = d
            if (alive or k + 1 == n) and place(k + 1):
                return True
            discs[t] = -1
            for slot in opened:
                del state[slot]
            for slot, comp in log:
                state[slot] = (state[slot][0], comp)
            for slot, val in saved:
                state[slot] = val
        failed.add(kk)
        stats.memo_size = len(failed)
        return False

    if not place(0):
        return None
    x = vector_of(discs)
    if not verify_certificate(T, x):  # pragma: no cover - guards the search itself
        raise NormSurfError("internal error: search produced an invalid certificate")
    return x


def verify_certificate(T: Triangulation, x: Sequence[int]) -> bool:
    """Linear-time check that ``x`` is a connected spanning central surface."""
    if len(x) != 7 * T.n:
        return False
    try:
        discs = discs_of(x)
    except NormSurfError:
        return False
    if not is_admissible(T, x):
        return False
    return len(disc_components(T, discs)) == 1
