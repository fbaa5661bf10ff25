"""
Exact extreme-ray enumeration for cones ``{x >= 0, Ax = 0}``.

The enumerator is an incremental double description: start from the unit
rays of the non-negative orthant and intersect with one hyperplane at a
time.  Adjacency of two rays is decided combinatorially from their zero
sets, which is exact here because every intermediate cone is pointed and
its only inequalities are ``x_i >= 0``.  All arithmetic uses Python ints.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .errors import NotInCone

Ray = tuple[int, ...]


@dataclass(frozen=True)
class ConeSystem:
    dim: int
    rows: tuple[tuple[int, ...], ...]
    quad_pattern: tuple[tuple[int, ...], ...] = ()
    zero_fixed: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(c) for c in r) for r in self.rows)
        for r in rows:
            if len(r) != self.dim:
                raise ValueError(f"row of length {len(r)} in a cone of dimension {self.dim}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "quad_pattern", tuple(tuple(b) for b in self.quad_pattern))
        object.__setattr__(self, "zero_fixed", frozenset(self.zero_fixed))
        if any(not 0 <= i < self.dim for i in self.zero_fixed):
            raise ValueError("zero_fixed coordinate out of range")

    @classmethod
    def from_sparse(cls, dim: int, rows: Iterable[Iterable[tuple[int, int]]], **kw) -> "ConeSystem":
        dense = []
        for row in rows:
            d = [0] * dim
            for i, c in row:
                d[i] += c
            dense.append(tuple(d))
        return cls(dim, tuple(dense), **kw)

    def all_rows(self) -> list[tuple[int, ...]]:
        """Equation rows including the unit rows that pin ``zero_fixed`` coordinates."""
        units = []
        for i in sorted(self.zero_fixed):
            u = [0] * self.dim
            u[i] = 1
            units.append(tuple(u))
        return units + list(self.rows)

    def contains(self, x: Sequence[int]) -> bool:
        if len(x) != self.dim or any(v < 0 for v in x):
            return False
        return all(sum(a * b for a, b in zip(r, x)) == 0 for r in self.all_rows())


def primitive(x: Sequence[int]) -> Ray:
    g = 0
    for v in x:
        g = gcd(g, v)
    if g == 0:
        return tuple(x)
    return tuple(v // g for v in x)


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Exact rank over the rationals of an integer matrix."""
    work = [list(r) for r in rows if any(r)]
    if not work:
        return 0
    ncols = len(work[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        prow = work[r]
        pc = prow[c]
        for i in range(r + 1, len(work)):
            row = work[i]
            a = row[c]
            if a == 0:
                continue
            new = [pc * row[k] - a * prow[k] for k in range(ncols)]
            g = 0
            for v in new:
                if v:
                    g = gcd(g, v)
            if g > 1:
                new = [v // g for v in new]
            work[i] = new
        r += 1
        if r == len(work):
            break
    return r


def _zero_mask(x: Sequence[int]) -> int:
    m = 0
    for i, v in enumerate(x):
        if v == 0:
            m |= 1 << i
    return m


def _quad_ok(support: int, blocks: Sequence[int]) -> bool:
    # blocks holds one bitmask per quad block
    for b in blocks:
        s = support & b
        if s & (s - 1):
            return False
    return True


def extreme_rays(sys: ConeSystem, prune_quads: bool = False) -> list[Ray]:
    """Primitive extreme rays of the cone, sorted lexicographically.

    With ``prune_quads`` set, rays whose support breaks the quadrilateral
    pattern are discarded during insertion; the result is then exactly the
    admissible subset of the full answer.
    """
    d = sys.dim
    full = (1 << d) - 1
    blocks = [sum(1 << i for i in b) for b in sys.quad_pattern]
    rays: list[tuple[Ray, int]] = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        rays.append((tuple(e), full & ~(1 << i)))

    processed: list[tuple[int, ...]] = []
    for row in sys.all_rows():
        nz = [(i, c) for i, c in enumerate(row) if c]
        if not nz:
            continue
        vals = [sum(c * r[i] for i, c in nz) for r, _ in rays]
        zero = [rz for rz, v in zip(rays, vals) if v == 0]
        pos = [(rz, v) for rz, v in zip(rays, vals) if v > 0]
        neg = [(rz, v) for rz, v in zip(rays, vals) if v < 0]
        processed.append(row)
        if not pos or not neg:
            rays = zero
            continue
        # a 2-face of the new cone needs at least (cone dim - 2) common zeros
        cone_dim = d - rank(processed[:-1])
        need = cone_dim - 2
        masks = [m for _, m in rays]
        new = list(zero)
        seen: set[Ray] = set(r for r, _ in zero)
        for (r, zr), vr in pos:
            for (s, zs), vs in neg:
                common = zr & zs
                if bin(common).count("1") < need:
                    continue
                if blocks and prune_quads and not _quad_ok(full & ~common, blocks):
                    continue
                adjacent = True
                for m in masks:
                    if m & common == common and m != zr and m != zs:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                c = primitive([vr * b - vs * a for a, b in zip(r, s)])
                # combination: vr*s - vs*r has positive weights since vs < 0
                if c in seen:
                    continue
                seen.add(c)
                new.append((c, _zero_mask(c)))
        rays = new
    return sorted(r for r, _ in rays)


def is_extreme_ray(sys: ConeSystem, x: Sequence[int]) -> bool:
    """Rank test: the constraints tight at ``x`` must have rank ``dim - 1``.

    Coordinates where ``x`` vanishes contribute unit rows, so this is the
    same as asking that the equations restricted to the support of ``x``
    have rank ``|support| - 1``.
    """
    if not sys.contains(x):
        raise NotInCone("vector does not lie in the cone")
    support = [i for i, v in enumerate(x) if v != 0]
    if not support:
        return False
    restricted = [[r[i] for i in support] for r in sys.rows]
    return rank(restricted) == len(support) - 1


def filter_admissible(rays: Iterable[Sequence[int]], quad_pattern: Sequence[Sequence[int]]) -> list[Ray]:
    out = []
    for r in rays:
        if all(sum(1 for i in block if r[i] != 0) <= 1 for block in quad_pattern):
            out.append(tuple(r))
    return out


def rays_to_text(rays: Iterable[Sequence[int]]) -> str:
    return "".join(" ".join(str(v) for v in r) + "\n" for r in sorted(tuple(r) for r in rays))


def rays_from_text(text: str) -> list[Ray]:
    return [tuple(int(v) for v in ln.split()) for ln in text.splitlines() if ln.strip()]
