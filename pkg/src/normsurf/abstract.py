"""
Abstract normal constraint optimisation and the reduction from monotone
one-in-three satisfiability.

Abstract tetrahedra carry seven coordinates ``1..7`` (three quadrilateral
then four triangle), stored in blocks of seven exactly like concrete normal
coordinates.  In an instance produced by :func:`reduce_sat` the blocks are
ordered ``S_1..S_{n-1}, T_1..T_n, U_1..U_{n-1}`` whose coordinates are
written ``w``, ``x`` and ``y`` respectively; :class:`Layout` converts these
names to flat indices.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

from .cone import ConeSystem, extreme_rays, filter_admissible
from .errors import (
    AssignmentDoesNotSatisfy,
    BadCoordinate,
    IncompatibleM,
    PreconditionViolated,
    RoleViolation,
    TooFewClauses,
    TooManyVariables,
)
from .normal import euler_functional, matching_system, quad_pattern
from .triangulation import Triangulation


def is_quad(index: int) -> bool:
    return index % 7 < 3


def coord_name(index: int) -> tuple[int, int]:
    """Flat index -> (tetrahedron, coordinate 1..7)."""
    return index // 7, index % 7 + 1


def flat(tet: int, i: int) -> int:
    return 7 * tet + i - 1


@dataclass(frozen=True)
class AbstractEquation:
    """``q + t = q2 + t2`` over flat coordinate indices."""

    q: int
    t: int
    q2: int
    t2: int

    def __post_init__(self) -> None:
        if not (is_quad(self.q) and is_quad(self.q2)):
            raise RoleViolation(f"{self}: quadrilateral slots hold triangle coordinates")
        if is_quad(self.t) or is_quad(self.t2):
            raise RoleViolation(f"{self}: triangle slots hold quadrilateral coordinates")

    def occurrences(self) -> tuple[int, int, int, int]:
        return self.q, self.t, self.q2, self.t2

    def dense(self, dim: int) -> tuple[int, ...]:
        row = [0] * dim
        row[self.q] += 1
        row[self.t] += 1
        row[self.q2] -= 1
        row[self.t2] -= 1
        return tuple(row)

    def holds(self, x: Sequence[int]) -> bool:
        return x[self.q] + x[self.t] == x[self.q2] + x[self.t2]

    def __str__(self) -> str:
        a, b, c, d = (coord_name(i) for i in self.occurrences())
        return f"{a[0]} {a[1]} {b[0]} {b[1]} = {c[0]} {c[1]} {d[0]} {d[1]}"


@dataclass(frozen=True)
class ClauseSet:
    clauses: tuple[tuple[str, str, str], ...]

    def __post_init__(self) -> None:
        cl = tuple(tuple(str(v) for v in c) for c in self.clauses)
        for c in cl:
            if len(c) != 3 or len(set(c)) != 3:
                raise ValueError(f"clause {c} must be three distinct variables")
        object.__setattr__(self, "clauses", cl)

    @property
    def variables(self) -> list[str]:
        seen: dict[str, None] = {}
        for c in self.clauses:
            for v in c:
                seen.setdefault(v, None)
        return list(seen)

    def __len__(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, assignment: Mapping[str, int | bool]) -> bool:
        return all(sum(bool(assignment.get(v, 0)) for v in c) == 1 for c in self.clauses)


@dataclass(frozen=True)
class Layout:
    """Flat indices of the ``w``/``x``/``y`` coordinates for ``n`` clauses."""

    n: int

    @property
    def p(self) -> int:
        return 3 * self.n - 2

    def w(self, k: int, i: int) -> int:
        assert 1 <= k <= self.n - 1
        return flat(k - 1, i)

    def x(self, k: int, i: int) -> int:
        assert 1 <= k <= self.n
        return flat(self.n - 1 + k - 1, i)

    def y(self, k: int, i: int) -> int:
        assert 1 <= k <= self.n - 1
        return flat(2 * self.n - 1 + k - 1, i)


@dataclass(frozen=True)
class AbstractInstance:
    p: int
    M: tuple[AbstractEquation, ...]
    chi: tuple[int, ...]
    fixed_zero: int

    def __post_init__(self) -> None:
        if len(self.chi) != 7 * self.p:
            raise ValueError("chi must have one coefficient per coordinate")
        if is_quad(self.fixed_zero) or not 0 <= self.fixed_zero < 7 * self.p:
            raise RoleViolation("the fixed coordinate must be a triangle coordinate")

    @property
    def dim(self) -> int:
        return 7 * self.p

    def chi_value(self, x: Sequence[int]) -> int:
        return sum(c * v for c, v in zip(self.chi, x))

    def is_M_admissible(self, x: Sequence[int]) -> bool:
        return is_M_admissible(self.M, x)

    def cone_system(self) -> ConeSystem:
        return ConeSystem(
            self.dim,
            tuple(e.dense(self.dim) for e in self.M),
            quad_pattern=tuple(quad_pattern(self.p)),
            zero_fixed=frozenset({self.fixed_zero}),
        )


@dataclass(frozen=True)
class Compatibility:
    compatible: bool
    counts: dict[int, int]
    saturated: bool  # |M| == 6p, i.e. every count sits at its upper bound


def check_compatible(M: Sequence[AbstractEquation], p: int | None = None) -> Compatibility:
    counts: dict[int, int] = {}
    for e in M:
        for idx in e.occurrences():
            counts[idx] = counts.get(idx, 0) + 1
    ok = all(c <= (4 if is_quad(i) else 3) for i, c in counts.items())
    saturated = p is not None and len(M) == 6 * p
    return Compatibility(ok, counts, saturated)


def is_M_admissible(M: Iterable[AbstractEquation], x: Sequence[int]) -> bool:
    if any(v < 0 for v in x):
        return False
    for t in range(len(x) // 7):
        if sum(1 for q in range(3) if x[7 * t + q]) > 1:
            return False
    return all(e.holds(x) for e in M)


def build_M1(C: ClauseSet) -> list[AbstractEquation]:
    """Equations forcing ``w_{k,4..7}`` equal and repeated variables to agree."""
    n = len(C)
    L = Layout(n)
    M = []
    for k in range(1, n):
        w = lambda i, k=k: L.w(k, i)  # noqa: E731
        M.append(AbstractEquation(w(1), w(4), w(1), w(5)))
        M.append(AbstractEquation(w(2), w(4), w(2), w(7)))
        M.append(AbstractEquation(w(3), w(6), w(3), w(7)))
    clauses = C.clauses
    for k in range(1, n):
        for i in (1, 2, 3):
            var = clauses[k - 1][i - 1]
            hit = next(
                ((l, j) for l in range(k + 1, n + 1) for j in (1, 2, 3) if clauses[l - 1][j - 1] == var),
                None,
            )
            if hit is None:
                continue
            l, j = hit
            M.append(AbstractEquation(L.x(k, i), L.w(k, i + 3), L.x(l, j), L.w(k, i + 4)))
    return M


def build_M2(n: int) -> list[AbstractEquation]:
    """Equations that, with ``y_{1,5} = 0``, equalise the quadrilateral sums of the clause blocks."""
    if n < 2:
        raise TooFewClauses("M2 needs at least two clauses")
    L = Layout(n)
    x, y = L.x, L.y
    M = []
    for k in range(1, n - 1):
        M.append(AbstractEquation(y(k, 2), y(k, 6), y(k + 1, 1), y(k + 1, 5)))
    for k in range(1, n):
        M.extend([
            AbstractEquation(y(k, 1), y(k, 4), y(k, 2), y(k, 4)),
            AbstractEquation(y(k, 3), y(k, 5), y(k, 3), y(k, 6)),
            AbstractEquation(y(k, 1), x(k, 4), x(k, 3), y(k, 5)),
            AbstractEquation(y(k, 1), x(k + 1, 6), x(k + 1, 3), y(k, 6)),
            AbstractEquation(y(k, 2), x(k, 5), x(k, 2), x(k, 4)),
            AbstractEquation(y(k, 2), x(k + 1, 7), x(k + 1, 2), x(k + 1, 6)),
            AbstractEquation(x(k, 1), x(k, 5), x(k + 1, 1), x(k + 1, 7)),
        ])
    return M


def reduce_sat(C: ClauseSet) -> AbstractInstance:
    n = len(C)
    if n < 2:
        raise TooFewClauses("the reduction needs at least two clauses (there is no y_{1,5} otherwise)")
    L = Layout(n)
    M = tuple(build_M1(C) + build_M2(n))
    chi = [0] * (7 * L.p)
    for k in range(1, n + 1):
        for i in (1, 2, 3):
            chi[L.x(k, i)] = 1
    return AbstractInstance(L.p, M, tuple(chi), L.y(1, 5))


@dataclass(frozen=True)
class Decision:
    verdict: bool
    witness: tuple[int, ...] | None = None


def decide_instance(I: AbstractInstance, prune_quads: bool = True) -> Decision:
    """Search the vertex solutions for one with positive ``chi``."""
    if not check_compatible(I.M).compatible:
        raise IncompatibleM("the equation set is not compatible")
    if not any(I.chi):
        return Decision(False)
    sys = I.cone_system()
    rays = filter_admissible(extreme_rays(sys, prune_quads=prune_quads), sys.quad_pattern)
    for r in rays:
        if I.chi_value(r) > 0:
            return Decision(True, r)
    return Decision(False)


def brute_force_sat(C: ClauseSet, max_vars: int = 24) -> dict[str, int] | None:
    V = C.variables
    if len(V) > max_vars:
        raise TooManyVariables(f"{len(V)} variables exceeds the bound of {max_vars}")
    for bits in product((0, 1), repeat=len(V)):
        a = dict(zip(V, bits))
        if C.satisfied_by(a):
            return a
    return None


def construct_witness(C: ClauseSet, assignment: Mapping[str, int | bool]) -> list[int]:
    if not C.satisfied_by(assignment):
        raise AssignmentDoesNotSatisfy("every clause needs exactly one true variable")
    n = len(C)
    L = Layout(n)
    x = [0] * (7 * L.p)
    for k in range(1, n + 1):
        for i in (1, 2, 3):
            x[L.x(k, i)] = int(bool(assignment[C.clauses[k - 1][i - 1]]))
        x3, x2 = x[L.x(k, 3)], x[L.x(k, 2)]
        x[L.x(k, 4)] = x[L.x(k, 6)] = x3
        x[L.x(k, 5)] = x[L.x(k, 7)] = x2 + x3
    return x


def extract_assignment(C: ClauseSet, x: Sequence[int], I: AbstractInstance | None = None) -> dict[str, int]:
    if I is None:
        I = reduce_sat(C)
    if not I.is_M_admissible(x) or I.chi_value(x) <= 0 or x[I.fixed_zero] != 0:
        raise PreconditionViolated("need an M-admissible vector with chi > 0 and the fixed coordinate zero")
    L = Layout(len(C))
    a: dict[str, int] = {}
    for k, clause in enumerate(C.clauses, start=1):
        for i, var in enumerate(clause, start=1):
            val = int(x[L.x(k, i)] != 0)
            if a.setdefault(var, val) != val:
                raise PreconditionViolated(f"occurrences of {var} disagree")
    if not C.satisfied_by(a):
        raise PreconditionViolated("extracted assignment does not satisfy the clauses")
    return a


def decide_concrete(T: Triangulation, t: int, prune_quads: bool = True) -> Decision:
    """Is there an admissible vector with triangle coordinate ``t`` zero and positive Euler characteristic?"""
    if not 0 <= t < 7 * T.n or is_quad(t):
        raise BadCoordinate(f"{t} is not a triangle coordinate of this triangulation")
    ms = matching_system(T)
    chi = euler_functional(T)
    sys = ConeSystem.from_sparse(
        ms.dim, ms.rows, quad_pattern=tuple(quad_pattern(T.n)), zero_fixed=frozenset({t})
    )
    rays = filter_admissible(extreme_rays(sys, prune_quads=prune_quads), sys.quad_pattern)
    for r in rays:
        if chi(r) > 0:
            return Decision(True, r)
    return Decision(False)


# -- file formats -----------------------------------------------------------

def clauses_to_text(C: ClauseSet) -> str:
    return "".join(" ".join(c) + "\n" for c in C.clauses)


def clauses_from_text(text: str) -> ClauseSet:
    clauses = []
    for ln in text.splitlines():
        ln = ln.split("#")[0].strip()
        if ln:
            clauses.append(tuple(ln.split()))
    return ClauseSet(tuple(clauses))


def instance_to_text(I: AbstractInstance) -> str:
    """``p``, one ``eq`` line per equation (``tet coord`` pairs), sparse ``chi``, ``fixed``."""
    lines = [f"p {I.p}"]
    lines.extend(f"eq {e}" for e in I.M)
    lines.append("chi " + " ".join(f"{i}:{c}" for i, c in enumerate(I.chi) if c))
    tet, i = coord_name(I.fixed_zero)
    lines.append(f"fixed {tet} {i}")
    return "\n".join(lines) + "\n"


def instance_from_text(text: str) -> AbstractInstance:
    p = None
    M = []
    chi_pairs: list[tuple[int, int]] = []
    fixed = None
    for ln in text.splitlines():
        parts = ln.split()
        if not parts or parts[0].startswith("#"):
            continue
        key = parts[0]
        if key == "p":
            p = int(parts[1])
        elif key == "eq":
            nums = [int(v) for v in parts[1:] if v != "="]
            if len(nums) != 8:
                raise ValueError(f"malformed equation line: {ln!r}")
            idx = [flat(nums[2 * j], nums[2 * j + 1]) for j in range(4)]
            M.append(AbstractEquation(*idx))
        elif key == "chi":
            for tok in parts[1:]:
                i, c = tok.split(":")
                chi_pairs.append((int(i), int(c)))
        elif key == "fixed":
            fixed = flat(int(parts[1]), int(parts[2]))
        else:
            raise ValueError(f"unknown line: {ln!r}")
    if p is None or fixed is None:
        raise ValueError("instance file needs 'p' and 'fixed' lines")
    chi = [0] * (7 * p)
    for i, c in chi_pairs:
        chi[i] = c
    return AbstractInstance(p, tuple(M), tuple(chi), fixed)
