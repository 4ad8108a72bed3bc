"""Cone-separated pair decompositions over the four octant cones above the xy-plane.

Each canonical cone is an octant with a sign for x and for y and positive z.
Direction ties are broken combinatorially, never numerically: on a tied
coordinate, the point that is smaller in the lexicographic (z, y, x, index)
order counts as the lower end.  This makes the eight signed octants an exact
partition of all ordered point pairs, which the decomposition's uniqueness
guarantee requires.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .geometry import Point3


@dataclass(frozen=True, slots=True)
class ConeId:
    """Sign pattern of one canonical cone: sx, sy in {+1, -1}, z always +."""

    sx: int
    sy: int

    def __post_init__(self) -> None:
        if self.sx not in (-1, 1) or self.sy not in (-1, 1):
            raise ValueError(f"cone signs must be +1 or -1, got ({self.sx}, {self.sy})")

    def code(self) -> str:
        return ("x+" if self.sx > 0 else "x-") + ("y+" if self.sy > 0 else "y-")


CONES: tuple[ConeId, ...] = (ConeId(1, 1), ConeId(1, -1), ConeId(-1, 1), ConeId(-1, -1))


def _lex_less(p: Point3, q: Point3) -> bool:
    return (p.z, p.y, p.x) < (q.z, q.y, q.x)


def _direction(p: Point3, q: Point3, axis: int) -> int:
    """Signed direction from p to q on one axis, ties resolved by (z,y,x) order."""
    a, b = p.coord(axis), q.coord(axis)
    if a < b:
        return 1
    if a > b:
        return -1
    return 1 if _lex_less(p, q) else -1


def classify(p: Point3, q: Point3) -> tuple[ConeId, bool]:
    """The unique signed octant of q relative to p.

    Returns (cone, reflected).  When reflected is False, q lies in the
    cone translated to p; when True, p lies in that cone translated to q,
    so the ordered pair is covered as (q, p).
    """
    if p == q:
        raise ValueError("classify requires two distinct points")
    dx = _direction(p, q, 0)
    dy = _direction(p, q, 1)
    dz = _direction(p, q, 2)
    if dz > 0:
        return ConeId(dx, dy), False
    return ConeId(-dx, -dy), True


def in_cone(p: Point3, q: Point3, cone: ConeId) -> bool:
    """Whether q lies in the given cone translated to p (half-open convention)."""
    return classify(p, q) == (cone, False)


@dataclass(frozen=True)
class CspdPair:
    """One pair (A, B) of a decomposition, with the apex separating them.

    For every a in A and b in B, b lies in the pair's cone translated to a;
    the apex dominates every a and is dominated by every b, componentwise in
    the cone's signs (closed comparisons).
    """

    cone: ConeId
    a: tuple[int, ...]
    b: tuple[int, ...]
    apex: Point3


@dataclass(frozen=True)
class Cspd:
    cone: ConeId
    pairs: tuple[CspdPair, ...]
    size_sum: int


def build_cspd(points: Sequence[Point3], cone: ConeId) -> Cspd:
    """Decompose all cone-related ordered pairs via three nested median splits.

    Level 1 splits by a median plane on the signed x-axis, level 2 on the
    signed y-axis, level 3 on the z-axis; a pair is emitted at every level-3
    node where both sides are nonempty, with the three split values as its
    apex.  Every ordered pair (p, q) with q in the cone at p is covered by
    exactly one emitted pair (at the unique split node separating it on each
    level), and every point belongs to O(log^3 n) pairs.

    Medians are lower medians in the per-axis total orders; each split value
    is the coordinate of the first element of the upper part, so the output
    is deterministic.
    """
    n = len(points)
    if n < 2:
        raise ValueError("decomposition needs at least 2 points")
    if len({p.as_tuple() for p in points}) != n:
        raise ValueError("points must be pairwise distinct")

    order = sorted(range(n), key=lambda i: (points[i].z, points[i].y, points[i].x, i))
    rank = [0] * n
    for pos, i in enumerate(order):
        rank[i] = pos
    # Signed per-axis total orders: a precedes b iff the direction bit from a
    # to b equals the cone's sign, so the rank tiebreak flips with the sign.
    kx = [(cone.sx * points[i].x, cone.sx * rank[i]) for i in range(n)]
    ky = [(cone.sy * points[i].y, cone.sy * rank[i]) for i in range(n)]
    kz = [(points[i].z, rank[i]) for i in range(n)]

    pairs: list[CspdPair] = []

    def rec3(u: list[int], x_pivot, x_split: float, y_split: float) -> None:
        if len(u) < 2:
            return
        far = sum(1 for i in u if kx[i] >= x_pivot)
        if far == 0 or far == len(u):
            return
        mid = len(u) // 2
        z_split = points[u[mid]].z
        z_pivot = kz[u[mid]]
        side_a = tuple(i for i in u[:mid] if kx[i] < x_pivot)
        side_b = tuple(i for i in u[mid:] if kx[i] >= x_pivot)
        if side_a and side_b:
            pairs.append(CspdPair(cone, side_a, side_b,
                                  Point3(x_split, y_split, z_split)))
        rec3(u[:mid], x_pivot, x_split, y_split)
        rec3(u[mid:], x_pivot, x_split, y_split)

    def rec2(sy: list[int], sz: list[int], x_pivot, x_split: float) -> None:
        if len(sy) < 2:
            return
        far = sum(1 for i in sy if kx[i] >= x_pivot)
        if far == 0 or far == len(sy):
            return
        mid = len(sy) // 2
        y_pivot = ky[sy[mid]]
        y_split = points[sy[mid]].y
        # candidates crossing both the x and this y split, in z order
        u = [i for i in sz if (kx[i] >= x_pivot) == (ky[i] >= y_pivot)]
        rec3(u, x_pivot, x_split, y_split)
        rec2(sy[:mid], [i for i in sz if ky[i] < y_pivot], x_pivot, x_split)
        rec2(sy[mid:], [i for i in sz if ky[i] >= y_pivot], x_pivot, x_split)

    def rec1(sx: list[int], sy: list[int], sz: list[int]) -> None:
        if len(sx) < 2:
            return
        mid = len(sx) // 2
        x_pivot = kx[sx[mid]]
        x_split = points[sx[mid]].x
        rec2(sy, sz, x_pivot, x_split)
        rec1(sx[:mid],
             [i for i in sy if kx[i] < x_pivot], [i for i in sz if kx[i] < x_pivot])
        rec1(sx[mid:],
             [i for i in sy if kx[i] >= x_pivot], [i for i in sz if kx[i] >= x_pivot])

    sx0 = sorted(range(n), key=lambda i: kx[i])
    sy0 = sorted(range(n), key=lambda i: ky[i])
    sz0 = sorted(range(n), key=lambda i: kz[i])
    rec1(sx0, sy0, sz0)

    size_sum = sum(len(p.a) + len(p.b) for p in pairs)
    return Cspd(cone=cone, pairs=tuple(pairs), size_sum=size_sum)


def certify_cspd(points: Sequence[Point3], cone: ConeId, cspd: Cspd) -> list[str]:
    """Brute-force certification of a decomposition; empty list means certified.

    Checks, over all O(n^2) ordered pairs, that every cone-related pair is
    covered by exactly one emitted pair and no unrelated pair is covered
    (uniqueness), that every cross pair of every emitted pair is cone-related
    (the separation condition), and that each apex sits between its sides
    componentwise in the cone's signs.
    """
    violations: list[str] = []
    coverage: dict[tuple[int, int], int] = {}
    for pid, pair in enumerate(cspd.pairs):
        if not pair.a or not pair.b:
            violations.append(f"pair {pid}: empty side")
        if set(pair.a) & set(pair.b):
            violations.append(f"pair {pid}: sides not disjoint")
        for i in pair.a:
            for j in pair.b:
                coverage[(i, j)] = coverage.get((i, j), 0) + 1
                if not in_cone(points[i], points[j], cone):
                    violations.append(
                        f"pair {pid}: cross pair ({i},{j}) not cone-related")
        for i in pair.a:
            for axis, sign in ((0, cone.sx), (1, cone.sy), (2, 1)):
                d = sign * (pair.apex.coord(axis) - points[i].coord(axis))
                if d < 0:
                    violations.append(f"pair {pid}: apex does not dominate point {i}")
                    break
        for j in pair.b:
            for axis, sign in ((0, cone.sx), (1, cone.sy), (2, 1)):
                d = sign * (points[j].coord(axis) - pair.apex.coord(axis))
                if d < 0:
                    violations.append(f"pair {pid}: point {j} does not dominate apex")
                    break
    n = len(points)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            expected = 1 if in_cone(points[i], points[j], cone) else 0
            got = coverage.get((i, j), 0)
            if got != expected:
                violations.append(
                    f"ordered pair ({i},{j}) covered {got} times, expected {expected}")
    return violations
