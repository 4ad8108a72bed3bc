"""Exact-semantics geometric primitives: points, axis-parallel boxes, obstacle environments.

All predicates compare stored coordinates exactly.  The tolerance ``EPS_GEOM``
is used only as a validation margin (obstacle disjointness) and as slack in
verification checks, never in combinatorial decisions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

EPS_GEOM = 1e-9

AXES = (0, 1, 2)


@dataclass(frozen=True, slots=True)
class Point3:
    """A location in 3-space with finite coordinates."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.z)):
            raise ValueError(f"coordinates must be finite, got {(self.x, self.y, self.z)}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def coord(self, axis: int) -> float:
        return (self.x, self.y, self.z)[axis]


def l1_distance(p: Point3, q: Point3) -> float:
    """Manhattan distance |dx| + |dy| + |dz|."""
    return abs(p.x - q.x) + abs(p.y - q.y) + abs(p.z - q.z)


def l2_distance(p: Point3, q: Point3) -> float:
    """Euclidean distance; satisfies l1/sqrt(3) <= l2 <= l1."""
    return math.hypot(p.x - q.x, p.y - q.y, p.z - q.z)


@dataclass(frozen=True, slots=True)
class AxisBox:
    """Axis-parallel box [lo, hi]; degenerate extents are allowed.

    Obstacles additionally require strictly positive extent on every axis,
    which is enforced by :func:`validate_environment`, not here: derived
    boxes of two points may be flat or even a single point.
    """

    lo: Point3
    hi: Point3

    def __post_init__(self) -> None:
        if self.lo.x > self.hi.x or self.lo.y > self.hi.y or self.lo.z > self.hi.z:
            raise ValueError(f"box corners out of order: lo={self.lo}, hi={self.hi}")

    def contains(self, pt: Point3) -> bool:
        """Closed containment: lo <= pt <= hi componentwise."""
        return (self.lo.x <= pt.x <= self.hi.x
                and self.lo.y <= pt.y <= self.hi.y
                and self.lo.z <= pt.z <= self.hi.z)

    def contains_interior(self, pt: Point3) -> bool:
        """Open containment: lo < pt < hi componentwise."""
        return (self.lo.x < pt.x < self.hi.x
                and self.lo.y < pt.y < self.hi.y
                and self.lo.z < pt.z < self.hi.z)

    def extent(self, axis: int) -> float:
        return self.hi.coord(axis) - self.lo.coord(axis)

    def sides(self) -> tuple[float, float, float]:
        return (self.hi.x - self.lo.x, self.hi.y - self.lo.y, self.hi.z - self.lo.z)


def bounding_box(p: Point3, q: Point3) -> AxisBox:
    """The box with p and q as opposite corners (componentwise min/max)."""
    return AxisBox(
        Point3(min(p.x, q.x), min(p.y, q.y), min(p.z, q.z)),
        Point3(max(p.x, q.x), max(p.y, q.y), max(p.z, q.z)),
    )


@dataclass(frozen=True)
class Environment:
    """A validated instance: disjoint box obstacles plus a point set.

    Construction normalizes the fields to tuples but does not validate;
    call :func:`validate_environment` to check the instance invariants.
    """

    obstacles: tuple[AxisBox, ...]
    points: tuple[Point3, ...]

    def __init__(self, obstacles: Iterable[AxisBox] = (), points: Iterable[Point3] = ()):
        object.__setattr__(self, "obstacles", tuple(obstacles))
        object.__setattr__(self, "points", tuple(points))

    @property
    def n(self) -> int:
        return len(self.points)


def separation(a: AxisBox, b: AxisBox) -> float:
    """Largest axis gap between two boxes; > 0 iff disjoint as closed sets."""
    best = -math.inf
    for axis in AXES:
        gap = max(b.lo.coord(axis) - a.hi.coord(axis), a.lo.coord(axis) - b.hi.coord(axis))
        best = max(best, gap)
    return best


def validate_environment(env: Environment) -> list[str]:
    """Report all violated instance invariants; an empty list means valid.

    Checks: obstacles pairwise disjoint with margin EPS_GEOM (they may not
    even touch), strictly positive obstacle extents, no point strictly inside
    an obstacle, points pairwise distinct.
    """
    violations: list[str] = []
    for i, box in enumerate(env.obstacles):
        for axis in AXES:
            if box.extent(axis) <= 0.0:
                violations.append(f"obstacle {i} has non-positive extent on axis {axis}")
    for i in range(len(env.obstacles)):
        for j in range(i + 1, len(env.obstacles)):
            sep = separation(env.obstacles[i], env.obstacles[j])
            if sep <= EPS_GEOM:
                violations.append(f"obstacles {i} and {j} touch or overlap (separation {sep:.3g})")
    for k, pt in enumerate(env.points):
        for i, box in enumerate(env.obstacles):
            if box.contains_interior(pt):
                violations.append(f"point {k} lies strictly inside obstacle {i}")
    seen: dict[tuple[float, float, float], int] = {}
    for k, pt in enumerate(env.points):
        key = pt.as_tuple()
        if key in seen:
            violations.append(f"points {seen[key]} and {k} coincide")
        else:
            seen[key] = k
    return violations


def project_out(o: Point3, env: Environment) -> tuple[Point3, Point3, Point3, Point3, Point3, Point3]:
    """Axis-parallel exits of o to the boundary of the obstacle containing it.

    Returns the six points (x+, x-, y+, y-, z+, z-).  When o is interior to
    an obstacle (at most one, by disjointness) each exit is the intersection
    of the axis ray from o with that obstacle's boundary; otherwise all six
    equal o.
    """
    for box in env.obstacles:
        if box.contains_interior(o):
            return (
                Point3(box.hi.x, o.y, o.z),
                Point3(box.lo.x, o.y, o.z),
                Point3(o.x, box.hi.y, o.z),
                Point3(o.x, box.lo.y, o.z),
                Point3(o.x, o.y, box.hi.z),
                Point3(o.x, o.y, box.lo.z),
            )
    return (o, o, o, o, o, o)


def points_array(points: Sequence[Point3]):
    """Pack points into an (n, 3) float array for vectorized work."""
    import numpy as np

    out = np.empty((len(points), 3), dtype=float)
    for i, p in enumerate(points):
        out[i, 0] = p.x
        out[i, 1] = p.y
        out[i, 2] = p.z
    return out
