"""Independent checks of every quantitative bound the construction promises.

The stretch of the built spanner is measured against engine-computed geodesic
distances over all point pairs; the via-point detour inequality and the norm
sandwich are checked directly; the scaling sweep tracks edge counts against
the n * log^3 n budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .geodesic import GeodesicSolver, _solver_for
from .geometry import EPS_GEOM, Environment, Point3, bounding_box, l1_distance, l2_distance
from .spanner import SpannerGraph, build_spanner

STRETCH_BOUND_L1 = 8.0
STRETCH_SLACK = 1e-6
VIA_DETOUR_FACTOR = 4.0
NORM_RATIO = math.sqrt(3.0)


@dataclass
class StretchReport:
    """Measured worst-case ratio of graph distance to geodesic distance."""

    max_ratio: float
    argmax: tuple[int, int] | None
    edge_count: int
    metric: str = "L1-geodesic"
    pair_size_sum: int | None = None
    ratios: dict[tuple[int, int], float] | None = None

    @property
    def l2_ratio_analytic(self) -> float:
        """Stretch in the Euclidean norm implied by the norm sandwich."""
        return NORM_RATIO * self.max_ratio

    def within_bound(self, bound: float = STRETCH_BOUND_L1,
                     slack: float = STRETCH_SLACK) -> bool:
        return self.max_ratio <= bound + slack


def _graph_csr(g: SpannerGraph) -> csr_matrix:
    if not g.edges:
        return csr_matrix((g.n, g.n))
    rows = np.fromiter((i for (i, _) in g.edges), dtype=np.int64, count=len(g.edges))
    cols = np.fromiter((j for (_, j) in g.edges), dtype=np.int64, count=len(g.edges))
    data = np.fromiter(g.edges.values(), dtype=float, count=len(g.edges))
    return csr_matrix((data, (rows, cols)), shape=(g.n, g.n))


def graph_distances(g: SpannerGraph, source: int) -> np.ndarray:
    """Single-source shortest-path distances in the spanner; inf if unreachable."""
    if not 0 <= source < g.n:
        raise IndexError(f"source {source} out of range for {g.n} vertices")
    return dijkstra(_graph_csr(g), directed=False, indices=source)


def spanning_ratio(env: Environment, g: SpannerGraph,
                   include_table: bool = False,
                   solver: GeodesicSolver | None = None) -> StretchReport:
    """Max over all pairs of graph distance divided by geodesic distance."""
    if g.n != env.n:
        raise ValueError("graph and environment disagree on the number of points")
    if solver is None:
        solver = _solver_for(env)
    pair_size_sum = sum(g.stats.get("size_sums", {}).values()) or None
    if g.n < 2:
        return StretchReport(max_ratio=1.0, argmax=None, edge_count=g.edge_count,
                             pair_size_sum=pair_size_sum)
    dist_graph = dijkstra(_graph_csr(g), directed=False)
    best = 0.0
    arg: tuple[int, int] | None = None
    table: dict[tuple[int, int], float] = {}
    for i in range(g.n - 1):
        targets = list(env.points[i + 1:])
        sigma = solver.distances_from(env.points[i], targets)
        ratios = dist_graph[i, i + 1:] / sigma
        j_rel = int(np.argmax(ratios))
        if include_table:
            for k, r in enumerate(ratios):
                table[(i, i + 1 + k)] = float(r)
        if ratios[j_rel] > best:
            best = float(ratios[j_rel])
            arg = (i, i + 1 + j_rel)
    return StretchReport(max_ratio=best, argmax=arg, edge_count=g.edge_count,
                         pair_size_sum=pair_size_sum,
                         ratios=table if include_table else None)


def check_via_detour(env: Environment, p: Point3, q: Point3,
                     o: Point3) -> tuple[float, float, bool]:
    """Check sigma(p,o) + sigma(o,q) <= 4 * sigma(p,q) for o in the box of p and q.

    Returns (lhs, rhs, holds).  The via point must lie in the closed box
    spanned by p and q, and all three points outside obstacle interiors.
    """
    if not bounding_box(p, q).contains(o):
        raise ValueError("via point must lie in the closed box of p and q")
    for pt in (p, q, o):
        for box in env.obstacles:
            if box.contains_interior(pt):
                raise ValueError("query points must lie outside obstacle interiors")
    solver = _solver_for(env)
    lhs = solver.distance(p, o) + solver.distance(o, q)
    rhs = VIA_DETOUR_FACTOR * solver.distance(p, q)
    return lhs, rhs, lhs <= rhs + EPS_GEOM


def norm_conversion_check(g: SpannerGraph, env: Environment) -> bool:
    """Verify the norm sandwich l1/sqrt(3) <= l2 <= l1 on all point pairs.

    This is the computational content behind quoting the measured L1 stretch
    times sqrt(3) as the Euclidean stretch; the conversion itself is
    analytic, not measured.
    """
    pts = env.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            l1 = l1_distance(pts[i], pts[j])
            l2 = l2_distance(pts[i], pts[j])
            if not (l1 / NORM_RATIO <= l2 + EPS_GEOM and l2 <= l1 + EPS_GEOM):
                return False
    return True


@dataclass
class SweepRow:
    n: int
    m: int
    trials: int
    median_edges: float
    median_size_sum: float
    max_stretch: float
    normalized_edges: float
    runs: list[dict] = field(default_factory=list)


def scaling_sweep(sizes: list[int], trials: int, seed: int, m: int = 8) -> list[SweepRow]:
    """Generate, build, and verify across sizes; assert the stretch bound.

    Each run checks the exact edge budget (edges <= 6 * total pair size) and
    the stretch bound with slack; a violation raises.  Rows carry medians
    over the trials plus the per-run data.
    """
    from .generators import GenConfig, random_instance

    if not sizes:
        raise ValueError("sizes must be nonempty")
    rows: list[SweepRow] = []
    for n in sizes:
        runs = []
        for trial in range(trials):
            child_seed = int(np.random.SeedSequence((seed, n, trial)).generate_state(1)[0])
            env = random_instance(GenConfig(seed=child_seed, n=n, m=m))
            g = build_spanner(env)
            size_sum = sum(g.stats["size_sums"].values())
            if g.edge_count > 6 * size_sum:
                raise RuntimeError(
                    f"edge budget violated at n={n}: {g.edge_count} > 6*{size_sum}")
            report = spanning_ratio(env, g)
            if not report.within_bound():
                raise RuntimeError(
                    f"stretch bound violated at n={n}: {report.max_ratio}")
            runs.append({"n": n, "m": m, "trial": trial, "seed": child_seed,
                         "edges": g.edge_count, "size_sum": size_sum,
                         "max_stretch": report.max_ratio})
        med_edges = float(np.median([r["edges"] for r in runs]))
        med_size = float(np.median([r["size_sum"] for r in runs]))
        norm = med_edges / (n * math.log2(n) ** 3) if n > 1 else float(med_edges)
        rows.append(SweepRow(n=n, m=m, trials=trials,
                             median_edges=med_edges, median_size_sum=med_size,
                             max_stretch=max(r["max_stretch"] for r in runs),
                             normalized_edges=norm, runs=runs))
    return rows
