"""L1 geodesic distances and shortest rectilinear paths amid box obstacles.

Distances are realized on a track graph: the grid induced by all obstacle
face coordinates plus the coordinates of the query terminals.  Some shortest
obstacle-avoiding rectilinear path is always confined to this grid (segments
of any path can be slid onto face planes or terminal planes without growing
its length), which the independent fine-grid lattice oracle cross-checks.

Obstacles block only their open interiors: paths may run along faces and
edges of obstacles.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .geometry import AxisBox, Environment, Point3, l1_distance

DEFAULT_NODE_CAP = 20_000_000


class GridTooLargeError(RuntimeError):
    """Raised when a grid would exceed the configured node-count cap."""


def _obstacle_arrays(obstacles: Sequence[AxisBox]) -> tuple[np.ndarray, np.ndarray]:
    m = len(obstacles)
    lo = np.empty((m, 3), dtype=float)
    hi = np.empty((m, 3), dtype=float)
    for k, box in enumerate(obstacles):
        lo[k] = box.lo.as_tuple()
        hi[k] = box.hi.as_tuple()
    return lo, hi


def _grid_links(cuts: tuple[np.ndarray, np.ndarray, np.ndarray],
                obs_lo: np.ndarray, obs_hi: np.ndarray,
                node_cap: int) -> tuple[np.ndarray, list[np.ndarray]]:
    """Node validity and per-axis link arrays for a tensor grid.

    A node is valid unless strictly inside some obstacle.  A link between
    consecutive grid neighbors exists iff both endpoints are valid and the
    open segment between them misses every obstacle's open interior: the two
    fixed coordinates strictly inside, the moving range strictly overlapping.
    """
    cx, cy, cz = cuts
    shape = (len(cx), len(cy), len(cz))
    n_nodes = shape[0] * shape[1] * shape[2]
    if n_nodes > node_cap:
        raise GridTooLargeError(f"grid needs {n_nodes} nodes, cap is {node_cap}")

    # Index ranges of cut values strictly inside an obstacle's open interval.
    def strict(c: np.ndarray, lo_v: float, hi_v: float) -> slice:
        return slice(np.searchsorted(c, lo_v, side="right"),
                     np.searchsorted(c, hi_v, side="left"))

    inside = np.zeros(shape, dtype=bool)
    for k in range(len(obs_lo)):
        inside[strict(cx, obs_lo[k, 0], obs_hi[k, 0]),
               strict(cy, obs_lo[k, 1], obs_hi[k, 1]),
               strict(cz, obs_lo[k, 2], obs_hi[k, 2])] = True
    valid = ~inside

    links: list[np.ndarray] = []
    all_cuts = (cx, cy, cz)
    for axis in range(3):
        c = all_cuts[axis]
        blocked = np.zeros([len(v) - 1 if a == axis else len(v)
                            for a, v in enumerate(all_cuts)], dtype=bool)
        for k in range(len(obs_lo)):
            # segment c[i]..c[i+1] overlaps (lo, hi) iff c[i] < hi and c[i+1] > lo
            i0 = max(np.searchsorted(c, obs_lo[k, axis], side="right") - 1, 0)
            i1 = np.searchsorted(c, obs_hi[k, axis], side="left")
            region: list[slice] = [slice(None)] * 3
            region[axis] = slice(i0, i1)
            for other in range(3):
                if other == axis:
                    continue
                region[other] = strict(all_cuts[other], obs_lo[k, other], obs_hi[k, other])
            blocked[tuple(region)] = True
        head: list[slice] = [slice(None)] * 3
        head[axis] = slice(None, -1)
        tail: list[slice] = [slice(None)] * 3
        tail[axis] = slice(1, None)
        links.append(valid[tuple(head)] & valid[tuple(tail)] & ~blocked)
    return valid, links


def _grid_csr(cuts: tuple[np.ndarray, np.ndarray, np.ndarray],
              links: list[np.ndarray]) -> csr_matrix:
    cx, cy, cz = cuts
    ny, nz = len(cy), len(cz)
    n_nodes = len(cx) * ny * nz

    def node_id(i, j, k):
        return (i * ny + j) * nz + k

    rows, cols, weights = [], [], []
    steps = (np.diff(cx), np.diff(cy), np.diff(cz))
    for axis in range(3):
        i, j, k = np.nonzero(links[axis])
        if len(i) == 0:
            continue
        u = node_id(i, j, k)
        if axis == 0:
            v = node_id(i + 1, j, k)
            w = steps[0][i]
        elif axis == 1:
            v = node_id(i, j + 1, k)
            w = steps[1][j]
        else:
            v = node_id(i, j, k + 1)
            w = steps[2][k]
        rows.append(u)
        cols.append(v)
        weights.append(w)
    if rows:
        data = np.concatenate(weights)
        graph = csr_matrix((data, (np.concatenate(rows), np.concatenate(cols))),
                           shape=(n_nodes, n_nodes))
    else:
        graph = csr_matrix((n_nodes, n_nodes))
    return graph


class TrackGraph:
    """Grid over obstacle face planes and terminal coordinate planes.

    Nodes are cut-coordinate triples outside all obstacle interiors; links
    join consecutive grid neighbors whose open segment avoids every obstacle
    interior, weighted by L1 length.  Registered terminals map to node ids.
    """

    def __init__(self, env: Environment, terminals: Sequence[Point3],
                 node_cap: int = DEFAULT_NODE_CAP):
        self.env = env
        obs_lo, obs_hi = _obstacle_arrays(env.obstacles)
        cuts = []
        for axis in range(3):
            vals = [p.coord(axis) for p in terminals]
            if len(env.obstacles) > 0:
                vals = np.concatenate([vals, obs_lo[:, axis], obs_hi[:, axis]])
            cuts.append(np.unique(np.asarray(vals, dtype=float)))
        self.cuts: tuple[np.ndarray, np.ndarray, np.ndarray] = tuple(cuts)
        self.valid, self.links = _grid_links(self.cuts, obs_lo, obs_hi, node_cap)
        self._graph = _grid_csr(self.cuts, self.links)
        self.terminals: dict[Point3, int] = {}
        for p in terminals:
            self.terminals[p] = self._locate(p)

    @property
    def node_count(self) -> int:
        return self.valid.size

    def _locate(self, p: Point3) -> int:
        idx = []
        for axis in range(3):
            i = int(np.searchsorted(self.cuts[axis], p.coord(axis)))
            if i >= len(self.cuts[axis]) or self.cuts[axis][i] != p.coord(axis):
                raise KeyError(f"{p} is not on the grid")
            idx.append(i)
        ny, nz = len(self.cuts[1]), len(self.cuts[2])
        return (idx[0] * ny + idx[1]) * nz + idx[2]

    def node_point(self, node: int) -> Point3:
        ny, nz = len(self.cuts[1]), len(self.cuts[2])
        i, rem = divmod(node, ny * nz)
        j, k = divmod(rem, nz)
        return Point3(float(self.cuts[0][i]), float(self.cuts[1][j]), float(self.cuts[2][k]))

    def shortest_from(self, node: int, with_predecessors: bool = False):
        return dijkstra(self._graph, directed=False, indices=node,
                        return_predecessors=with_predecessors)


def build_track_graph(env: Environment, extra_terminals: Iterable[Point3] = (),
                      node_cap: int = DEFAULT_NODE_CAP) -> TrackGraph:
    """Track graph over env with all of P plus extra_terminals registered."""
    extras = tuple(extra_terminals)
    for p in extras:
        for box in env.obstacles:
            if box.contains_interior(p):
                raise ValueError(f"terminal {p} lies strictly inside an obstacle")
    return TrackGraph(env, tuple(env.points) + extras, node_cap=node_cap)


@dataclass
class GeodesicResult:
    """Single-source distances (and optional path polylines) to all terminals."""

    source: Point3
    distances: dict[Point3, float]
    paths: dict[Point3, tuple[Point3, ...]] | None = None


def _walk_path(track: TrackGraph, predecessors: np.ndarray, target: int) -> tuple[Point3, ...]:
    nodes = [target]
    while predecessors[nodes[-1]] >= 0:
        nodes.append(int(predecessors[nodes[-1]]))
    pts = [track.node_point(v) for v in reversed(nodes)]
    out = [pts[0]]
    for p in pts[1:]:
        if len(out) >= 2:
            a, b = out[-2], out[-1]
            same_axis = sum(1 for ax in range(3)
                            if a.coord(ax) == b.coord(ax) == p.coord(ax))
            if same_axis == 2:
                out[-1] = p
                continue
        out.append(p)
    return tuple(out)


def single_source_geodesic(track: TrackGraph, source: Point3,
                           with_paths: bool = False) -> GeodesicResult:
    """Shortest obstacle-avoiding rectilinear distances from a registered terminal."""
    if source not in track.terminals:
        raise KeyError(f"source {source} is not a registered terminal")
    src = track.terminals[source]
    if with_paths:
        dist, pred = track.shortest_from(src, with_predecessors=True)
    else:
        dist = track.shortest_from(src)
        pred = None
    distances: dict[Point3, float] = {}
    paths: dict[Point3, tuple[Point3, ...]] = {}
    for p, node in track.terminals.items():
        d = float(dist[node])
        if not np.isfinite(d):
            raise RuntimeError(f"terminal {p} unreachable from {source}: "
                               "disjoint bounded obstacles cannot disconnect free space")
        # Dijkstra sums may round a hair below the exact L1 lower bound.
        distances[p] = max(d, l1_distance(source, p))
        if pred is not None:
            paths[p] = _walk_path(track, pred, node)
    return GeodesicResult(source=source, distances=distances,
                          paths=paths if with_paths else None)


class GeodesicSolver:
    """Pairwise and one-to-many L1 geodesic queries over one environment.

    Query strategy, cheapest first:

    1. no obstacle interior meets the closed box of the pair: distance is L1;
    2. a monotone staircase through that box exists (grid DP): distance is L1;
    3. Dijkstra on the grid cut by the box-overlapping obstacles, then, if the
       resulting upper bound cannot rule out every other obstacle, a second
       run cut by all obstacles whose cheapest through-detour is within the
       bound.  The pruning is conservative: an optimal path touching an
       obstacle certifies a through-detour no longer than the optimum, so
       every obstacle an optimal path can touch keeps its cut planes.

    Results are cached per unordered pair.
    """

    def __init__(self, env: Environment, node_cap: int = DEFAULT_NODE_CAP):
        self.env = env
        self.node_cap = node_cap
        self.obs_lo, self.obs_hi = _obstacle_arrays(env.obstacles)
        self._point_ids = {p: i for i, p in enumerate(env.points)}
        self._cache: dict[tuple, float] = {}

    def _key(self, p: Point3, q: Point3):
        a = self._point_ids.get(p, p.as_tuple())
        b = self._point_ids.get(q, q.as_tuple())
        ka = (0, a) if isinstance(a, int) else (1, a)
        kb = (0, b) if isinstance(b, int) else (1, b)
        return (ka, kb) if ka <= kb else (kb, ka)

    def distance(self, p: Point3, q: Point3) -> float:
        if p == q:
            return 0.0
        key = self._key(p, q)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        s = np.array(p.as_tuple())
        t = np.array(q.as_tuple())
        d = self._sigma(s, t)
        self._cache[key] = d
        return d

    def distances_from(self, source: Point3, targets: Sequence[Point3]) -> np.ndarray:
        """Geodesic distances from one source to many targets."""
        m = len(self.obs_lo)
        s = np.array(source.as_tuple())
        pts = np.empty((len(targets), 3), dtype=float)
        for i, t in enumerate(targets):
            pts[i] = t.as_tuple()
        out = np.abs(pts - s).sum(axis=1)
        if m == 0 or len(targets) == 0:
            return out
        blo = np.minimum(pts, s)
        bhi = np.maximum(pts, s)
        overlap = ((self.obs_lo[:, None, :] < bhi[None, :, :])
                   & (self.obs_hi[:, None, :] > blo[None, :, :])).all(axis=2)
        for i in np.nonzero(overlap.any(axis=0))[0]:
            out[i] = self.distance(source, targets[i])
        return out

    # -- internals ---------------------------------------------------------

    def _overlapping(self, blo: np.ndarray, bhi: np.ndarray) -> np.ndarray:
        """Obstacles whose open interior meets the closed box [blo, bhi]."""
        mask = ((self.obs_lo < bhi) & (self.obs_hi > blo)).all(axis=1)
        return np.nonzero(mask)[0]

    def _sigma(self, s: np.ndarray, t: np.ndarray) -> float:
        l1 = float(np.abs(s - t).sum())
        blo = np.minimum(s, t)
        bhi = np.maximum(s, t)
        over = self._overlapping(blo, bhi)
        if len(over) == 0:
            return l1
        if self._monotone_clear(s, t, over):
            return l1
        d1 = self._grid_sigma(s, t, over)
        detours = self._min_detours(s, t)
        keep = np.nonzero(detours <= d1 + 1e-12)[0]
        if not np.setdiff1d(keep, over, assume_unique=False).size:
            return max(d1, l1)
        d2 = self._grid_sigma(s, t, keep)
        if not np.isfinite(d2):
            raise RuntimeError("geodesic query found no route; free space "
                               "amid disjoint bounded boxes is connected")
        return max(d2, l1)

    def _min_detours(self, s: np.ndarray, t: np.ndarray) -> np.ndarray:
        """Per obstacle, the least L1 length of any s->t route touching it."""
        u = np.minimum(s, t)
        v = np.maximum(s, t)
        pen = 2.0 * np.maximum(0.0, np.maximum(u - self.obs_hi, self.obs_lo - v))
        return (v - u).sum() + pen.sum(axis=1)

    def _monotone_clear(self, s: np.ndarray, t: np.ndarray, over: np.ndarray) -> bool:
        """Whether a monotone staircase from s to t avoids all obstacle interiors.

        Works on the grid cut by the overlapping obstacles' faces clipped to
        the box of s and t; any monotone avoiding path can be slid onto it.
        """
        flip = s > t
        sgn = np.where(flip, -1.0, 1.0)
        a = s * sgn
        b = t * sgn
        lo = np.where(flip, -self.obs_hi[over], self.obs_lo[over])
        hi = np.where(flip, -self.obs_lo[over], self.obs_hi[over])
        cuts = []
        for axis in range(3):
            vals = np.concatenate([[a[axis], b[axis]],
                                   np.clip(lo[:, axis], a[axis], b[axis]),
                                   np.clip(hi[:, axis], a[axis], b[axis])])
            cuts.append(np.unique(vals))
        valid, links = _grid_links(tuple(cuts), lo, hi, self.node_cap)
        reach = np.zeros(valid.shape, dtype=bool)
        if not valid[0, 0, 0]:
            return False
        reach[0, 0, 0] = True
        while True:
            grew = reach.copy()
            grew[1:, :, :] |= reach[:-1, :, :] & links[0]
            grew[:, 1:, :] |= reach[:, :-1, :] & links[1]
            grew[:, :, 1:] |= reach[:, :, :-1] & links[2]
            if grew[-1, -1, -1]:
                return True
            if np.array_equal(grew, reach):
                return False
            reach = grew

    def _grid_sigma(self, s: np.ndarray, t: np.ndarray, cut_set: np.ndarray) -> float:
        """Dijkstra distance on the grid cut by the given obstacles plus s, t.

        Links are tested against every obstacle, so the result is always the
        length of a genuinely feasible path (an upper bound on the geodesic
        distance; exact once cut_set covers all obstacles an optimal path
        touches).
        """
        cuts = []
        for axis in range(3):
            vals = np.concatenate([[s[axis], t[axis]],
                                   self.obs_lo[cut_set, axis],
                                   self.obs_hi[cut_set, axis]])
            cuts.append(np.unique(vals))
        cuts = tuple(cuts)
        _, links = _grid_links(cuts, self.obs_lo, self.obs_hi, self.node_cap)
        graph = _grid_csr(cuts, links)
        ny, nz = len(cuts[1]), len(cuts[2])

        def node_id(pt: np.ndarray) -> int:
            idx = [int(np.searchsorted(cuts[axis], pt[axis])) for axis in range(3)]
            return (idx[0] * ny + idx[1]) * nz + idx[2]

        dist = dijkstra(graph, directed=False, indices=node_id(s))
        return float(dist[node_id(t)])


@lru_cache(maxsize=4)
def _solver_for(env: Environment) -> GeodesicSolver:
    return GeodesicSolver(env)


def geodesic_distance(env: Environment, p: Point3, q: Point3) -> float:
    """L1 geodesic distance between two points outside obstacle interiors."""
    for box in env.obstacles:
        if box.contains_interior(p) or box.contains_interior(q):
            raise ValueError("query points must lie outside obstacle interiors")
    return _solver_for(env).distance(p, q)


def oracle_fine_grid_distance(env: Environment, p: Point3, q: Point3,
                              resolution: float,
                              node_cap: int = DEFAULT_NODE_CAP) -> float:
    """Validation oracle: shortest-path distance over a uniform lattice.

    The lattice consists of all integer multiples of ``resolution`` covering
    the instance bounding box padded by the largest obstacle extent, plus the
    coordinate planes of p and q so both are lattice nodes.  Nodes inside
    obstacle interiors are dropped and 6-neighbor links crossing an interior
    are dropped, so every lattice path is feasible and the result is always
    an upper bound on the true geodesic distance; halving the resolution
    refines the lattice, so the bound is non-increasing.
    """
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    corners: list[tuple[float, float, float]] = [p.as_tuple(), q.as_tuple()]
    corners += [pt.as_tuple() for pt in env.points]
    for box in env.obstacles:
        corners.append(box.lo.as_tuple())
        corners.append(box.hi.as_tuple())
    arr = np.array(corners)
    pad = max((max(box.sides()) for box in env.obstacles), default=0.0)
    lo_bound = arr.min(axis=0) - pad
    hi_bound = arr.max(axis=0) + pad

    axis_values = []
    for axis in range(3):
        k0 = int(np.ceil(lo_bound[axis] / resolution))
        k1 = int(np.floor(hi_bound[axis] / resolution))
        vals = np.arange(k0, k1 + 1, dtype=float) * resolution
        vals = np.unique(np.concatenate([vals, [p.coord(axis), q.coord(axis)]]))
        axis_values.append(vals)
    vx, vy, vz = axis_values
    n_nodes = len(vx) * len(vy) * len(vz)
    if n_nodes > node_cap:
        raise GridTooLargeError(f"lattice needs {n_nodes} nodes, cap is {node_cap}")

    open_node = np.ones((len(vx), len(vy), len(vz)), dtype=bool)
    for box in env.obstacles:
        mx = (vx > box.lo.x) & (vx < box.hi.x)
        my = (vy > box.lo.y) & (vy < box.hi.y)
        mz = (vz > box.lo.z) & (vz < box.hi.z)
        open_node[np.ix_(mx, my, mz)] = False

    def link_open(axis: int) -> np.ndarray:
        vals = axis_values[axis]
        shape = [len(vx), len(vy), len(vz)]
        shape[axis] -= 1
        ok = np.ones(shape, dtype=bool)
        for box in env.obstacles:
            lo_t = (box.lo.x, box.lo.y, box.lo.z)
            hi_t = (box.hi.x, box.hi.y, box.hi.z)
            crossing = (vals[:-1] < hi_t[axis]) & (vals[1:] > lo_t[axis])
            masks = []
            for other in range(3):
                if other == axis:
                    masks.append(crossing)
                else:
                    ov = axis_values[other]
                    masks.append((ov > lo_t[other]) & (ov < hi_t[other]))
            ok[np.ix_(*masks)] = False
        head = [slice(None)] * 3
        head[axis] = slice(None, -1)
        tail = [slice(None)] * 3
        tail[axis] = slice(1, None)
        return ok & open_node[tuple(head)] & open_node[tuple(tail)]

    links = [link_open(axis) for axis in range(3)]
    graph = _grid_csr((vx, vy, vz), links)
    ny, nz = len(vy), len(vz)

    def node_id(pt: Point3) -> int:
        idx = [int(np.searchsorted(axis_values[axis], pt.coord(axis))) for axis in range(3)]
        return (idx[0] * ny + idx[1]) * nz + idx[2]

    dist = dijkstra(graph, directed=False, indices=node_id(p))
    d = float(dist[node_id(q)])
    if not np.isfinite(d):
        raise RuntimeError("oracle lattice found no route; increase padding or resolution")
    return d
