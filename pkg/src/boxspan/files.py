"""JSON interchange formats for instances, graphs, and reports.

Instance files: ``{"points": [[x,y,z], ...], "obstacles": [{"lo": [...],
"hi": [...]}, ...]}``.  Graph files: ``{"n": int, "edges": [[i, j, weight],
...], "metric": "L1-geodesic"}`` with ``i < j``.  All writes are atomic
(temp file + rename).
"""

from __future__ import annotations

import json
import os
import tempfile
from typing import Any

from .geometry import AxisBox, Environment, Point3
from .spanner import SpannerGraph

GRAPH_METRIC = "L1-geodesic"


class FormatError(ValueError):
    """A file does not match the expected schema."""


def write_json_atomic(path: str, payload: Any) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _triple(value: Any, what: str) -> tuple[float, float, float]:
    if (not isinstance(value, list) or len(value) != 3
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)):
        raise FormatError(f"{what} must be a list of 3 numbers, got {value!r}")
    return (float(value[0]), float(value[1]), float(value[2]))


def save_instance(path: str, env: Environment) -> None:
    payload = {
        "points": [[p.x, p.y, p.z] for p in env.points],
        "obstacles": [{"lo": [b.lo.x, b.lo.y, b.lo.z], "hi": [b.hi.x, b.hi.y, b.hi.z]}
                      for b in env.obstacles],
    }
    write_json_atomic(path, payload)


def load_instance(path: str) -> Environment:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "points" not in data:
        raise FormatError("instance file must be an object with a 'points' field")
    try:
        points = [Point3(*_triple(p, "point")) for p in data["points"]]
        obstacles = []
        for entry in data.get("obstacles", []):
            if not isinstance(entry, dict) or "lo" not in entry or "hi" not in entry:
                raise FormatError("each obstacle needs 'lo' and 'hi' corners")
            obstacles.append(AxisBox(Point3(*_triple(entry["lo"], "obstacle corner")),
                                     Point3(*_triple(entry["hi"], "obstacle corner"))))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    return Environment(obstacles, points)


def save_graph(path: str, graph: SpannerGraph) -> None:
    payload = {
        "n": graph.n,
        "edges": [[i, j, w] for (i, j, w) in graph.edge_list()],
        "metric": GRAPH_METRIC,
    }
    write_json_atomic(path, payload)


def load_graph(path: str) -> SpannerGraph:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or not isinstance(data.get("n"), int):
        raise FormatError("graph file must be an object with an integer 'n'")
    n = data["n"]
    graph = SpannerGraph(n=n)
    for entry in data.get("edges", []):
        if not isinstance(entry, list) or len(entry) != 3:
            raise FormatError(f"edge must be [i, j, weight], got {entry!r}")
        i, j, w = entry
        if not isinstance(i, int) or not isinstance(j, int):
            raise FormatError(f"edge endpoints must be integers, got {entry!r}")
        if not 0 <= i < j < n:
            raise FormatError(f"edge ({i},{j}) out of range or not i < j for n={n}")
        w = float(w)
        if not w > 0:
            raise FormatError(f"edge ({i},{j}) must have positive weight, got {w}")
        if (i, j) in graph.edges:
            raise FormatError(f"duplicate edge ({i},{j})")
        graph.edges[(i, j)] = w
    return graph
