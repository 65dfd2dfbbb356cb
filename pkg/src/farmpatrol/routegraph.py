"""Route graph over valid waypoints plus a home station.

Nodes are integers: waypoints first (in ascending grid index), the home
station last. An edge exists when the straight segment between the two nodes
keeps at least clearance_m distance to every obstacle; pruned pairs can still
be reached through detours, found with :func:`shortest_detour`.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .geometry import Point2D, Segment2D, min_clearance
from .world import FarmMap, WaypointSet


class DisconnectedGraphError(ValueError):
    """Some waypoint cannot be reached from home along clear edges."""

    def __init__(self, message: str, unreachable: tuple[int, ...]):
        super().__init__(message)
        self.unreachable = unreachable


class NodeId(NamedTuple):
    index: int
    kind: str  # "waypoint" or "station"


@dataclass(frozen=True, eq=False, slots=True)
class RouteGraph:
    xy: np.ndarray                     # (n, 2) node coordinates, metres
    adj: np.ndarray                    # (n, n) bool, symmetric, False diagonal
    dist: np.ndarray                   # (n, n) Euclidean lengths for all pairs
    waypoint_grid_ids: tuple[int, ...]  # node i < home -> index into the WaypointSet
    station_index: int                 # which map station is home

    @property
    def n_nodes(self) -> int:
        return self.xy.shape[0]

    @property
    def n_waypoints(self) -> int:
        return len(self.waypoint_grid_ids)

    @property
    def home(self) -> int:
        return self.n_waypoints

    def point(self, node: int) -> Point2D:
        return Point2D(float(self.xy[node, 0]), float(self.xy[node, 1]))

    def node_id(self, node: int) -> NodeId:
        kind = "waypoint" if node < self.n_waypoints else "station"
        return NodeId(node, kind)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i, j])

    def edges(self) -> list[tuple[int, int]]:
        ii, jj = np.nonzero(np.triu(self.adj, 1))
        return list(zip(ii.tolist(), jj.tolist()))


def build_graph(farm: FarmMap, waypoints: WaypointSet, station: int,
                include: Iterable[int] | None = None) -> RouteGraph:
    """Build the flight graph for one drone.

    station indexes farm.stations. include optionally restricts the graph to a
    subset of valid waypoint grid indices (used when the field is split across
    drones); by default every valid waypoint is a node. Raises
    DisconnectedGraphError when any included waypoint is unreachable from home.
    """
    if not 0 <= station < len(farm.stations):
        raise ValueError(f"station index {station} out of range "
                         f"(map has {len(farm.stations)} stations)")
    valid = set(waypoints.valid_indices())
    if include is None:
        grid_ids = sorted(valid)
    else:
        grid_ids = sorted(set(include))
        bad = [g for g in grid_ids if g not in valid]
        if bad:
            raise ValueError(f"include lists non-valid waypoint indices: {bad}")

    pts = [waypoints.points[g] for g in grid_ids] + [farm.stations[station]]
    n = len(pts)
    xy = np.array([[p.x, p.y] for p in pts], dtype=float)
    diff = xy[:, None, :] - xy[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])

    adj = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            if dist[i, j] == 0.0:
                continue  # coincident nodes cannot share a flyable edge
            seg = Segment2D(pts[i], pts[j])
            if all(min_clearance(seg, obs) >= farm.clearance_m for obs in farm.obstacles):
                adj[i, j] = adj[j, i] = True

    home = n - 1
    seen = np.zeros(n, dtype=bool)
    seen[home] = True
    frontier = [home]
    while frontier:
        nxt = np.nonzero(adj[frontier].any(axis=0) & ~seen)[0]
        seen[nxt] = True
        frontier = nxt.tolist()
    if not seen.all():
        missing = [k for k in range(n) if not seen[k]]
        labels = ", ".join(
            f"waypoint {grid_ids[k]} at ({xy[k, 0]:g}, {xy[k, 1]:g})" for k in missing)
        raise DisconnectedGraphError(
            f"graph is disconnected: unreachable from home: {labels}",
            tuple(grid_ids[k] for k in missing))

    xy.setflags(write=False)
    adj.setflags(write=False)
    dist.setflags(write=False)
    return RouteGraph(xy, adj, dist, tuple(grid_ids), station)


def shortest_detour(g: RouteGraph, a: int, b: int) -> list[int]:
    """Minimum-length node path from a to b along graph edges, inclusive.

    Deterministic: distance ties resolve toward lower node indices.
    """
    n = g.n_nodes
    if not (0 <= a < n and 0 <= b < n):
        raise ValueError(f"node out of range: {a}, {b}")
    if a == b:
        return [a]
    best = np.full(n, np.inf)
    best[a] = 0.0
    prev = np.full(n, -1, dtype=int)
    heap = [(0.0, a)]
    done = np.zeros(n, dtype=bool)
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        if u == b:
            break
        done[u] = True
        for v in np.nonzero(g.adj[u])[0]:
            nd = d + g.dist[u, v]
            if nd < best[v]:
                best[v] = nd
                prev[v] = u
                heapq.heappush(heap, (nd, int(v)))
    if not np.isfinite(best[b]):
        raise DisconnectedGraphError(f"no path between nodes {a} and {b}", ())
    path = [b]
    while path[-1] != a:
        path.append(int(prev[path[-1]]))
    path.reverse()
    return path
