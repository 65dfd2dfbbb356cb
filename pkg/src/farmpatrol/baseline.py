"""Back-and-forth reference planner.

Sweeps the waypoint grid row by row (rows run along the longer grid axis),
alternating direction each traversed row like a tractor. Pairs without a
direct clear edge are stitched with the shortest detour through the graph, so
the result may pass through some waypoints more than once; it is costed with
revisits allowed.
"""

from __future__ import annotations

import math

from .energy import EnergyModel, Tour, tour_cost
from .routegraph import RouteGraph, shortest_detour
from .world import WaypointSet


def _serpentine_targets(g: RouteGraph, waypoints: WaypointSet) -> list[int]:
    xs = [p.x for p in waypoints.points]
    ys = [p.y for p in waypoints.points]
    rows_along_x = (max(xs) - min(xs)) >= (max(ys) - min(ys))

    rows: dict[int, list[int]] = {}
    for node, grid in enumerate(g.waypoint_grid_ids):
        r, c = waypoints.row_col(grid)
        rows.setdefault(r if rows_along_x else c, []).append(node)

    def along(node):
        p = g.point(node)
        return p.x if rows_along_x else p.y

    def across(key):
        nodes = rows[key]
        p = g.point(nodes[0])
        return p.y if rows_along_x else p.x

    home = g.point(g.home)
    home_across = home.y if rows_along_x else home.x
    keys = sorted(rows, key=across)
    # sweep starts at whichever extreme row lies nearer to home
    if abs(across(keys[-1]) - home_across) < abs(across(keys[0]) - home_across):
        keys.reverse()

    order: list[int] = []
    forward = True
    for idx, key in enumerate(keys):
        line = sorted(rows[key], key=along)
        if idx == 0:
            # enter the first row at the end nearest home
            d_first = math.dist((home.x, home.y), (g.point(line[0]).x, g.point(line[0]).y))
            d_last = math.dist((home.x, home.y), (g.point(line[-1]).x, g.point(line[-1]).y))
            forward = d_first <= d_last
        if not forward:
            line.reverse()
        order.extend(line)
        forward = not forward
    return order


def plan_back_and_forth(g: RouteGraph, model: EnergyModel,
                        waypoints: WaypointSet) -> Tour:
    """Deterministic serpentine coverage tour from home back to home."""
    if g.n_waypoints == 0:
        raise ValueError("graph has no waypoints to cover")
    targets = _serpentine_targets(g, waypoints)
    walk = [g.home]
    for t in targets + [g.home]:
        if g.adj[walk[-1], t]:
            walk.append(t)
        else:
            walk.extend(shortest_detour(g, walk[-1], t)[1:])
    return tour_cost(g, model, walk, allow_revisits=True)
