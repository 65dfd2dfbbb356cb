"""Independent reference implementations used to check the package.

Everything here is written from first principles with different formulas than
the library (clamp-based point distances, dense sampling plus ternary-search
refinement, exhaustive permutation search) so agreement is meaningful.
"""

from __future__ import annotations

import itertools
import math


def point_circle_clearance(px, py, cx, cy, r):
    return max(0.0, math.hypot(px - cx, py - cy) - r)


def point_rect_clearance(px, py, xmin, ymin, xmax, ymax):
    # clamp formula: distance from the point to the nearest point of the box
    dx = max(xmin - px, 0.0, px - xmax)
    dy = max(ymin - py, 0.0, py - ymax)
    return math.hypot(dx, dy)


def segment_clearance(ax, ay, bx, by, point_fn, samples=512, refine=200):
    """Min over the segment of a pointwise clearance function.

    point_fn(t) with t in [0, 1] must be convex along the segment, which holds
    for distance to any convex region. Dense sampling locates the basin and
    ternary search refines it far below 1e-9.
    """

    def f(t):
        return point_fn(ax + t * (bx - ax), ay + t * (by - ay))

    ts = [k / (samples - 1) for k in range(samples)]
    vals = [f(t) for t in ts]
    k = min(range(samples), key=vals.__getitem__)
    lo = ts[k - 1] if k > 0 else 0.0
    hi = ts[k + 1] if k < samples - 1 else 1.0
    for _ in range(refine):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if f(m1) <= f(m2):
            hi = m2
        else:
            lo = m1
    return min(vals[k], f((lo + hi) / 2.0))


def seg_circle_clearance(ax, ay, bx, by, cx, cy, r):
    return segment_clearance(
        ax, ay, bx, by, lambda px, py: point_circle_clearance(px, py, cx, cy, r))


def seg_rect_clearance(ax, ay, bx, by, xmin, ymin, xmax, ymax):
    return segment_clearance(
        ax, ay, bx, by,
        lambda px, py: point_rect_clearance(px, py, xmin, ymin, xmax, ymax))


def polyline_cost(points, lam, gam):
    """Energy of a polyline from scratch: lam per metre plus gam per degree of
    heading change at interior vertices."""
    dist = 0.0
    turn = 0.0
    for k in range(len(points) - 1):
        (x0, y0), (x1, y1) = points[k], points[k + 1]
        dist += math.hypot(x1 - x0, y1 - y0)
    for k in range(1, len(points) - 1):
        (x0, y0), (x1, y1), (x2, y2) = points[k - 1], points[k], points[k + 1]
        ux, uy = x1 - x0, y1 - y0
        vx, vy = x2 - x1, y2 - y1
        ang = math.atan2(abs(ux * vy - uy * vx), ux * vx + uy * vy)
        turn += math.degrees(ang)
    return lam * dist + gam * turn


def best_closed_tour(coords, home_xy, lam, gam):
    """Exhaustive optimum over all closed tours home -> perm(coords) -> home.

    Returns (best_cost, best_order) where best_order is a tuple of indices
    into coords. Ties resolve to the lexicographically smallest order.
    """
    n = len(coords)
    best = (math.inf, None)
    for perm in itertools.permutations(range(n)):
        pts = [home_xy] + [coords[k] for k in perm] + [home_xy]
        c = polyline_cost(pts, lam, gam)
        if c < best[0]:
            best = (c, perm)
    return best
