"""Hull transforms and separating-axis contact tests.

Stage coordinates are centered: +x right, +y up; look pixel rows grow
downward, so the local-to-stage map flips y. Directions are degrees
clockwise from straight up, matching the motion bricks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .hull import ConvexHull


@dataclass(frozen=True)
class Contact:
    body_a: int
    body_b: int
    normal: tuple[float, float]  # unit, pointing from a into b
    penetration: float


def transform_hull(hull: ConvexHull, width: float, height: float, x: float,
                   y: float, direction: float, scale: float) -> tuple:
    """Corner coordinates -> stage coordinates for one placed object."""
    theta = math.radians(direction)
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    out = []
    for hx, hy in hull.vertices:
        lx = (hx - width / 2.0) * scale
        ly = (height / 2.0 - hy) * scale
        out.append((x + lx * cos_t + ly * sin_t,
                    y - lx * sin_t + ly * cos_t))
    return tuple(out)


def polygon_aabb(points) -> tuple[float, float, float, float]:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return min(xs), min(ys), max(xs), max(ys)


def _axes(points) -> list[tuple[float, float]]:
    axes = []
    seen = set()
    count = len(points)
    for i in range(count):
        x1, y1 = points[i]
        x2, y2 = points[(i + 1) % count]
        nx, ny = y2 - y1, x1 - x2  # edge normal, orientation-agnostic
        length = math.hypot(nx, ny)
        if length == 0.0:
            continue
        nx, ny = nx / length, ny / length
        if nx < 0.0 or (nx == 0.0 and ny < 0.0):
            nx, ny = -nx, -ny  # canonical sign so duplicates dedupe
        key = (round(nx, 12), round(ny, 12))
        if key not in seen:
            seen.add(key)
            axes.append((nx, ny))
    return axes


def _project(points, axis) -> tuple[float, float]:
    dots = [p[0] * axis[0] + p[1] * axis[1] for p in points]
    return min(dots), max(dots)


def sat_collide(points_a, points_b) -> tuple[tuple[float, float], float] | None:
    """Overlap test; returns (normal from a into b, penetration) or None."""
    if len(points_a) < 3 or len(points_b) < 3:
        return None
    best_axis = None
    best_overlap = math.inf
    for axis in _axes(points_a) + _axes(points_b):
        min_a, max_a = _project(points_a, axis)
        min_b, max_b = _project(points_b, axis)
        overlap = min(max_a, max_b) - max(min_a, min_b)
        if overlap <= 0.0:
            return None
        if overlap < best_overlap:
            best_overlap = overlap
            best_axis = axis
    ca = (sum(p[0] for p in points_a) / len(points_a),
          sum(p[1] for p in points_a) / len(points_a))
    cb = (sum(p[0] for p in points_b) / len(points_b),
          sum(p[1] for p in points_b) / len(points_b))
    toward = (cb[0] - ca[0]) * best_axis[0] + (cb[1] - ca[1]) * best_axis[1]
    normal = best_axis if toward >= 0.0 else (-best_axis[0], -best_axis[1])
    return normal, best_overlap


def hull_contains_point(points, px: float, py: float) -> bool:
    """Convex polygon containment, boundary inclusive, any winding."""
    count = len(points)
    if count == 0:
        return False
    if count == 1:
        return (px, py) == points[0]
    sign = 0
    for i in range(count):
        x1, y1 = points[i]
        x2, y2 = points[(i + 1) % count]
        cross = (x2 - x1) * (py - y1) - (y2 - y1) * (px - x1)
        if cross == 0.0:
            continue
        this = 1 if cross > 0.0 else -1
        if sign == 0:
            sign = this
        elif this != sign:
            return False
    return True
