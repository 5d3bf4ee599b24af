"""Convex hull of a look's opaque pixels.

The hull is taken over pixel *corners*, not centers: an opaque pixel at
(col, row) contributes the four corners (col, row) .. (col+1, row+1), so a
single opaque pixel already yields a unit square that can collide. Any
alpha above zero counts as opaque. Vertices are corner coordinates
(x = column, y = row), ordered counter-clockwise in that plane and rotated
to start at the lexicographically smallest vertex, which makes hull
comparison plain tuple equality.

``computation_count`` ticks on every hull construction; hulls are meant to
be computed once per look at program start and cached, and tests pin that
by watching the counter across frames.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

from PIL import Image

computation_count = 0


@dataclass(frozen=True)
class ConvexHull:
    vertices: tuple[tuple[float, float], ...]  # CCW, canonical start

    def __bool__(self) -> bool:
        return bool(self.vertices)


def mask_from_png(data: bytes) -> list[list[int]]:
    """Alpha grid (row 0 = top) of a PNG; fully opaque for alpha-less modes."""
    with Image.open(io.BytesIO(data)) as img:
        alpha = img.convert("RGBA").getchannel("A")
        width, height = alpha.size
        flat = alpha.tobytes()
    return [list(flat[row * width:(row + 1) * width]) for row in range(height)]


def _corner_candidates(mask) -> list[tuple[float, float]]:
    # only the row-extreme corners can be hull vertices
    corners = set()
    for row, line in enumerate(mask):
        first = last = None
        for col, alpha in enumerate(line):
            if alpha > 0:
                if first is None:
                    first = col
                last = col
        if first is not None:
            corners.update((
                (float(first), float(row)), (float(first), float(row + 1)),
                (float(last + 1), float(row)), (float(last + 1), float(row + 1)),
            ))
    return sorted(corners)


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def compute_convex_hull(mask) -> ConvexHull:
    """Monotone-chain hull over the opaque corner candidates.

    Collinear points are pruned (strict turns only), so the result is
    strictly convex. An all-transparent mask gives an empty hull.
    """
    global computation_count
    computation_count += 1
    points = _corner_candidates(mask)
    if not points:
        return ConvexHull(())
    if len(points) == 1:
        return ConvexHull((points[0],))
    lower: list = []
    for p in points:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(points):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    ring = lower[:-1] + upper[:-1]
    if len(ring) == 2 and ring[0] == ring[1]:
        ring = ring[:1]
    return ConvexHull(_canonical(ring))


def _canonical(ring: list) -> tuple:
    start = ring.index(min(ring))
    return tuple(ring[start:] + ring[:start])
