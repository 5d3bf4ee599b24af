"""Gift-wrapping hull oracle over every opaque pixel corner.

Deliberately different from the implementation under test: candidate set is
all four corners of every opaque pixel (not just row extremes), and the
hull is marched Jarvis-style with numpy doing each angular scan. Integer
corner coordinates keep every comparison exact at these sizes.
"""

from __future__ import annotations

import numpy as np


def opaque_corners(mask) -> np.ndarray:
    corners = set()
    for row, line in enumerate(mask):
        for col, alpha in enumerate(line):
            if alpha > 0:
                corners.update(((col, row), (col + 1, row),
                                (col, row + 1), (col + 1, row + 1)))
    if not corners:
        return np.zeros((0, 2))
    return np.array(sorted(corners), dtype=float)


def gift_wrap(points: np.ndarray) -> tuple:
    if len(points) == 0:
        return ()
    if len(points) == 1:
        return (tuple(points[0]),)
    order = np.lexsort((points[:, 1], points[:, 0]))
    start = points[order[0]]
    ring = [start]
    heading = np.array([0.0, -1.0])  # supporting direction at the start vertex
    for _ in range(len(points) + 1):
        p = ring[-1]
        rel = points - p
        others = np.any(rel != 0.0, axis=1)
        rel = rel[others]
        spin = heading[0] * rel[:, 1] - heading[1] * rel[:, 0]
        along = heading[0] * rel[:, 0] + heading[1] * rel[:, 1]
        angle = np.arctan2(spin, along)
        angle[angle <= 0.0] += 2.0 * np.pi  # straight-back points come last
        dist2 = rel[:, 0] ** 2 + rel[:, 1] ** 2
        pick = np.lexsort((-dist2, angle))[0]
        nxt = p + rel[pick]
        if np.array_equal(nxt, start):
            break
        ring.append(nxt)
        heading = rel[pick]
    else:
        raise AssertionError("gift wrap failed to close the ring")
    verts = [(float(x), float(y)) for x, y in ring]
    if _signed_area(verts) < 0.0:
        verts = [verts[0]] + verts[:0:-1]
    smallest = verts.index(min(verts))
    return tuple(verts[smallest:] + verts[:smallest])


def _signed_area(verts) -> float:
    total = 0.0
    for i, (x1, y1) in enumerate(verts):
        x2, y2 = verts[(i + 1) % len(verts)]
        total += x1 * y2 - x2 * y1
    return total / 2.0


def oracle_hull(mask) -> tuple:
    return gift_wrap(opaque_corners(mask))
