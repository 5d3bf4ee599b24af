"""Tiny PNG builders for fixture looks and tests.

All builders return encoded PNG bytes with an alpha channel; collision
hulls are computed from that alpha channel, so shape is what matters here,
not color.
"""

from __future__ import annotations

import io

from PIL import Image

OPAQUE = 255


def png_from_alpha(alpha_rows: list[list[int]],
                   color: tuple[int, int, int] = (200, 60, 60)) -> bytes:
    """Encode a rectangular alpha grid (row 0 = top) as RGBA PNG bytes."""
    height = len(alpha_rows)
    width = len(alpha_rows[0]) if height else 0
    if width == 0 or height == 0:
        raise ValueError("alpha grid must be at least 1x1")
    img = Image.new("RGBA", (width, height))
    img.putdata([
        (*color, a) for row in alpha_rows for a in row
    ])
    out = io.BytesIO()
    img.save(out, format="PNG")
    return out.getvalue()


def solid_png(width: int, height: int,
              color: tuple[int, int, int] = (40, 90, 200)) -> bytes:
    return png_from_alpha([[OPAQUE] * width for _ in range(height)], color)


def transparent_png(width: int, height: int) -> bytes:
    return png_from_alpha([[0] * width for _ in range(height)])


def dot_png() -> bytes:
    """A single opaque pixel."""
    return png_from_alpha([[OPAQUE]])


def ball_png(diameter: int = 16,
             color: tuple[int, int, int] = (240, 200, 40)) -> bytes:
    """A filled circle inscribed in a diameter x diameter square."""
    r = diameter / 2.0
    rows = []
    for y in range(diameter):
        row = []
        for x in range(diameter):
            dx, dy = x + 0.5 - r, y + 0.5 - r
            row.append(OPAQUE if dx * dx + dy * dy <= r * r else 0)
        rows.append(row)
    return png_from_alpha(rows, color)
