"""Pure-Python context renderer, rule for rule the same as the C++ one.

Used on the training side so dataset images can be checked byte for byte
against the primary renderer.
"""

from __future__ import annotations

import math

import numpy as np

SIZE = 96
CENTRE = SIZE // 2
RADIUS = CENTRE - 1.0
RED, GREEN, BLUE = 0, 1, 2


def candidate_lists(coords, k: int):
    pts = np.asarray(coords, dtype=np.float64)
    n = len(pts)
    k = min(k, n - 1)
    out = []
    for i in range(n):
        # numpy.hypot calls the C library hypot, like the C++ costs.
        d = np.hypot(pts[i, 0] - pts[:, 0], pts[i, 1] - pts[:, 1])
        others = [j for j in range(n) if j != i]
        others.sort(key=lambda j: (d[j], j))
        out.append(others[:k])
    return out


def local_view(cls, i: int, j: int):
    return sorted({i, j, *cls[i], *cls[j]})


def project(coords, view, i: int, j: int):
    pts = np.asarray(coords, dtype=np.float64)
    cx = 0.5 * (pts[i, 0] + pts[j, 0])
    cy = 0.5 * (pts[i, 1] + pts[j, 1])
    reach = 0.0
    for v in view:
        reach = max(reach, float(np.hypot(pts[v, 0] - cx, pts[v, 1] - cy)))
    scale = RADIUS / reach if reach > 0.0 else 0.0
    anchors = {}
    for v in view:
        px = math.floor(CENTRE + (pts[v, 0] - cx) * scale)
        py = math.floor(CENTRE + (pts[v, 1] - cy) * scale)
        anchors[v] = (min(max(px, 0), SIZE - 1), min(max(py, 0), SIZE - 1))
    return anchors


def bresenham(a, b):
    (x0, y0), (x1, y1) = a, b
    dx, dy = abs(x1 - x0), -abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx + dy
    out = []
    while True:
        out.append((x0, y0))
        if (x0, y0) == (x1, y1):
            return out
        e2 = 2 * err
        if e2 >= dy:
            err += dy
            x0 += sx
        if e2 <= dx:
            err += dx
            y0 += sy


def _plot(img, c, x, y):
    if 0 <= x < SIZE and 0 <= y < SIZE:
        img[c, y, x] = 1.0


def _mark(img, c, p, side):
    r = side // 2
    for dy in range(-r, r + 1):
        for dx in range(-r, r + 1):
            _plot(img, c, p[0] + dx, p[1] + dy)


def render(coords, i: int, j: int, drawn=(), k: int = 30, mark: int = 3) -> np.ndarray:
    cls = candidate_lists(coords, k)
    view = local_view(cls, i, j)
    anchors = project(coords, view, i, j)
    img = np.zeros((3, SIZE, SIZE), dtype=np.float32)
    for v in view:
        _mark(img, RED, anchors[v], mark)
    for x, y in bresenham(anchors[i], anchors[j]):
        _plot(img, GREEN, x, y)
    _mark(img, GREEN, anchors[i], mark)
    _mark(img, GREEN, anchors[j], mark)
    for u, v in drawn:
        if u in anchors and v in anchors:
            for x, y in bresenham(anchors[min(u, v)], anchors[max(u, v)]):
                _plot(img, BLUE, x, y)
    return img
