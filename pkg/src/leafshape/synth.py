"""Parametric silhouette families and a scanline polygon rasterizer.

Used to build a deterministic labeled benchmark in place of a private leaf
collection, and by the test-suite for invariance checks on ideal shapes.
"""
from dataclasses import dataclass, field

import numpy as np

FAMILIES = ("ellipse", "rounded_rect", "star", "lobed")


@dataclass(frozen=True)
class ShapeSpec:
    """Class-defining parameters of one silhouette family member.

    ``size`` is the nominal outer radius in pixels before instance scaling.
    """

    family: str
    params: dict = field(default_factory=dict)
    size: float = 100.0


def outline(spec, n_vertices=1024):
    """Closed polygon (no repeated endpoint) centered on the origin, ``(N, 2)``."""
    p = spec.params
    s = spec.size
    t = np.linspace(0.0, 2.0 * np.pi, n_vertices, endpoint=False)
    if spec.family == "ellipse":
        return np.column_stack([s * np.cos(t), s * p.get("aspect", 0.6) * np.sin(t)])
    if spec.family == "rounded_rect":
        return _rounded_rect(s, s * p.get("aspect", 0.6), s * p.get("corner", 0.2), n_vertices)
    if spec.family == "star":
        k = int(p.get("points", 5))
        inner = p.get("inner", 0.45)
        ang = np.arange(2 * k) * (np.pi / k) - np.pi / 2
        rad = np.where(np.arange(2 * k) % 2 == 0, s, s * inner)
        return np.column_stack([rad * np.cos(ang), rad * np.sin(ang)])
    if spec.family == "lobed":
        k = int(p.get("lobes", 3))
        depth = p.get("depth", 0.25)
        r = 1.0 + depth * np.cos(k * t)
        r = s * r / r.max()
        return np.column_stack([r * np.cos(t), p.get("aspect", 0.7) * r * np.sin(t)])
    raise ValueError(f"unknown family {spec.family!r}")


def _rounded_rect(half_w, half_h, corner, n_vertices):
    corner = min(corner, half_w, half_h)
    per = max(n_vertices // 4, 2)
    pts = []
    centers = [
        (half_w - corner, half_h - corner, 0.0),
        (-(half_w - corner), half_h - corner, 0.5 * np.pi),
        (-(half_w - corner), -(half_h - corner), np.pi),
        (half_w - corner, -(half_h - corner), 1.5 * np.pi),
    ]
    for cx, cy, a0 in centers:
        a = a0 + np.linspace(0.0, 0.5 * np.pi, per)
        pts.append(np.column_stack([cx + corner * np.cos(a), cy + corner * np.sin(a)]))
    return np.vstack(pts)


def transform(points, angle=0.0, scale=1.0, offset=(0.0, 0.0)):
    """Rotate by ``angle`` radians, scale, then translate."""
    c, s = np.cos(angle), np.sin(angle)
    rot = np.array([[c, -s], [s, c]])
    return scale * points @ rot.T + np.asarray(offset, dtype=float)


def perturb(points, rng, amplitude=0.02, harmonics=(5, 13)):
    """Smooth radial boundary noise: a few random harmonics of relative ``amplitude``."""
    center = points.mean(axis=0)
    rel = points - center
    theta = np.arctan2(rel[:, 1], rel[:, 0])
    factor = np.ones(len(points))
    for _ in range(3):
        k = rng.integers(harmonics[0], harmonics[1] + 1)
        factor += amplitude * rng.uniform(-1.0, 1.0) * np.cos(k * theta + rng.uniform(0, 2 * np.pi))
    return center + rel * factor[:, None]


def rasterize_polygon(vertices, shape):
    """Boolean mask of pixels whose centers lie inside the polygon (even-odd rule).

    Pixel ``(x, y)`` has its center at integer coordinates ``(x, y)``.
    """
    height, width = shape
    v = np.asarray(vertices, dtype=np.float64)
    x0, y0 = v[:, 0], v[:, 1]
    x1, y1 = np.roll(x0, -1), np.roll(y0, -1)
    mask = np.zeros(shape, dtype=bool)
    lo = max(int(np.floor(v[:, 1].min())), 0)
    hi = min(int(np.ceil(v[:, 1].max())), height - 1)
    if hi < lo:
        return mask
    rows = np.arange(lo, hi + 1, dtype=np.float64)[:, None]
    # half-open rule on y avoids double counting shared vertices
    crosses = (y0 <= rows) != (y1 <= rows)
    with np.errstate(divide="ignore", invalid="ignore"):
        xs = np.where(crosses, x0 + (rows - y0) * (x1 - x0) / (y1 - y0), np.inf)
    xs.sort(axis=1)
    counts = crosses.sum(axis=1)
    for r, (row_x, n) in enumerate(zip(xs, counts)):
        for a, b in zip(row_x[0:n:2], row_x[1:n:2]):
            start = max(int(np.ceil(a)), 0)
            stop = min(int(np.ceil(b)), width)
            if stop > start:
                mask[lo + r, start:stop] = True
    return mask


def disk_mask(radius, shape, center=None):
    """Pixels whose centers lie within ``radius`` of ``center`` (default: image center)."""
    height, width = shape
    if center is None:
        center = ((width - 1) / 2.0, (height - 1) / 2.0)
    yy, xx = np.mgrid[0:height, 0:width]
    return (xx - center[0]) ** 2 + (yy - center[1]) ** 2 <= radius**2


def render(spec, shape=(256, 256), angle=0.0, scale=1.0, offset=None, rng=None,
           noise=0.0, n_vertices=1024):
    """Rasterize one instance of ``spec``; ``offset`` defaults to the image center."""
    pts = outline(spec, n_vertices)
    if noise > 0.0:
        pts = perturb(pts, rng if rng is not None else np.random.default_rng(0), noise)
    if offset is None:
        offset = ((shape[1] - 1) / 2.0, (shape[0] - 1) / 2.0)
    return rasterize_polygon(transform(pts, angle, scale, offset), shape)
