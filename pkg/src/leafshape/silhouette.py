"""Binary silhouettes: thresholding, cleanup, boundary tracing and geometry.

Images are 2-D float arrays with intensities in [0, 1], indexed ``[y, x]``.
Masks are boolean arrays of the same shape. Contours are ``(N, 2)`` integer
arrays of ``(x, y)`` pixel coordinates.
"""
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import AllBackgroundError, DegenerateShapeError
from .moments import raw_moments

DEFAULT_THRESHOLD = 0.5
SQRT2 = np.sqrt(2.0)
PERIMETER_STRIDE = 3


@dataclass(frozen=True)
class ShapeGeometry:
    area: int
    perimeter: float
    centroid: tuple
    r_max: float
    r_min: float
    length_l2: float
    width_l1: float


def as_raster(image):
    """Validate and normalize an image to float intensities in [0, 1].

    8-bit integer input is scaled by 1/255; a trailing channel axis (RGB or
    RGBA) is reduced by averaging the color channels, alpha ignored.
    """
    arr = np.asarray(image)
    if arr.ndim == 3:
        arr = arr[..., :3].astype(np.float64).mean(axis=2) if arr.shape[2] >= 3 else arr[..., 0]
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-D image, got shape {np.shape(image)}")
    if np.issubdtype(np.asarray(image).dtype, np.integer):
        arr = arr.astype(np.float64) / 255.0
    else:
        arr = arr.astype(np.float64)
    if not np.isfinite(arr).all() or arr.min() < 0.0 or arr.max() > 1.0:
        raise ValueError("intensities must lie in [0, 1]")
    return arr


def binarize(image, threshold=DEFAULT_THRESHOLD, foreground_is_dark=True):
    """Fixed-threshold segmentation.

    A pixel is foreground iff ``intensity < threshold`` when
    ``foreground_is_dark``, else iff ``intensity >= threshold``.
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError("threshold must lie in (0, 1)")
    img = as_raster(image)
    mask = img < threshold if foreground_is_dark else img >= threshold
    if not mask.any():
        raise AllBackgroundError(
            f"no pixel passes threshold {threshold} (foreground_is_dark={foreground_is_dark})"
        )
    return mask


def largest_component(mask):
    """Keep only the largest 8-connected component.

    Ties go to the component whose first pixel in row-major order comes first.
    """
    mask = np.asarray(mask, dtype=bool)
    if not mask.any():
        raise AllBackgroundError("mask has no foreground pixel")
    return _kernels.largest_component(mask)


def _twice_signed_area(points):
    x = points[:, 0]
    y = points[:, 1]
    return int(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def trace_contour(mask):
    """Moore-neighbor boundary trace of a single 8-connected component.

    Starts at the first foreground pixel in row-major order and walks
    clockwise as displayed (y axis pointing down). The start pixel is not
    repeated at the end.

    Raises
    ------
    DegenerateShapeError
        For a single pixel, or a component whose closed trace encloses no
        area (a one-pixel-wide line traced out and back).
    """
    mask = np.asarray(mask, dtype=bool)
    if not mask.any():
        raise AllBackgroundError("mask has no foreground pixel")
    points = _kernels.moore_trace(mask)
    if len(points) < 2 or _twice_signed_area(points) == 0:
        raise DegenerateShapeError("component has no closed boundary (single pixel or thin line)")
    return points


def chain_length(contour):
    """Raw path length of a closed 8-connected chain: 1 per axis step, sqrt(2) per diagonal."""
    steps = np.abs(np.diff(contour, axis=0, append=contour[:1]))
    diagonal = np.count_nonzero((steps[:, 0] == 1) & (steps[:, 1] == 1))
    return (len(contour) - diagonal) + SQRT2 * diagonal


def contour_perimeter(contour, stride=PERIMETER_STRIDE):
    """Perimeter estimate of the region outlined by a pixel-center contour.

    Length of the closed polygon through every ``stride``-th contour point,
    plus ``pi`` for the half-pixel outward offset from pixel centers to the
    region edge (offsetting a simple closed curve by ``d`` adds ``2*pi*d``).
    Chords over several steps cancel most of the orientation bias that the
    raw chain length has on straight edges.
    """
    pts = np.asarray(contour, dtype=np.float64)[::stride]
    if len(pts) < 3:
        pts = np.asarray(contour, dtype=np.float64)
    chords = np.diff(pts, axis=0, append=pts[:1])
    return float(np.hypot(chords[:, 0], chords[:, 1]).sum() + np.pi)


def convex_hull(points):
    """Convex hull vertices (counter-clockwise in x/y) by the monotone chain algorithm."""
    pts = sorted(set(map(tuple, np.asarray(points).tolist())))
    if len(pts) <= 2:
        return np.asarray(pts, dtype=np.float64)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.asarray(lower[:-1] + upper[:-1], dtype=np.float64)


def caliper_extents(points):
    """``(width, length)``: minimum caliper width and the extent perpendicular to it.

    The minimum width of a convex polygon is attained with one caliper flush
    against a hull edge, so only hull edge directions are examined.
    """
    hull = convex_hull(points)
    if len(hull) < 3:
        span = np.ptp(hull, axis=0) if len(hull) else np.zeros(2)
        return 0.0, float(np.hypot(*span))
    edges = np.roll(hull, -1, axis=0) - hull
    edges /= np.hypot(edges[:, 0], edges[:, 1])[:, None]
    normals = np.column_stack([-edges[:, 1], edges[:, 0]])
    widths = np.ptp(hull @ normals.T, axis=0)
    best = int(np.argmin(widths))
    return float(widths[best]), float(np.ptp(hull @ edges[best]))


def measure(mask, contour):
    """Area, perimeter, centroid, centroid radii and leaf extents of a silhouette.

    ``width_l1`` is the minimum caliper width of the contour and ``length_l2``
    the extent perpendicular to it, each plus one pixel for the footprint of
    the extreme pixel centers; ``length_l2 >= width_l1`` is enforced by swapping.
    """
    mask = np.asarray(mask, dtype=bool)
    raw = raw_moments(mask)
    m00 = raw[0, 0]
    cx, cy = raw[1, 0] / m00, raw[0, 1] / m00
    pts = np.asarray(contour, dtype=np.float64)
    radii = np.hypot(pts[:, 0] - cx, pts[:, 1] - cy)
    r_max, r_min = float(radii.max()), float(radii.min())
    if r_min <= 0.0:
        raise DegenerateShapeError("centroid lies on the contour")
    width, length = caliper_extents(contour)
    width, length = width + 1.0, length + 1.0
    return ShapeGeometry(
        area=int(m00),
        perimeter=contour_perimeter(contour),
        centroid=(cx, cy),
        r_max=r_max,
        r_min=r_min,
        length_l2=max(width, length),
        width_l1=min(width, length),
    )


def silhouette(image, threshold=DEFAULT_THRESHOLD, foreground_is_dark=True):
    """Binarize, keep the largest component, trace and measure.

    Returns ``(mask, contour, geometry)``.
    """
    mask = largest_component(binarize(image, threshold, foreground_is_dark))
    contour = trace_contour(mask)
    return mask, contour, measure(mask, contour)
