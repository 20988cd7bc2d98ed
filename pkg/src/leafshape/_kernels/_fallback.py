"""Pure-Python/numpy implementations of the per-pixel kernels.

Every function here has a twin with the same signature in the compiled
``_core`` extension. Inputs are C-contiguous ``uint8`` masks (0/1) and
float64 arrays; the dispatcher in ``leafshape._kernels`` is responsible for
coercion.
"""
import numpy as np
from scipy import ndimage

# clockwise on screen (y grows downward), starting west
DIRECTIONS = ((-1, 0), (-1, -1), (0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1))


def _backtrack_table():
    table = []
    for d in range(8):
        px, py = DIRECTIONS[(d - 1) % 8]
        cx, cy = DIRECTIONS[d]
        table.append(DIRECTIONS.index((px - cx, py - cy)))
    return tuple(table)


BACKTRACK = _backtrack_table()

_EIGHT = np.ones((3, 3), dtype=bool)


def largest_component(mask):
    labels, count = ndimage.label(mask, structure=_EIGHT)
    if count == 0:
        return np.zeros_like(mask)
    flat = labels.ravel()
    sizes = np.bincount(flat)
    sizes[0] = 0
    labels_seen, index = np.unique(flat, return_index=True)
    first = np.zeros(count + 1, dtype=np.int64)
    first[labels_seen] = index
    best = max(range(1, count + 1), key=lambda k: (sizes[k], -first[k]))
    return (labels == best).astype(np.uint8)


def moore_trace(mask):
    height, width = mask.shape
    nz = np.flatnonzero(mask)
    if nz.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    sy, sx = divmod(int(nz[0]), width)

    def fg(x, y):
        return 0 <= x < width and 0 <= y < height and mask[y, x]

    start = (sx, sy)
    px, py = start
    back = 0
    first = None
    points = []
    limit = 4 * int(nz.size) + 8
    while len(points) <= limit:
        nxt = None
        for k in range(1, 9):
            d = (back + k) % 8
            dx, dy = DIRECTIONS[d]
            if fg(px + dx, py + dy):
                nxt = (px + dx, py + dy)
                nback = BACKTRACK[d]
                break
        if nxt is None:
            return np.array([start], dtype=np.int64)
        if (px, py) == start and first is not None and nxt == first:
            break
        if first is None:
            first = nxt
        points.append((px, py))
        (px, py), back = nxt, nback
    return np.array(points, dtype=np.int64)


def raw_moments(mask, order):
    height, width = mask.shape
    xs = np.arange(width, dtype=np.int64)
    ys = np.arange(height, dtype=np.int64)
    m = mask.astype(np.int64)
    out = np.zeros((order + 1, order + 1), dtype=np.int64)
    for i in range(order + 1):
        rows = m @ xs**i
        for j in range(order + 1 - i):
            out[i, j] = int(rows @ ys**j)
    return out


def zernike_sums(mask, cx, cy, rmax, coeffs, reps):
    """Unnormalized sums of R_nm(rho) * exp(-j m theta) over in-disk pixels.

    ``coeffs[p, e]`` is the coefficient of rho**e in the radial polynomial of
    pair ``p``; ``reps[p]`` is its repetition m.
    """
    ys, xs = np.nonzero(mask)
    px = (xs - cx) / rmax
    py = (ys - cy) / rmax
    rho2 = px * px + py * py
    keep = rho2 <= 1.0
    px, py, rho2 = px[keep], py[keep], rho2[keep]
    rho = np.sqrt(rho2)
    with np.errstate(invalid="ignore", divide="ignore"):
        unit = np.where(rho > 0, (px - 1j * py) / rho, 1.0 + 0j)
    powers = rho[None, :] ** np.arange(coeffs.shape[1])[:, None]
    radial = coeffs @ powers
    out = np.empty(len(reps), dtype=np.complex128)
    for p, m in enumerate(reps):
        out[p] = np.sum(radial[p] * unit**m)
    return out


def polar_sample(mask, cx, cy, rmax, n_radial, n_angular):
    height, width = mask.shape
    r = (np.arange(n_radial) + 0.5) * (rmax / n_radial)
    theta = np.arange(n_angular) * (2.0 * np.pi / n_angular)
    x = np.floor(cx + r[:, None] * np.cos(theta)[None, :] + 0.5).astype(np.int64)
    y = np.floor(cy + r[:, None] * np.sin(theta)[None, :] + 0.5).astype(np.int64)
    inside = (x >= 0) & (x < width) & (y >= 0) & (y < height)
    out = np.zeros((n_radial, n_angular), dtype=np.float64)
    out[inside] = mask[y[inside], x[inside]]
    return out


def pf2_corner(grid, m, n):
    n_radial, n_angular = grid.shape
    # reduce the exponent mod N before scaling so large products stay exact
    radial = np.exp(-2j * np.pi * (np.outer(np.arange(m), np.arange(n_radial)) % n_radial) / n_radial)
    angular = np.exp(-2j * np.pi * (np.outer(np.arange(n_angular), np.arange(n)) % n_angular) / n_angular)
    return radial @ grid @ angular
