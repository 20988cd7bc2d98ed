"""Small mask builders shared by the test modules."""
import numpy as np

from leafshape import synth

OUTER_RADIUS = 110.0


def _fitted(family, params):
    # rescale so the farthest outline vertex sits OUTER_RADIUS from the center;
    # at 2x the shape then still fits a 512x512 raster with room to translate
    probe = synth.ShapeSpec(family, params, 1.0)
    reach = np.hypot(*synth.outline(probe).T).max()
    return synth.ShapeSpec(family, params, OUTER_RADIUS / reach)


# one ideal member of each family
FAMILY_SPECS = {
    "ellipse": _fitted("ellipse", {"aspect": 0.55}),
    "rounded_rect": _fitted("rounded_rect", {"aspect": 0.6, "corner": 0.2}),
    "star": _fitted("star", {"points": 5, "inner": 0.45}),
    "lobed": _fitted("lobed", {"lobes": 4, "depth": 0.25, "aspect": 0.7}),
}


def square_mask(side, pad=3, origin=None):
    size = side + 2 * pad
    mask = np.zeros((size, size), dtype=bool)
    x0, y0 = origin if origin is not None else (pad, pad)
    mask[y0 : y0 + side, x0 : x0 + side] = True
    return mask


def rect_mask(width, height, pad=4):
    mask = np.zeros((height + 2 * pad, width + 2 * pad), dtype=bool)
    mask[pad : pad + height, pad : pad + width] = True
    return mask


def shifted(mask, dx, dy):
    """Translate a mask by integer ``(dx, dy)`` into a larger canvas."""
    h, w = mask.shape
    out = np.zeros((h + abs(dy) + 1, w + abs(dx) + 1), dtype=bool)
    out[dy : dy + h, dx : dx + w] = mask
    return out


def family_mask(name, angle=0.0, scale=1.0, offset=None, shape=(512, 512)):
    return synth.render(FAMILY_SPECS[name], shape, angle=angle, scale=scale, offset=offset)
