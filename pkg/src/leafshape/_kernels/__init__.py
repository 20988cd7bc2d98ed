"""Hot per-pixel kernels with a compiled core and a numpy fallback.

The compiled extension ``_core`` is used when it imports; otherwise the
pure-Python ``_fallback`` module is selected. Set ``LEAFSHAPE_BACKEND=python``
to force the fallback (useful for benchmarking and for debugging).
"""
import os

import numpy as np

from . import _fallback

try:
    from . import _core
except ImportError:  # extension not built
    _core = None

_forced = os.environ.get("LEAFSHAPE_BACKEND", "").strip().lower()
if _core is not None and _forced not in ("python", "fallback"):
    _impl = _core
    BACKEND = "compiled"
else:
    _impl = _fallback
    BACKEND = "python"

AVAILABLE = {"python": _fallback}
if _core is not None:
    AVAILABLE["compiled"] = _core



def _as_mask(mask):
    return np.ascontiguousarray(mask, dtype=np.uint8)


def largest_component(mask, backend=None):
    return (backend or _impl).largest_component(_as_mask(mask)).astype(bool)


def moore_trace(mask, backend=None):
    return (backend or _impl).moore_trace(_as_mask(mask))


def raw_moments(mask, order, backend=None):
    h, w = np.shape(mask)
    # moments are accumulated exactly in int64
    if h * w * max(h, w) ** order >= 2**63:
        raise ValueError("image too large for exact integer moments of this order")
    return (backend or _impl).raw_moments(_as_mask(mask), int(order))


def zernike_sums(mask, cx, cy, rmax, coeffs, reps, backend=None):
    return (backend or _impl).zernike_sums(
        _as_mask(mask), float(cx), float(cy), float(rmax),
        np.ascontiguousarray(coeffs, dtype=np.float64),
        np.ascontiguousarray(reps, dtype=np.int64),
    )


def polar_sample(mask, cx, cy, rmax, n_radial, n_angular, backend=None):
    return (backend or _impl).polar_sample(
        _as_mask(mask), float(cx), float(cy), float(rmax), int(n_radial), int(n_angular)
    )


def pf2_corner(grid, m, n, backend=None):
    return (backend or _impl).pf2_corner(np.ascontiguousarray(grid, dtype=np.float64), int(m), int(n))
