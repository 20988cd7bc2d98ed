"""Zernike radial polynomials, complex Zernike moments and magnitude descriptors.

Pixels are mapped onto the unit disk relative to the shape centroid and
scaled by the largest centroid-to-contour distance, so the descriptor is
translation and scale invariant by construction. Magnitudes are rotation
invariant.
"""
from functools import lru_cache
from math import factorial

import numpy as np

from . import _kernels
from .errors import DegenerateShapeError, InvalidIndexError
from .features import DescriptorKind, FeatureVector

DEFAULT_ORDER = 7


def check_index(n, m):
    if n < 0 or abs(m) > n or (n - abs(m)) % 2:
        raise InvalidIndexError(f"invalid Zernike index (n={n}, m={m})")


def zernike_indices(max_order):
    """All ``(n, m)`` with ``0 <= m <= n <= max_order`` and ``n - m`` even, lexicographic."""
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    return [(n, m) for n in range(max_order + 1) for m in range(n + 1) if (n - m) % 2 == 0]


@lru_cache(maxsize=None)
def radial_coefficients(n, m):
    """Exact integer coefficients ``c[e]`` of ``r**e`` in ``R_nm(r)`` (length ``n + 1``)."""
    check_index(n, m)
    m = abs(m)
    coeffs = [0] * (n + 1)
    for s in range((n - m) // 2 + 1):
        num = (-1) ** s * factorial(n - s)
        den = factorial(s) * factorial((n + m) // 2 - s) * factorial((n - m) // 2 - s)
        coeffs[n - 2 * s] = num // den
    return tuple(coeffs)


def radial_polynomial(n, m, r):
    """Zernike radial polynomial ``R_nm`` evaluated at ``r`` (scalar or array) in [0, 1]."""
    coeffs = radial_coefficients(n, m)
    r_arr = np.asarray(r, dtype=np.float64)
    if np.any(r_arr < 0) or np.any(r_arr > 1):
        raise ValueError("r must lie in [0, 1]")
    # Horner, highest power first
    out = np.zeros_like(r_arr)
    for c in reversed(coeffs):
        out = out * r_arr + c
    return float(out) if np.ndim(r) == 0 else out


def _coefficient_table(indices):
    width = max(n for n, _ in indices) + 1
    table = np.zeros((len(indices), width))
    for p, (n, m) in enumerate(indices):
        c = radial_coefficients(n, m)
        table[p, : len(c)] = c
    return table


def zernike_moments(mask, geom, indices):
    """Complex moments ``Z_nm`` for each ``(n, m)`` in ``indices``.

    ``Z_nm = (n + 1)/pi * sum f(p) R_nm(|p|) exp(-j m arg p) / r_max**2`` over
    foreground pixels ``p = (pixel - centroid) / r_max`` inside the unit disk.
    """
    if geom.r_max <= 0:
        raise DegenerateShapeError("r_max is zero")
    for n, m in indices:
        check_index(n, m)
    reps = np.array([abs(m) for _, m in indices], dtype=np.int64)
    cx, cy = geom.centroid
    sums = _kernels.zernike_sums(mask, cx, cy, geom.r_max, _coefficient_table(indices), reps)
    scale = np.array([(n + 1) / np.pi for n, _ in indices]) / geom.r_max**2
    out = sums * scale
    # negative repetitions are the complex conjugates for a real image
    neg = np.array([m < 0 for _, m in indices])
    out[neg] = np.conj(out[neg])
    return out


def zernike_moment(mask, geom, n, m):
    return complex(zernike_moments(mask, geom, [(n, m)])[0])


def zernike_descriptor(mask, geom, max_order=DEFAULT_ORDER):
    """Magnitudes ``|Z_nm|`` for ``m >= 0`` up to ``max_order`` (20 values for order 7)."""
    mags = np.abs(zernike_moments(mask, geom, zernike_indices(max_order)))
    return FeatureVector(DescriptorKind.ZERNIKE, mags)
