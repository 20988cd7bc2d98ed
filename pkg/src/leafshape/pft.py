"""Polar Fourier transform (PF2) shape descriptor.

The silhouette is resampled on a centroid-centered polar grid reaching out
to the farthest contour point, then the low-frequency corner of the 2-D DFT
of that grid is taken. Magnitudes discard the phase (rotation invariance);
dividing by the DC term removes the dependence on grid size and fill.
"""
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DegenerateShapeError, FrequencyOutOfRangeError
from .features import DescriptorKind, FeatureVector

DEFAULT_RADIAL_FREQ = 4
DEFAULT_ANGULAR_FREQ = 6
DEFAULT_POLAR_R = 256
DEFAULT_POLAR_T = 512


@dataclass(frozen=True)
class PolarImage:
    """``samples[k, i]`` is the mask at radius ``(k + 0.5) * r_max / R``, angle ``2 pi i / T``."""

    samples: np.ndarray
    r_max: float

    @property
    def n_radial(self):
        return self.samples.shape[0]

    @property
    def n_angular(self):
        return self.samples.shape[1]


def to_polar(mask, geom, n_radial=DEFAULT_POLAR_R, n_angular=DEFAULT_POLAR_T):
    """Nearest-neighbor polar resampling of ``mask`` about the shape centroid.

    Points falling outside the image sample as background.
    """
    if n_radial < 4 or n_angular < 4:
        raise ValueError("polar grid needs at least 4 radial and 4 angular samples")
    if geom.r_max <= 0:
        raise DegenerateShapeError("r_max is zero")
    cx, cy = geom.centroid
    samples = _kernels.polar_sample(mask, cx, cy, geom.r_max, n_radial, n_angular)
    return PolarImage(samples=samples, r_max=geom.r_max)


def pf2_transform(polar, m, n):
    """``PF[rho, phi] = sum_k sum_i f[k, i] exp(-2 pi j (k rho / R + i phi / T))``.

    Only ``0 <= rho < m`` and ``0 <= phi < n`` are evaluated.
    """
    grid = polar.samples if isinstance(polar, PolarImage) else np.asarray(polar, dtype=np.float64)
    n_radial, n_angular = grid.shape
    if not (1 <= m <= n_radial and 1 <= n <= n_angular):
        raise FrequencyOutOfRangeError(
            f"requested {m}x{n} frequencies from a {n_radial}x{n_angular} polar grid"
        )
    return _kernels.pf2_corner(grid, m, n)


def normalize_spectrum(spectrum, n_samples):
    """Magnitude descriptor, row-major over ``(rho, phi)``.

    The DC entry becomes the filled fraction of the polar grid,
    ``|PF(0, 0)| / n_samples``; every other entry is ``|PF| / |PF(0, 0)|``.
    """
    mags = np.abs(np.asarray(spectrum))
    dc = mags[0, 0]
    if dc <= 0:
        raise DegenerateShapeError("polar image is empty (PF(0,0) = 0)")
    out = mags / dc
    out[0, 0] = dc / n_samples
    return out.ravel()


def pft_descriptor(mask, geom, m=DEFAULT_RADIAL_FREQ, n=DEFAULT_ANGULAR_FREQ,
                   n_radial=DEFAULT_POLAR_R, n_angular=DEFAULT_POLAR_T):
    """PFT descriptor with ``m`` radial and ``n`` angular frequencies (``m * n`` values)."""
    polar = to_polar(mask, geom, n_radial, n_angular)
    spectrum = pf2_transform(polar, m, n)
    return FeatureVector(DescriptorKind.PFT, normalize_spectrum(spectrum, polar.samples.size))
