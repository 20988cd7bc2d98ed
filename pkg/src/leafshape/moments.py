"""Raw, central and normalized image moments and the seven Hu invariants.

Raw moments of a binary mask are integers and are accumulated exactly.
Central moments are derived from them in exact integer arithmetic and
rounded once, so the result is the correctly rounded value of the defining
double sum (independent of summation order or backend).
"""
from dataclasses import dataclass
from math import comb

import numpy as np

from . import _kernels
from .errors import DegenerateShapeError

MOMENT_ORDER = 3
LOG_EPS = 1e-30


@dataclass(frozen=True)
class MomentSet:
    """Moments of a binary mask up to order 3.

    ``raw[i, j]`` is sum(x**i * y**j) as an exact integer array;
    ``central[i, j]`` and ``normalized[i, j]`` are float arrays, with
    entries outside ``i + j <= 3`` (resp. ``2 <= i + j <= 3``) set to zero.
    Coordinates are 0-based pixel centers, x along columns, y along rows.
    """

    raw: np.ndarray
    central: np.ndarray
    normalized: np.ndarray

    @property
    def area(self):
        return int(self.raw[0, 0])

    @property
    def centroid(self):
        m00 = int(self.raw[0, 0])
        return int(self.raw[1, 0]) / m00, int(self.raw[0, 1]) / m00


def raw_moments(mask, max_order=MOMENT_ORDER):
    """Integer raw moments ``M[i, j] = sum x**i y**j`` over foreground pixels."""
    if max_order < MOMENT_ORDER:
        raise ValueError(f"max_order must be >= {MOMENT_ORDER}")
    mask = np.asarray(mask, dtype=bool)
    if not mask.any():
        raise DegenerateShapeError("mask has no foreground pixel")
    out = np.zeros((max_order + 1, max_order + 1), dtype=object)
    m = _kernels.raw_moments(mask, max_order)
    for i in range(max_order + 1):
        for j in range(max_order + 1 - i):
            out[i, j] = int(m[i, j])
    return out


def _scaled_central(raw, i, j):
    # M00**(i+j) * mu_ij = sum (M00 x - M10)**i (M00 y - M01)**j, expanded binomially
    m00, m10, m01 = raw[0, 0], raw[1, 0], raw[0, 1]
    total = 0
    for a in range(i + 1):
        ca = comb(i, a) * (-m10) ** (i - a)
        for b in range(j + 1):
            total += ca * comb(j, b) * (-m01) ** (j - b) * m00 ** (a + b) * raw[a, b]
    return total


def central_from_raw(raw, order=MOMENT_ORDER):
    """Central moments ``mu[i, j]`` for ``i + j <= order`` from exact raw moments."""
    m00 = raw[0, 0]
    mu = np.zeros((order + 1, order + 1))
    for i in range(order + 1):
        for j in range(order + 1 - i):
            # int / int is correctly rounded in Python
            mu[i, j] = _scaled_central(raw, i, j) / m00 ** (i + j)
    return mu


def central_moments(mask, order=MOMENT_ORDER):
    return central_from_raw(raw_moments(mask, max(order, MOMENT_ORDER)), order)


def normalized_from_central(mu):
    eta = np.zeros_like(mu)
    m00 = mu[0, 0]
    order = mu.shape[0] - 1
    for i in range(order + 1):
        for j in range(order + 1 - i):
            if i + j >= 2:
                eta[i, j] = mu[i, j] / m00 ** ((i + j + 2) / 2)
    return eta


def moment_set(mask):
    raw = raw_moments(mask)
    mu = central_from_raw(raw)
    return MomentSet(raw=raw, central=mu, normalized=normalized_from_central(mu))


def hu_from_normalized(eta):
    """The seven Hu invariants from normalized central moments ``eta[i, j]``."""
    n20, n02, n11 = eta[2, 0], eta[0, 2], eta[1, 1]
    n30, n03, n21, n12 = eta[3, 0], eta[0, 3], eta[2, 1], eta[1, 2]
    a = n30 + n12
    b = n21 + n03
    phi1 = n20 + n02
    phi2 = (n20 - n02) ** 2 + 4 * n11**2
    phi3 = (n30 - 3 * n12) ** 2 + (3 * n21 - n03) ** 2
    phi4 = a**2 + b**2
    phi5 = (n30 - 3 * n12) * a * (a**2 - 3 * b**2) + (3 * n21 - n03) * b * (3 * a**2 - b**2)
    phi6 = (n20 - n02) * (a**2 - b**2) + 4 * n11 * a * b
    phi7 = (3 * n21 - n03) * a * (a**2 - 3 * b**2) - (n30 - 3 * n12) * b * (3 * a**2 - b**2)
    return np.array([phi1, phi2, phi3, phi4, phi5, phi6, phi7])


def hu_invariants(mask):
    """Seven Hu moment invariants of a binary mask.

    Raises
    ------
    DegenerateShapeError
        If the mask has fewer than 4 foreground pixels.
    """
    mask = np.asarray(mask, dtype=bool)
    if mask.sum() < 4:
        raise DegenerateShapeError("Hu invariants need at least 4 foreground pixels")
    return hu_from_normalized(moment_set(mask).normalized)


def signed_log(values, eps=LOG_EPS):
    """Component-wise ``sign(v) * log10(|v| + eps)``; sign(0) is taken as 0."""
    v = np.asarray(values, dtype=float)
    return np.sign(v) * np.log10(np.abs(v) + eps)
