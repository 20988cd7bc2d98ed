"""Slimness, roundness and dispersion of a measured silhouette."""
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateShapeError
from .features import DescriptorKind, FeatureVector


@dataclass(frozen=True)
class GeometricFeatures:
    slimness: float
    roundness: float
    dispersion: float

    def as_vector(self):
        return FeatureVector(DescriptorKind.GEOMETRIC, [self.slimness, self.roundness, self.dispersion])


def slimness(geom):
    """Width over length of the leaf, in (0, 1]."""
    if geom.length_l2 <= 0:
        raise DegenerateShapeError("shape has zero length")
    return geom.width_l1 / geom.length_l2


def roundness(geom):
    """Compactness ``4 pi A / P**2``; 1 for a disk."""
    if geom.perimeter <= 0:
        raise DegenerateShapeError("shape has zero perimeter")
    return 4.0 * np.pi * geom.area / geom.perimeter**2


def dispersion(geom):
    """Irregularity: farthest over nearest contour distance from the centroid."""
    if geom.r_min <= 0:
        raise DegenerateShapeError("contour touches the centroid")
    return geom.r_max / geom.r_min


def geometric_features(geom):
    return GeometricFeatures(slimness(geom), roundness(geom), dispersion(geom))


def geometric_vector(geom):
    """``[slimness, roundness, dispersion]`` as a GEOMETRIC feature vector."""
    return geometric_features(geom).as_vector()
