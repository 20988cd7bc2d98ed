"""Leaf shape descriptors and a retrieval benchmark.

Four descriptor families are computed from a binary silhouette: geometric
features (slimness, roundness, dispersion), Hu moment invariants, Zernike
moment magnitudes and the polar Fourier transform (PFT). Images are ranked
by Euclidean distance between descriptors and methods are scored by top-1,
top-3 and top-5 retrieval accuracy.
"""
__version__ = "0.1.0"

from ._kernels import BACKEND
from .features import DescriptorKind, FeatureVector
from .geometric import geometric_vector
from .hu import hu_vector
from .pft import pft_descriptor
from .retrieval import IndexedDatabase, euclidean_distance, evaluate, rank
from .silhouette import ShapeGeometry, silhouette
from .zernike import zernike_descriptor

__all__ = [
    "BACKEND",
    "DescriptorKind",
    "FeatureVector",
    "IndexedDatabase",
    "ShapeGeometry",
    "euclidean_distance",
    "evaluate",
    "geometric_vector",
    "hu_vector",
    "pft_descriptor",
    "rank",
    "silhouette",
    "zernike_descriptor",
]
