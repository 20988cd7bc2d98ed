"""Hu moment invariant descriptors (raw and log-normalized)."""
from .features import DescriptorKind, FeatureVector
from .moments import hu_invariants, signed_log


def hu_vector(mask, normalized=False):
    """Seven Hu invariants as a feature vector.

    With ``normalized=True`` each invariant is mapped through
    ``sign(phi) * log10(|phi| + 1e-30)``, which compresses their dynamic
    range (phi1 is ~1e-1 while phi7 is often below 1e-10).
    """
    phi = hu_invariants(mask)
    if normalized:
        return FeatureVector(DescriptorKind.HU_NORMALIZED, signed_log(phi))
    return FeatureVector(DescriptorKind.HU_RAW, phi)
