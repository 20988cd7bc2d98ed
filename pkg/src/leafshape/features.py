"""Feature vectors shared by every descriptor and by the retrieval engine."""
from dataclasses import dataclass
from enum import Enum

import numpy as np


class DescriptorKind(str, Enum):
    GEOMETRIC = "geometric"
    HU_RAW = "hu_raw"
    HU_NORMALIZED = "hu_normalized"
    ZERNIKE = "zernike"
    PFT = "pft"
    COMBINED = "combined"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("-", "_")
        aliases = {"hu": "hu_raw", "hunorm": "hu_normalized", "hu_norm": "hu_normalized"}
        return cls(aliases.get(key, key))


SINGLE_KINDS = (
    DescriptorKind.GEOMETRIC,
    DescriptorKind.HU_RAW,
    DescriptorKind.HU_NORMALIZED,
    DescriptorKind.ZERNIKE,
    DescriptorKind.PFT,
)


@dataclass(frozen=True, eq=False)
class FeatureVector:
    kind: DescriptorKind
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64).ravel()
        if not np.isfinite(values).all():
            raise ValueError(f"{self.kind.value} feature vector has non-finite entries")
        values.setflags(write=False)
        object.__setattr__(self, "kind", DescriptorKind(self.kind))
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if not isinstance(other, FeatureVector):
            return NotImplemented
        return self.kind == other.kind and np.array_equal(self.values, other.values)

    def __repr__(self):
        return f"FeatureVector({self.kind.value}, {np.array2string(self.values, precision=4)})"
