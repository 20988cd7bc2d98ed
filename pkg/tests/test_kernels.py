import os
import subprocess
import sys

import numpy as np
import pytest

from helpers import family_mask
from leafshape import _kernels
from leafshape.dataset import ExtractionParams, extract_image
from leafshape.features import SINGLE_KINDS


def test_environment_forces_fallback():
    env = dict(os.environ, LEAFSHAPE_BACKEND="python")
    out = subprocess.run([sys.executable, "-c", "import leafshape; print(leafshape.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_compiled_backend_is_default_when_built():
    if "compiled" not in _kernels.AVAILABLE:
        pytest.skip("compiled backend not built")
    if os.environ.get("LEAFSHAPE_BACKEND"):
        pytest.skip("backend forced by environment")
    assert _kernels.BACKEND == "compiled"


def test_descriptors_agree_across_backends(monkeypatch):
    if len(_kernels.AVAILABLE) < 2:
        pytest.skip("compiled backend not built")
    image = np.where(family_mask("lobed", angle=0.9, shape=(256, 256)), 0.0, 1.0)
    params = ExtractionParams(polar_r=64, polar_t=128)
    results = []
    for module in _kernels.AVAILABLE.values():
        monkeypatch.setattr(_kernels, "_impl", module)
        results.append(extract_image(image, SINGLE_KINDS, params))
    for kind in SINGLE_KINDS:
        assert np.allclose(results[0][kind].values, results[1][kind].values, rtol=1e-9, atol=1e-12), kind


def test_raw_moments_overflow_guard():
    # w * w**3 exceeds the exact int64 range before any pixel is summed
    with pytest.raises(ValueError, match="too large"):
        _kernels.raw_moments(np.zeros((1, 2**22), dtype=bool), 3)
