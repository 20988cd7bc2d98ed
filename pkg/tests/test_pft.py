import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from helpers import family_mask, shifted
from leafshape import _kernels, synth
from leafshape.errors import FrequencyOutOfRangeError
from leafshape.pft import PolarImage, normalize_spectrum, pf2_transform, pft_descriptor, to_polar
from leafshape.silhouette import ShapeGeometry, measure, trace_contour
from oracles import naive_dft_corner


def geom_of(mask):
    return measure(mask, trace_contour(mask))


def test_pf2_matches_naive_dft(backend, rng):
    for _ in range(3):
        grid = (rng.random((32, 32)) < 0.5).astype(float)
        got = pf2_transform(grid, 4, 6)
        assert np.abs(got - naive_dft_corner(grid, 4, 6)).max() < 1e-9


@settings(max_examples=25, deadline=None)
@given(
    grid=arrays(float, st.tuples(st.integers(4, 12), st.integers(4, 12)), elements=st.floats(0, 1)),
    data=st.data(),
)
def test_pf2_matches_naive_dft_property(grid, data):
    m = data.draw(st.integers(1, grid.shape[0]))
    n = data.draw(st.integers(1, grid.shape[1]))
    ref = naive_dft_corner(grid, m, n)
    for module in _kernels.AVAILABLE.values():
        got = _kernels.pf2_corner(grid, m, n, backend=module)
        assert np.abs(got - ref).max() < 1e-9


def test_pf2_full_grid_equals_fft(backend, rng):
    grid = rng.random((16, 24))
    assert np.allclose(pf2_transform(grid, 16, 24), np.fft.fft2(grid), atol=1e-9)


def test_constant_grid_has_only_dc(backend):
    spec = pf2_transform(np.ones((16, 32)), 4, 6)
    assert spec[0, 0] == pytest.approx(16 * 32)
    rest = spec.copy()
    rest[0, 0] = 0
    assert np.abs(rest).max() < 1e-9


def test_parseval(backend, rng):
    grid = rng.random((8, 12))
    spec = pf2_transform(grid, 8, 12)
    assert np.sum(np.abs(spec) ** 2) == pytest.approx(grid.size * np.sum(grid**2))


def test_frequency_out_of_range():
    with pytest.raises(FrequencyOutOfRangeError):
        pf2_transform(np.ones((4, 8)), 5, 2)
    with pytest.raises(FrequencyOutOfRangeError):
        pf2_transform(np.ones((4, 8)), 1, 0)


def test_full_disk_polar_is_all_ones(backend):
    mask = synth.disk_mask(60, (160, 160))
    polar = to_polar(mask, geom_of(mask), 32, 64)
    assert isinstance(polar, PolarImage)
    assert polar.samples.shape == (32, 64)
    assert np.all(polar.samples == 1.0)


def test_polar_translation(backend):
    mask = family_mask("star", shape=(300, 300))
    moved = shifted(mask, 11, 3)
    a = to_polar(mask, geom_of(mask), 64, 128)
    b = to_polar(moved, geom_of(moved), 64, 128)
    assert np.array_equal(a.samples, b.samples)


def test_half_plane_sampling(backend):
    size = 201
    mask = np.zeros((size, size), dtype=bool)
    mask[:, 100:] = True
    geom = ShapeGeometry(area=int(mask.sum()), perimeter=1.0, centroid=(100.0, 100.0),
                         r_max=80.0, r_min=1.0, length_l2=1.0, width_l1=1.0)
    T = 64
    polar = to_polar(mask, geom, 16, T)
    cos = np.cos(2 * np.pi * np.arange(T) / T)
    assert np.all(polar.samples[:, cos > 1e-9] == 1.0)
    # a sample is foreground iff its nearest pixel column is >= 100
    r = (np.arange(16) + 0.5) * 80.0 / 16
    expected = np.floor(100.0 + r[:, None] * cos[None, :] + 0.5) >= 100
    assert np.array_equal(polar.samples == 1.0, expected)
    assert np.all(polar.samples[2:, cos < -0.1] == 0.0)


def test_polar_backends_agree():
    mask = family_mask("lobed", angle=0.3, shape=(300, 300))
    geom = geom_of(mask)
    outs = [_kernels.polar_sample(mask, *geom.centroid, geom.r_max, 64, 128, backend=b)
            for b in _kernels.AVAILABLE.values()]
    for o in outs[1:]:
        assert np.array_equal(o, outs[0])


def test_descriptor_length_and_disk_values(backend):
    mask = synth.disk_mask(100, (512, 512))
    desc = pft_descriptor(mask, geom_of(mask))
    assert len(desc) == 24
    # a few rim samples round to pixels just outside the disk
    assert desc.values[0] == pytest.approx(1.0, abs=0.01)
    assert np.all(desc.values[1:] < 0.05)
    assert np.all(desc.values >= 0)


def test_normalize_spectrum():
    spec = np.array([[4.0, -2.0], [1j, 0.0]])
    out = normalize_spectrum(spec, 8)
    assert np.allclose(out, [0.5, 0.5, 0.25, 0.0])


def test_descriptor_translation(backend):
    mask = family_mask("rounded_rect", angle=0.8, shape=(300, 300))
    moved = shifted(mask, 5, 14)
    a = pft_descriptor(mask, geom_of(mask)).values
    b = pft_descriptor(moved, geom_of(moved)).values
    assert np.allclose(a, b, rtol=0, atol=1e-12)


def test_descriptor_rotation_by_90_degrees_close(backend):
    # with T divisible by 4 a quarter turn maps the polar grid onto itself up to rounding
    mask = family_mask("star", angle=0.2, shape=(300, 300))
    rot = np.ascontiguousarray(np.rot90(mask))
    a = pft_descriptor(mask, geom_of(mask)).values
    b = pft_descriptor(rot, geom_of(rot)).values
    big = a > 1e-3
    assert np.allclose(a[big], b[big], rtol=0.05)
