import numpy as np
import pytest
from PIL import Image

from leafshape import synth
from leafshape.dataset import (
    ExtractionParams,
    FeatureCache,
    ManifestRecord,
    class_spec,
    directory_digest,
    extract_all,
    extract_image,
    load_image,
    load_manifest,
    split_counts,
    synthesize_benchmark,
    write_manifest,
)
from leafshape.errors import DuplicatePathError, ExtractionError, ManifestParseError, MissingCacheError
from leafshape.features import SINGLE_KINDS, DescriptorKind

SMALL = ExtractionParams(polar_r=32, polar_t=64)


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def test_manifest_three_rows(tmp_path):
    p = write(tmp_path / "m.csv", "path,species,split\na.png,oak,db\nb.png,oak,query\nc.png,elm,db\n")
    recs = load_manifest(p)
    assert len(recs) == 3
    assert recs[1] == ManifestRecord("b.png", "oak", "query")
    assert recs[1].record_id == "b.png"


def test_manifest_empty_species_names_line(tmp_path):
    p = write(tmp_path / "m.csv", "path,species,split\na.png,oak,db\nb.png,,db\n")
    with pytest.raises(ManifestParseError, match="line 3"):
        load_manifest(p)


@pytest.mark.parametrize("body,err", [
    ("path,label,split\n", ManifestParseError),
    ("path,species,split\na.png,oak,train\n", ManifestParseError),
    ("path,species,split\na.png,oak\n", ManifestParseError),
    ("path,species,split\na.png,oak,db\na.png,elm,query\n", DuplicatePathError),
    ("", ManifestParseError),
])
def test_manifest_errors(tmp_path, body, err):
    with pytest.raises(err):
        load_manifest(write(tmp_path / "m.csv", body))


def test_manifest_1250_records(tmp_path):
    recs = [ManifestRecord(f"s{s:02d}/{i:02d}.png", f"sp{s:02d}", "db" if i < 20 else "query")
            for s in range(50) for i in range(25)]
    write_manifest(tmp_path / "m.csv", recs)
    loaded = load_manifest(tmp_path / "m.csv")
    assert loaded == recs
    assert split_counts(loaded) == {"db": 1000, "query": 250}


def test_fingerprint_changes_with_params():
    assert ExtractionParams().fingerprint() == ExtractionParams().fingerprint()
    assert ExtractionParams(threshold=0.4).fingerprint() != ExtractionParams().fingerprint()


def test_params_validation():
    with pytest.raises(ValueError):
        ExtractionParams(threshold=0.0).validate()
    with pytest.raises(ValueError):
        ExtractionParams(pft_radial=40, polar_r=32).validate()


def _write_images(root, n=2):
    recs = []
    for i in range(n):
        spec = synth.ShapeSpec("star" if i % 2 else "ellipse", {"points": 5}, 20.0)
        mask = synth.render(spec, (64, 64), angle=0.3 * i)
        rel = f"img{i}.png"
        Image.fromarray(np.where(mask, 0, 255).astype(np.uint8)).save(root / rel)
        recs.append(ManifestRecord(rel, spec.family, "db"))
    return recs


def test_extract_all_cartesian_count(tmp_path):
    recs = _write_images(tmp_path)
    kinds = [DescriptorKind.GEOMETRIC, DescriptorKind.HU_RAW, DescriptorKind.PFT]
    cache = extract_all(recs, kinds, SMALL, root=tmp_path)
    assert len(cache) == 6
    assert len(cache.get("img0.png", DescriptorKind.PFT)) == 24


def test_extraction_lengths_per_kind(tmp_path):
    recs = _write_images(tmp_path, 1)
    vectors = extract_image(load_image(tmp_path / recs[0].path), SINGLE_KINDS, SMALL)
    assert [len(vectors[k]) for k in SINGLE_KINDS] == [3, 7, 7, 20, 24]


def test_cache_round_trip_bit_exact(tmp_path):
    recs = _write_images(tmp_path)
    cache = extract_all(recs, SINGLE_KINDS, SMALL, root=tmp_path)
    cache.save(tmp_path / "cache")
    first = directory_digest(tmp_path / "cache")
    loaded = FeatureCache.load(tmp_path / "cache", SINGLE_KINDS, SMALL)
    for key, v in cache.vectors.items():
        assert np.array_equal(loaded.vectors[key].values, v.values)
    assert loaded.is_current(recs, SINGLE_KINDS, SMALL)
    again = extract_all(recs, SINGLE_KINDS, SMALL, root=tmp_path, workers=2)
    again.save(tmp_path / "cache")
    assert directory_digest(tmp_path / "cache") == first


def test_cache_fingerprint_mismatch(tmp_path):
    recs = _write_images(tmp_path)
    extract_all(recs, [DescriptorKind.GEOMETRIC], SMALL, root=tmp_path).save(tmp_path / "cache")
    changed = ExtractionParams(threshold=0.4, polar_r=32, polar_t=64)
    with pytest.raises(MissingCacheError):
        FeatureCache.load(tmp_path / "cache", [DescriptorKind.GEOMETRIC], changed)
    with pytest.raises(MissingCacheError):
        FeatureCache.load(tmp_path / "cache", [DescriptorKind.PFT], SMALL)


def test_extraction_reports_every_failure(tmp_path):
    recs = _write_images(tmp_path)
    Image.fromarray(np.full((16, 16), 255, dtype=np.uint8)).save(tmp_path / "blank.png")
    recs += [ManifestRecord("missing.png", "x", "db"), ManifestRecord("blank.png", "x", "db")]
    with pytest.raises(ExtractionError) as info:
        extract_all(recs, [DescriptorKind.GEOMETRIC], SMALL, root=tmp_path)
    assert set(info.value.failures) == {"missing.png", "blank.png"}


def test_synthesize_counts_and_determinism():
    recs, images = synthesize_benchmark(10, 20, 5, seed=3, image_size=64)
    assert len(recs) == 250
    assert split_counts(recs) == {"db": 200, "query": 50}
    assert len({r.species for r in recs}) == 10
    recs2, images2 = synthesize_benchmark(10, 20, 5, seed=3, image_size=64)
    assert recs2 == recs
    assert all(np.array_equal(images[k], images2[k]) for k in images)
    _, images3 = synthesize_benchmark(10, 20, 5, seed=4, image_size=64)
    assert any(not np.array_equal(images[k], images3[k]) for k in images)


def test_classes_differ_in_defining_parameters():
    stars = [class_spec(i, 10, 50.0) for i in (2, 6)]
    assert stars[0].family == stars[1].family == "star"
    assert stars[0].params["points"] == 5 and stars[1].params["points"] == 6
    specs = [class_spec(i, 50, 50.0) for i in range(50)]
    assert len({(s.family, tuple(sorted(s.params.items()))) for s in specs}) == 50


def test_synthesize_writes_files(tmp_path):
    synthesize_benchmark(2, 3, 1, seed=0, out_dir=tmp_path / "a", image_size=48)
    synthesize_benchmark(2, 3, 1, seed=0, out_dir=tmp_path / "b", image_size=48)
    assert len(list((tmp_path / "a" / "images").glob("*.png"))) == 8
    assert len(load_manifest(tmp_path / "a" / "manifest.csv")) == 8
    assert directory_digest(tmp_path / "a") == directory_digest(tmp_path / "b")
