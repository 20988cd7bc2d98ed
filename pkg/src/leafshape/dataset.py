"""Manifests, feature extraction over a collection, the on-disk feature cache,
and the synthetic benchmark generator.

Manifest format (UTF-8 CSV)::

    path,species,split
    images/c00_db_00.png,ellipse-0,db
    images/c00_q_00.png,ellipse-0,query

Paths are relative to the manifest's directory. The record id of a row is its
path string as written.
"""
import csv
import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from . import synth
from .errors import (
    DuplicatePathError,
    ExtractionError,
    ManifestParseError,
    MissingCacheError,
)
from .features import DescriptorKind, FeatureVector
from .geometric import geometric_vector
from .hu import hu_vector
from .pft import (
    DEFAULT_ANGULAR_FREQ,
    DEFAULT_POLAR_R,
    DEFAULT_POLAR_T,
    DEFAULT_RADIAL_FREQ,
    pft_descriptor,
)
from .silhouette import DEFAULT_THRESHOLD, silhouette
from .zernike import DEFAULT_ORDER, zernike_descriptor

SPLITS = ("db", "query")
MANIFEST_HEADER = ("path", "species", "split")


@dataclass(frozen=True)
class ManifestRecord:
    path: str
    species: str
    split: str

    @property
    def record_id(self):
        return self.path


def load_manifest(path):
    """Parse a manifest; raises ManifestParseError (with line) or DuplicatePathError."""
    path = Path(path)
    records = []
    seen = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ManifestParseError("empty manifest", line=1) from None
        if tuple(h.strip() for h in header) != MANIFEST_HEADER:
            raise ManifestParseError(f"header must be {','.join(MANIFEST_HEADER)}", line=1)
        for row in reader:
            line = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 3:
                raise ManifestParseError(f"expected 3 fields, got {len(row)}", line=line)
            rel, species, split = (c.strip() for c in row)
            if not rel:
                raise ManifestParseError("empty path", line=line)
            if not species:
                raise ManifestParseError(f"empty species for {rel!r}", line=line)
            if split not in SPLITS:
                raise ManifestParseError(f"split must be 'db' or 'query', got {split!r}", line=line)
            if rel in seen:
                raise DuplicatePathError(f"duplicate path {rel!r} (first on line {seen[rel]})", line=line)
            seen[rel] = line
            records.append(ManifestRecord(rel, species, split))
    return records


def write_manifest(path, records):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(MANIFEST_HEADER)
        for r in records:
            writer.writerow((r.path, r.species, r.split))


def split_counts(records):
    return {s: sum(r.split == s for r in records) for s in SPLITS}


@dataclass(frozen=True)
class ExtractionParams:
    threshold: float = DEFAULT_THRESHOLD
    foreground_is_dark: bool = True
    zernike_order: int = DEFAULT_ORDER
    pft_radial: int = DEFAULT_RADIAL_FREQ
    pft_angular: int = DEFAULT_ANGULAR_FREQ
    polar_r: int = DEFAULT_POLAR_R
    polar_t: int = DEFAULT_POLAR_T

    def validate(self):
        if not 0.0 < self.threshold < 1.0:
            raise ValueError("threshold must lie in (0, 1)")
        if self.zernike_order < 0:
            raise ValueError("zernike order must be >= 0")
        if self.polar_r < 4 or self.polar_t < 4:
            raise ValueError("polar grid must be at least 4x4")
        if not (1 <= self.pft_radial <= self.polar_r and 1 <= self.pft_angular <= self.polar_t):
            raise ValueError("PFT frequencies must fit in the polar grid")
        return self

    def fingerprint(self):
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))


def load_image(path):
    """Grayscale float image in [0, 1]; color is reduced by averaging RGB."""
    with Image.open(path) as im:
        if im.mode in ("L", "I;16", "I", "F", "1"):
            arr = np.asarray(im.convert("L"), dtype=np.float64)
        else:
            arr = np.asarray(im.convert("RGB"), dtype=np.float64).mean(axis=2)
    return arr / 255.0


def extract_image(image, kinds, params=ExtractionParams()):
    """Feature vectors of one image, ``{kind: FeatureVector}`` for each requested kind."""
    mask, _, geom = silhouette(image, params.threshold, params.foreground_is_dark)
    out = {}
    for kind in kinds:
        kind = DescriptorKind(kind)
        if kind is DescriptorKind.GEOMETRIC:
            out[kind] = geometric_vector(geom)
        elif kind is DescriptorKind.HU_RAW:
            out[kind] = hu_vector(mask, normalized=False)
        elif kind is DescriptorKind.HU_NORMALIZED:
            out[kind] = hu_vector(mask, normalized=True)
        elif kind is DescriptorKind.ZERNIKE:
            out[kind] = zernike_descriptor(mask, geom, params.zernike_order)
        elif kind is DescriptorKind.PFT:
            out[kind] = pft_descriptor(
                mask, geom, params.pft_radial, params.pft_angular, params.polar_r, params.polar_t
            )
        else:
            raise ValueError(f"{kind.value} is not extracted from images")
    return out


def _extract_one(args):
    path, kinds, params = args
    try:
        return extract_image(load_image(path), kinds, params), None
    except Exception as exc:  # reported per record by the caller
        return None, f"{type(exc).__name__}: {exc}"


class FeatureCache:
    """Feature vectors per ``(record_id, kind)`` under one parameter fingerprint.

    On disk: ``<kind>.csv`` with header ``record_id,species,split,f0..f{d-1}``
    and a ``<kind>.params`` sidecar holding the fingerprint line. Floats are
    written with ``repr`` so they round-trip exactly.
    """

    def __init__(self, params, vectors=None, labels=None):
        self.params = params
        self.vectors = dict(vectors or {})
        self.labels = dict(labels or {})

    def __len__(self):
        return len(self.vectors)

    def kinds(self):
        return sorted({k for _, k in self.vectors}, key=lambda k: k.value)

    def get(self, record_id, kind):
        return self.vectors[(record_id, DescriptorKind(kind))]

    def save(self, directory):
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        for kind in self.kinds():
            rows = sorted(rid for rid, k in self.vectors if k is kind)
            dim = len(self.vectors[(rows[0], kind)])
            with open(directory / f"{kind.value}.csv", "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(["record_id", "species", "split"] + [f"f{i}" for i in range(dim)])
                for rid in rows:
                    species, split = self.labels.get(rid, ("", ""))
                    values = [repr(float(v)) for v in self.vectors[(rid, kind)].values]
                    writer.writerow([rid, species, split] + values)
            (directory / f"{kind.value}.params").write_text(self.params.fingerprint() + "\n", encoding="utf-8")

    @classmethod
    def load(cls, directory, kinds, params=None):
        """Load the given kinds; with ``params``, a fingerprint mismatch raises MissingCacheError."""
        directory = Path(directory)
        vectors, labels = {}, {}
        fingerprint = None
        for kind in map(DescriptorKind, kinds):
            csv_path = directory / f"{kind.value}.csv"
            fp_path = directory / f"{kind.value}.params"
            if not csv_path.exists() or not fp_path.exists():
                raise MissingCacheError(f"no cached {kind.value} features in {directory}")
            fp = fp_path.read_text(encoding="utf-8").strip()
            if params is not None and fp != params.fingerprint():
                raise MissingCacheError(f"cached {kind.value} features were extracted with other parameters")
            if fingerprint is not None and fp != fingerprint:
                raise MissingCacheError("cache files disagree on extraction parameters")
            fingerprint = fp
            with open(csv_path, newline="", encoding="utf-8") as fh:
                reader = csv.reader(fh)
                next(reader)
                for row in reader:
                    rid, species, split = row[:3]
                    vectors[(rid, kind)] = FeatureVector(kind, [float(v) for v in row[3:]])
                    labels[rid] = (species, split)
        loaded = params if params is not None else ExtractionParams(**json.loads(fingerprint)) if fingerprint else None
        return cls(loaded, vectors, labels)

    def is_current(self, records, kinds, params):
        if self.params is None or self.params.fingerprint() != params.fingerprint():
            return False
        return all((r.record_id, DescriptorKind(k)) in self.vectors for r in records for k in kinds)


def extract_all(records, kinds, params=ExtractionParams(), root=".", workers=1):
    """Extract every requested kind for every record.

    Raises ExtractionError listing each failing record id after all records
    have been attempted.
    """
    params.validate()
    kinds = [DescriptorKind(k) for k in kinds]
    root = Path(root)
    jobs = [(root / r.path, kinds, params) for r in records]
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_extract_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_extract_one(j) for j in jobs]
    cache = FeatureCache(params)
    failures = {}
    for rec, (vectors, error) in zip(records, results):
        if error is not None:
            failures[rec.record_id] = error
            continue
        cache.labels[rec.record_id] = (rec.species, rec.split)
        for kind, vec in vectors.items():
            cache.vectors[(rec.record_id, kind)] = vec
    if failures:
        raise ExtractionError(failures)
    return cache


# --- synthetic benchmark -------------------------------------------------

DEFAULT_IMAGE_SIZE = 256


def class_spec(index, n_classes, size):
    """Class-defining shape for class ``index``: the family cycles, parameters step per cycle."""
    family = synth.FAMILIES[index % len(synth.FAMILIES)]
    variant = index // len(synth.FAMILIES)
    n_variants = max(1, -(-n_classes // len(synth.FAMILIES)))
    frac = variant / max(1, n_variants - 1)
    if family == "ellipse":
        params = {"aspect": 0.75 - 0.3 * frac}
    elif family == "rounded_rect":
        params = {"aspect": 0.8 - 0.3 * frac, "corner": 0.2 + 0.1 * (variant % 2)}
    elif family == "star":
        params = {"points": 5 + variant, "inner": 0.55 - 0.1 * (variant % 2)}
    else:
        params = {"lobes": 3 + variant, "depth": 0.15 + 0.05 * (variant % 3), "aspect": 0.7}
    return synth.ShapeSpec(family, params, size)


def class_name(index, spec):
    return f"c{index:03d}-{spec.family}"


def synthesize_benchmark(classes, db_per_class, query_per_class, seed, out_dir=None,
                         image_size=DEFAULT_IMAGE_SIZE, noise=0.04):
    """Generate a labeled silhouette collection.

    Each class is one shape-family parameterization; instances vary by
    rotation, scale in [0.7, 1.3], translation and smooth boundary noise.
    Images are dark shapes on a white background. Returns
    ``(records, images)`` where ``images`` maps relative path to a uint8
    array; with ``out_dir`` the PNGs and ``manifest.csv`` are also written.
    """
    if min(classes, db_per_class, query_per_class) < 1:
        raise ValueError("counts must be >= 1")
    base = 0.3 * image_size
    records, images = [], {}
    for c in range(classes):
        spec = class_spec(c, classes, base)
        name = class_name(c, spec)
        rng = np.random.default_rng([seed, c])
        for split, count in (("db", db_per_class), ("query", query_per_class)):
            for i in range(count):
                angle = rng.uniform(0.0, 2.0 * np.pi)
                scale = rng.uniform(0.7, 1.3)
                margin = image_size / 2.0 - 1.05 * base * scale - 2.0
                shift = rng.uniform(-margin, margin, size=2) if margin > 0 else np.zeros(2)
                center = (image_size - 1) / 2.0 + shift
                mask = synth.render(
                    spec, (image_size, image_size), angle=angle, scale=scale,
                    offset=tuple(center), rng=rng, noise=noise,
                )
                rel = f"images/{name}_{split}_{i:02d}.png"
                images[rel] = np.where(mask, 0, 255).astype(np.uint8)
                records.append(ManifestRecord(rel, name, split))
    if out_dir is not None:
        out = Path(out_dir)
        (out / "images").mkdir(parents=True, exist_ok=True)
        for rel, img in images.items():
            Image.fromarray(img, mode="L").save(out / rel, optimize=False)
        write_manifest(out / "manifest.csv", records)
    return records, images


def directory_digest(directory):
    """SHA-256 over relative paths and contents of every file below ``directory``."""
    h = hashlib.sha256()
    directory = Path(directory)
    for p in sorted(directory.rglob("*")):
        if p.is_file():
            h.update(p.relative_to(directory).as_posix().encode())
            h.update(p.read_bytes())
    return h.hexdigest()


def default_workers():
    return max(1, min(8, os.cpu_count() or 1))
