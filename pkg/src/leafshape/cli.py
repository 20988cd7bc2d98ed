"""Command-line interface: ``leafshape {synth,extract,query,benchmark}``.

Exit status: 0 on success, 2 for configuration errors (bad flags, missing
or stale cache, unreadable manifest), 3 for data errors (images that fail
to load or yield no usable silhouette).
"""
import argparse
import sys
import time
from pathlib import Path

from . import __version__
from .benchmark import report_csv, report_table, run_benchmark
from .dataset import (
    ExtractionParams,
    FeatureCache,
    default_workers,
    extract_all,
    extract_image,
    load_image,
    load_manifest,
    split_counts,
    synthesize_benchmark,
)
from .errors import ExtractionError, LeafShapeError, ManifestParseError, MissingCacheError
from .features import SINGLE_KINDS, DescriptorKind
from .pft import DEFAULT_ANGULAR_FREQ, DEFAULT_POLAR_R, DEFAULT_POLAR_T, DEFAULT_RADIAL_FREQ
from .retrieval import IndexedDatabase, rank
from .silhouette import DEFAULT_THRESHOLD
from .zernike import DEFAULT_ORDER

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3


class ConfigError(Exception):
    pass


def _kinds(text):
    if text.strip().lower() == "all":
        return list(SINGLE_KINDS)
    try:
        kinds = [DescriptorKind.parse(k) for k in text.split(",") if k.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not kinds or DescriptorKind.COMBINED in kinds:
        raise argparse.ArgumentTypeError("choose one or more of: " + ",".join(k.value for k in SINGLE_KINDS))
    return kinds


def _add_extraction_flags(p):
    p.add_argument("--manifest", required=True, type=Path, help="CSV manifest (path,species,split)")
    p.add_argument("--out", type=Path, default=Path("leafshape-run"),
                   help="run directory holding cache/ and reports (default: %(default)s)")
    p.add_argument("--kinds", type=_kinds, default=list(SINGLE_KINDS),
                   help="comma-separated descriptor kinds or 'all' (default: all)")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--dark-foreground", action=argparse.BooleanOptionalAction, default=True,
                   help="leaf is darker than the background (default: yes)")
    p.add_argument("--zernike-order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--pft-radial", type=int, default=DEFAULT_RADIAL_FREQ)
    p.add_argument("--pft-angular", type=int, default=DEFAULT_ANGULAR_FREQ)
    p.add_argument("--polar-r", type=int, default=DEFAULT_POLAR_R)
    p.add_argument("--polar-t", type=int, default=DEFAULT_POLAR_T)
    p.add_argument("--workers", type=int, default=None,
                   help="extraction processes (default: up to 8)")


def build_parser():
    parser = argparse.ArgumentParser(prog="leafshape", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic labeled silhouette collection")
    p.add_argument("--out", type=Path, required=True, help="output directory")
    p.add_argument("--classes", type=int, default=50)
    p.add_argument("--db-per-class", type=int, default=20)
    p.add_argument("--query-per-class", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--image-size", type=int, default=256)

    p = sub.add_parser("extract", help="extract and cache features for every manifest record")
    _add_extraction_flags(p)
    p.add_argument("--force", action="store_true", help="re-extract even if the cache is current")

    p = sub.add_parser("query", help="rank database records against one image")
    _add_extraction_flags(p)
    p.add_argument("image", type=Path)
    p.add_argument("--kind", type=DescriptorKind.parse, default="pft")
    p.add_argument("--top-k", type=int, default=5)

    p = sub.add_parser("benchmark", help="P1/P3/P5 table for every method")
    _add_extraction_flags(p)
    return parser


def _params(args):
    params = ExtractionParams(
        threshold=args.threshold,
        foreground_is_dark=args.dark_foreground,
        zernike_order=args.zernike_order,
        pft_radial=args.pft_radial,
        pft_angular=args.pft_angular,
        polar_r=args.polar_r,
        polar_t=args.polar_t,
    )
    try:
        return params.validate()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _records(args):
    try:
        return load_manifest(args.manifest)
    except FileNotFoundError:
        raise ConfigError(f"manifest not found: {args.manifest}") from None
    except ManifestParseError as exc:
        raise ConfigError(f"{args.manifest}: {exc}") from None


def cmd_synth(args):
    if min(args.classes, args.db_per_class, args.query_per_class) < 1:
        raise ConfigError("class and per-class counts must be >= 1")
    records, _ = synthesize_benchmark(
        args.classes, args.db_per_class, args.query_per_class, args.seed,
        out_dir=args.out, image_size=args.image_size,
    )
    counts = split_counts(records)
    print(f"wrote {len(records)} images ({counts['db']} db, {counts['query']} query) "
          f"and {args.out / 'manifest.csv'}")
    return EXIT_OK


def cmd_extract(args):
    params = _params(args)
    records = _records(args)
    cache_dir = args.out / "cache"
    if not args.force:
        try:
            existing = FeatureCache.load(cache_dir, args.kinds, params)
        except MissingCacheError:
            existing = None
        if existing is not None and existing.is_current(records, args.kinds, params):
            print("cache up to date")
            return EXIT_OK
    workers = args.workers if args.workers is not None else default_workers()
    start = time.perf_counter()
    try:
        cache = extract_all(records, args.kinds, params, root=args.manifest.parent, workers=workers)
    except ExtractionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    elapsed = time.perf_counter() - start
    cache.save(cache_dir)
    names = ",".join(k.value for k in args.kinds)
    print(f"extracted {names} for {len(records)} records in {elapsed:.2f}s ({workers} workers)")
    return EXIT_OK


def cmd_query(args):
    params = _params(args)
    records = _records(args)
    if args.kind is DescriptorKind.COMBINED:
        raise ConfigError("query supports single descriptor kinds only")
    try:
        cache = FeatureCache.load(args.out / "cache", [args.kind], params)
    except MissingCacheError as exc:
        raise ConfigError(f"{exc}; run 'leafshape extract' first") from None
    db_recs = [r for r in records if r.split == "db"]
    try:
        db = IndexedDatabase.build((r.record_id, r.species, cache.get(r.record_id, args.kind)) for r in db_recs)
    except KeyError as exc:
        raise ConfigError(f"cache lacks record {exc}; re-run 'leafshape extract'") from None
    try:
        vector = extract_image(load_image(args.image), [args.kind], params)[args.kind]
    except (OSError, LeafShapeError, ValueError) as exc:
        print(f"error: {args.image}: {exc}", file=sys.stderr)
        return EXIT_DATA
    results = rank(vector, db)
    k = args.top_k
    if k > len(results):
        print(f"note: top-k {k} exceeds database size {len(results)}; showing full ranking")
        k = len(results)
    print("rank,record_id,species,distance")
    for i, m in enumerate(results[:k], 1):
        print(f"{i},{m.record_id},{m.species},{m.distance!r}")
    return EXIT_OK


def cmd_benchmark(args):
    params = _params(args)
    records = _records(args)
    try:
        cache = FeatureCache.load(args.out / "cache", args.kinds, params)
    except MissingCacheError as exc:
        raise ConfigError(f"{exc}; run 'leafshape extract' first") from None
    if not cache.is_current(records, args.kinds, params):
        raise ConfigError("cache does not cover every manifest record; re-run 'leafshape extract'")
    reports = run_benchmark(records, cache, args.kinds)
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "report.csv").write_text(report_csv(reports), encoding="utf-8")
    table = report_table(reports)
    (args.out / "report.txt").write_text(table, encoding="utf-8")
    print(table, end="")
    return EXIT_OK


COMMANDS = {
    "synth": cmd_synth,
    "extract": cmd_extract,
    "query": cmd_query,
    "benchmark": cmd_benchmark,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
