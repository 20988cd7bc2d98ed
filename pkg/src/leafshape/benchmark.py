"""The comparative experiment: one P1/P3/P5 row per descriptor method."""
import csv
import io

from .features import DescriptorKind
from .retrieval import FeatureStats, IndexedDatabase, combine, evaluate

METHODS = (
    ("Geometric", (DescriptorKind.GEOMETRIC,)),
    ("HuRaw", (DescriptorKind.HU_RAW,)),
    ("HuNormalized", (DescriptorKind.HU_NORMALIZED,)),
    ("Zernike", (DescriptorKind.ZERNIKE,)),
    ("Pft", (DescriptorKind.PFT,)),
    ("Pft+Hu", (DescriptorKind.PFT, DescriptorKind.HU_RAW)),
)


def methods_for(kinds):
    """Methods whose component kinds are all available."""
    kinds = set(map(DescriptorKind, kinds))
    return [(name, parts) for name, parts in METHODS if set(parts) <= kinds]


def run_method(name, parts, records, cache):
    db_recs = [r for r in records if r.split == "db"]
    q_recs = [r for r in records if r.split == "query"]
    if len(parts) == 1:
        kind = parts[0]
        db = IndexedDatabase.build((r.record_id, r.species, cache.get(r.record_id, kind)) for r in db_recs)
        queries = [(cache.get(r.record_id, kind), r.species) for r in q_recs]
    else:
        # z-score each family with database statistics, then concatenate
        stats = [FeatureStats.from_vectors([cache.get(r.record_id, k) for r in db_recs]) for k in parts]

        def joined(rec):
            return combine([cache.get(rec.record_id, k) for k in parts], stats)

        db = IndexedDatabase.build((r.record_id, r.species, joined(r)) for r in db_recs)
        queries = [(joined(r), r.species) for r in q_recs]
    return evaluate(queries, db, method=name)


def run_benchmark(records, cache, kinds=None):
    kinds = kinds if kinds is not None else cache.kinds()
    return [run_method(name, parts, records, cache) for name, parts in methods_for(kinds)]


def report_csv(reports):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["method", "p1", "p3", "p5"])
    for r in reports:
        writer.writerow([r.method, f"{r.p1:.2f}", f"{r.p3:.2f}", f"{r.p5:.2f}"])
    return buf.getvalue()


def report_table(reports):
    width = max([len("Method")] + [len(r.method) for r in reports])
    lines = [f"{'Method':<{width}}  {'P1':>7}  {'P3':>7}  {'P5':>7}"]
    lines.append("-" * len(lines[0]))
    for r in reports:
        lines.append(f"{r.method:<{width}}  {r.p1:6.2f}%  {r.p3:6.2f}%  {r.p5:6.2f}%")
    if reports:
        lines.append(f"({reports[0].query_count} queries)")
    return "\n".join(lines) + "\n"
