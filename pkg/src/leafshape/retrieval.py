"""Euclidean nearest-neighbor ranking and top-k (P1/P3/P5) scoring."""
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatchError,
    EmptyDatabaseError,
    InsufficientResultsError,
)
from .features import DescriptorKind, FeatureVector

TOP_K = (1, 3, 5)


def euclidean_distance(q, t):
    if q.kind != t.kind or len(q) != len(t):
        raise DimensionMismatchError(
            f"cannot compare {q.kind.value}[{len(q)}] with {t.kind.value}[{len(t)}]"
        )
    return float(np.sqrt(np.sum((q.values - t.values) ** 2)))


@dataclass(frozen=True)
class FeatureStats:
    """Per-dimension mean and standard deviation over a database."""

    mean: np.ndarray
    std: np.ndarray

    @classmethod
    def identity(cls, dim):
        return cls(np.zeros(dim), np.ones(dim))

    @classmethod
    def from_vectors(cls, vectors):
        data = np.vstack([v.values for v in vectors])
        return cls(data.mean(axis=0), data.std(axis=0))

    def standardize(self, values):
        values = np.asarray(values, dtype=np.float64)
        if values.shape[-1] != len(self.mean):
            raise DimensionMismatchError(
                f"statistics have {len(self.mean)} dimensions, vector has {values.shape[-1]}"
            )
        safe = np.where(self.std > 0, self.std, 1.0)
        return np.where(self.std > 0, (values - self.mean) / safe, 0.0)


def combine(vectors, stats):
    """Concatenate z-scored vectors into one COMBINED vector.

    ``stats[i]`` standardizes ``vectors[i]``; a dimension with zero spread
    maps to 0.
    """
    if not vectors:
        raise ValueError("nothing to combine")
    if len(stats) != len(vectors):
        raise DimensionMismatchError("need one FeatureStats per vector")
    parts = [s.standardize(v.values) for v, s in zip(vectors, stats)]
    return FeatureVector(DescriptorKind.COMBINED, np.concatenate(parts))


@dataclass(frozen=True)
class Entry:
    record_id: str
    species: str
    vector: FeatureVector


@dataclass(frozen=True)
class Match:
    record_id: str
    species: str
    distance: float


@dataclass(frozen=True)
class IndexedDatabase:
    """Immutable reference set of labeled vectors of a single kind.

    When ``stats`` is given, database and query vectors are both z-scored
    with it before distances are taken.
    """

    entries: tuple
    kind: DescriptorKind
    stats: FeatureStats = None
    _matrix: np.ndarray = field(default=None, repr=False, compare=False)

    @classmethod
    def build(cls, items, stats=None):
        """``items``: iterable of ``(record_id, species, FeatureVector)``."""
        entries = tuple(Entry(str(rid), str(sp), vec) for rid, sp, vec in items)
        if not entries:
            raise EmptyDatabaseError("database has no entries")
        kind = entries[0].vector.kind
        dim = len(entries[0].vector)
        for e in entries:
            if not e.species:
                raise ValueError(f"record {e.record_id} has an empty species label")
            if e.vector.kind != kind or len(e.vector) != dim:
                raise DimensionMismatchError(f"record {e.record_id} does not match {kind.value}[{dim}]")
        if stats is not None and len(stats.mean) != dim:
            raise DimensionMismatchError("statistics do not match database dimensionality")
        matrix = np.vstack([e.vector.values for e in entries])
        if stats is not None:
            matrix = stats.standardize(matrix)
        return cls(entries=entries, kind=kind, stats=stats, _matrix=matrix)

    def __len__(self):
        return len(self.entries)

    @property
    def dim(self):
        return self._matrix.shape[1]


def rank(query, db):
    """All database entries ordered by ``(distance, record_id)``."""
    if len(db) == 0:
        raise EmptyDatabaseError("database has no entries")
    if query.kind != db.kind or len(query) != db.dim:
        raise DimensionMismatchError(
            f"query {query.kind.value}[{len(query)}] vs database {db.kind.value}[{db.dim}]"
        )
    q = query.values if db.stats is None else db.stats.standardize(query.values)
    dist = np.sqrt(np.sum((db._matrix - q) ** 2, axis=1))
    order = sorted(range(len(db)), key=lambda i: (dist[i], db.entries[i].record_id))
    return [Match(db.entries[i].record_id, db.entries[i].species, float(dist[i])) for i in order]


def precision_at_k(results, true_species, k):
    """True iff one of the ``k`` nearest results has the query's species."""
    if len(results) < k:
        raise InsufficientResultsError(f"need {k} results, have {len(results)}")
    return any(m.species == true_species for m in results[:k])


@dataclass(frozen=True)
class PerformanceReport:
    method: str
    query_count: int
    relevant: dict

    def percent(self, k):
        return 100.0 * self.relevant[k] / self.query_count

    @property
    def p1(self):
        return self.percent(1)

    @property
    def p3(self):
        return self.percent(3)

    @property
    def p5(self):
        return self.percent(5)


def evaluate(queries, db, method=None, ks=TOP_K):
    """Score ``queries`` (``(FeatureVector, species)`` pairs) against ``db``.

    ``p_k = 100 * (#queries with the right species in the top k) / #queries``.
    """
    queries = list(queries)
    if not queries:
        raise ValueError("no queries")
    relevant = {k: 0 for k in ks}
    for vector, species in queries:
        results = rank(vector, db)
        for k in ks:
            relevant[k] += precision_at_k(results, species, k)
    return PerformanceReport(method or db.kind.value, len(queries), relevant)
