"""Exhaustive census of GL(n,q), U(n,q) and nilpotent matrices.

Each census walks every group element (or every matrix, for nilpotents),
computes one statistic per element and tallies it.  Work splits into
shards over the index range of the first matrix row; shard tallies are
merged by adding counters, so results do not depend on the worker count.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Mapping, Optional, Union

from .gflinear import (DEFAULT_BUDGET, enumerate_all_rows, enumerate_gl_rows,
                       enumerate_unitary_rows, field_of_order, kernel_chain,
                       mat_mul, partition_from_chain, rank)
from .partition import Partition
from .theorems import GL, GroupSpec

FIXED_DIM = "fixed_dim"
UNIPOTENT_PARTITION = "unipotent_partition"
NILPOTENT_RANK = "nilpotent_rank"
STATISTICS = (FIXED_DIM, UNIPOTENT_PARTITION, NILPOTENT_RANK)

CACHE_HEADER = ["kind", "n", "q", "statistic", "key", "count"]


class CacheError(IOError):
    pass


class CorruptCache(CacheError):
    pass


class CacheMismatch(CacheError):
    pass


Key = Union[int, Partition]


@dataclass
class CensusTable:
    spec: GroupSpec
    statistic: str
    counts: dict
    provenance: str = "enumerated"

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def sorted_items(self) -> list[tuple[Key, int]]:
        return sorted(self.counts.items(), key=lambda kv: _key_sort(kv[0]))

    def __eq__(self, other):
        return (isinstance(other, CensusTable) and self.spec == other.spec
                and self.statistic == other.statistic
                and dict(self.counts) == dict(other.counts))


def _key_sort(key):
    if isinstance(key, Partition):
        return (1, key.size, key.parts)
    if isinstance(key, int):
        return (0, key, ())
    return (2, 0, (str(key),))


def _field_for(spec: GroupSpec):
    return field_of_order(spec.q if spec.kind == GL else spec.q * spec.q)


def _rows_iter(spec: GroupSpec, statistic: str, budget: int, shard):
    F = _field_for(spec)
    if statistic == NILPOTENT_RANK:
        return enumerate_all_rows(spec.n, F, budget, shard)
    if spec.kind == GL:
        return enumerate_gl_rows(spec.n, F, budget, shard)
    return enumerate_unitary_rows(spec.n, spec.q, budget, shard)


def _is_nilpotent(F, rows) -> bool:
    n = len(rows)
    P = rows
    for _ in range(n - 1):
        P = mat_mul(F, P, rows)
        if not any(any(r) for r in P):
            return True
    return not any(any(r) for r in P)


def _census_shard(kind: str, n: int, q: int, statistic: str, budget: int,
                  shard: Optional[tuple[int, int]]) -> Counter:
    spec = GroupSpec(kind, n, q)
    F = _field_for(spec)
    counts: Counter = Counter()
    rows_iter = _rows_iter(spec, statistic, budget, shard)
    if statistic == FIXED_DIM:
        one, sub = 1, F.sub
        for rows in rows_iter:
            N = [[sub[x][one if i == j else 0] for j, x in enumerate(r)]
                 for i, r in enumerate(rows)]
            counts[n - rank(F, N)] += 1
    elif statistic == UNIPOTENT_PARTITION:
        for rows in rows_iter:
            dims = kernel_chain(F, rows)
            if dims and dims[-1] == n or n == 0:
                counts[partition_from_chain(dims)] += 1
    elif statistic == NILPOTENT_RANK:
        for rows in rows_iter:
            if n == 0 or _is_nilpotent(F, rows):
                counts[rank(F, rows)] += 1
    else:
        raise ValueError(f"unknown statistic {statistic!r}")
    return counts


def default_cache_dir() -> Path:
    env = os.environ.get("GLQ_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "glq"


def cache_path(spec: GroupSpec, statistic: str, cache_dir=None) -> Path:
    d = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    return d / f"{spec.kind}-{spec.n}-{spec.q}-{statistic}.csv"


def census(spec: GroupSpec, statistic: str = FIXED_DIM,
           budget: int = DEFAULT_BUDGET, workers: int = 1,
           shards: Optional[int] = None, cache_dir=None) -> CensusTable:
    """Exact tally of ``statistic`` over every element.

    ``unipotent_partition`` keys unipotent elements by Jordan type;
    ``nilpotent_rank`` tallies nilpotent n x n matrices (kind GL) by rank.
    When ``cache_dir`` is given, a stored table is reused and new tables
    are written there.
    """
    if statistic not in STATISTICS:
        raise ValueError(f"unknown statistic {statistic!r}")
    if statistic == NILPOTENT_RANK and spec.kind != GL:
        raise ValueError("nilpotent census is over matrix algebras M_n(F_q); use kind GL")
    if cache_dir is not None:
        path = cache_path(spec, statistic, cache_dir)
        if path.exists():
            return cache_load(spec, statistic, path)
    if shards is None:
        shards = workers
    args = [(spec.kind, spec.n, spec.q, statistic, budget,
             (i, shards) if shards > 1 else None) for i in range(shards)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_census_shard, *zip(*args)))
    else:
        parts = [_census_shard(*a) for a in args]
    total: Counter = Counter()
    for c in parts:
        total.update(c)
    table = CensusTable(spec, statistic, dict(total))
    if cache_dir is not None:
        cache_store(table, cache_path(spec, statistic, cache_dir))
    return table


def nilpotent_census(n: int, q: int, budget: int = DEFAULT_BUDGET,
                     workers: int = 1, cache_dir=None) -> CensusTable:
    return census(GroupSpec(GL, n, q), NILPOTENT_RANK, budget, workers,
                  cache_dir=cache_dir)


def fixed_dim_of_unipotents(table: CensusTable) -> dict[int, int]:
    """Collapse a unipotent-partition table by number of parts (fixed dimension)."""
    if table.statistic != UNIPOTENT_PARTITION:
        raise ValueError("need a unipotent_partition table")
    out: Counter = Counter()
    for lam, c in table.counts.items():
        out[len(lam)] += c
    return dict(out)


@dataclass
class CompareReport:
    spec: GroupSpec
    statistic: str
    passed: bool
    discrepancies: list = field(default_factory=list)
    checked: int = 0

    def to_json(self) -> dict:
        return {"kind": self.spec.kind, "n": self.spec.n, "q": self.spec.q,
                "statistic": self.statistic, "pass": self.passed,
                "checked": self.checked,
                "discrepancies": [{"key": _key_str(k), "observed": o,
                                   "expected": str(e)}
                                  for k, o, e in self.discrepancies]}


Predictor = Union[Mapping, Callable[[Key], Union[int, Fraction]]]


def compare(table: CensusTable, predictor: Predictor, keys=None,
            counts: Optional[Mapping] = None) -> CompareReport:
    """Exact per-key comparison of a census against a closed form.

    ``predictor`` is a mapping or a callable giving the expected count for a
    key.  Keys checked are ``keys`` if given, else the union of observed keys
    and the predictor's keys.  ``counts`` overrides the table's own tally
    (e.g. a collapsed view of it).
    """
    observed = dict(table.counts if counts is None else counts)
    if keys is None:
        keys = set(observed)
        if isinstance(predictor, Mapping):
            keys |= set(predictor)
    bad = []
    keys = sorted(keys, key=_key_sort)
    for key in keys:
        expected = predictor[key] if isinstance(predictor, Mapping) else predictor(key)
        got = observed.get(key, 0)
        if Fraction(expected) != got:
            bad.append((key, got, expected))
    return CompareReport(table.spec, table.statistic, not bad, bad, len(keys))


def _key_str(key) -> str:
    return str(key)


def _parse_key(statistic: str, text: str) -> Key:
    if statistic == UNIPOTENT_PARTITION:
        return Partition.parse(text)
    return int(text)


def _serialize_body(table: CensusTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CACHE_HEADER)
    for key, count in table.sorted_items():
        w.writerow([table.spec.kind, table.spec.n, table.spec.q,
                    table.statistic, _key_str(key), count])
    return buf.getvalue()


def cache_store(table: CensusTable, path) -> Path:
    """Write the table as CSV after a ``# sha256=<hex>`` line covering the body."""
    path = Path(path)
    body = _serialize_body(table)
    digest = hashlib.sha256(body.encode()).hexdigest()
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(path.suffix + f".tmp{os.getpid()}")
        tmp.write_text(f"# sha256={digest}\n" + body)
        os.replace(tmp, path)
    except OSError as exc:
        raise CacheError(f"cannot write {path}: {exc}") from exc
    return path


def read_cache_file(path) -> CensusTable:
    """Parse and checksum a cache file without knowing its group in advance."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CacheError(f"cannot read {path}: {exc}") from exc
    first, _, body = text.partition("\n")
    if not first.startswith("# sha256="):
        raise CorruptCache(f"{path}: missing checksum line")
    if hashlib.sha256(body.encode()).hexdigest() != first[len("# sha256="):].strip():
        raise CorruptCache(f"{path}: checksum mismatch")
    rows = list(csv.reader(io.StringIO(body)))
    if not rows or rows[0] != CACHE_HEADER:
        raise CorruptCache(f"{path}: bad header")
    specs = {(r[0], int(r[1]), int(r[2]), r[3]) for r in rows[1:]}
    if len(specs) != 1:
        raise CorruptCache(f"{path}: expected exactly one table")
    kind, n, q, statistic = specs.pop()
    counts = {_parse_key(statistic, r[4]): int(r[5]) for r in rows[1:]}
    return CensusTable(GroupSpec(kind, n, q), statistic, counts, "cached")


def cache_load(spec: GroupSpec, statistic: str, path) -> CensusTable:
    table = read_cache_file(path)
    if table.spec != spec or table.statistic != statistic:
        raise CacheMismatch(
            f"{path} holds {table.spec.kind}({table.spec.n},{table.spec.q}) "
            f"{table.statistic}, wanted {spec.kind}({spec.n},{spec.q}) {statistic}")
    return table


def table_to_json(table: CensusTable) -> str:
    return json.dumps({"kind": table.spec.kind, "n": table.spec.n, "q": table.spec.q,
                       "statistic": table.statistic, "provenance": table.provenance,
                       "counts": {_key_str(k): c for k, c in table.sorted_items()}})
