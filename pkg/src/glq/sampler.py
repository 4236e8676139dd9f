"""Exact sampling from M_(u,q) with the Young tableau algorithm.

The algorithm flips coins 1, 2, 3, ... forever; coin i shows heads with
probability u/q^i, and each head adds one cell to the growing partition.
Only finitely many coins ever show heads, so the sampler first draws
K, the last coin with a head, by inversion of its exact law

    P(K <= N) = prod_{i>N} (1 - u/q^i),

then runs coins 1..K as independent geometrics (coin K conditioned on at
least one head).  Every random decision is exact: rational probabilities
use big-integer uniform draws, irrational ones use lazily refined
enclosures from :mod:`glq.exactnum`.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Optional

import numpy as np

from .exactnum import (REFINEMENT_CAP_BITS, IntervalEnclosure, LazyUniform,
                       euler_prefactor)
from .measure import STANDARD, MeasureParams
from .partition import Partition, StandardTableau, addable_columns, h_stats


class GuardExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SamplerConfig:
    params: MeasureParams
    seed: int = 0
    stream_id: int = 0
    max_size_guard: int = 100_000

    def __post_init__(self):
        if self.params.mode != STANDARD:
            raise ValueError("the tableau algorithm needs standard mode "
                             "(signed weights are not probabilities)")
        if self.max_size_guard < 1:
            raise ValueError("max_size_guard must be >= 1")


@dataclass
class SampleRecord:
    partition: Partition
    tableau: StandardTableau
    h_stats: list[int]
    coin_head_counts: list[int]

    def to_json(self) -> dict:
        cols = self.partition.column_lengths()
        return {"partition": list(self.partition.parts),
                "size": self.partition.size,
                "k": cols[0] if cols else 0,
                "h": self.h_stats,
                "tableau": self.tableau.to_lists()}

    def to_jsonl(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def make_rng(seed: int, stream_id: int = 0, index: Optional[int] = None
             ) -> random.Random:
    """Independent reproducible stream for each (seed, stream_id[, index])."""
    key = (stream_id,) if index is None else (stream_id, index)
    ss = np.random.SeedSequence(entropy=seed, spawn_key=key)
    state = ss.generate_state(8, np.uint32)
    return random.Random(int.from_bytes(state.tobytes(), "little"))


@lru_cache(maxsize=4096)
def _tail_enclosure(u: Fraction, q: Fraction, N: int, bits: int) -> IntervalEnclosure:
    # prod_{i>N} (1 - u/q^i) = prod_{r>=1} (1 - (u/q^N)/q^r)
    return euler_prefactor(u / q ** N, q, Fraction(1, 1 << bits))


def tail_cdf(params: MeasureParams, N: int, bits: int) -> IntervalEnclosure:
    """Enclosure of ``P(K <= N)`` to width ``2^-bits``."""
    return _tail_enclosure(params.u, params.q, N, bits)


def max_head_coin(cfg: SamplerConfig, rng: random.Random,
                  cap_bits: int = REFINEMENT_CAP_BITS) -> int:
    """Index of the last coin showing a head (0 when no coin does)."""
    U = LazyUniform(rng, cap_bits)
    params = cfg.params
    N = 0
    while True:
        if U.less_than(lambda bits, N=N: tail_cdf(params, N, bits)):
            return N
        N += 1


def bernoulli_rational(p: Fraction, rng: random.Random) -> bool:
    return rng.randrange(p.denominator) < p.numerator


def geometric(p: Fraction, rng: random.Random) -> int:
    """Heads before the first tail, P(head) = p."""
    g = 0
    while bernoulli_rational(p, rng):
        g += 1
    return g


def column_weights(lam: Partition, N: int, q) -> dict[int, int]:
    """Integer weights proportional to the step-2b column law.

    With q = a/b the probabilities are these weights over ``a^N - b^N``.
    """
    q = Fraction(q)
    a, b = q.numerator, q.denominator
    cols = lam.column_lengths()
    k = cols[0] if cols else 0
    if k > N:
        raise ValueError(f"lam'_1 = {k} exceeds coin index {N}")

    def scaled(j: int) -> int:
        # b^N * q^(N-j)
        return a ** (N - j) * b ** j

    out = {1: scaled(k) - b ** N}
    for s in addable_columns(lam)[1:]:
        cur = cols[s - 1] if s - 1 < len(cols) else 0
        out[s] = scaled(cur) - scaled(cols[s - 2])
    return out


def column_probabilities(lam: Partition, N: int, q) -> dict[int, Fraction]:
    q = Fraction(q)
    total = q.numerator ** N - q.denominator ** N
    return {s: Fraction(w, total) for s, w in column_weights(lam, N, q).items()}


def column_choice(lam: Partition, N: int, q, rng: random.Random) -> int:
    weights = column_weights(lam, N, q)
    r = rng.randrange(sum(weights.values()))
    for s, w in weights.items():
        if r < w:
            return s
        r -= w
    raise AssertionError("unreachable")


class _Grower:
    """Partition under construction together with its creation-order tableau."""

    def __init__(self):
        self.cols: list[int] = []
        self.rows: list[list[int]] = []
        self.n = 0

    def add(self, s: int) -> None:
        self.n += 1
        if s == len(self.cols) + 1:
            self.cols.append(0)
        r = self.cols[s - 1]
        if r == len(self.rows):
            self.rows.append([])
        self.rows[r].append(self.n)
        self.cols[s - 1] += 1

    def partition(self) -> Partition:
        return Partition(tuple(len(r) for r in self.rows))

    @property
    def depth(self) -> int:
        return self.cols[0] if self.cols else 0


def sample_partition(cfg: SamplerConfig, rng: Optional[random.Random] = None
                     ) -> SampleRecord:
    """One draw of the tableau algorithm; a fresh stream when rng is None."""
    if rng is None:
        rng = make_rng(cfg.seed, cfg.stream_id)
    u, q = cfg.params.u, cfg.params.q
    K = max_head_coin(cfg, rng)
    grower = _Grower()
    heads = []
    for i in range(1, K + 1):
        p = u / q ** i
        g = geometric(p, rng)
        if i == K:
            g += 1
        heads.append(g)
        for _ in range(g):
            lam = grower.partition()
            grower.add(column_choice(lam, i, q, rng))
            if grower.n > cfg.max_size_guard:
                raise GuardExceeded(f"partition grew past {cfg.max_size_guard} cells")
    T = StandardTableau(tuple(tuple(r) for r in grower.rows))
    return SampleRecord(T.shape, T, h_stats(T), heads)


def sample_stream(cfg: SamplerConfig, count: int, start: int = 0
                  ) -> Iterator[SampleRecord]:
    """Records ``start .. start+count-1`` of the stream fixed by (seed, stream_id).

    Record i draws from its own substream, so any split of the index range
    into shards reproduces exactly the same records.
    """
    for i in range(start, start + count):
        yield sample_partition(cfg, make_rng(cfg.seed, cfg.stream_id, i))


def _sample_shard(cfg: SamplerConfig, start: int, count: int) -> list[SampleRecord]:
    return list(sample_stream(cfg, count, start))


def sample_parallel(cfg: SamplerConfig, count: int, workers: int = 1,
                    chunk: int = 2000) -> Iterator[SampleRecord]:
    """Same records as :func:`sample_stream`, in order, computed by a process pool."""
    if workers <= 1:
        yield from sample_stream(cfg, count)
        return
    from concurrent.futures import ProcessPoolExecutor
    starts = list(range(0, count, chunk))
    sizes = [min(chunk, count - s) for s in starts]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for block in pool.map(_sample_shard, [cfg] * len(starts), starts, sizes):
            yield from block


@dataclass
class SampleStats:
    n: int = 0
    size: Counter = field(default_factory=Counter)
    k: Counter = field(default_factory=Counter)
    h: Counter = field(default_factory=Counter)
    partitions: Counter = field(default_factory=Counter)

    def add(self, rec: SampleRecord) -> None:
        self.n += 1
        cols = rec.partition.column_lengths()
        self.size[rec.partition.size] += 1
        self.k[cols[0] if cols else 0] += 1
        self.h[tuple(rec.h_stats)] += 1
        self.partitions[rec.partition] += 1

    def merge(self, other: "SampleStats") -> "SampleStats":
        return SampleStats(self.n + other.n, self.size + other.size,
                           self.k + other.k, self.h + other.h,
                           self.partitions + other.partitions)

    __add__ = merge

    def h_moments(self, k: int) -> list[tuple[int, float, float]]:
        """Per coordinate m: (count, mean, standard error) among draws with k rows."""
        vecs = [(v, c) for v, c in self.h.items() if len(v) == k]
        total = sum(c for _, c in vecs)
        out = []
        for m in range(k):
            if total == 0:
                out.append((0, float("nan"), float("nan")))
                continue
            s1 = sum(v[m] * c for v, c in vecs)
            s2 = sum(v[m] ** 2 * c for v, c in vecs)
            mean = s1 / total
            var = max(s2 / total - mean ** 2, 0.0)
            se = (var / total) ** 0.5 if total > 1 else float("inf")
            out.append((total, mean, se))
        return out


def collect_stats(records: Iterable[SampleRecord]) -> SampleStats:
    stats = SampleStats()
    for rec in records:
        stats.add(rec)
    return stats
