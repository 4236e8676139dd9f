"""Partitions, standard Young tableaux and lattice paths.

Diagrams follow the English convention: row index grows downward, column
index grows across.  A partition is stored as its tuple of parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence


class MalformedTableau(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Read the ``"4,2,1"`` form; ``"-"`` (or empty) is the empty partition."""
        text = text.strip()
        if text in ("", "-"):
            return cls()
        return cls(tuple(sorted((int(t) for t in text.split(",")), reverse=True)))

    def __str__(self) -> str:
        return ",".join(map(str, self.parts)) if self.parts else "-"

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def column_lengths(self) -> tuple[int, ...]:
        return conjugate(self).parts

    def multiplicity(self, i: int) -> int:
        return multiplicity(self, i)

    def add_cell(self, column: int) -> "Partition":
        """Grow column ``column`` (1-based) by one cell."""
        cols = list(self.column_lengths())
        if column == len(cols) + 1:
            cols.append(1)
        elif 1 <= column <= len(cols):
            cols[column - 1] += 1
        else:
            raise ValueError(f"column {column} is not addable to {self}")
        return conjugate(Partition(tuple(cols)))


def conjugate(lam: Partition) -> Partition:
    """Column lengths of the diagram, i.e. ``lam'_i = m_i + m_{i+1} + ...``."""
    parts = lam.parts
    if not parts:
        return Partition()
    return Partition(tuple(sum(1 for p in parts if p >= j)
                           for j in range(1, parts[0] + 1)))


def multiplicity(lam: Partition, i: int) -> int:
    if i < 1:
        raise ValueError("i must be >= 1")
    return sum(1 for p in lam.parts if p == i)


def multiplicities(lam: Partition) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in lam.parts:
        out[p] = out.get(p, 0) + 1
    return out


def addable_columns(lam: Partition) -> list[int]:
    """Columns receiving a cell without breaking the partition shape."""
    cols = lam.column_lengths()
    out = [1]
    for s in range(2, len(cols) + 2):
        prev = cols[s - 2]
        cur = cols[s - 1] if s - 1 < len(cols) else 0
        if cur < prev:
            out.append(s)
    return out


def removable_columns(lam: Partition) -> list[int]:
    """Columns whose bottom cell is a removable corner."""
    cols = lam.column_lengths()
    return [s for s in range(1, len(cols) + 1)
            if s == len(cols) or cols[s] < cols[s - 1]]


def remove_cell(lam: Partition, column: int) -> Partition:
    cols = list(lam.column_lengths())
    cols[column - 1] -= 1
    if cols[column - 1] < 0 or any(a < b for a, b in zip(cols, cols[1:])):
        raise ValueError(f"column {column} is not removable from {lam}")
    return conjugate(Partition(tuple(c for c in cols if c)))


def enumerate_partitions(max_size: int, *, max_part: Optional[int] = None,
                         num_parts: Optional[int] = None,
                         size: Optional[int] = None) -> Iterator[Partition]:
    """Yield every partition of size <= max_size meeting the constraints.

    ``max_part`` bounds the largest part and ``num_parts`` fixes the number
    of parts.  Sizes are produced in increasing order; within a size,
    partitions come in lexicographic order of their parts.
    """
    sizes = [size] if size is not None else range(max_size + 1)
    for n in sizes:
        if n > max_size:
            continue
        for parts in _partitions_of(n, n if max_part is None else max_part):
            if num_parts is None or len(parts) == num_parts:
                yield Partition(parts)


def _partitions_of(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    # lexicographically increasing: smallest first part first
    if n == 0:
        yield ()
        return
    for first in range(1, min(n, largest) + 1):
        for rest in _partitions_of(n - first, first):
            yield (first,) + rest


def partition_count(n: int) -> int:
    """Number of partitions of n by the Euler pentagonal recurrence."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


@dataclass(frozen=True)
class StandardTableau:
    """Rows of entries 1..n, strictly increasing along rows and columns."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows if len(r))
        object.__setattr__(self, "rows", rows)
        shape = [len(r) for r in rows]
        if any(a < b for a, b in zip(shape, shape[1:])):
            raise MalformedTableau(f"row lengths not decreasing: {shape}")
        flat = sorted(x for r in rows for x in r)
        if flat != list(range(1, len(flat) + 1)):
            raise MalformedTableau("entries are not 1..n each exactly once")
        for i, r in enumerate(rows):
            if any(a >= b for a, b in zip(r, r[1:])):
                raise MalformedTableau(f"row {i + 1} not increasing")
            if i:
                above = rows[i - 1]
                if any(above[j] >= r[j] for j in range(len(r))):
                    raise MalformedTableau(f"column fails below row {i}")

    @property
    def shape(self) -> Partition:
        return Partition(tuple(len(r) for r in self.rows))

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def entry(self, row: int, col: int) -> int:
        """1-based ``T_(row,col)``."""
        return self.rows[row - 1][col - 1]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


LatticePath = tuple  # tuple[Partition, ...] from the empty partition upward


def tableau_to_path(T: StandardTableau) -> tuple[Partition, ...]:
    where = {}
    for i, row in enumerate(T.rows):
        for j, x in enumerate(row):
            where[x] = (i, j)
    rows: list[int] = []
    path = [Partition()]
    for x in range(1, T.size + 1):
        i, j = where[x]
        if i == len(rows):
            rows.append(0)
        if rows[i] != j:
            raise MalformedTableau(f"entry {x} does not extend a partition")
        rows[i] += 1
        path.append(Partition(tuple(rows)))
    return tuple(path)


def path_to_tableau(path: Sequence[Partition]) -> StandardTableau:
    if not path or path[0].size:
        raise ValueError("a lattice path starts at the empty partition")
    rows: list[list[int]] = []
    for step, (a, b) in enumerate(zip(path, path[1:]), start=1):
        if b.size != a.size + 1:
            raise ValueError("consecutive partitions must differ by one cell")
        pa = a.parts + (0,) * (len(b) - len(a))
        diff = [i for i in range(len(b)) if b[i] != pa[i]]
        if len(diff) != 1 or b[diff[0]] != pa[diff[0]] + 1:
            raise ValueError(f"{b} is not {a} plus one cell")
        i = diff[0]
        if i == len(rows):
            rows.append([])
        rows[i].append(step)
    return StandardTableau(tuple(tuple(r) for r in rows))


def enumerate_tableaux(shape: Partition) -> Iterator[StandardTableau]:
    """All standard tableaux of a given shape (by removing the largest entry)."""
    for path in _paths_to(shape):
        yield path_to_tableau(path)


def _paths_to(lam: Partition) -> Iterator[tuple[Partition, ...]]:
    if lam.size == 0:
        yield (lam,)
        return
    for s in removable_columns(lam):
        mu = remove_cell(lam, s)
        for p in _paths_to(mu):
            yield p + (lam,)


def h_stats(T: StandardTableau) -> list[int]:
    """Gaps between consecutive entries of the first column.

    ``h_m = T_(m+1,1) - T_(m,1) - 1`` for m < k and ``h_k = |T| - T_(k,1)``
    where k is the number of rows.
    """
    first = [r[0] for r in T.rows]
    k = len(first)
    h = [first[m + 1] - first[m] - 1 for m in range(k - 1)]
    if k:
        h.append(T.size - first[-1])
    return h
