"""Finite fields, polynomials and small matrices for the brute-force oracle.

An element of ``F_{p^e}`` is the integer ``c_0 + c_1 p + ... + c_{e-1} p^{e-1}``
packing its coefficient tuple in the power basis of the defining
polynomial's root.  All arithmetic goes through precomputed tables, which
keeps the inner loops of the enumerators cheap for the small fields used
here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

from .partition import Partition, conjugate

DEFAULT_BUDGET = 1 << 26
MAX_FIELD_SIZE = 256


class NotPrime(ValueError):
    pass


class WrongField(ValueError):
    pass


class ZeroConstantTerm(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class ReduciblePolynomial(ValueError):
    pass


class SingularInput(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p^e, or raise NotPrime."""
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1 or not _is_prime(p):
                break
            return p, e
    raise NotPrime(f"{q} is not a prime power")


# polynomial helpers over F_p on coefficient lists (constant first)

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmod_prime(a: list[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _irreducible_prime(m: Sequence[int], p: int) -> bool:
    d = len(m) - 1
    for k in range(1, d // 2 + 1):
        for tail in product(range(p), repeat=k):
            if not _pmod_prime(m, list(tail) + [1], p):
                return False
    return True


def _defining_polynomial(p: int, e: int) -> tuple[int, ...]:
    # least packed value c_0 + c_1 p + ... (constant term varies fastest)
    if e == 1:
        return (0, 1)
    for idx in range(p ** e):
        tail = [(idx // p ** i) % p for i in range(e)]
        if tail[0] == 0:
            continue
        m = tail + [1]
        if _irreducible_prime(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """The field with ``p^e`` elements, realised through lookup tables."""

    def __init__(self, p: int, e: int = 1):
        if not _is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        self.p, self.e = p, e
        self.q = p ** e
        if self.q > MAX_FIELD_SIZE:
            raise ValueError(f"field size {self.q} above table limit {MAX_FIELD_SIZE}")
        self.modulus = _defining_polynomial(p, e)
        Q = self.q
        digits = [self._digits(x) for x in range(Q)]
        self.add = [[self._pack([(a + b) % p for a, b in zip(digits[x], digits[y])])
                     for y in range(Q)] for x in range(Q)]
        self.neg = [self._pack([(-a) % p for a in digits[x]]) for x in range(Q)]
        self.sub = [[self.add[x][self.neg[y]] for y in range(Q)] for x in range(Q)]
        self.mul = [[self._mul_slow(digits[x], digits[y]) for y in range(Q)]
                    for x in range(Q)]
        self.inv = [0] * Q
        for x in range(1, Q):
            for y in range(1, Q):
                if self.mul[x][y] == 1:
                    self.inv[x] = y
                    break
        self.zero, self.one = 0, 1
        self.base_q: Optional[int] = p ** (e // 2) if e % 2 == 0 else None
        if self.base_q is not None:
            self.conj = [self.power(x, self.base_q) for x in range(Q)]
        else:
            self.conj = None

    def __repr__(self):
        return f"GF({self.p}^{self.e})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))

    def __reduce__(self):
        return (make_field, (self.p, self.e))

    def _digits(self, x: int) -> list[int]:
        return [(x // self.p ** i) % self.p for i in range(self.e)]

    def _pack(self, digits: Sequence[int]) -> int:
        return sum(d * self.p ** i for i, d in enumerate(digits))

    def _mul_slow(self, a: Sequence[int], b: Sequence[int]) -> int:
        p = self.p
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        red = _pmod_prime(prod, self.modulus, p) if self.e > 1 else [prod[0] % p]
        return self._pack(red + [0] * (self.e - len(red)))

    def elements(self) -> range:
        return range(self.q)

    def power(self, x: int, k: int) -> int:
        out = 1
        for _ in range(k):
            out = self.mul[out][x]
        return out

    def generator(self) -> int:
        """Least element of multiplicative order q - 1."""
        for g in range(2 if self.q > 2 else 1, self.q):
            x, order = g, 1
            while x != 1:
                x = self.mul[x][g]
                order += 1
            if order == self.q - 1:
                return g
        return 1

    def frobenius_conj(self, x: int) -> int:
        """``x -> x^q`` on ``F_{q^2}``."""
        if self.conj is None:
            raise WrongField(f"{self!r} is not a quadratic extension F_(q^2)")
        return self.conj[x]


@lru_cache(maxsize=None)
def make_field(p: int, e: int = 1) -> FiniteField:
    return FiniteField(p, e)


def field_of_order(q: int) -> FiniteField:
    return make_field(*prime_power(q))


def frobenius_conj(x: int, field: FiniteField) -> int:
    return field.frobenius_conj(x)


@dataclass(frozen=True)
class FqPoly:
    """Polynomial over a finite field, coefficients listed constant term first."""

    field: FiniteField
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        _trim(c)
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monic(cls, field: FiniteField, lower: Sequence[int]) -> "FqPoly":
        return cls(field, tuple(lower) + (1,))

    @classmethod
    def z_minus(cls, field: FiniteField, a: int) -> "FqPoly":
        return cls(field, (field.neg[a], 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __mul__(self, other: "FqPoly") -> "FqPoly":
        F = self.field
        if not self.coeffs or not other.coeffs:
            return FqPoly(F, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                row = F.mul[a]
                for j, b in enumerate(other.coeffs):
                    out[i + j] = F.add[out[i + j]][row[b]]
        return FqPoly(F, tuple(out))

    def __pow__(self, k: int) -> "FqPoly":
        out = FqPoly(self.field, (1,))
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "FqPoly") -> tuple["FqPoly", "FqPoly"]:
        F = self.field
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        a = list(self.coeffs)
        d = other.degree
        inv_lead = F.inv[other.coeffs[-1]]
        quot = [0] * max(len(a) - d, 1)
        while len(a) - 1 >= d and a:
            c = F.mul[a[-1]][inv_lead]
            shift = len(a) - 1 - d
            quot[shift] = c
            for i, b in enumerate(other.coeffs):
                a[shift + i] = F.sub[a[shift + i]][F.mul[c][b]]
            _trim(a)
        return FqPoly(F, tuple(quot)), FqPoly(F, tuple(a))

    def __mod__(self, other: "FqPoly") -> "FqPoly":
        return self.divmod(other)[1]

    def is_irreducible(self) -> bool:
        if self.degree < 1:
            return False
        for d in range(1, self.degree // 2 + 1):
            for g in monic_polynomials(self.field, d):
                if not (self % g).coeffs:
                    return False
        return True

    def __str__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if c == 1 and mono:
                terms.append(mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms) or "0"


def monic_polynomials(field: FiniteField, degree: int) -> Iterator[FqPoly]:
    for tail in product(field.elements(), repeat=degree):
        yield FqPoly(field, tuple(reversed(tail)) + (1,))


def monic_irreducibles(field: FiniteField, degree: int) -> list[FqPoly]:
    return [f for f in monic_polynomials(field, degree) if f.is_irreducible()]


def tilde(phi: FqPoly) -> FqPoly:
    """``z^m phi^q(1/z) / phi(0)^q`` for phi over ``F_{q^2}``."""
    F = phi.field
    if F.conj is None:
        raise WrongField(f"{F!r} is not a quadratic extension")
    if not phi.is_monic:
        raise ValueError("tilde expects a monic polynomial")
    a0 = phi.coeffs[0]
    if a0 == 0:
        raise ZeroConstantTerm("phi(0) must be nonzero")
    inv0 = F.inv[a0]
    m = phi.degree
    # coefficient of z^(m-j) is (alpha_j / alpha_0)^q
    out = [0] * (m + 1)
    for j in range(m + 1):
        out[m - j] = F.conj[F.mul[phi.coeffs[j]][inv0]]
    return FqPoly(F, tuple(out))


@dataclass(frozen=True)
class FqMatrix:
    field: FiniteField
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, field: FiniteField, n: int) -> "FqMatrix":
        return cls(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, field: FiniteField, n: int) -> "FqMatrix":
        return cls(field, tuple((0,) * n for _ in range(n)))

    def __matmul__(self, other: "FqMatrix") -> "FqMatrix":
        return FqMatrix(self.field, mat_mul(self.field, self.rows, other.rows))

    def __sub__(self, other: "FqMatrix") -> "FqMatrix":
        F = self.field
        return FqMatrix(F, tuple(tuple(F.sub[a][b] for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)))

    def __add__(self, other: "FqMatrix") -> "FqMatrix":
        F = self.field
        return FqMatrix(F, tuple(tuple(F.add[a][b] for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)))

    def conj_transpose(self) -> "FqMatrix":
        F = self.field
        if F.conj is None:
            raise WrongField("conjugation needs F_(q^2)")
        n = self.n
        return FqMatrix(F, tuple(tuple(F.conj[self.rows[j][i]] for j in range(n))
                                 for i in range(n)))

    def rank(self) -> int:
        return rank(self.field, self.rows)

    def to_vector(self) -> list[int]:
        """Row-major entries, each the packed base-p coefficient tuple."""
        return [x for r in self.rows for x in r]

    @classmethod
    def from_vector(cls, field: FiniteField, vec: Sequence[int]) -> "FqMatrix":
        n = int(round(len(vec) ** 0.5))
        if n * n != len(vec):
            raise ValueError("vector length is not a square")
        return cls(field, tuple(tuple(vec[i * n:(i + 1) * n]) for i in range(n)))


def mat_mul(F: FiniteField, A, B) -> tuple[tuple[int, ...], ...]:
    add, mul = F.add, F.mul
    cols = list(zip(*B))
    out = []
    for r in A:
        row = []
        for c in cols:
            s = 0
            for a, b in zip(r, c):
                if a and b:
                    s = add[s][mul[a][b]]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def rank(F: FiniteField, rows) -> int:
    """Rank by Gaussian elimination over F."""
    M = [list(r) for r in rows]
    n_rows = len(M)
    if not n_rows:
        return 0
    n_cols = len(M[0])
    mul, sub, inv = F.mul, F.sub, F.inv
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        ip = inv[M[r][c]]
        prow = [mul[ip][x] for x in M[r]]
        M[r] = prow
        for i in range(r + 1, n_rows):
            f = M[i][c]
            if f:
                mf = mul[f]
                M[i] = [sub[x][mf[y]] for x, y in zip(M[i], prow)]
        r += 1
        if r == n_rows:
            break
    return r


def kernel_dim(M: FqMatrix) -> int:
    return M.n - M.rank()


def companion_matrix(phi: FqPoly) -> FqMatrix:
    """Superdiagonal ones, last row ``-alpha_0, ..., -alpha_{m-1}``."""
    if not phi.is_monic or phi.degree < 1:
        raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
    F = phi.field
    m = phi.degree
    rows = [[0] * m for _ in range(m)]
    for i in range(m - 1):
        rows[i][i + 1] = 1
    rows[m - 1] = [F.neg[a] for a in phi.coeffs[:m]]
    return FqMatrix(F, tuple(tuple(r) for r in rows))


def block_diagonal(field: FiniteField, blocks: Sequence[FqMatrix]) -> FqMatrix:
    n = sum(b.n for b in blocks)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, r in enumerate(b.rows):
            rows[off + i][off:off + b.n] = r
        off += b.n
    return FqMatrix(field, tuple(tuple(r) for r in rows))


def class_representative(data: Sequence[tuple[FqPoly, Partition]],
                         n: Optional[int] = None) -> FqMatrix:
    """Block-diagonal matrix of companions ``C(phi_i^{lam_{i,j}})``."""
    if not data:
        raise DimensionMismatch("empty class data")
    field = data[0][0].field
    seen = set()
    blocks = []
    for phi, lam in data:
        if phi.coeffs == (0, 1):
            raise ValueError("the polynomial z carries no class data")
        if not phi.is_irreducible():
            raise ReduciblePolynomial(str(phi))
        if phi.coeffs in seen:
            raise ValueError(f"polynomial {phi} listed twice")
        seen.add(phi.coeffs)
        for part in lam:
            blocks.append(companion_matrix(phi ** part))
    dim = sum(b.n for b in blocks)
    if n is not None and dim != n:
        raise DimensionMismatch(f"class data has dimension {dim}, expected {n}")
    return block_diagonal(field, blocks)


def kernel_chain(F: FiniteField, rows) -> list[int]:
    """``dim ker (alpha - I)^j`` for j = 1, 2, ... until it stabilises."""
    n = len(rows)
    N = tuple(tuple(F.sub[x][int(i == j)] for j, x in enumerate(r))
              for i, r in enumerate(rows))
    dims = []
    P = N
    prev = 0
    for _ in range(n):
        d = n - rank(F, P)
        if d == prev:
            break
        dims.append(d)
        prev = d
        if d == n:
            break
        P = mat_mul(F, P, N)
    return dims


def partition_from_chain(dims: Sequence[int]) -> Partition:
    cols = [b - a for a, b in zip([0] + list(dims), dims)]
    return conjugate(Partition(tuple(cols)))


def unipotent_partition(alpha: FqMatrix) -> Partition:
    """The partition attached to ``z - 1`` in the rational canonical form."""
    if alpha.rank() < alpha.n:
        raise SingularInput("alpha is not invertible")
    return partition_from_chain(kernel_chain(alpha.field, alpha.rows))


def unitary_order(n: int, q: int) -> int:
    out = q ** (n * (n - 1) // 2)
    for i in range(1, n + 1):
        out *= q ** i - (-1) ** i
    return out


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


# -- enumeration -----------------------------------------------------------

class _VectorSpace:
    """Vectors of F^n indexed lexicographically, with add/scale tables."""

    def __init__(self, F: FiniteField, n: int):
        self.F, self.n = F, n
        Q = F.q
        self.vectors = list(product(range(Q), repeat=n))
        index = {v: i for i, v in enumerate(self.vectors)}
        self.add = [[index[tuple(F.add[a][b] for a, b in zip(v, w))]
                     for w in self.vectors] for v in self.vectors]
        self.scale = [[index[tuple(F.mul[c][a] for a in v)] for v in self.vectors]
                      for c in range(Q)]


@lru_cache(maxsize=None)
def _space(F: FiniteField, n: int) -> _VectorSpace:
    return _VectorSpace(F, n)


def _check_budget(Q: int, n: int, budget: int) -> None:
    if Q ** (n * n) > budget:
        raise BudgetExceeded(f"{Q}^{n * n} candidate matrices exceed budget {budget}")


def _shard(items: list, shard: Optional[tuple[int, int]]) -> list:
    if shard is None:
        return items
    i, m = shard
    lo = len(items) * i // m
    hi = len(items) * (i + 1) // m
    return items[lo:hi]


def enumerate_gl_rows(n: int, F: FiniteField, budget: int = DEFAULT_BUDGET,
                      shard: Optional[tuple[int, int]] = None
                      ) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Raw row tuples of every invertible matrix, row-major lexicographic."""
    _check_budget(F.q, n, budget)
    if n == 0:
        yield ()
        return
    S = _space(F, n)
    vecs = S.vectors
    firsts = _shard(list(range(1, len(vecs))), shard)
    nonzero_scalars = range(1, F.q)

    def grow(span: set, chosen: list, starts: Iterable[int]):
        depth = len(chosen)
        for v in starts:
            if v in span:
                continue
            chosen.append(v)
            if depth + 1 == n:
                yield tuple(vecs[i] for i in chosen)
            else:
                new = set(span)
                for s in span:
                    for c in nonzero_scalars:
                        new.add(S.add[s][S.scale[c][v]])
                yield from grow(new, chosen, range(len(vecs)))
            chosen.pop()

    yield from grow({0}, [], firsts)


def enumerate_gl(n: int, F: FiniteField, budget: int = DEFAULT_BUDGET,
                 shard: Optional[tuple[int, int]] = None) -> Iterator[FqMatrix]:
    for rows in enumerate_gl_rows(n, F, budget, shard):
        yield FqMatrix(F, rows)


def hermitian_form(F: FiniteField, x: Sequence[int], y: Sequence[int]) -> int:
    """``sum_k x_k conj(y_k)``."""
    s = 0
    for a, b in zip(x, y):
        s = F.add[s][F.mul[a][F.conj[b]]]
    return s


def enumerate_unitary_rows(n: int, q: int, budget: int = DEFAULT_BUDGET,
                           shard: Optional[tuple[int, int]] = None
                           ) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Raw rows of every alpha in U(n,q) (identity Hermitian form), lexicographic."""
    F = field_of_order(q * q)
    _check_budget(F.q, n, budget)
    if n == 0:
        yield ()
        return
    vecs = list(product(range(F.q), repeat=n))
    units = [i for i, v in enumerate(vecs) if hermitian_form(F, v, v) == 1]
    cache: dict[tuple[int, int], bool] = {}

    def orth(i: int, j: int) -> bool:
        key = (i, j)
        if key not in cache:
            cache[key] = hermitian_form(F, vecs[i], vecs[j]) == 0
        return cache[key]

    # pool: unit vectors orthogonal to every chosen row
    def grow(chosen: list, starts: list[int], pool: list[int]):
        for v in starts:
            chosen.append(v)
            if len(chosen) == n:
                yield tuple(vecs[i] for i in chosen)
            else:
                nxt = [w for w in pool if orth(w, v)]
                yield from grow(chosen, nxt, nxt)
            chosen.pop()

    yield from grow([], _shard(units, shard), units)


def enumerate_unitary(n: int, q: int, budget: int = DEFAULT_BUDGET,
                      shard: Optional[tuple[int, int]] = None) -> Iterator[FqMatrix]:
    F = field_of_order(q * q)
    for rows in enumerate_unitary_rows(n, q, budget, shard):
        yield FqMatrix(F, rows)


def enumerate_all_rows(n: int, F: FiniteField, budget: int = DEFAULT_BUDGET,
                       shard: Optional[tuple[int, int]] = None
                       ) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every n x n matrix over F, row-major lexicographic."""
    _check_budget(F.q, n, budget)
    if n == 0:
        yield ()
        return
    rows = list(product(range(F.q), repeat=n))
    for first in _shard(rows, shard):
        for rest in product(rows, repeat=n - 1):
            yield (first,) + rest
