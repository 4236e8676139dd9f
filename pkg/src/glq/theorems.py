"""Closed forms for unipotent, fixed-space and nilpotent counts in GL and U.

Finite-n quantities are exact rationals or integers; n -> infinity limits
come back as :class:`~glq.exactnum.IntervalEnclosure` objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .exactnum import (IntervalEnclosure, as_rational, euler_prefactor,
                       signed_prefactor)
from .gflinear import gl_order, unitary_order
from .measure import (MeasureParams, SIGNED, STANDARD, gl_order_formal,
                      normalized_weight)
from .partition import Partition, enumerate_partitions
from .qseries import partial_sum_transform, size_gen_normalized

GL = "GL"
U = "U"


class RangeError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    n: int
    q: int

    def __post_init__(self):
        kind = self.kind.upper()
        if kind not in (GL, U):
            raise ValueError(f"unknown group kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if self.q < 2:
            raise ValueError("q must be >= 2")

    @property
    def order(self) -> int:
        return group_order(self.kind, self.n, self.q)


def group_order(kind: str, n: int, q: int) -> int:
    return gl_order(n, q) if kind.upper() == GL else unitary_order(n, q)


def unipotent_count(spec: GroupSpec) -> int:
    return spec.q ** (spec.n * (spec.n - 1))


def sylow_p_order(spec: GroupSpec) -> int:
    return spec.q ** comb(spec.n, 2)


def steinberg_check(spec: GroupSpec) -> bool:
    return unipotent_count(spec) == sylow_p_order(spec) ** 2


def _check_range(k: int, n: int) -> None:
    if not 0 <= k <= n:
        raise RangeError(f"need 0 <= k <= n, got k={k}, n={n}")


def p_gl_n(k: int, n: int, q) -> Fraction:
    """Chance that a uniform element of GL(n,q) has a k-dimensional fixed space."""
    _check_range(k, n)
    q = as_rational(q)
    total = Fraction(0)
    for i in range(n - k + 1):
        total += Fraction((-1) ** i) * q ** comb(i, 2) / (q ** (k * i) * gl_order_formal(i, q))
    return total / gl_order_formal(k, q)


def p_u_n(k: int, n: int, q: int) -> Fraction:
    """Fixed-space distribution for U(n,q) acting on F_(q^2)^n."""
    _check_range(k, n)
    mq = Fraction(-q)
    total = Fraction(0)
    for i in range(n - k + 1):
        total += Fraction((-1) ** i) * mq ** comb(i, 2) / (mq ** (k * i) * unitary_order(i, q))
    return total / unitary_order(k, q)


def _scaled_enclosure(prefactor_fn, c: Fraction, eps) -> IntervalEnclosure:
    eps = as_rational(eps)
    return prefactor_fn(eps / max(c, Fraction(1))) * c


def p_gl_inf(k: int, q, eps) -> IntervalEnclosure:
    """Limit of :func:`p_gl_n` as n grows, enclosed to width eps."""
    if k < 0:
        raise RangeError("k must be >= 0")
    q = as_rational(q)
    c = q ** (-k * k)
    for s in range(1, k + 1):
        c /= (1 - q ** (-s)) ** 2
    return _scaled_enclosure(lambda e: euler_prefactor(1, q, e), c, eps)


def p_u_inf(k: int, q, eps) -> IntervalEnclosure:
    """Limit of :func:`p_u_n`; prefactor ``prod_{r>=1}(1 + (-1/q)^r)``."""
    if k < 0:
        raise RangeError("k must be >= 0")
    q = as_rational(q)
    c = q ** (-k * k)
    for s in range(1, k + 1):
        c /= 1 - q ** (-2 * s)
    return _scaled_enclosure(lambda e: signed_prefactor(1, q, e), c, eps)


def lusztig_nilpotent(n: int, k: int, q) -> int:
    """Number of nilpotent n x n matrices over F_q of rank n - k."""
    if n < 1:
        raise RangeError("n must be >= 1")
    _check_range(k, n)
    q = as_rational(q)
    val = gl_order_formal(n, q) / gl_order_formal(k, q)
    for j in range(k, n):
        val *= 1 - q ** (-j)
    val /= q ** (n - k)
    for j in range(1, n - k + 1):
        val /= 1 - q ** (-j)
    return _as_count(val)


def lusztig_unitary_unipotent(n: int, k: int, q: int) -> int:
    """Number of unipotent elements of U(n,q) whose fixed space has dimension k."""
    _check_range(k, n)
    mq = Fraction(-q)
    val = Fraction(unitary_order(n, q), unitary_order(k, q))
    for j in range(k, n):
        val *= 1 - mq ** (-j)
    val /= Fraction(q) ** (n - k)
    for j in range(1, n - k + 1):
        val /= 1 - mq ** (-j)
    return _as_count(val)


def _as_count(val: Fraction) -> int:
    if val.denominator != 1 or val < 0:
        raise ArithmeticError(f"closed form produced a non-count {val}")
    return val.numerator


def unipotent_class_count(lam: Partition, n: int, q: int, kind: str = GL) -> int:
    """Size of the unipotent class with Jordan type ``lam``.

    ``|G| * w(lam) / u^|lam|`` with the weight taken at (u, q) for GL and at
    (-u, -q) for U.
    """
    if lam.size != n:
        raise ValueError(f"|lam| = {lam.size} differs from n = {n}")
    kind = kind.upper()
    mode = STANDARD if kind == GL else SIGNED
    w = normalized_weight(lam, MeasureParams(1, q, mode))
    return _as_count(group_order(kind, n, q) * w)


def cycleindex_unipotent_coeff(n: int, q: int) -> int:
    """``|GL(n,q)| [v^n] prod_{r>=1} 1/(1 - v/q^r)``."""
    return _as_count(gl_order(n, q) * size_gen_normalized(q, max(n, 0))[n])


# Rogers-Ramanujan type identity for partitions with parts < k

@dataclass
class RRReport:
    k: int
    q: Fraction
    B: int
    eps: Fraction
    left: IntervalEnclosure
    right: IntervalEnclosure
    residues: tuple[int, ...]
    passed: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"identity": "rr", "k": self.k, "q": str(self.q), "B": self.B,
                "eps": str(self.eps), "left": str(self.left),
                "right": str(self.right), "residues": list(self.residues),
                "gap": str(self.left.gap(self.right)), "pass": self.passed}


def _residue_product(q: Fraction, modulus: int, residues, eps: Fraction
                     ) -> IntervalEnclosure:
    """``prod_{r>=1, r mod M in residues} (1 - q^-r)``."""
    res = {r % modulus for r in residues}
    R = 1
    while q ** (-R) / (q - 1) > eps / 4:
        R += 1
    p = Fraction(1)
    for r in range(1, R + 1):
        if r % modulus in res:
            p *= 1 - q ** (-r)
    # omitted factors lie in (0,1]; their product is >= 1 - sum q^-r
    tail = q ** (-R) / (q - 1)
    return IntervalEnclosure(p * (1 - tail), p)


def rr_check(k: int, q, B: int = 40, eps=Fraction(1, 10**6),
             residues=None) -> RRReport:
    """Partial partition sum versus product side, both enclosed.

    Left: prefactor * sum of weights over partitions with parts < k and size
    <= B, plus the whole size-distribution mass beyond B as a one-sided tail.
    """
    if k < 2:
        raise RangeError("k must be >= 2")
    q = as_rational(q)
    eps = as_rational(eps)
    params = MeasureParams(1, q)
    modulus = 2 * k + 1
    if residues is None:
        residues = (0, k, k + 1)
    pref = euler_prefactor(1, q, eps / 16)
    restricted = sum((normalized_weight(lam, params)
                      for lam in enumerate_partitions(B, max_part=k - 1)), Fraction(0))
    mass_upto_B = partial_sum_transform(size_gen_normalized(q, B), B)
    left_core = pref * restricted
    tail_hi = max(Fraction(0), 1 - pref.lo * mass_upto_B)
    left = IntervalEnclosure(left_core.lo, left_core.hi + tail_hi)
    right = _residue_product(q, modulus, residues, eps / 4)
    # keep endpoints printable; widens each side by at most 2^-80
    left, right = left.outward(80), right.outward(80)
    passed = left.overlaps(right, eps) and left.width <= eps and right.width <= eps
    return RRReport(k, q, B, eps, left, right, tuple(residues), passed,
                    {"tail_bound": tail_hi})
