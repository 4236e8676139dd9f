"""Exact rationals and rigorous enclosures of infinite products.

Rationals are plain :class:`fractions.Fraction` values.  Irrational
quantities such as ``prod_{r>=1} (1 - u/q^r)`` are carried as
:class:`IntervalEnclosure` objects whose endpoints are exact rationals
(dyadic, after outward rounding).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

Rational = Fraction

REFINEMENT_CAP_BITS = 4096


class InvalidParameter(ValueError):
    pass


class RefinementExhausted(RuntimeError):
    """An exact decision needed more precision than the configured cap."""


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


@dataclass(frozen=True)
class IntervalEnclosure:
    """Closed interval ``[lo, hi]`` with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "IntervalEnclosure":
        x = as_rational(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "IntervalEnclosure") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def gap(self, other: "IntervalEnclosure") -> Fraction:
        """Distance between the two intervals (0 when they overlap)."""
        return max(Fraction(0), max(self.lo, other.lo) - min(self.hi, other.hi))

    def overlaps(self, other: "IntervalEnclosure", eps=0) -> bool:
        return self.gap(other) <= eps

    def _coerce(self, other) -> "IntervalEnclosure":
        if isinstance(other, IntervalEnclosure):
            return other
        return IntervalEnclosure.point(other)

    def __add__(self, other):
        other = self._coerce(other)
        return IntervalEnclosure(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return IntervalEnclosure(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        products = (self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi)
        return IntervalEnclosure(min(products), max(products))

    __rmul__ = __mul__

    def outward(self, bits: int) -> "IntervalEnclosure":
        """Smallest enclosure with endpoints on the grid 2^-bits containing this one."""
        scale = 1 << bits
        lo = self.lo.numerator * scale // self.lo.denominator
        hi = -((-self.hi.numerator * scale) // self.hi.denominator)
        return IntervalEnclosure(Fraction(lo, scale), Fraction(hi, scale))

    def __str__(self):
        return f"[{self.lo},{self.hi}]"


def _floor_div(a: int, b: int) -> int:
    return a // b


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _bits_for(eps: Fraction) -> int:
    """Smallest b with 2^-b <= eps."""
    b = 0
    while Fraction(1, 1 << b) > eps:
        b += 1
    return b


def _check_params(u: Fraction, q: Fraction) -> None:
    if not (0 <= u <= 1):
        raise InvalidParameter(f"u must lie in [0,1], got {u}")
    if q <= 1:
        raise InvalidParameter(f"q must exceed 1, got {q}")


def _signed_product(u: Fraction, q: Fraction, R: int, bits: int,
                    alternating: bool) -> tuple[int, int]:
    """Outward-rounded bounds on prod_{r<=R} (1 +- u/q^r), scaled by 2^bits."""
    scale = 1 << bits
    lo = hi = scale
    un, ud = u.numerator, u.denominator
    qn, qd = q.numerator, q.denominator
    qn_pow, qd_pow = 1, 1
    for r in range(1, R + 1):
        qn_pow *= qn
        qd_pow *= qd
        # factor = 1 + sign * un*qd^r / (ud*qn^r)
        den = ud * qn_pow
        num = un * qd_pow
        if alternating and r % 2 == 0:
            fnum = den + num
        else:
            fnum = den - num
        lo = _floor_div(lo * fnum, den)
        hi = _ceil_div(hi * fnum, den)
    return lo, hi


def _tail_sum(u: Fraction, q: Fraction, R: int) -> Fraction:
    """sum_{r>R} u/q^r = u / (q^R (q-1))."""
    return u / (q ** R * (q - 1))


def _prefactor(u, q, eps, alternating: bool) -> IntervalEnclosure:
    u, q, eps = as_rational(u), as_rational(q), as_rational(eps)
    _check_params(u, q)
    if eps <= 0:
        raise InvalidParameter("eps must be positive")
    if u == 0:
        return IntervalEnclosure.point(1)
    R = 1
    while 8 * _tail_sum(u, q, R) > eps or 2 * _tail_sum(u, q, R) > 1:
        R += 1
    guard = 3
    while True:
        bits = _bits_for(eps / (8 * (R + 1))) + guard
        lo, hi = _signed_product(u, q, R, bits, alternating)
        scale = 1 << bits
        plo, phi = Fraction(lo, scale), Fraction(hi, scale)
        t = _tail_sum(u, q, R)
        tail_lo = 1 - t
        # for alternating signs the tail is <= exp(t) <= 1 + 2t (t <= 1)
        tail_hi = 1 + 2 * t if alternating else Fraction(1)
        out = IntervalEnclosure(plo * tail_lo, phi * tail_hi)
        if out.width <= eps:
            return out
        # partial product exceeded 1 (alternating, q near 1): refine both
        R = 2 * R
        guard += 4


def euler_prefactor(u, q, eps) -> IntervalEnclosure:
    """Enclose ``prod_{r>=1} (1 - u/q^r)`` to width at most ``eps``.

    >>> euler_prefactor(0, 2, Fraction(1, 10**6))
    IntervalEnclosure(lo=Fraction(1, 1), hi=Fraction(1, 1))
    """
    return _prefactor(u, q, eps, alternating=False)


def signed_prefactor(u, q, eps) -> IntervalEnclosure:
    """Enclose ``prod_{r>=1} (1 + (-1)^r u/q^r)`` to width at most ``eps``."""
    return _prefactor(u, q, eps, alternating=True)


def stong_term(i: int, q) -> Fraction:
    """The i-th term ``(-1)^i / ((q^i - 1) ... (q - 1))`` of the Euler expansion."""
    if i < 0:
        raise InvalidParameter("i must be non-negative")
    q = as_rational(q)
    den = Fraction(1)
    for j in range(1, i + 1):
        den *= q ** j - 1
    return Fraction((-1) ** i) / den


class LazyUniform:
    """A uniform variate on [0,1) whose binary digits are drawn on demand.

    ``rng`` must provide ``getrandbits``.  After ``b`` digits the variate is
    known to lie in ``[m/2^b, (m+1)/2^b)``.
    """

    def __init__(self, rng, cap_bits: int = REFINEMENT_CAP_BITS, chunk: int = 64):
        self.rng = rng
        self.cap_bits = cap_bits
        self.chunk = chunk
        self.bits = 0
        self.m = 0

    def extend(self, nbits: int) -> None:
        if self.bits + nbits > self.cap_bits:
            nbits = self.cap_bits - self.bits
            if nbits <= 0:
                raise RefinementExhausted(
                    f"needed more than {self.cap_bits} bits to separate")
        self.m = (self.m << nbits) | self.rng.getrandbits(nbits)
        self.bits += nbits

    def less_than(self, target: Callable[[int], IntervalEnclosure]) -> bool:
        """Decide ``U < p`` where ``target(b)`` encloses p to width <= 2^-b."""
        if self.bits == 0:
            self.extend(self.chunk)
        while True:
            enc = target(self.bits + 2)
            scale = 1 << self.bits
            # U < p certainly when (m+1)/2^b <= lo
            if (self.m + 1) <= enc.lo * scale:
                return True
            if self.m >= enc.hi * scale:
                return False
            self.extend(min(self.bits, self.cap_bits - self.bits) or 1)


def refinable(fn: Callable[[Fraction], IntervalEnclosure]
              ) -> Callable[[int], IntervalEnclosure]:
    """Adapt an ``eps -> enclosure`` function to ``bits -> enclosure``."""
    cache: dict[int, IntervalEnclosure] = {}

    def target(bits: int) -> IntervalEnclosure:
        if bits not in cache:
            cache[bits] = fn(Fraction(1, 1 << bits))
        return cache[bits]

    return target


def exact_bernoulli(target, rng, cap_bits: int = REFINEMENT_CAP_BITS) -> bool:
    """Return True with probability exactly p.

    ``target`` is either an :class:`IntervalEnclosure` of zero width or a
    callable ``bits -> enclosure`` refining p to width ``<= 2^-bits``.
    """
    if isinstance(target, IntervalEnclosure):
        enc = target
        if enc.width:
            raise ValueError("a fixed enclosure must be a point; pass a refiner")
        target = lambda bits: enc  # noqa: E731
    return LazyUniform(rng, cap_bits).less_than(target)


def partial_products(u, q) -> Iterator[Fraction]:
    """Exact partial products ``prod_{r<=R} (1 - u/q^r)`` for R = 0, 1, ..."""
    u, q = as_rational(u), as_rational(q)
    p = Fraction(1)
    r = 0
    yield p
    while True:
        r += 1
        p *= 1 - u / q ** r
        yield p
