"""Truncated power series in one variable with exact rational coefficients.

The variable ``v`` stands for the product ``u*x``; after dividing out the
prefactor, every generating function used here depends on u and x only
through ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .exactnum import as_rational, stong_term
from .measure import MeasureParams, gl_order_formal, normalized_weight
from .partition import enumerate_partitions

DEFAULT_D = 12


class NonUnitInversion(ZeroDivisionError):
    pass


class TruncationExceeded(IndexError):
    pass


class TruncSeries:
    """Coefficients ``c_0..c_D`` of a series known modulo ``v^(D+1)``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence, D: Optional[int] = None):
        cs = [as_rational(c) for c in coeffs]
        if D is not None:
            cs = (cs + [Fraction(0)] * (D + 1))[:D + 1]
        if not cs:
            raise ValueError("a series needs at least the constant coefficient")
        self.coeffs = tuple(cs)

    @property
    def D(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def one(cls, D: int) -> "TruncSeries":
        return cls([1], D)

    @classmethod
    def from_function(cls, fn: Callable[[int], Fraction], D: int) -> "TruncSeries":
        return cls([fn(i) for i in range(D + 1)])

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, TruncSeries) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"TruncSeries({[str(c) for c in self.coeffs]})"

    def _common(self, other: "TruncSeries") -> int:
        return min(self.D, other.D)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        D = self._common(other)
        return TruncSeries([self[i] + other[i] for i in range(D + 1)])

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        D = self._common(other)
        return TruncSeries([self[i] - other[i] for i in range(D + 1)])

    def scalar(self, c) -> "TruncSeries":
        c = as_rational(c)
        return TruncSeries([c * a for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scalar(other)
        D = self._common(other)
        out = [Fraction(0)] * (D + 1)
        for i, a in enumerate(self.coeffs[:D + 1]):
            if a:
                for j in range(D + 1 - i):
                    out[i + j] += a * other[j]
        return TruncSeries(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by ``v^k`` keeping the truncation order."""
        return TruncSeries([0] * k + list(self.coeffs), self.D)

    def invert_unit(self) -> "TruncSeries":
        c0 = self[0]
        if c0 == 0:
            raise NonUnitInversion("constant term is zero")
        out = [1 / c0]
        for n in range(1, self.D + 1):
            acc = sum(self[i] * out[n - i] for i in range(1, n + 1))
            out.append(-acc / c0)
        return TruncSeries(out)


mul = TruncSeries.__mul__
add = TruncSeries.__add__
scalar = TruncSeries.scalar
invert_unit = TruncSeries.invert_unit


def euler_numerator_series(q, D: int = DEFAULT_D) -> TruncSeries:
    """``prod_{r>=1} (1 - v/q^r)`` through its Euler expansion."""
    return TruncSeries.from_function(lambda i: stong_term(i, q), D)


def hw_denominator_series(k, y, D: int = DEFAULT_D) -> TruncSeries:
    """``1 / ((1-a y)(1-a y^2)...(1-a y^k))`` as a series in ``a``.

    ``k`` may be ``None`` (or ``math.inf``) for the infinite product.
    """
    y = as_rational(y)
    if not abs(y) < 1:
        raise ValueError("need |y| < 1")
    infinite = k is None or k == float("inf")
    out = [Fraction(1)]
    c = Fraction(1)
    for m in range(1, D + 1):
        num = 1 if infinite else 1 - y ** (k + m - 1)
        c = c * y * num / (1 - y ** m)
        out.append(c)
    return TruncSeries(out)


def finite_product_series(factors: Sequence[Fraction], D: int) -> TruncSeries:
    """``prod_r (1 - c_r v)`` for the listed coefficients."""
    s = TruncSeries.one(D)
    for c in factors:
        s = s * TruncSeries([1, -as_rational(c)], D)
    return s


def size_gen_normalized(q, D: int = DEFAULT_D) -> TruncSeries:
    """``prod_{r>=1} 1/(1 - v/q^r)``; coefficient n sums ``w(lam)/u^n`` over |lam| = n."""
    return hw_denominator_series(None, 1 / as_rational(q), D)


def interp_normalized(k: int, q, D: int = DEFAULT_D) -> TruncSeries:
    """``v^k / |GL(k,q)| * prod_{r<=k} 1/(1 - v/q^r)``."""
    q = as_rational(q)
    base = hw_denominator_series(k, 1 / q, D) if k else TruncSeries.one(D)
    return base.shift(k).scalar(1 / gl_order_formal(k, q))


def signed_size_gen_normalized(q, D: int = DEFAULT_D) -> TruncSeries:
    """``prod_{r>=1} 1/(1 + (-1)^r v/q^r)``, the (-u,-q) size series in v = ux."""
    # a = -v, y = -1/q in the Hardy-Wright expansion
    s = hw_denominator_series(None, -1 / as_rational(q), D)
    return TruncSeries([c * (-1) ** i for i, c in enumerate(s.coeffs)])


def partial_sum_transform(series: TruncSeries, n: int) -> Fraction:
    """``[v^n] f(v)/(1-v)``, the n-th prefix sum of coefficients."""
    if n > series.D:
        raise TruncationExceeded(f"n = {n} beyond truncation {series.D}")
    return sum(series.coeffs[:n + 1], Fraction(0))


def partition_sum_series(q, D: int, predicate=None, mode: str = "standard") -> TruncSeries:
    """Coefficient n = sum of ``w(lam)/u^n`` over |lam| = n (optionally filtered)."""
    params = MeasureParams(1, q, mode)
    out = [Fraction(0)] * (D + 1)
    for lam in enumerate_partitions(D):
        if predicate is None or predicate(lam):
            out[lam.size] += normalized_weight(lam, params)
    return TruncSeries(out)


@dataclass
class IdentityReport:
    identity: str
    q: Fraction
    D: int
    passed: bool
    mismatch_index: Optional[int] = None
    params: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"identity": self.identity, "q": str(self.q), "D": self.D,
               "pass": self.passed}
        if self.mismatch_index is not None:
            out["mismatch_index"] = self.mismatch_index
        out.update({k: v if isinstance(v, int) else str(v)
                    for k, v in self.params.items()})
        return out


def compare_series(a: TruncSeries, b: TruncSeries) -> Optional[int]:
    """First index where the coefficients differ, or None."""
    D = min(a.D, b.D)
    for i in range(D + 1):
        if a[i] != b[i]:
            return i
    return None


def identity_sides(name: str, q, D: int, k: Optional[int] = None
                   ) -> tuple[TruncSeries, TruncSeries]:
    """Two independently built series that the named identity says agree."""
    q = as_rational(q)
    if name == "sizegen":
        return size_gen_normalized(q, D), partition_sum_series(q, D)
    if name == "sizegen-signed":
        return signed_size_gen_normalized(q, D), partition_sum_series(q, D, mode="signed")
    if name == "interp":
        if k is None:
            raise ValueError("interp needs k")
        return (interp_normalized(k, q, D),
                partition_sum_series(q, D, lambda lam: len(lam) == k))
    if name == "hw":
        if k is None:
            raise ValueError("hw needs k")
        y = 1 / q
        lhs = finite_product_series([y ** r for r in range(1, k + 1)], D)
        return lhs * hw_denominator_series(k, y, D), TruncSeries.one(D)
    if name == "stong":
        return euler_numerator_series(q, D) * size_gen_normalized(q, D), TruncSeries.one(D)
    if name == "prodgl-specialized":
        lhs = size_gen_normalized(q, D)
        rhs = TruncSeries([q ** (n * (n - 1)) / gl_order_formal(n, q)
                           for n in range(D + 1)])
        return lhs, rhs
    if name == "produn-specialized":
        from .gflinear import unitary_order
        lhs = signed_size_gen_normalized(q, D)
        rhs = TruncSeries([Fraction(q ** (n * (n - 1))) / unitary_order(n, q)
                           for n in range(D + 1)])
        return lhs, rhs
    raise ValueError(f"unknown identity {name!r}")


IDENTITIES = ("sizegen", "sizegen-signed", "interp", "hw", "stong", "prodgl-specialized",
              "produn-specialized")


def verify_identity(name: str, q, D: int = DEFAULT_D, k: Optional[int] = None,
                    perturb: Optional[int] = None) -> IdentityReport:
    """Compare both sides coefficientwise, exactly.

    ``perturb`` adds 1 to that coefficient of the left side (negative control).
    """
    lhs, rhs = identity_sides(name, q, D, k)
    if perturb is not None:
        cs = list(lhs.coeffs)
        cs[perturb] += 1
        lhs = TruncSeries(cs)
    idx = compare_series(lhs, rhs)
    params = {"k": k} if k is not None else {}
    return IdentityReport(name, as_rational(q), D, idx is None, idx, params)
