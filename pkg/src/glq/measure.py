"""The partition measures M_(u,q) and their Young-lattice decomposition.

``M_(u,q)(lam) = prod_{r>=1}(1 - u/q^r) * w(lam)`` where the rational part
``w`` is :func:`normalized_weight`.  In signed mode every formula is
evaluated at ``(-u, -q)``; the prefactor then becomes
``prod_{r>=1}(1 + (-1)^r u/q^r)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactnum import (IntervalEnclosure, InvalidParameter, as_rational,
                       euler_prefactor, signed_prefactor)
from .partition import (Partition, multiplicities,
                        removable_columns, remove_cell, tableau_to_path,
                        StandardTableau)

STANDARD = "standard"
SIGNED = "signed"

PATH_SUM_LIMIT = 30


class SizeLimitExceeded(ValueError):
    pass


@dataclass(frozen=True)
class MeasureParams:
    u: Fraction
    q: Fraction
    mode: str = STANDARD

    def __post_init__(self):
        object.__setattr__(self, "u", as_rational(self.u))
        object.__setattr__(self, "q", as_rational(self.q))
        if self.mode not in (STANDARD, SIGNED):
            raise InvalidParameter(f"unknown mode {self.mode!r}")
        if not (0 < self.u <= 1):
            raise InvalidParameter(f"u must lie in (0,1], got {self.u}")
        if self.q <= 1:
            raise InvalidParameter(f"q must exceed 1, got {self.q}")

    @property
    def eff_u(self) -> Fraction:
        return -self.u if self.mode == SIGNED else self.u

    @property
    def eff_q(self) -> Fraction:
        return -self.q if self.mode == SIGNED else self.q

    def prefactor(self, eps) -> IntervalEnclosure:
        if self.mode == SIGNED:
            return signed_prefactor(self.u, self.q, eps)
        return euler_prefactor(self.u, self.q, eps)


def gl_order_formal(m: int, t) -> Fraction:
    """``prod_{i<m} (t^m - t^i)``: |GL(m,t)| when t is a prime power."""
    t = as_rational(t)
    out = Fraction(1)
    tm = t ** m
    for i in range(m):
        out *= tm - t ** i
    return out


def _weight(lam: Partition, u: Fraction, q: Fraction) -> Fraction:
    mult = multiplicities(lam)
    keys = sorted(mult)
    # 2[sum_{h<i} h m_h m_i + 1/2 sum_i (i-1) m_i^2], always an integer
    expo = 0
    for a, h in enumerate(keys):
        for i in keys[a + 1:]:
            expo += 2 * h * mult[h] * mult[i]
        expo += (h - 1) * mult[h] ** 2
    den = q ** expo
    for i in keys:
        den *= gl_order_formal(mult[i], q)
    return u ** lam.size / den


def normalized_weight(lam: Partition, params: MeasureParams) -> Fraction:
    """Rational part of the measure: ``M(lam) / prefactor``."""
    return _weight(lam, params.eff_u, params.eff_q)


def normalized_weight_conjugate_form(lam: Partition, params: MeasureParams) -> Fraction:
    """Same quantity through ``u^|lam| / (q^{sum lam'_j^2} prod_i prod_{j<=m_i}(1-q^-j))``."""
    u, q = params.eff_u, params.eff_q
    den = q ** sum(c * c for c in lam.column_lengths())
    for m in multiplicities(lam).values():
        for j in range(1, m + 1):
            den *= 1 - q ** (-j)
    return u ** lam.size / den


def measure_value(lam: Partition, params: MeasureParams, eps) -> IntervalEnclosure:
    """Enclosure of ``M(lam)``; relative width at most ``eps``."""
    w = normalized_weight(lam, params)
    eps = as_rational(eps)
    return params.prefactor(eps) * w


def lattice_weight(lam: Partition, s: int, params: MeasureParams) -> Fraction:
    """Weight of the Young-lattice edge adding a cell to column ``s``."""
    if s < 1:
        raise ValueError(f"invalid column {s}")
    u, q = params.eff_u, params.eff_q
    cols = lam.column_lengths()

    def col(j: int) -> int:
        return cols[j - 1] if j <= len(cols) else 0

    k = col(1)
    if s == 1:
        return u / (q ** k * (q ** (k + 1) - 1))
    if col(s) == col(s - 1):
        return Fraction(0)
    return u * (q ** (-col(s)) - q ** (-col(s - 1))) / (q ** k - 1)


def total_out_weight(lam: Partition, params: MeasureParams) -> Fraction:
    """Sum of lattice weights out of ``lam``.

    ``u/(q-1)`` from the empty partition and ``uq/(q^{lam'_1+1}-1)`` otherwise.
    """
    u, q = params.eff_u, params.eff_q
    if lam.size == 0:
        return u / (q - 1)
    k = lam.column_lengths()[0]
    return u * q / (q ** (k + 1) - 1)


def path_sum(lam: Partition, params: MeasureParams,
             limit: int = PATH_SUM_LIMIT) -> Fraction:
    """Sum over lattice paths from the empty partition of edge-weight products."""
    if lam.size > limit:
        raise SizeLimitExceeded(f"|lam| = {lam.size} exceeds limit {limit}")

    @lru_cache(maxsize=None)
    def f(mu: Partition) -> Fraction:
        if mu.size == 0:
            return Fraction(1)
        total = Fraction(0)
        for s in removable_columns(mu):
            nu = remove_cell(mu, s)
            total += f(nu) * lattice_weight(nu, s, params)
        return total

    return f(lam)


def path_weight(path, params: MeasureParams) -> Fraction:
    """Product of lattice weights along one path."""
    out = Fraction(1)
    for a, b in zip(path, path[1:]):
        out *= lattice_weight(a, _added_column(a, b), params)
    return out


def _added_column(a: Partition, b: Partition) -> int:
    ca, cb = a.column_lengths(), b.column_lengths()
    for j in range(len(cb)):
        if j >= len(ca) or ca[j] != cb[j]:
            return j + 1
    raise ValueError(f"{b} does not extend {a}")


def tableau_probability(T: StandardTableau, params: MeasureParams,
                        eps) -> IntervalEnclosure:
    """Enclosure of the chance that the tableau algorithm emits ``T``."""
    if params.mode != STANDARD:
        raise InvalidParameter("tableau probabilities need standard mode")
    return params.prefactor(as_rational(eps)) * path_weight(tableau_to_path(T), params)




__all__ = [
    "MeasureParams", "STANDARD", "SIGNED", "SizeLimitExceeded",
    "gl_order_formal", "normalized_weight", "normalized_weight_conjugate_form",
    "measure_value", "lattice_weight", "total_out_weight", "path_sum",
    "path_weight", "tableau_probability",
]
