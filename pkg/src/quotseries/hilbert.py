"""Descendent series of Hilbert schemes of points (rank one).

Under the substitution ``-q = t / ((1-t) prod_i (1 - x_i t))`` the series
becomes the closed form

    W(t) = prod_i (1 - x_i t)^(-alphaM_i) (1-t)^(-M2) (1+t)^(-MK) a(t)^K2,
    a(t) = -(q/t)^-2 dq/dt,

so everything reduces to series algebra in ``t`` followed by one
composition with ``t(q)``.  The inputs are intersection numbers only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import NotInvertibleError, TruncatedSeries, int_power, jet_ring, series_invert, series_revert

__all__ = [
    "MonomialOutOfRangeError",
    "SurfaceNumerics",
    "qt_change_of_vars",
    "hilbert_w_series",
    "hilbert_descendent_series",
    "universal_series_extract",
    "p1xp1_coefficient",
    "p1xp1_series",
]


class MonomialOutOfRangeError(ValueError):
    """A requested jet monomial exceeds the jet caps."""


@dataclass(frozen=True)
class SurfaceNumerics:
    """``M^2``, ``M.K``, ``K^2`` and ``c_1(alpha_i).M`` with one jet cap per ``alpha_i``."""

    M2: int
    MK: int
    K2: int
    alphaM: tuple = ()
    jet_caps: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "alphaM", tuple(int(v) for v in self.alphaM))
        object.__setattr__(self, "jet_caps", tuple(int(v) for v in self.jet_caps))
        if len(self.alphaM) != len(self.jet_caps):
            raise ValueError(f"{len(self.alphaM)} classes alpha_i but {len(self.jet_caps)} jet caps")
        if any(k < 0 for k in self.jet_caps):
            raise ValueError("jet caps must be non-negative")

    @property
    def ring(self):
        return jet_ring(self.jet_caps)


def _denominator(ring, order: int) -> TruncatedSeries:
    """``(1 - t) prod_i (1 - x_i t)`` in ``t``."""
    d = TruncatedSeries([1, -1], order, ring, "t")
    for m in range(ring.nvars):
        d = d * TruncatedSeries([ring.one, -ring.variable(m)], order, ring, "t")
    return d


def qt_change_of_vars(jet_caps: Sequence[int], order: int):
    """``(q(t), t(q), a(t))`` to the given order over the jet ring of ``jet_caps``."""
    ring = jet_ring(tuple(jet_caps))
    # q/t to order + 1 so that dq/dt still reaches t^order
    q_over_t = -series_invert(_denominator(ring, order + 1))
    q_of_t = TruncatedSeries._raw(ring, (ring.zero,) + q_over_t.coeffs[:-1], "t")
    dq = q_of_t.derivative()
    a = -(int_power(q_over_t.truncate(order), -2) * dq)
    q_trunc = q_of_t.truncate(order)
    t_of_q = series_revert(q_trunc).rename("q")
    return q_trunc, t_of_q, a


def hilbert_w_series(s: SurfaceNumerics, order: int) -> TruncatedSeries:
    """``W(q; x)`` to ``q^order``."""
    ring = s.ring
    _, t_of_q, a = qt_change_of_vars(s.jet_caps, order)
    W = int_power(TruncatedSeries([1, -1], order, ring, "t"), -s.M2)
    W = W * int_power(TruncatedSeries([1, 1], order, ring, "t"), -s.MK)
    W = W * int_power(a, s.K2)
    for m, am in enumerate(s.alphaM):
        W = W * int_power(TruncatedSeries([ring.one, -ring.variable(m)], order, ring, "t"), -am)
    return W(t_of_q).rename("q")


def hilbert_descendent_series(s: SurfaceNumerics, monomial: Sequence[int], order: int) -> TruncatedSeries:
    """The coefficient of ``x^monomial`` in :func:`hilbert_w_series`, a series over ``QQ``."""
    monomial = tuple(int(k) for k in monomial)
    if len(monomial) != len(s.jet_caps):
        raise MonomialOutOfRangeError(f"monomial {monomial} needs {len(s.jet_caps)} exponents")
    if any(k < 0 or k > cap for k, cap in zip(monomial, s.jet_caps)):
        raise MonomialOutOfRangeError(f"monomial {monomial} exceeds jet caps {s.jet_caps}")
    return hilbert_w_series(s, order).jet_coefficient(monomial)


def universal_series_extract(p1_series: Mapping[tuple, TruncatedSeries]):
    """Split genus-zero series ``W(d) = A^-1 prod_i C_i^(d_i)`` into ``A`` and the ``C_i``.

    ``p1_series`` maps degree vectors to series.  The zero vector is
    required; each unit vector ``e_i`` that is present determines ``C_i``
    (absent ones give ``None``).  The log-linear system
    ``log W(d) = -log A + sum_i d_i log C_i`` is then solved, and every further
    degree vector supplied is checked against the solution.
    """
    if not p1_series:
        raise ValueError("no input series")
    ell = len(next(iter(p1_series)))
    zero = (0,) * ell
    if zero not in p1_series:
        raise ValueError("the degree vector (0, .., 0) is required")
    for d, w in p1_series.items():
        if not w.is_unit():
            raise NotInvertibleError(f"series at d={d} has a non-unit constant term")
    A = series_invert(p1_series[zero])
    C = []
    for i in range(ell):
        unit = tuple(1 if k == i else 0 for k in range(ell))
        w = p1_series.get(unit)
        C.append(None if w is None else w * A)
    for d, w in p1_series.items():
        if d == zero or (sum(d) == 1 and set(d) <= {0, 1}):
            continue
        if any(k and C[i] is None for i, k in enumerate(d)):
            raise ValueError(f"d={d} uses a factor C_i whose unit vector was not supplied")
        model = series_invert(A)
        for i, k in enumerate(d):
            if k:
                model = model * int_power(C[i], k)
        if model.truncate(min(model.order, w.order)) != w.truncate(min(model.order, w.order)):
            raise ValueError(f"series at d={d} is not A^-1 prod C_i^d_i")
    return A, C


def p1xp1_coefficient(n: int):
    """``[h zeta^n] (1+2h)/(1-h) (1+zeta)^(n+1) ((1-zeta+2h)/(1+zeta-h))^(n-1)``."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    ring = jet_ring((1,))
    h = ring.variable(0)
    prefactor = (1 + 2 * h) * (1 - h).inverse()
    base = TruncatedSeries([1, 1], n, ring, "zeta")
    ratio = TruncatedSeries([1 + 2 * h, -ring.one], n, ring, "zeta") * series_invert(
        TruncatedSeries([1 - h, ring.one], n, ring, "zeta"))
    total = int_power(base, n + 1) * int_power(ratio, n - 1) * prefactor
    return total.coeffs[n].coefficient((1,))


def p1xp1_series(order: int) -> TruncatedSeries:
    """``Z = sum_{n>=1} q^n (-1)^(n-1) p1xp1_coefficient(n)``."""
    coeffs = [0] + [(-1) ** (n - 1) * p1xp1_coefficient(n) for n in range(1, order + 1)]
    return TruncatedSeries(coeffs, order)
