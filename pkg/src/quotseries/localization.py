"""Torus-fixed-point sum for the punctual Quot scheme of P^1.

The generating series

    W(q; x) = sum_n q^n (-1)^(nN + C(N,2))
              sum_{n_1+..+n_N=n} [h_1^n_1 .. h_N^n_N] Phi_1^n_1 .. Phi_N^n_N Psi

is evaluated literally: every fixed locus P^n_1 x .. x P^n_N contributes one
coefficient extraction.  This is the brute-force route that the closed form in
:mod:`quotseries.lagrange` is checked against.

At fixed numeric weights the sum is the *equivariant* integral, which still
depends on the weights whenever the integrand has components above the top
degree (it always does here: total Chern classes are inhomogeneous).
:func:`quot_equivariant_series` returns that weight-dependent series;
:func:`quot_oracle_series` returns its exact limit at zero weights, the
actual descendent series.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from gmpy2 import mpq

from .core import (QQ, Jet, JetRing, MultiSeries, TruncatedSeries, int_power, jet_ring,
                   series_invert, to_q)
from .weightlimit import limit_along_ray

__all__ = [
    "DegenerateWeightsError",
    "QuotProblem",
    "Composition",
    "compositions",
    "default_weights",
    "phi_series",
    "psi_series",
    "fixed_locus_contribution",
    "quot_equivariant_series",
    "quot_oracle_series",
]

log = logging.getLogger(__name__)

DEFAULT_ORDER = 24


class DegenerateWeightsError(ValueError):
    """Two weights coincide or differ by +-1, so some fixed-locus factor has no inverse."""


def default_weights(N: int) -> tuple[mpq, ...]:
    """``w_i = 2^i``; all pairwise differences are at least 2 in absolute value."""
    return tuple(mpq(2 ** i) for i in range(1, N + 1))


def check_weights(weights: Sequence) -> None:
    for a, b in itertools.combinations(weights, 2):
        if b - a in (0, 1, -1):
            raise DegenerateWeightsError(
                f"weights {a} and {b} differ by {b - a}; differences 0, 1, -1 are degenerate"
            )


@dataclass(frozen=True)
class QuotProblem:
    """Rank ``N``, torus weights, line bundles O(d_m) on P^1 and their jet caps."""

    N: int
    weights: tuple = None
    degrees: tuple = ()
    jet_caps: tuple = ()
    order: int = DEFAULT_ORDER

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"N must be positive, got {self.N}")
        weights = default_weights(self.N) if self.weights is None else tuple(to_q(w) for w in self.weights)
        if len(weights) != self.N:
            raise ValueError(f"need {self.N} weights, got {len(weights)}")
        check_weights(weights)
        degrees = tuple(int(d) for d in self.degrees)
        caps = tuple(int(k) for k in self.jet_caps)
        if len(degrees) != len(caps):
            raise ValueError(f"{len(degrees)} degrees but {len(caps)} jet caps")
        if any(k < 0 for k in caps):
            raise ValueError("jet caps must be non-negative")
        if self.order < 0:
            raise ValueError("order must be non-negative")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "degrees", degrees)
        object.__setattr__(self, "jet_caps", caps)

    @property
    def ell(self) -> int:
        return len(self.degrees)

    @property
    def ring(self) -> JetRing:
        return jet_ring(self.jet_caps)

    @property
    def sign(self) -> int:
        """``(-1)^C(N,2)``."""
        return -1 if (self.N * (self.N - 1) // 2) % 2 else 1

    def with_weights(self, weights) -> "QuotProblem":
        return QuotProblem(self.N, tuple(weights), self.degrees, self.jet_caps, self.order)

    def with_order(self, order: int) -> "QuotProblem":
        return QuotProblem(self.N, self.weights, self.degrees, self.jet_caps, order)


@dataclass(frozen=True)
class Composition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"composition parts must be non-negative: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)


def compositions(n: int, N: int) -> Iterator[Composition]:
    """All ``(n_1..n_N)`` with sum ``n``, in lexicographic order."""
    if N == 1:
        yield Composition((n,))
        return
    for first in range(n + 1):
        for rest in compositions(n - first, N - 1):
            yield Composition((first,) + rest.parts)


def _linear(c0, c1, order: int, ring) -> TruncatedSeries:
    """The series ``c0 + c1*h`` (coefficients may be jets)."""
    return TruncatedSeries([c0, c1], order, ring, "h")


def phi_series(problem: QuotProblem, i: int, cap: int) -> TruncatedSeries:
    """``Phi_i(h)`` expanded to ``h^cap`` over the jet ring (``i`` is 1-based)."""
    if not 1 <= i <= problem.N:
        raise IndexError(f"weight index {i} outside 1..{problem.N}")
    ring = problem.ring
    w = problem.weights
    wi = w[i - 1]
    out = TruncatedSeries.one(cap, ring, "h")
    for j, wj in enumerate(w, start=1):
        out = out * _linear(1 + wi - wj, -1, cap, ring)
        if j != i:
            out = out * series_invert(_linear(wj - wi, 1, cap, ring))
    for m in range(problem.ell):
        x = ring.variable(m)
        # 1 + x (w_i - h)
        out = out * _linear(ring.one + x * wi, -x, cap, ring)
    return out


def _psi_single(problem: QuotProblem, i: int, cap: int) -> TruncatedSeries:
    """The factors of Psi that involve only ``h_i``."""
    ring = problem.ring
    w = problem.weights
    wi = w[i]
    out = TruncatedSeries.one(cap, ring, "h")
    for j, wj in enumerate(w):
        out = out * _linear(1 + wj - wi, 1, cap, ring)
        if j != i:
            out = out * series_invert(_linear(wj - wi, 1, cap, ring))
    for m, d in enumerate(problem.degrees):
        x = ring.variable(m)
        base = _linear(ring.one + x * wi, -x, cap, ring)
        out = out * int_power(base, -1 - d) * (ring.one + x * wi) ** (d + 1)
    return out


def _psi_pair(wi, wj, cap: int) -> TruncatedSeries:
    """Pair factor for ``i < j`` as a series in ``u = h_i - h_j``:
    ``(u + w_j - w_i)^2 (1 + u + w_j - w_i)^-1 (1 - u + w_i - w_j)^-1``."""
    u = lambda c0, c1: TruncatedSeries([c0, c1], cap, QQ, "u")
    out = u(wj - wi, 1) * u(wj - wi, 1)
    out = out * series_invert(u(1 + wj - wi, 1))
    out = out * series_invert(u(1 + wi - wj, -1))
    return out


def psi_series(problem: QuotProblem, caps: Sequence[int], max_total: int | None = None) -> MultiSeries:
    """``Psi(h_1..h_N)`` with descendent factors, truncated at ``caps``
    (and optionally at total degree ``max_total``)."""
    caps = tuple(caps)
    N = problem.N
    if len(caps) != N:
        raise ValueError(f"need {N} caps, got {len(caps)}")
    scalar = MultiSeries.constant(QQ.one, caps, QQ, max_total)
    for i, j in itertools.combinations(range(N), 2):
        form = [0] * N
        form[i], form[j] = 1, -1
        # (h_i - h_j)^k reaches h_i^a h_j^b only for k = a + b
        top = caps[i] + caps[j] if max_total is None else min(caps[i] + caps[j], max_total)
        scalar = scalar * scalar.substitute_linear(_psi_pair(problem.weights[i], problem.weights[j], top), form)
    psi = scalar.change_ring(problem.ring)
    for i in range(N):
        psi = psi.mul_univariate(i, _psi_single(problem, i, caps[i]))
    return psi


class _FixedLocusSum:
    """Caches Phi_i powers and Psi for one problem."""

    def __init__(self, problem: QuotProblem, psi: MultiSeries | None = None):
        self.problem = problem
        self._psi = psi
        self._phi = {}
        self._powers = {}

    @cached_property
    def psi(self) -> MultiSeries:
        if self._psi is None:
            N = self.problem.N
            self._psi = psi_series(self.problem, (self.problem.order,) * N, self.problem.order)
        return self._psi

    def phi_power(self, i: int, n: int) -> TruncatedSeries:
        key = (i, n)
        hit = self._powers.get(key)
        if hit is None:
            phi = self._phi.get(i)
            if phi is None:
                phi = self._phi[i] = phi_series(self.problem, i + 1, self.problem.order)
            hit = self._powers[key] = int_power(phi.truncate(n), n)
        return hit

    def extract(self, parts: tuple) -> Jet:
        """``[h^parts] prod Phi_i^parts_i * Psi`` by contracting one axis at a time."""
        ring = self.problem.ring
        # restrict Psi to the box below `parts`
        box = {e: c for e, c in self.psi.terms.items()
               if all(a <= b for a, b in zip(e, parts))}
        for axis in range(len(parts) - 1, -1, -1):
            n_ax = parts[axis]
            pw = self.phi_power(axis, n_ax).coeffs
            nxt: dict = {}
            for e, c in box.items():
                k = n_ax - e[axis]
                coef = pw[k]
                if not coef:
                    continue
                key = e[:axis]
                v = nxt.get(key)
                p = c * coef
                nxt[key] = p if v is None else v + p
            box = nxt
        return box.get((), ring.zero)

    def contribution(self, parts: tuple) -> Jet:
        n = sum(parts)
        N = self.problem.N
        sign = -1 if (n * N + N * (N - 1) // 2) % 2 else 1
        val = self.extract(parts)
        return -val if sign < 0 else val


def fixed_locus_contribution(problem: QuotProblem, c: Composition, psi: MultiSeries | None = None) -> Jet:
    """Signed contribution ``(-1)^(nN+C(N,2)) [h^c] prod Phi_i^c_i Psi`` of one fixed locus.

    Without a precomputed ``psi`` the caps are set to the composition itself.
    """
    if len(c.parts) != problem.N:
        raise ValueError(f"composition {c.parts} has the wrong number of parts for N={problem.N}")
    if psi is None:
        psi = psi_series(problem, c.parts)
    else:
        if any(p > cap for p, cap in zip(c.parts, psi.caps)) or (
                psi.max_total is not None and c.n > psi.max_total):
            raise ValueError(f"Psi caps {psi.caps} do not cover composition {c.parts}")
    return _FixedLocusSum(problem.with_order(max(problem.order, c.n)), psi).contribution(c.parts)


def _phi_power_table(problem: QuotProblem, i: int) -> list:
    """``[h^k] Phi_i^c`` as ``table[c][k]`` for ``k <= c <= order``."""
    order = problem.order
    phi = phi_series(problem, i + 1, order)
    table = [[problem.ring.one]]
    power = TruncatedSeries.one(order, problem.ring, "h")
    for c in range(1, order + 1):
        power = power * phi
        table.append(power.coeffs[: c + 1])
    return table


def quot_equivariant_series(problem: QuotProblem) -> TruncatedSeries:
    """The fixed-locus sum at the problem's weights, to ``q^order``.

    Rather than extracting each composition separately, the ``h``-axes of
    Psi are contracted one at a time against ``[h^(c-e)] Phi^c`` while the
    running total ``c_i + .. + c_N`` is tracked, which serves every ``n`` at
    once.  :func:`fixed_locus_contribution` is the per-locus reference.
    """
    N, order, ring = problem.N, problem.order, problem.ring
    psi = psi_series(problem, (order,) * N, order)
    state: dict = {}
    for e, c in psi.terms.items():
        state[e + (0,)] = c
    for axis in range(N - 1, -1, -1):
        table = _phi_power_table(problem, axis)
        nxt: dict = {}
        for key, val in state.items():
            head, e, m = key[:axis], key[axis], key[-1]
            room = order - sum(head) - m
            for c in range(e, room + 1):
                coef = table[c][c - e]
                if not coef:
                    continue
                k = head + (m + c,)
                p = val * coef
                v = nxt.get(k)
                nxt[k] = p if v is None else v + p
        state = nxt
    coeffs = []
    for n in range(order + 1):
        val = state.get((n,), ring.zero)
        sign = -1 if (n * N + N * (N - 1) // 2) % 2 else 1
        coeffs.append(-val if sign < 0 else val)
    return TruncatedSeries(coeffs, order, ring, "q")


def quot_oracle_series(problem: QuotProblem) -> TruncatedSeries:
    """``W(q; x)`` to ``q^order``: the zero-weight limit of the fixed-locus sum.

    The limit is taken along the ray through ``problem.weights``; the result
    does not depend on that choice.
    """
    return limit_along_ray(problem.weights, problem.order, problem.ring,
                           lambda w: quot_equivariant_series(problem.with_weights(w)))
