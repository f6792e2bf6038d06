"""Closed-form evaluation of the Quot series through Lagrange-Buermann.

The localization sum collapses to ``W = (-1)^C(N,2) Psi/K`` evaluated at
``h_i = g_i + w_i``, where the ``g_i`` are the roots of

    P(g) = prod_j (g + w_j) - q prod_j (g + w_j - 1) prod_m (1 - x_m g)

with ``g_i(0) = -w_i``.  Two evaluations are offered:

* :func:`w_equivariant_closed_form` works at the problem's generic weights,
  root by root.  It must agree with the fixed-locus sum at the same weights.
* :func:`w_closed_form` sets the weights to zero.  The roots then all start
  at 0 and are only Puiseux series, so nothing is done root by root: every
  factor of Psi/K is written as a symmetric function, computed from the
  power sums of the roots, which in turn come from the coefficients ``e_i``
  of the monic factor of ``P`` (the e/f recursion).
"""

from __future__ import annotations

import itertools
import logging
from math import comb
from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .core import (JetRing, NotInvertibleError, TruncatedSeries, int_power, jet_ring,
                   series_exp, series_invert, series_log, to_q)
from .localization import QuotProblem

__all__ = [
    "RootSeries",
    "EFFactorization",
    "p_polynomial",
    "x_function",
    "solve_root_series",
    "k_factor",
    "psi_at_roots",
    "w_equivariant_closed_form",
    "ef_factorization",
    "ef_recursion",
    "ef_specialized_check",
    "power_sums_from_e",
    "w_closed_form",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RootSeries:
    """Root ``g_i`` (1-based index) of ``P`` with ``g_i(0) = -w_i``."""

    index: int
    series: TruncatedSeries


@dataclass(frozen=True)
class EFFactorization:
    """``P(g) = (g^N + e_{N-1} g^{N-1} + .. + e_0)(f_l g^l + .. + f_0)``."""

    e: tuple
    f: tuple

    def product(self) -> list:
        """Coefficients of the product in ``g``, lowest degree first."""
        full_e = list(self.e) + [None]
        out = []
        N, ell = len(self.e), len(self.f) - 1
        for deg in range(N + ell + 1):
            acc = None
            for a in range(max(0, deg - ell), min(N, deg) + 1):
                fb = self.f[deg - a]
                term = fb if a == N else full_e[a] * fb
                acc = term if acc is None else acc + term
            out.append(acc)
        return out


def _q_linear(c0, c1, order: int, ring) -> TruncatedSeries:
    return TruncatedSeries([c0, c1], order, ring, "q")


def _poly_mul(a: list, b: list) -> list:
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            p = x * y
            out[i + j] = p if out[i + j] is None else out[i + j] + p
    return out


def p_polynomial(N: int, weights: Sequence, degrees_count: int, ring: JetRing, order: int) -> list:
    """``P_j`` for ``j = 0..N+l`` as q-series (each is ``a + b q``)."""
    one = ring.one
    first = [one]
    second = [one]
    for w in weights:
        first = _poly_mul(first, [one * w, one])
        second = _poly_mul(second, [one * (w - 1), one])
    for m in range(degrees_count):
        second = _poly_mul(second, [one, -ring.variable(m)])
    size = N + degrees_count + 1
    first += [ring.zero] * (size - len(first))
    return [_q_linear(first[j], -second[j], order, ring) for j in range(size)]


def x_function(problem: QuotProblem, g: TruncatedSeries) -> TruncatedSeries:
    """``X(g) = prod_j (g + w_j)/(1 - g - w_j) * prod_m (1 - x_m g)^-1``."""
    ring = problem.ring
    out = TruncatedSeries.one(g.order, ring, g.var)
    for w in problem.weights:
        out = out * (g + w) * series_invert(1 - w - g)
    for m in range(problem.ell):
        out = out * series_invert(1 - g * ring.variable(m))
    return out


def _eval_poly(coeffs: list, g: TruncatedSeries) -> TruncatedSeries:
    acc = coeffs[-1].truncate(g.order) if coeffs[-1].order >= g.order else coeffs[-1].extend(g.order)
    for c in reversed(coeffs[:-1]):
        acc = acc * g + c.truncate(g.order)
    return acc


def solve_root_series(problem: QuotProblem, i: int) -> RootSeries:
    """Newton iteration on ``P(g) = 0`` from ``g = -w_i``; precision doubles each step."""
    if not 1 <= i <= problem.N:
        raise IndexError(f"root index {i} outside 1..{problem.N}")
    ring, order = problem.ring, problem.order
    P = p_polynomial(problem.N, problem.weights, problem.ell, ring, order)
    dP = [P[j] * j for j in range(1, len(P))]
    g = TruncatedSeries.constant(-problem.weights[i - 1], 0, ring, "q")
    prec = 0
    while prec < order:
        prec = min(2 * prec + 1, order)
        g = g.extend(prec)
        slope = _eval_poly(dP, g)
        if not slope.is_unit():
            raise NotInvertibleError(f"Newton derivative vanishes at g_{i}(0)")
        g = g - _eval_poly(P, g) * series_invert(slope)
    return RootSeries(i, g)


def _all_roots(problem: QuotProblem) -> list:
    return [solve_root_series(problem, i) for i in range(1, problem.N + 1)]


def k_factor(problem: QuotProblem, roots: Sequence[RootSeries]) -> TruncatedSeries:
    """``K = prod_i K_i`` with the ``h_i/(g_i + w_i) = 1`` term already cancelled."""
    ring, order, w = problem.ring, problem.order, problem.weights
    K = TruncatedSeries.one(order, ring, "q")
    for r in roots:
        i = r.index - 1
        g = r.series
        h = g + w[i]
        bracket = TruncatedSeries.zero(order, ring, "q")
        for j, wj in enumerate(w):
            if j != i:
                bracket = bracket + series_invert(g + wj)
            bracket = bracket + series_invert(1 - wj - g)
        for m in range(problem.ell):
            x = ring.variable(m)
            bracket = bracket + series_invert(1 - g * x) * x
        K = K * (1 + h * bracket)
    return K


def psi_at_roots(problem: QuotProblem, roots: Sequence[RootSeries]) -> TruncatedSeries:
    """Psi in root form with ``prod_i h_i`` cancelled against ``(g_i + w_i)^-1``."""
    ring, order, w = problem.ring, problem.order, problem.weights
    g = [r.series for r in sorted(roots, key=lambda r: r.index)]
    out = TruncatedSeries.one(order, ring, "q")
    for i, j in itertools.combinations(range(problem.N), 2):
        diff = g[i] - g[j]
        out = out * diff * diff
    for i in range(problem.N):
        for j in range(problem.N):
            out = out * (1 + w[j] + g[i]) * series_invert(1 + g[i] - g[j])
            if j != i:
                out = out * series_invert(g[i] + w[j])
        for m, d in enumerate(problem.degrees):
            x = ring.variable(m)
            out = out * int_power(1 - g[i] * x, -1 - d) * (ring.one + x * w[i]) ** (d + 1)
    return out


def w_equivariant_closed_form(problem: QuotProblem) -> TruncatedSeries:
    """``(-1)^C(N,2) Psi/K`` at the problem's weights (weight-dependent)."""
    roots = _all_roots(problem)
    W = psi_at_roots(problem, roots) * series_invert(k_factor(problem, roots))
    return W * problem.sign


def ef_factorization(N: int, weights: Sequence, degrees_count: int, ring: JetRing,
                     order: int) -> EFFactorization:
    """Order-by-order solve of ``P = (monic degree N)(degree l)``.

    Weights may be any rationals, including all zero: the recursion never
    divides by anything but ``f_0(0) = 1``.
    """
    weights = tuple(to_q(w) for w in weights)
    if len(weights) != N:
        raise ValueError(f"need {N} weights, got {len(weights)}")
    ell = degrees_count
    P = [p.coeffs for p in p_polynomial(N, weights, ell, ring, order)]
    zero = ring.zero
    e = [[P[i][0]] for i in range(N)]
    f = [[ring.one if m == 0 else zero] for m in range(ell + 1)]

    def conv(a, b, n):
        """``[q^n] (a b)`` from the stored prefixes."""
        acc = zero
        for j in range(n + 1):
            if j >= len(a) or n - j >= len(b):
                continue
            acc = acc + a[j] * b[n - j]
        return acc

    for n in range(1, order + 1):
        # f_m for m = l..0 from the g^(m+N) coefficients
        for m in range(ell, -1, -1):
            acc = P[m + N][n]
            for k in range(1, min(N, ell - m) + 1):
                # f_{m+k} has no constant term, so e_{N-k} is only needed below order n
                acc = acc - conv(f[m + k], e[N - k], n)
            f[m].append(acc)
        # e_i for i = 0..N-1 from the g^i coefficients
        for i in range(N):
            acc = P[i][n]
            for j in range(n):
                acc = acc - e[i][j] * f[0][n - j]
            for k in range(1, min(i, ell) + 1):
                acc = acc - conv(e[i - k], f[k], n)
            e[i].append(acc)  # f_0(0) = 1
    mk = lambda c: TruncatedSeries(c, order, ring, "q")
    return EFFactorization(tuple(mk(c) for c in e), tuple(mk(c) for c in f))


def ef_recursion(problem: QuotProblem) -> EFFactorization:
    return ef_factorization(problem.N, problem.weights, problem.ell, problem.ring, problem.order)


def _explicit_e_bar(N: int, order: int) -> list:
    """Coefficients of ``g^i`` in ``(g^N - q (g-1)^N)/(1 - q)``."""
    geo = series_invert(TruncatedSeries([1, -1], order))
    # only -q (g-1)^N reaches degrees below N
    return [TruncatedSeries([0, -(-1) ** (N - i) * comb(N, i)], order) * geo for i in range(N)]


def ef_specialized_check(N: int, order: int = 16) -> list:
    """``(e_0..e_{N-1})`` at ``w = 0, x = 0`` from the explicit formula.

    The same series are recomputed with :func:`ef_factorization` at literal
    zero weights; any disagreement (or ``f_0 != 1 - q``) raises.
    """
    if N < 1:
        raise ValueError("N must be positive")
    explicit = _explicit_e_bar(N, order)
    ring = jet_ring(())
    ef = ef_factorization(N, (0,) * N, 0, ring, order)
    for i, (a, b) in enumerate(zip(explicit, ef.e)):
        if a != b.constant_part():
            raise AssertionError(f"e_{i} at zero weights: recursion {b} != explicit {a}")
    if ef.f[0].constant_part() != TruncatedSeries([1, -1], order):
        raise AssertionError(f"f_0 at zero weights is {ef.f[0]}, expected 1 - q")
    return explicit


def power_sums_from_e(e: Sequence[TruncatedSeries], count: int) -> list:
    """``p_0..p_count`` of the roots of ``g^N + e_{N-1} g^{N-1} + .. + e_0`` (Newton)."""
    N = len(e)
    ring, order = e[0].ring, e[0].order
    sigma = [None] + [e[N - j] * (-1) ** j for j in range(1, N + 1)]
    p = [TruncatedSeries.constant(N, order, ring, "q")]
    for k in range(1, count + 1):
        acc = sigma[k] * ((-1) ** (k - 1) * k) if k <= N else TruncatedSeries.zero(order, ring, "q")
        for j in range(1, min(k - 1, N) + 1):
            term = sigma[j] * p[k - j]
            acc = acc + term if j % 2 else acc - term
        p.append(acc)
    return p


def _symmetric_sum(coeffs: Sequence, p: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """``sum_i G(g_i)`` for ``G = sum_k coeffs[k] g^k`` with ``coeffs[0] = 0``."""
    acc = TruncatedSeries.zero(p[0].order, p[0].ring, "q")
    for k in range(1, min(len(coeffs), len(p))):
        if coeffs[k]:
            acc = acc + p[k] * coeffs[k]
    return acc


def _drop_q_power(s: TruncatedSeries, k: int, what: str) -> TruncatedSeries:
    if any(s.coeffs[:k]):
        raise ArithmeticError(f"{what} is not divisible by q^{k}")
    return TruncatedSeries._raw(s.ring, s.coeffs[k:], s.var)


def _hankel_det(p: Sequence[TruncatedSeries], N: int) -> TruncatedSeries:
    """``det (p_{a+b})_{a,b<N} = prod_{i<j} (g_i - g_j)^2``."""
    acc = TruncatedSeries.zero(p[0].order, p[0].ring, "q")
    for perm in itertools.permutations(range(N)):
        sign = 1
        for a, b in itertools.combinations(range(N), 2):
            if perm[a] > perm[b]:
                sign = -sign
        term = TruncatedSeries.one(p[0].order, p[0].ring, "q")
        for a in range(N):
            term = term * p[a + perm[a]]
        acc = acc + term if sign > 0 else acc - term
    return acc


def w_closed_form(problem: QuotProblem) -> TruncatedSeries:
    """``W(q; x)`` to ``q^order`` with all weights set to zero.

    At ``w = 0`` the closed form reads

        W = (-1)^C(N,2) disc(g) / (prod g_i)^(N-1) * prod_i (1+g_i)^N
            * prod_{i != j} (1 + g_i - g_j)^-1 * prod_{i,m} (1 - x_m g_i)^(-1-d_m)
            / prod_i (N + g_i F(g_i)),   F(g) = N/(1-g) + sum_m x_m/(1 - x_m g),

    where both ``disc`` and ``(prod g_i)^(N-1)`` vanish to order ``q^(N-1)``.
    The problem's weights are not used.
    """
    N, ring, order = problem.N, problem.ring, problem.order
    work = order + N
    ef = ef_factorization(N, (0,) * N, problem.ell, ring, work)
    # roots have q-valuation 1/N, so p_k = O(q^ceil(k/N))
    kmax = N * (work + 1)
    p = power_sums_from_e(ef.e, kmax)

    # prod_{i<j} (g_i - g_j)^2 / (prod g_i)^(N-1), both divided by q^(N-1) first
    disc = _drop_q_power(_hankel_det(p, N), N - 1, "discriminant")
    prod_g = _drop_q_power(ef.e[0] * (-1) ** N, 1, "product of roots")
    lead = disc.truncate(order) * int_power(prod_g.truncate(order), 1 - N)

    # log of prod_i (1+g_i)^N
    log_total = _symmetric_sum([0] + [mpq((-1) ** (k + 1) * N, k) for k in range(1, kmax + 1)], p)
    # minus log prod_{i != j} (1 + g_i - g_j); only even powers survive the symmetrization
    for k in range(2, kmax + 1, 2):
        # sum_{i,j} (g_i - g_j)^k, pairing r with k - r
        s_k = p[k // 2] * p[k // 2] * (comb(k, k // 2) * (-1) ** (k // 2))
        for r in range(k // 2):
            s_k = s_k + p[r] * p[k - r] * (2 * comb(k, r) * (-1) ** r)
        log_total = log_total + s_k * mpq(1, k)
    # descendent factors prod (1 - x_m g_i)^(-1-d_m)
    for m, d in enumerate(problem.degrees):
        x = ring.variable(m)
        coeffs = [ring.zero] + [x ** k * mpq(1 + d, k) for k in range(1, kmax + 1)]
        log_total = log_total + _symmetric_sum(coeffs, p)
    # minus log prod_i (1 + g_i F(g_i)/N)
    u = TruncatedSeries([0] + [1] * kmax, kmax, ring, "g")
    for m in range(problem.ell):
        x = ring.variable(m)
        u = u + TruncatedSeries([ring.zero] + [x ** k for k in range(1, kmax + 1)], kmax, ring, "g") * mpq(1, N)
    log_u = series_log(1 + u)
    log_total = log_total - _symmetric_sum(log_u.coeffs, p)

    W = lead * series_exp(log_total.truncate(order)) * mpq(1, N ** N)
    return W * problem.sign
