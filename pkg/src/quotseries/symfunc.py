"""Symmetric functions and the binomial sums that drive rationality.

The sums

    sigma(n) = sum_{v+w=n+c} (-1)^v C(n+a, v) C(b, w) = [x^(n+c)] (1-x)^(n+a) (1+x)^b

are, for ``n >= max(0, -a)``, of the form ``(-1)^n (p1(n) + 2^n p2(n))``:
substituting ``x = 1/(y+1)`` turns the coefficient into minus the residues of
``y^(n+a) (y+2)^b (y+1)^(c-a-b-1) dy`` at ``y = -1`` and ``y = -2``.  The
residue orders give ``deg p1 <= a+b-c`` and ``deg p2 <= -b-1``; in particular
``p2 = 0`` unless ``b < 0``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import factorial
from typing import Sequence

from gmpy2 import mpq

from .core import ONE, ZERO, TruncatedSeries, UniPolynomial, binomial, series_exp, solve_linear, to_q

__all__ = [
    "SigmaParams",
    "StarForm",
    "StarFitError",
    "sigma_binomial",
    "sigma_by_extraction",
    "sigma_extraction_sequence",
    "sigma_star_fit",
    "sigma_vandermonde",
    "sigma_vandermonde_triple",
    "sigma_vandermonde_collapsed",
    "power_sums",
    "complete_from_power_sums",
    "chern_char_from_classes",
    "VERIFY_COUNT",
]

log = logging.getLogger(__name__)

VERIFY_COUNT = 50


@dataclass(frozen=True)
class SigmaParams:
    a: int
    b: int
    c: int

    @property
    def threshold(self) -> int:
        """Smallest ``n`` from which the (p1, p2) form holds."""
        return max(0, -self.a)

    @property
    def degree_bound(self) -> int:
        """Initial degree guess for the fit."""
        return max(abs(self.a), abs(self.b), abs(self.c)) + 2

    @property
    def wide_degree_bound(self) -> int:
        """Fallback after one failed fit; dominates ``a+b-c`` and ``-b-1``."""
        return abs(self.a) + abs(self.b) + abs(self.c) + 2


@dataclass(frozen=True)
class StarForm:
    """``sigma(n) = (-1)^n (p1(n) + 2^n p2(n))`` for ``n >= n0``."""

    p1: UniPolynomial
    p2: UniPolynomial
    n0: int

    def __call__(self, n: int) -> mpq:
        val = self.p1(n) + 2 ** n * self.p2(n)
        return -val if n % 2 else val


class StarFitError(ArithmeticError):
    """No (p1, p2) pair within the degree bounds reproduces the sums."""


def sigma_binomial(p: SigmaParams, n: int) -> mpq:
    """The finite sum ``sum_{v+w=n+c} (-1)^v C(n+a, v) C(b, w)``."""
    top = n + p.a
    if top < 0:
        raise ValueError(f"n + a = {top} < 0: the binomial top must be non-negative")
    total = n + p.c
    acc = 0
    # C(top, v) vanishes for v > top, and w = total - v must be >= 0
    for v in range(0, min(top, total) + 1):
        term = binomial(top, v) * binomial(p.b, total - v)
        acc += -term if v % 2 else term
    return mpq(acc)


def sigma_by_extraction(p: SigmaParams, n: int) -> mpq:
    """``[x^(n+c)] (1-x)^(n+a) (1+x)^b`` from a truncated series product."""
    top = n + p.a
    if top < 0:
        raise ValueError(f"n + a = {top} < 0")
    k = n + p.c
    if k < 0:
        return ZERO
    left = TruncatedSeries([binomial(top, v) * (-1) ** v for v in range(k + 1)], k, var="x")
    right = TruncatedSeries([1, 1], k, var="x") ** p.b
    return (left * right).coeffs[k]


def sigma_extraction_sequence(p: SigmaParams, n_max: int) -> dict:
    """``{n: sigma(n)}`` for ``n0 <= n <= n_max`` by stepping a polynomial.

    ``(1+x)^b`` is expanded once; each step multiplies by ``(1-x)`` and reads
    off the coefficient of ``x^(n+c)``.  No binomial sums are involved.
    """
    n0 = p.threshold
    K = n_max + p.c
    if K < 0:
        return {n: ZERO for n in range(n0, n_max + 1)}
    poly = [int(c) for c in (TruncatedSeries([1, 1], K, var="x") ** p.b).coeffs]

    def times_one_minus_x(c):
        return [c[0]] + [c[k] - c[k - 1] for k in range(1, len(c))]

    for _ in range(n0 + p.a):
        poly = times_one_minus_x(poly)
    out = {}
    for n in range(n0, n_max + 1):
        k = n + p.c
        out[n] = mpq(poly[k]) if k >= 0 else ZERO
        poly = times_one_minus_x(poly)
    return out


def _fit(p: SigmaParams, degree: int, n_last: int):
    n0 = p.threshold
    points = range(n0, n_last + 1)
    rows, rhs = [], []
    for n in points:
        rows.append([mpq(n) ** k for k in range(degree + 1)] + [mpq(2) ** n * mpq(n) ** k for k in range(degree + 1)])
        val = sigma_binomial(p, n)
        rhs.append(-val if n % 2 else val)
    sol = solve_linear(rows, rhs)
    if sol is None:
        return None
    form = StarForm(UniPolynomial(sol[: degree + 1]), UniPolynomial(sol[degree + 1:]), n0)
    for n in range(n_last + 1, n_last + 1 + VERIFY_COUNT):
        if form(n) != sigma_binomial(p, n):
            log.info("star fit for %s at degree %d fails at n=%d", p, degree, n)
            return None
    return form


def sigma_star_fit(p: SigmaParams, n_max: int | None = None) -> StarForm:
    """Fit ``(p1, p2)`` by exact linear algebra and verify on ``VERIFY_COUNT`` further ``n``.

    The fit uses ``n = n0 .. n_max``; that window must hold at least
    ``2 * degree_bound + 6`` points.  If no solution reproduces the held-out
    values the degree bound is widened once to ``wide_degree_bound``, with
    the window grown to match.
    """
    n0 = p.threshold
    need = 2 * p.degree_bound + 6
    if n_max is None:
        n_max = n0 + need - 1
    if n_max - n0 + 1 < need:
        raise ValueError(f"n_max={n_max} leaves {n_max - n0 + 1} fit points, need {need}")
    form = _fit(p, p.degree_bound, n_max)
    if form is None:
        wide = p.wide_degree_bound
        form = _fit(p, wide, max(n_max, n0 + 2 * wide + 5))
    if form is None:
        raise StarFitError(f"no (p1, p2) of degree <= {p.wide_degree_bound} fits sigma for {p}")
    return form


def sigma_vandermonde_triple(a_total: int, m: int, i: int, j: int, r1: int, r2: int,
                             cshift: int, n: int) -> mpq:
    """``sum (-1)^(v-i+L) C(|a|-m, L) C(n+r1-i, v-i) C(r2-j, w-j)`` over ``v+w+L = n+cshift``."""
    A = a_total - m
    top = n + r1 - i
    total = n + cshift
    acc = 0
    for L in range(0, total - i - j + 1):
        cl = binomial(A, L)
        if not cl:
            continue
        for v in range(i, total - L - j + 1):
            w = total - L - v
            term = cl * binomial(top, v - i) * binomial(r2 - j, w - j)
            acc += -term if (v - i + L) % 2 else term
    return mpq(acc)


def sigma_vandermonde_collapsed(a_total: int, m: int, i: int, j: int, r1: int, r2: int,
                                cshift: int, n: int) -> mpq:
    """``sum_{v'+w=n+cshift} (-1)^(v'-i) C(|a|-m+n+r1-i, v'-i) C(r2-j, w-j)``."""
    return sigma_binomial(SigmaParams(a_total - m + r1 - i, r2 - j, cshift - i - j), n)


def sigma_vandermonde(a_total: int, m: int, i: int, j: int, r1: int, r2: int, cshift: int, n: int) -> mpq:
    """Both forms of the Vandermonde-collapsed sum; raises if they differ."""
    if n + r1 - i < 0 or a_total - m + n + r1 - i < 0:
        raise ValueError("the n-dependent binomial tops must be non-negative")
    triple = sigma_vandermonde_triple(a_total, m, i, j, r1, r2, cshift, n)
    collapsed = sigma_vandermonde_collapsed(a_total, m, i, j, r1, r2, cshift, n)
    if triple != collapsed:
        raise ArithmeticError(f"triple sum {triple} != collapsed sum {collapsed}")
    return collapsed


def power_sums(roots: Sequence, d: int, sign: int = 1) -> mpq:
    """``sum_i (1 + sign * x_i)^-d``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    acc = ZERO
    for x in roots:
        base = 1 + sign * to_q(x)
        if base == 0:
            raise ZeroDivisionError(f"1 + ({sign})*{x} vanishes")
        acc += base ** (-d)
    return acc


def complete_from_power_sums(p: Sequence, j_max: int) -> list:
    """``H_0..H_j_max`` from ``sum_j t^j H_j = exp(sum_d t^d P_d / d)``.

    ``p[d]`` is ``P_d``; entry ``p[0]`` is ignored.
    """
    if j_max < 0:
        raise ValueError("j_max must be non-negative")
    if len(p) < j_max + 1:
        raise ValueError(f"need P_1..P_{j_max}, got {len(p) - 1}")
    log_series = TruncatedSeries([0] + [to_q(p[d]) / d for d in range(1, j_max + 1)], j_max, var="t")
    return list(series_exp(log_series).coeffs)


def chern_char_from_classes(c: Sequence, rank: int, k_max: int) -> list:
    """``ch_0..ch_k_max`` from Chern classes ``c[0] = 1, c[1], ..``.

    Newton: ``p_k = c1 p_{k-1} - c2 p_{k-2} + .. + (-1)^(k-1) k c_k`` and
    ``ch_k = p_k / k!``; classes beyond the list are zero.
    """
    cls = [to_q(x) for x in c] if c else [ONE]
    get = lambda k: cls[k] if k < len(cls) else ZERO
    powers = [mpq(rank)]
    for k in range(1, k_max + 1):
        acc = (-1) ** (k - 1) * k * get(k)
        for i in range(1, k):
            term = get(i) * powers[k - i]
            acc += term if i % 2 else -term
        powers.append(mpq(acc))
    return [powers[0]] + [powers[k] / factorial(k) for k in range(1, k_max + 1)]
