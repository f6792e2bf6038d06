"""Exact non-equivariant limit of a torus-equivariant q-series.

An equivariant integral over a compact space with a mixed-degree integrand is
a function of the weights whose value at ``w = 0`` is the ordinary integral.
Along a ray ``w = eps * u`` the ``q^n`` coefficient of a fixed-locus sum is a
rational function of ``eps`` whose only poles sit where some
``1 + eps (u_j - u_i)`` vanishes.  Clearing

    D_n(eps) = prod_{i != j} (1 + eps (u_j - u_i))^(n - 1)

leaves a polynomial of degree at most ``N (N - 1) (n - 1) + |k|`` for the
coefficient of the jet monomial ``x^k``.  Sampling at nonzero integers ``eps`` and
interpolating recovers the value at ``eps = 0`` exactly; extra samples are
held out and must be reproduced, otherwise :class:`ExtrapolationError` is
raised.
"""

from __future__ import annotations

import itertools
import logging
from typing import Callable, Sequence

from gmpy2 import mpq

from .core import TruncatedSeries

__all__ = ["ExtrapolationError", "HELD_OUT_SAMPLES", "degree_bound", "limit_along_ray", "sample_points"]

log = logging.getLogger(__name__)

HELD_OUT_SAMPLES = 3


class ExtrapolationError(ArithmeticError):
    """Held-out samples disagree with the interpolant: the degree bound failed."""


def degree_bound(N: int, n: int, jet_degree: int) -> int:
    return N * (N - 1) * max(n - 1, 0) + jet_degree


def _admissible(eps: mpq, u: Sequence[mpq]) -> bool:
    return all(eps * (b - a) not in (0, 1, -1) for a, b in itertools.combinations(u, 2))


def sample_points(u: Sequence[mpq], count: int) -> list[mpq]:
    """The first ``count`` of ``1, -1, 2, -2, ..`` with ``eps*u`` admissible.

    Alternating signs keep the sampled weights, and hence the rationals in
    every sample run, about half as large as a one-sided sweep would.
    """
    out = []
    k = 1
    while len(out) < count:
        for eps in (mpq(k), mpq(-k)):
            if len(out) < count and _admissible(eps, u):
                out.append(eps)
        k += 1
    return out


def _clearing_factor(u: Sequence[mpq], eps: mpq, n: int) -> mpq:
    if n <= 1:
        return mpq(1)
    d = mpq(1)
    for i, j in itertools.permutations(range(len(u)), 2):
        d *= 1 + eps * (u[j] - u[i])
    return d ** (n - 1)


def _newton(xs: Sequence[mpq], ys: Sequence[mpq]) -> list[mpq]:
    c = list(ys)
    for j in range(1, len(xs)):
        for i in range(len(xs) - 1, j - 1, -1):
            c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j])
    return c


def _newton_eval(xs: Sequence[mpq], c: Sequence[mpq], x: mpq) -> mpq:
    acc = c[-1]
    for k in range(len(c) - 2, -1, -1):
        acc = acc * (x - xs[k]) + c[k]
    return acc


def limit_along_ray(u: Sequence, order: int, jet_ring, evaluate: Callable[[tuple], TruncatedSeries],
                    held_out: int = HELD_OUT_SAMPLES) -> TruncatedSeries:
    """``lim_{eps -> 0}`` of ``evaluate(eps * u)`` coefficient by coefficient.

    ``evaluate`` maps an admissible weight tuple to a q-series over
    ``jet_ring`` with at least ``order`` coefficients.
    """
    u = tuple(mpq(x) for x in u)
    N = len(u)
    exps = jet_ring.exponents
    top = max(sum(e) for e in exps)
    needed = degree_bound(N, order, top) + 1 + held_out
    points = sample_points(u, needed)
    samples = []
    for eps in points:
        samples.append(evaluate(tuple(eps * x for x in u)))
        log.debug("weight limit: sampled eps=%s", eps)
    coeffs = []
    for n in range(order + 1):
        values = []
        for k, e in enumerate(exps):
            count = degree_bound(N, n, sum(e)) + 1
            xs = points[: count + held_out]
            ys = [s.coeffs[n].c[k] * _clearing_factor(u, eps, n) for s, eps in zip(samples, xs)]
            c = _newton(xs[:count], ys[:count])
            for x, y in zip(xs[count:], ys[count:]):
                if _newton_eval(xs[:count], c, x) != y:
                    raise ExtrapolationError(
                        f"q^{n} x^{e}: sample at eps={x} disagrees with degree-{count - 1} interpolant"
                    )
            values.append(_newton_eval(xs[:count], c, mpq(0)))
        coeffs.append(jet_ring.from_dict(dict(zip(exps, values))))
    return TruncatedSeries(coeffs, order, jet_ring, "q")
