"""Exact rational reconstruction of truncated series."""

from __future__ import annotations

import logging

from .jet import QQ
from .linalg import solve_linear
from .poly import RationalFunction, UniPolynomial
from .rational import ONE, ZERO
from .series import TruncatedSeries

__all__ = ["pade_reconstruct", "InsufficientOrderError", "HELD_OUT"]

log = logging.getLogger(__name__)

HELD_OUT = 3


class InsufficientOrderError(ValueError):
    """The series is too short to certify any candidate within the bounds."""


def _candidate(c, m: int, k: int):
    """Denominator of degree <= k with d(0)=1 killing coefficients m+1..m+k."""
    if k == 0:
        return [ONE]
    A = [[c[row - j] if row - j >= 0 else ZERO for j in range(1, k + 1)]
         for row in range(m + 1, m + k + 1)]
    b = [-c[row] for row in range(m + 1, m + k + 1)]
    sol = solve_linear(A, b)
    if sol is None:
        return None
    return [ONE] + sol


def pade_reconstruct(s: TruncatedSeries, max_num_deg: int, max_den_deg: int) -> RationalFunction | None:
    """Smallest-degree ``p/d`` whose expansion matches every coefficient of ``s``.

    Candidates are tried by increasing total degree ``deg p + deg d``; each one
    is fitted on the first ``deg p + deg d + 1`` coefficients and accepted only
    if it reproduces *all* retained coefficients, which by the order
    requirement includes at least ``HELD_OUT`` unseen ones.  Returns ``None``
    when no candidate within the bounds survives.
    """
    if s.ring != QQ:
        raise TypeError("pade_reconstruct needs a series over QQ; extract a jet coefficient first")
    if max_num_deg < 0 or max_den_deg < 0:
        raise ValueError("degree bounds must be non-negative")
    needed = max_num_deg + max_den_deg + HELD_OUT
    if s.order < needed:
        raise InsufficientOrderError(
            f"order {s.order} < {needed} = num {max_num_deg} + den {max_den_deg} + {HELD_OUT} held out"
        )
    c = s.coeffs
    n = s.order
    for total in range(max_num_deg + max_den_deg + 1):
        for k in range(min(total, max_den_deg) + 1):
            m = total - k
            if m > max_num_deg:
                continue
            d = _candidate(c, m, k)
            if d is None:
                continue
            prod = [sum((d[j] * c[i - j] for j in range(min(i, k) + 1)), ZERO) for i in range(n + 1)]
            if any(prod[i] for i in range(m + 1, n + 1)):
                continue
            rf = RationalFunction(UniPolynomial(prod[: m + 1]), UniPolynomial(d))
            log.debug("pade: accepted num<=%d den<=%d -> %r", m, k, rf)
            return rf
    log.info("pade: no candidate with num<=%d, den<=%d at order %d", max_num_deg, max_den_deg, n)
    return None
