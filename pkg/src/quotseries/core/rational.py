"""Exact rational scalars.

All coefficients in the package are :class:`gmpy2.mpq` values.  They are kept
in lowest terms with a positive denominator by GMP itself, so ``str(x)`` is
already the canonical ``"num/den"`` form (``"3/2"``, ``"-1"``, ``"0"``).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from numbers import Rational as _RationalABC

from gmpy2 import mpq

__all__ = ["Q", "ZERO", "ONE", "to_q", "q_str", "parse_q", "binomial"]

Q = mpq
ZERO = mpq(0)
ONE = mpq(1)


def to_q(x) -> mpq:
    """Coerce ints, Fractions, mpq and ``"a/b"`` strings to an exact mpq.

    Floats are refused: nothing in this package is ever allowed to round.
    """
    if isinstance(x, float):
        raise TypeError(f"refusing inexact float {x!r}")
    if isinstance(x, str):
        return parse_q(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, (int, _RationalABC)) or type(x) is mpq:
        return mpq(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def parse_q(text: str) -> mpq:
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    num, sep, den = text.partition("/")
    try:
        if sep:
            d = int(den)
            if d == 0:
                raise ZeroDivisionError(f"zero denominator in {text!r}")
            return mpq(int(num), d)
        return mpq(int(num))
    except ValueError as exc:
        raise ValueError(f"not an exact rational literal: {text!r}") from exc


def q_str(x) -> str:
    return str(mpq(x))


def binomial(top: int, k: int) -> int:
    """C(top, k) by the falling factorial, valid for negative ``top``.

    ``binomial(-b, l) == (-1)**l * binomial(b + l - 1, l)``; zero for ``k < 0``.
    """
    if k < 0:
        return 0
    if top >= 0:
        if k > top:
            return 0
        return comb(top, k)
    num = 1
    for i in range(k):
        num *= top - i
    return num // factorial(k)
