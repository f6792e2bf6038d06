"""Dense univariate polynomials and reduced rational functions over Q."""

from __future__ import annotations

from typing import Iterable, Sequence

from gmpy2 import mpq

from .jet import QQ
from .rational import ONE, ZERO, to_q
from .series import TruncatedSeries, series_invert

__all__ = ["UniPolynomial", "RationalFunction"]


class UniPolynomial:
    """Coefficients indexed by degree; no trailing zeros (zero is ``()``)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [to_q(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls) -> "UniPolynomial":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k: int) -> mpq:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def leading(self) -> mpq:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __eq__(self, other):
        if isinstance(other, UniPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def _lift(self, other) -> "UniPolynomial":
        return other if isinstance(other, UniPolynomial) else UniPolynomial([other])

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPolynomial(self[k] + o[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        if not self.coeffs or not o.coeffs:
            return UniPolynomial()
        out = [ZERO] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return UniPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPolynomial([1])
        for _ in range(e):
            result = result * self
        return result

    def __divmod__(self, other):
        o = self._lift(other)
        if not o.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = o.degree
        lead_inv = ONE / o.leading()
        quot = [ZERO] * max(0, len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * lead_inv
            if c:
                quot[k - dq] = c
                for j, b in enumerate(o.coeffs):
                    rem[k - dq + j] -= c * b
        return UniPolynomial(quot), UniPolynomial(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "UniPolynomial":
        if not self.coeffs:
            return self
        inv = ONE / self.leading()
        return UniPolynomial(c * inv for c in self.coeffs)

    def gcd(self, other: "UniPolynomial") -> "UniPolynomial":
        """Monic gcd (Euclid over Q); gcd(0, 0) = 0."""
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_series(self, order: int, var: str = "q") -> TruncatedSeries:
        return TruncatedSeries(self.coeffs, order, QQ, var)

    def __repr__(self) -> str:
        return f"UniPolynomial({[str(c) for c in self.coeffs]})"

    def to_str(self, var: str = "q") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mono and c == 1:
                body = mono
            elif mono and c == -1:
                body = "-" + mono
            else:
                body = f"{c}*{mono}" if mono else str(c)
            parts.append(body)
        return " + ".join(parts).replace("+ -", "- ")


class RationalFunction:
    """``numerator / denominator`` in lowest terms with ``denominator(0) == 1``."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=None):
        num = numerator if isinstance(numerator, UniPolynomial) else UniPolynomial(numerator)
        if denominator is None:
            den = UniPolynomial([1])
        else:
            den = denominator if isinstance(denominator, UniPolynomial) else UniPolynomial(denominator)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            den = UniPolynomial([1])
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
        c0 = den[0]
        if c0 == 0:
            raise ValueError("denominator vanishes at 0; no Taylor expansion to normalize")
        scale = ONE / c0
        self.numerator = num * scale
        self.denominator = den * scale

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.numerator == other.numerator and self.denominator == other.denominator
        return NotImplemented

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def expand(self, order: int, var: str = "q") -> TruncatedSeries:
        """Taylor expansion to ``order``."""
        return self.numerator.to_series(order, var) * series_invert(
            self.denominator.to_series(order, var)
        )

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(self.numerator * other.numerator,
                                    self.denominator * other.denominator)
        return RationalFunction(self.numerator * to_q(other), self.denominator)

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction([other])
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-other if isinstance(other, RationalFunction) else -to_q(other))

    def __truediv__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(self.numerator * other.denominator,
                                    self.denominator * other.numerator)
        return RationalFunction(self.numerator, self.denominator * to_q(other))

    def __pow__(self, e: int):
        if e >= 0:
            return RationalFunction(self.numerator ** e, self.denominator ** e)
        return RationalFunction(self.denominator ** (-e), self.numerator ** (-e))

    def __repr__(self) -> str:
        return f"RationalFunction(({self.numerator.to_str()}) / ({self.denominator.to_str()}))"

    def __str__(self) -> str:
        return self.to_str()

    def to_str(self, var: str = "q") -> str:
        if self.denominator.degree == 0:
            return self.numerator.to_str(var)
        return f"({self.numerator.to_str(var)}) / ({self.denominator.to_str(var)})"

    def to_latex(self, var: str = "q") -> str:
        """Display form with the denominator factored into powers of ``1 - a q``
        whenever it splits that way over the integers."""
        num = _latex_poly(self.numerator, var)
        if self.denominator.degree == 0:
            return num
        factors = _linear_factors(self.denominator)
        if factors is None:
            den = _latex_poly(self.denominator, var)
        else:
            den = r" \cdot ".join(
                f"(1 - {'' if a == 1 else a}{var})" + (f"^{{{k}}}" if k > 1 else "")
                for a, k in factors
            )
        return rf"\frac{{{num}}}{{{den}}}"


def _latex_poly(p: UniPolynomial, var: str) -> str:
    s = p.to_str(var).replace("*", " ")
    for k in range(p.degree, 1, -1):
        s = s.replace(f"{var}^{k}", f"{var}^{{{k}}}")
    return s


def _linear_factors(den: UniPolynomial):
    """Split ``den`` (constant term 1) as prod (1 - a q)^k with integer a, or None."""
    rest = den
    found = []
    a = 1
    while rest.degree > 0 and a <= 64:
        for cand in (a, -a):
            f = UniPolynomial([1, -cand])
            k = 0
            while rest.degree > 0:
                quo, rem = divmod(rest, f)
                if rem:
                    break
                rest, k = quo, k + 1
            if k:
                found.append((cand, k))
        a += 1
    if rest.degree > 0 or rest != UniPolynomial([1]):
        return None
    return found
