"""Truncated power series in one variable over ``QQ`` or a :class:`JetRing`.

A series of order ``n`` keeps the coefficients of ``t^0 .. t^n``.  Binary
operations between series of different orders truncate to the smaller one.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from gmpy2 import mpq

from .jet import QQ, Jet, JetRing, NotInvertibleError
from .rational import ONE, to_q

__all__ = [
    "TruncatedSeries",
    "series_invert",
    "series_compose",
    "series_revert",
    "int_power",
    "series_exp",
    "series_log",
]


def _ring_of(x):
    return x.ring if isinstance(x, Jet) else QQ


class TruncatedSeries:
    __slots__ = ("ring", "coeffs", "var")

    def __init__(self, coeffs: Iterable, order: int | None = None, ring=None, var: str = "q"):
        coeffs = list(coeffs)
        if ring is None:
            ring = next((c.ring for c in coeffs if isinstance(c, Jet)), QQ)
        coeffs = [ring.coerce(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
            if order < 0:
                raise ValueError("cannot infer the order of an empty series")
        if order < 0:
            raise ValueError("order must be non-negative")
        if len(coeffs) > order + 1:
            coeffs = coeffs[: order + 1]
        else:
            coeffs.extend([ring.zero] * (order + 1 - len(coeffs)))
        self.ring = ring
        self.coeffs = tuple(coeffs)
        self.var = var

    @classmethod
    def _raw(cls, ring, coeffs, var):
        s = cls.__new__(cls)
        s.ring = ring
        s.coeffs = tuple(coeffs)
        s.var = var
        return s

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order: int, ring=QQ, var: str = "q") -> "TruncatedSeries":
        return cls._raw(ring, [ring.zero] * (order + 1), var)

    @classmethod
    def one(cls, order: int, ring=QQ, var: str = "q") -> "TruncatedSeries":
        return cls.constant(ring.one, order, ring, var)

    @classmethod
    def constant(cls, c, order: int, ring=QQ, var: str = "q") -> "TruncatedSeries":
        coeffs = [ring.zero] * (order + 1)
        coeffs[0] = ring.coerce(c)
        return cls._raw(ring, coeffs, var)

    @classmethod
    def identity(cls, order: int, ring=QQ, var: str = "q") -> "TruncatedSeries":
        """The series ``t`` itself."""
        coeffs = [ring.zero] * (order + 1)
        if order >= 1:
            coeffs[1] = ring.one
        return cls._raw(ring, coeffs, var)

    @classmethod
    def from_function(cls, f: Callable[[int], object], order: int, ring=QQ, var: str = "q"):
        return cls([f(n) for n in range(order + 1)], order, ring, var)

    # -- basic access ------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def coefficient(self, n: int):
        if n < 0:
            return self.ring.zero
        if n > self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, ``None`` for the zero series."""
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot raise precision from {self.order} to {order}; use extend")
        return TruncatedSeries._raw(self.ring, self.coeffs[: order + 1], self.var)

    def extend(self, order: int) -> "TruncatedSeries":
        """Pad with zeros up to ``order`` (the caller vouches these are exact)."""
        if order <= self.order:
            return self.truncate(order)
        pad = [self.ring.zero] * (order - self.order)
        return TruncatedSeries._raw(self.ring, list(self.coeffs) + pad, self.var)

    def map(self, f: Callable, ring=None) -> "TruncatedSeries":
        """Apply ``f`` to every coefficient (e.g. jet monomial extraction)."""
        return TruncatedSeries([f(c) for c in self.coeffs], self.order, ring, self.var)

    def change_ring(self, ring) -> "TruncatedSeries":
        return TruncatedSeries._raw(ring, [ring.coerce(c) for c in self.coeffs], self.var)

    def rename(self, var: str) -> "TruncatedSeries":
        return TruncatedSeries._raw(self.ring, self.coeffs, var)

    def jet_coefficient(self, exps: Sequence[int]) -> "TruncatedSeries":
        """The rational series multiplying the jet monomial ``x^exps``."""
        if not isinstance(self.ring, JetRing):
            if any(exps):
                raise KeyError("rational series has no jet variables")
            return self
        return TruncatedSeries._raw(QQ, [c.coefficient(exps) for c in self.coeffs], self.var)

    def constant_part(self) -> "TruncatedSeries":
        """Set every jet variable to zero."""
        if not isinstance(self.ring, JetRing):
            return self
        return TruncatedSeries._raw(QQ, [c.c[0] for c in self.coeffs], self.var)

    # -- arithmetic --------------------------------------------------------

    def _coerce_other(self, other):
        if isinstance(other, TruncatedSeries):
            if other.ring != self.ring:
                if other.ring == QQ and isinstance(self.ring, JetRing):
                    other = other.change_ring(self.ring)
                else:
                    raise TypeError(f"series over {other.ring} and {self.ring} do not mix")
            return other
        return None

    def __add__(self, other):
        o = self._coerce_other(other)
        if o is None:
            c = list(self.coeffs)
            c[0] = c[0] + self.ring.coerce(other)
            return TruncatedSeries._raw(self.ring, c, self.var)
        n = min(self.order, o.order) + 1
        return TruncatedSeries._raw(
            self.ring, [a + b for a, b in zip(self.coeffs[:n], o.coeffs[:n])], self.var
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw(self.ring, [-a for a in self.coeffs], self.var)

    def __sub__(self, other):
        o = self._coerce_other(other)
        if o is None:
            return self + (-self.ring.coerce(other))
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce_other(other)
        if o is None:
            s = self.ring.coerce(other) if isinstance(other, Jet) else to_q(other)
            return TruncatedSeries._raw(self.ring, [a * s for a in self.coeffs], self.var)
        n = min(self.order, o.order)
        a, b = self.coeffs, o.coeffs
        zero = self.ring.zero
        out = [zero] * (n + 1)
        for i in range(n + 1):
            ai = a[i]
            if not ai:
                continue
            for j in range(n + 1 - i):
                bj = b[j]
                if bj:
                    out[i + j] = out[i + j] + ai * bj
        return TruncatedSeries._raw(self.ring, out, self.var)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        o = self._coerce_other(other)
        if o is None:
            if isinstance(other, Jet):
                return self * other.inverse()
            s = to_q(other)
            if s == 0:
                raise ZeroDivisionError("series divided by zero")
            return self * (ONE / s)
        return self * series_invert(o)

    def __rtruediv__(self, other):
        return series_invert(self) * other

    def __pow__(self, e: int):
        return int_power(self, e)

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.coeffs[0])

    def derivative(self) -> "TruncatedSeries":
        """Term-wise d/dt; the result has order ``order - 1``."""
        if self.order == 0:
            return TruncatedSeries.zero(0, self.ring, self.var)
        return TruncatedSeries._raw(
            self.ring, [c * n for n, c in enumerate(self.coeffs) if n > 0], self.var
        )

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by ``t^k`` keeping the order."""
        if k < 0:
            raise ValueError("negative shift")
        zeros = [self.ring.zero] * k
        return TruncatedSeries._raw(self.ring, (zeros + list(self.coeffs))[: self.order + 1], self.var)

    def __call__(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        return series_compose(self, inner)

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if self.order >= 8 else ""
        return f"TruncatedSeries({self.var}; [{shown}{more}] + O({self.var}^{self.order + 1}))"


def series_invert(s: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; the constant term must be a unit."""
    c0 = s.coeffs[0]
    if not s.ring.is_unit(c0):
        raise NotInvertibleError("not invertible: constant term is not a unit")
    inv0 = s.ring.inv(c0)
    n = s.order
    a = s.coeffs
    out = [inv0]
    for k in range(1, n + 1):
        acc = s.ring.zero
        for j in range(1, k + 1):
            aj = a[j]
            if aj:
                acc = acc + aj * out[k - j]
        out.append(-(acc * inv0))
    return TruncatedSeries._raw(s.ring, out, s.var)


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """``outer(inner(q))``; ``inner`` must have zero constant term."""
    if inner.coeffs[0]:
        raise ValueError("composition requires an inner series with zero constant term")
    n = min(outer.order, inner.order)
    if outer.ring != inner.ring:
        if outer.ring == QQ:
            outer = outer.change_ring(inner.ring)
        elif inner.ring == QQ:
            inner = inner.change_ring(outer.ring)
        else:
            raise TypeError("cannot compose series over different jet rings")
    inner = inner.truncate(n)
    result = TruncatedSeries.constant(outer.coeffs[n], n, outer.ring, inner.var)
    for k in range(n - 1, -1, -1):
        result = result * inner + outer.coeffs[k]
    return result


def series_revert(s: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse ``r`` with ``s(r(q)) = q``.

    Newton iteration on ``F(r) = s(r) - q``; the q-adic precision doubles on
    every step.
    """
    if s.coeffs[0]:
        raise ValueError("reversion requires zero constant term")
    n = s.order
    if n == 0:
        return TruncatedSeries.zero(0, s.ring, s.var)
    if not s.ring.is_unit(s.coeffs[1]):
        raise NotInvertibleError("reversion requires a unit linear coefficient")
    ds = s.derivative()
    r = TruncatedSeries.identity(1, s.ring, s.var) * s.ring.inv(s.coeffs[1])
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        r = r.extend(prec)
        sp = s.truncate(prec)
        resid = series_compose(sp, r) - TruncatedSeries.identity(prec, s.ring, s.var)
        slope = series_compose(ds.extend(prec) if ds.order < prec else ds.truncate(prec), r)
        r = r - resid * series_invert(slope)
    return r


def int_power(s: TruncatedSeries, e: int) -> TruncatedSeries:
    """``s**e`` by repeated squaring; negative ``e`` goes through the inverse."""
    if e < 0:
        return int_power(series_invert(s), -e)
    result = TruncatedSeries.one(s.order, s.ring, s.var)
    base = s
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    """``exp(s)`` for ``s`` with zero constant term (``n E_n = sum k s_k E_{n-k}``)."""
    if s.coeffs[0]:
        raise ValueError("exp requires zero constant term")
    n = s.order
    a = s.coeffs
    out = [s.ring.one]
    for k in range(1, n + 1):
        acc = s.ring.zero
        for j in range(1, k + 1):
            if a[j]:
                acc = acc + a[j] * out[k - j] * j
        out.append(acc * mpq(1, k))
    return TruncatedSeries._raw(s.ring, out, s.var)


def series_log(s: TruncatedSeries) -> TruncatedSeries:
    """``log(s)`` for ``s`` with constant term 1."""
    if s.coeffs[0] != s.ring.one:
        raise ValueError("log requires constant term 1")
    q = s.derivative() * series_invert(s.truncate(s.order - 1)) if s.order else None
    out = [s.ring.zero]
    for k in range(1, s.order + 1):
        out.append(q.coeffs[k - 1] * mpq(1, k))
    return TruncatedSeries._raw(s.ring, out, s.var)
