"""Coefficient rings: the rationals and truncated multivariate jets.

A *jet* is a polynomial in formal variables ``x_1..x_l`` in which every
monomial whose exponent of ``x_m`` exceeds ``caps[m]`` is discarded.  Those
monomials carry all mixed partial derivatives up to the caps, which is all
that descendent extraction ever needs.

Jets are stored densely: coefficient ``k`` belongs to the exponent tuple of
mixed-radix index ``k`` (first variable most significant).  The multiplication
table for a given ``caps`` is computed once and shared, and is also compiled
into a straight-line product function: jet products are the innermost
operation of every localization sum, and unrolling them removes the Python
loop overhead that otherwise dominates.
"""

from __future__ import annotations

import itertools
import operator
from functools import lru_cache
from typing import Iterator, Sequence

from gmpy2 import mpq

from .rational import ONE, ZERO, to_q

__all__ = ["QQ", "Rationals", "JetRing", "Jet", "jet_ring", "NotInvertibleError"]


class NotInvertibleError(ArithmeticError):
    """Raised when inverting an element whose constant term is not a unit."""


class Rationals:
    """The scalar field; elements are plain ``mpq``."""

    name = "QQ"
    zero = ZERO
    one = ONE

    def __call__(self, x) -> mpq:
        return to_q(x)

    def coerce(self, x) -> mpq:
        return to_q(x)

    @staticmethod
    def is_unit(x) -> bool:
        return x != 0

    @staticmethod
    def inv(x) -> mpq:
        if x == 0:
            raise NotInvertibleError("not invertible: zero")
        return ONE / x

    @staticmethod
    def constant(x) -> mpq:
        return x

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash("QQ")


QQ = Rationals()


class JetRing:
    """Truncated polynomial ring Q[x_1..x_l] / (x_m^(caps[m]+1))."""

    def __init__(self, caps: Sequence[int], names: Sequence[str] | None = None):
        caps = tuple(int(k) for k in caps)
        if any(k < 0 for k in caps):
            raise ValueError(f"jet caps must be non-negative, got {caps}")
        self.caps = caps
        self.nvars = len(caps)
        if names is None:
            names = [f"x{m + 1}" for m in range(self.nvars)]
        if len(names) != self.nvars:
            raise ValueError("one name per jet variable")
        self.names = tuple(names)
        self.exponents: tuple[tuple[int, ...], ...] = tuple(
            itertools.product(*(range(k + 1) for k in caps))
        )
        self.size = len(self.exponents)
        self.index = {e: k for k, e in enumerate(self.exponents)}
        self._table = _mult_table(caps)
        self._product = _compiled_product(caps)
        self.zero = Jet(self, (ZERO,) * self.size)
        self.one = self.constant_jet(ONE)

    def __repr__(self) -> str:
        return f"JetRing(caps={self.caps})"

    def __eq__(self, other) -> bool:
        return isinstance(other, JetRing) and other.caps == self.caps

    def __hash__(self) -> int:
        return hash(("JetRing", self.caps))

    def __call__(self, x) -> "Jet":
        return self.coerce(x)

    def coerce(self, x) -> "Jet":
        if isinstance(x, Jet):
            if x.ring is self or x.ring == self:
                return x
            raise TypeError(f"jet over {x.ring} is not an element of {self}")
        return self.constant_jet(to_q(x))

    def constant_jet(self, c) -> "Jet":
        coeffs = [ZERO] * self.size
        coeffs[0] = mpq(c)
        return Jet(self, tuple(coeffs))

    def variable(self, m: int) -> "Jet":
        """The jet variable ``x_{m+1}`` (zero if its cap is 0)."""
        e = [0] * self.nvars
        e[m] = 1
        return self.monomial(e)

    def monomial(self, exps: Sequence[int], coeff=ONE) -> "Jet":
        exps = tuple(exps)
        coeffs = [ZERO] * self.size
        k = self.index.get(exps)
        if k is not None:
            coeffs[k] = to_q(coeff)
        elif len(exps) != self.nvars:
            raise ValueError(f"exponent tuple {exps} has wrong length")
        return Jet(self, tuple(coeffs))

    def from_dict(self, terms: dict) -> "Jet":
        coeffs = [ZERO] * self.size
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != self.nvars:
                raise ValueError(f"exponent tuple {exps} has wrong length")
            k = self.index.get(exps)
            if k is not None:
                coeffs[k] += to_q(c)
        return Jet(self, tuple(coeffs))

    @staticmethod
    def is_unit(x: "Jet") -> bool:
        return x.c[0] != 0

    @staticmethod
    def inv(x: "Jet") -> "Jet":
        return x.inverse()

    @staticmethod
    def constant(x: "Jet") -> mpq:
        return x.c[0]


@lru_cache(maxsize=None)
def jet_ring(caps: tuple[int, ...]) -> JetRing:
    return JetRing(caps)


@lru_cache(maxsize=None)
def _mult_table(caps: tuple[int, ...]) -> tuple[tuple[tuple[int, int], ...], ...]:
    """For each left index i, the pairs (j, k) with mono_i * mono_j = mono_k."""
    exps = list(itertools.product(*(range(k + 1) for k in caps)))
    index = {e: k for k, e in enumerate(exps)}
    table = []
    for a in exps:
        row = []
        for j, b in enumerate(exps):
            s = tuple(x + y for x, y in zip(a, b))
            k = index.get(s)
            if k is not None:
                row.append((j, k))
        table.append(tuple(row))
    return tuple(table)


@lru_cache(maxsize=None)
def _compiled_product(caps: tuple[int, ...]):
    """``f(a, b)`` returning the coefficient tuple of the jet product."""
    table = _mult_table(caps)
    terms: list[list[str]] = [[] for _ in table]
    for i, row in enumerate(table):
        for j, k in row:
            terms[k].append(f"a[{i}]*b[{j}]")
    body = ", ".join(" + ".join(t) for t in terms)
    namespace: dict = {}
    exec(f"def product(a, b):\n    return ({body},)\n", namespace)
    return namespace["product"]


class Jet:
    __slots__ = ("ring", "c")

    def __init__(self, ring: JetRing, coeffs: tuple):
        self.ring = ring
        self.c = coeffs

    def _other(self, other):
        if isinstance(other, Jet):
            if other.ring.caps != self.ring.caps:
                raise TypeError("jets over different rings")
            return other
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            c = list(self.c)
            c[0] = c[0] + to_q(other)
            return Jet(self.ring, tuple(c))
        return Jet(self.ring, tuple(map(operator.add, self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.ring, tuple(-a for a in self.c))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            c = list(self.c)
            c[0] = c[0] - to_q(other)
            return Jet(self.ring, tuple(c))
        return Jet(self.ring, tuple(map(operator.sub, self.c, o.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            s = to_q(other)
            return Jet(self.ring, tuple(a * s for a in self.c))
        return Jet(self.ring, self.ring._product(self.c, o.c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            s = to_q(other)
            if s == 0:
                raise ZeroDivisionError("jet divided by zero")
            return self * (ONE / s)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        o = self._other(other) if isinstance(other, Jet) else None
        if o is not None:
            return self.c == o.c
        if isinstance(other, Jet):
            return False
        try:
            s = to_q(other)
        except TypeError:
            return NotImplemented
        return self.c[0] == s and not any(self.c[1:])

    def __hash__(self):
        return hash((self.ring.caps, self.c))

    def __bool__(self):
        return any(self.c)

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_unit(self) -> bool:
        return self.c[0] != 0

    @property
    def constant(self) -> mpq:
        return self.c[0]

    def coefficient(self, exps: Sequence[int]) -> mpq:
        k = self.ring.index.get(tuple(exps))
        if k is None:
            raise KeyError(f"monomial {tuple(exps)} exceeds jet caps {self.ring.caps}")
        return self.c[k]

    def terms(self) -> Iterator[tuple[tuple[int, ...], mpq]]:
        """Nonzero (exponent tuple, coefficient) pairs in index order."""
        for e, a in zip(self.ring.exponents, self.c):
            if a:
                yield e, a

    def inverse(self) -> "Jet":
        c0 = self.c[0]
        if c0 == 0:
            raise NotInvertibleError("not invertible: jet has zero constant term")
        inv0 = ONE / c0
        if self.ring.size == 1:
            return Jet(self.ring, (inv0,))
        # self = c0 (1 + nu) with nu nilpotent of index <= sum(caps) + 1
        nu = self * inv0 - 1
        term = self.ring.one
        total = self.ring.one
        for _ in range(sum(self.ring.caps)):
            term = term * (-nu)
            if not term:
                break
            total = total + term
        return total * inv0

    def restrict(self, ring: JetRing) -> "Jet":
        """Project onto a ring with smaller (or equal) caps."""
        if len(ring.caps) != len(self.ring.caps):
            raise ValueError("restrict needs the same number of jet variables")
        coeffs = [ZERO] * ring.size
        for e, a in zip(self.ring.exponents, self.c):
            k = ring.index.get(e)
            if k is not None:
                coeffs[k] = a
        return Jet(ring, tuple(coeffs))

    def __repr__(self) -> str:
        if not any(self.c):
            return "0"
        parts = []
        for e, a in self.terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.ring.names, e) if k
            )
            parts.append(f"({a})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)
