"""Sparse multivariate truncated series in ``h_1..h_N``.

Monomials are kept when every exponent respects its cap and, if
``max_total`` is set, the total degree does not exceed it.  The total-degree
bound is what keeps the localization sum cheap: only ``h^c`` with
``|c| <= order`` is ever extracted.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .jet import QQ, Jet
from .series import TruncatedSeries

__all__ = ["MultiSeries"]


class MultiSeries:
    __slots__ = ("ring", "caps", "max_total", "terms", "names")

    def __init__(self, terms: dict, caps: Sequence[int], ring=QQ, max_total: int | None = None,
                 names: Sequence[str] | None = None):
        self.ring = ring
        self.caps = tuple(caps)
        self.max_total = max_total
        self.names = tuple(names) if names else tuple(f"h{i + 1}" for i in range(len(self.caps)))
        self.terms = {e: ring.coerce(c) for e, c in terms.items() if self._keeps(e) and c}

    def _keeps(self, e: tuple) -> bool:
        if any(k > cap for k, cap in zip(e, self.caps)):
            return False
        return self.max_total is None or sum(e) <= self.max_total

    @property
    def nvars(self) -> int:
        return len(self.caps)

    def _like(self, terms: dict) -> "MultiSeries":
        out = MultiSeries.__new__(MultiSeries)
        out.ring, out.caps, out.max_total, out.names = self.ring, self.caps, self.max_total, self.names
        out.terms = terms
        return out

    @classmethod
    def constant(cls, c, caps, ring=QQ, max_total=None) -> "MultiSeries":
        return cls({(0,) * len(caps): c}, caps, ring, max_total)

    @classmethod
    def variable(cls, i: int, caps, ring=QQ, max_total=None) -> "MultiSeries":
        e = [0] * len(caps)
        e[i] = 1
        return cls({tuple(e): ring.one}, caps, ring, max_total)

    def coefficient(self, exps: Sequence[int]):
        """Exact ``[h^exps]``; raises if ``exps`` lies outside the retained box."""
        exps = tuple(exps)
        if not self._keeps(exps):
            raise KeyError(f"monomial {exps} is truncated away (caps {self.caps}, total {self.max_total})")
        return self.terms.get(exps, self.ring.zero)

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        out = dict(self.terms)
        for e, c in other.terms.items():
            if self._keeps(e):
                v = out.get(e)
                out[e] = c if v is None else v + c
        return self._like({e: c for e, c in out.items() if c})

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MultiSeries):
            s = self.ring.coerce(other) if isinstance(other, Jet) else other
            return self._like({e: c * s for e, c in self.terms.items() if c * s})
        out: dict = {}
        caps, mt = self.caps, self.max_total
        for ea, ca in self.terms.items():
            ta = sum(ea)
            for eb, cb in other.terms.items():
                if mt is not None and ta + sum(eb) > mt:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                if any(k > cap for k, cap in zip(e, caps)):
                    continue
                v = out.get(e)
                p = ca * cb
                out[e] = p if v is None else v + p
        return self._like({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def mul_univariate(self, axis: int, s: TruncatedSeries) -> "MultiSeries":
        """Multiply by a series in the single variable ``h_{axis+1}``."""
        cap = self.caps[axis]
        mt = self.max_total
        out: dict = {}
        coeffs = s.coeffs
        for e, c in self.terms.items():
            room = cap - e[axis]
            if mt is not None:
                room = min(room, mt - sum(e))
            room = min(room, len(coeffs) - 1)
            base = list(e)
            for k in range(room + 1):
                sk = coeffs[k]
                if not sk:
                    continue
                base[axis] = e[axis] + k
                key = tuple(base)
                v = out.get(key)
                p = c * sk
                out[key] = p if v is None else v + p
        return self._like({e: c for e, c in out.items() if c})

    def substitute_linear(self, s: TruncatedSeries, form: Sequence) -> "MultiSeries":
        """``s(L)`` for the linear form ``L = sum form[i] h_i`` (no constant)."""
        lin = self._like({})
        for i, a in enumerate(form):
            if a:
                e = [0] * self.nvars
                e[i] = 1
                if self._keeps(tuple(e)):
                    lin.terms[tuple(e)] = self.ring.coerce(a)
        result = self._like({})
        power = MultiSeries.constant(self.ring.one, self.caps, self.ring, self.max_total)
        for k, sk in enumerate(s.coeffs):
            if not power.terms:
                break
            if sk:
                result = result + power * sk
            power = power * lin
        return result

    def change_ring(self, ring) -> "MultiSeries":
        out = self._like({e: ring.coerce(c) for e, c in self.terms.items()})
        out.ring = ring
        return out

    def __eq__(self, other):
        if isinstance(other, MultiSeries):
            return self.caps == other.caps and self.terms == other.terms
        return NotImplemented

    def __repr__(self) -> str:
        return f"MultiSeries(caps={self.caps}, max_total={self.max_total}, {len(self.terms)} terms)"
