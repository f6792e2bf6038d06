"""JSON forms of series and rational functions.

Rational series::

    {"variable": "q", "order": 24, "coefficients": ["3/2", "-1", ...]}

Jet-valued series add the jet caps and list one rational series per jet
monomial (keys are comma-joined exponent tuples, only nonzero ones)::

    {"variable": "q", "order": 12, "jet_caps": [1],
     "monomials": {"0": ["1", "0", ...], "1": [...]}}
"""

from __future__ import annotations

from .jet import QQ, JetRing, jet_ring
from .poly import RationalFunction, UniPolynomial
from .rational import parse_q, q_str
from .series import TruncatedSeries

__all__ = ["series_to_json", "series_from_json", "rational_function_to_json",
           "rational_function_from_json"]


def _key(exps) -> str:
    return ",".join(str(k) for k in exps)


def series_to_json(s: TruncatedSeries) -> dict:
    if s.ring == QQ:
        return {"variable": s.var, "order": s.order, "coefficients": [q_str(c) for c in s.coeffs]}
    ring: JetRing = s.ring
    monos = {}
    for exps in ring.exponents:
        coeffs = [c.coefficient(exps) for c in s.coeffs]
        if any(coeffs):
            monos[_key(exps)] = [q_str(c) for c in coeffs]
    return {"variable": s.var, "order": s.order, "jet_caps": list(ring.caps), "monomials": monos}


def series_from_json(obj: dict) -> TruncatedSeries:
    var = obj.get("variable", "q")
    if "coefficients" in obj:
        coeffs = [parse_q(str(c)) for c in obj["coefficients"]]
        order = int(obj.get("order", len(coeffs) - 1))
        if len(coeffs) != order + 1:
            raise ValueError(f"order {order} but {len(coeffs)} coefficients")
        return TruncatedSeries(coeffs, order, QQ, var)
    ring = jet_ring(tuple(int(k) for k in obj["jet_caps"]))
    order = int(obj["order"])
    per_n = [dict() for _ in range(order + 1)]
    for key, coeffs in obj["monomials"].items():
        exps = tuple(int(k) for k in key.split(",")) if key else ()
        if len(coeffs) != order + 1:
            raise ValueError(f"monomial {key}: order {order} but {len(coeffs)} coefficients")
        for n, c in enumerate(coeffs):
            per_n[n][exps] = parse_q(str(c))
    return TruncatedSeries([ring.from_dict(d) for d in per_n], order, ring, var)


def rational_function_to_json(rf: RationalFunction) -> dict:
    return {"numerator": [q_str(c) for c in rf.numerator.coeffs],
            "denominator": [q_str(c) for c in rf.denominator.coeffs]}


def rational_function_from_json(obj: dict) -> RationalFunction:
    return RationalFunction(UniPolynomial(parse_q(str(c)) for c in obj["numerator"]),
                            UniPolynomial(parse_q(str(c)) for c in obj["denominator"]))
