"""Exact arithmetic foundation: rationals, jets, truncated series, Padé."""

from .jet import QQ, Jet, JetRing, NotInvertibleError, jet_ring
from .linalg import solve_linear
from .multiseries import MultiSeries
from .pade import InsufficientOrderError, pade_reconstruct
from .poly import RationalFunction, UniPolynomial
from .rational import ONE, ZERO, Q, binomial, parse_q, q_str, to_q
from .serialize import (rational_function_from_json, rational_function_to_json,
                        series_from_json, series_to_json)
from .series import (TruncatedSeries, int_power, series_compose, series_exp, series_invert,
                     series_log, series_revert)

__all__ = [
    "QQ", "Jet", "JetRing", "NotInvertibleError", "jet_ring", "solve_linear", "MultiSeries",
    "InsufficientOrderError", "pade_reconstruct", "RationalFunction", "UniPolynomial",
    "ONE", "ZERO", "Q", "binomial", "parse_q", "q_str", "to_q",
    "rational_function_from_json", "rational_function_to_json", "series_from_json",
    "series_to_json", "TruncatedSeries", "int_power", "series_compose", "series_exp",
    "series_invert", "series_log", "series_revert",
]
