"""Exact descendent series of punctual Quot schemes and Hilbert schemes of points."""

from .hilbert import (SurfaceNumerics, hilbert_descendent_series, hilbert_w_series, p1xp1_coefficient,
                      p1xp1_series, qt_change_of_vars, universal_series_extract)
from .lagrange import ef_recursion, w_closed_form, w_equivariant_closed_form
from .localization import QuotProblem, quot_equivariant_series, quot_oracle_series
from .symfunc import (SigmaParams, chern_char_from_classes, complete_from_power_sums, power_sums,
                      sigma_binomial, sigma_star_fit, sigma_vandermonde)

__version__ = "0.1.0"

__all__ = [
    "QuotProblem", "quot_oracle_series", "quot_equivariant_series",
    "w_closed_form", "w_equivariant_closed_form", "ef_recursion",
    "SurfaceNumerics", "hilbert_w_series", "hilbert_descendent_series", "qt_change_of_vars",
    "universal_series_extract", "p1xp1_coefficient", "p1xp1_series",
    "SigmaParams", "sigma_binomial", "sigma_star_fit", "sigma_vandermonde",
    "power_sums", "complete_from_power_sums", "chern_char_from_classes",
]
