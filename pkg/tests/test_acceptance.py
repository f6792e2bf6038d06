"""The eleven acceptance criteria.  Every comparison is exact equality of rationals.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary lists one
PASS/FAIL line per criterion with its runtime against the budget.
"""

import itertools
import time
from functools import lru_cache
from math import comb, factorial

import pytest
from gmpy2 import mpq

from quotseries.core import (RationalFunction, TruncatedSeries, int_power, jet_ring, pade_reconstruct,
                             series_invert)
from quotseries.hilbert import (SurfaceNumerics, hilbert_descendent_series, hilbert_w_series, p1xp1_coefficient,
                                p1xp1_series, qt_change_of_vars)
from quotseries.lagrange import (ef_recursion, ef_specialized_check, p_polynomial, w_closed_form,
                                 w_equivariant_closed_form)
from quotseries.localization import QuotProblem, quot_equivariant_series, quot_oracle_series
from quotseries.symfunc import (SigmaParams, VERIFY_COUNT, chern_char_from_classes, complete_from_power_sums,
                                power_sums, sigma_binomial, sigma_extraction_sequence, sigma_star_fit,
                                sigma_vandermonde_collapsed, sigma_vandermonde_triple)

criterion = pytest.mark.criterion

GRID = (
    ((), ()),
    ((0,), (2,)), ((1,), (2,)), ((-2,), (2,)),
    ((0, 1), (2, 1)), ((1, -2), (1, 2)), ((-2, 0), (2, 2)),
)
RAYS = ((2, 4, 8), (3, 9, 27))
GRID_ORDER = 12


def grid():
    for N in (1, 2, 3):
        for degrees, caps in GRID:
            yield N, degrees, caps


@lru_cache(maxsize=None)
def limit(N, weights, degrees, caps, order):
    return quot_oracle_series(QuotProblem(N, weights, degrees, caps, order))


def timed(budget):
    """Assert the block finishes within ``budget`` seconds."""
    class _Timer:
        def __enter__(self):
            self.start = time.perf_counter()

        def __exit__(self, *exc):
            if exc[0] is None:
                elapsed = time.perf_counter() - self.start
                assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
    return _Timer()


@criterion(1, "rank 2 Euler characteristic series", 60)
def test_euler_characteristic_rank2():
    with timed(60):
        W = limit(2, None, (), (), 24).constant_part()
        A = series_invert(W)
        target = RationalFunction([1, -2, 1]) * RationalFunction([1, -6, 1], [1, -8, 16])
        assert A == target.expand(24)
        assert pade_reconstruct(A, 8, 8) == RationalFunction([1, -8, 14, -8, 1], [1, -8, 16])


@criterion(2, "rank 2 descendent derivative", 120)
def test_descendent_derivative_rank2():
    with timed(120):
        W = limit(2, None, (0,), (1,), 16)
        A = series_invert(W)
        dA = A.jet_coefficient((1,))
        assert dA == -(W.jet_coefficient((1,)) * int_power(W.jet_coefficient((0,)), -2))
        expected = RationalFunction([0, 0, 2, -24, -66, 16], [1, -12, 48, -64])
        assert pade_reconstruct(dA, 6, 6) == expected


@criterion(3, "fixed-point sum equals the Lagrange-Buermann closed form", 600)
def test_oracle_equals_closed_form():
    with timed(600):
        for N, degrees, caps in grid():
            target = w_closed_form(QuotProblem(N, None, degrees, caps, GRID_ORDER))
            for ray in RAYS:
                p = QuotProblem(N, ray[:N], degrees, caps, GRID_ORDER)
                assert quot_equivariant_series(p) == w_equivariant_closed_form(p), (N, degrees, ray)
                assert limit(N, ray[:N], degrees, caps, GRID_ORDER) == target, (N, degrees, ray)


@criterion(4, "weight independence", 600)
def test_weight_independence():
    with timed(600):
        for N, degrees, caps in grid():
            a, b = (limit(N, ray[:N], degrees, caps, GRID_ORDER) for ray in RAYS)
            assert a == b, (N, degrees)


@criterion(5, "Hilbert scheme series at x = 0", 10)
def test_hilbert_without_insertions():
    with timed(10):
        for M2, MK in itertools.product(range(-3, 4), repeat=2):
            W = hilbert_w_series(SurfaceNumerics(M2, MK, 0), 16).constant_part()
            expected = RationalFunction([1, -1]) ** M2 * RationalFunction([1, -1], [1, -2]) ** MK
            assert W == expected.expand(16), (M2, MK)


@criterion(6, "universal series A and its x-derivative", 5)
def test_canonical_pair():
    with timed(5):
        s = SurfaceNumerics(1, 1, 1, (0,), (1,))
        A0 = pade_reconstruct(hilbert_descendent_series(s, (0,), 16), 6, 6)
        dA = pade_reconstruct(hilbert_descendent_series(s, (1,), 16), 6, 6)
        assert A0 == RationalFunction([1, -2, 1], [1, -2])
        assert dA == RationalFunction([0, 0, -1, 4], [1, -4, 4])


def elementary(values, k, zero):
    acc = zero
    for combo in itertools.combinations(values, k):
        term = values[0] ** 0 if values else zero
        for v in combo:
            term = term * v
        acc = acc + term
    return acc


@criterion(7, "a(t) as a series in elementary symmetric functions", 5)
def test_a_series():
    with timed(5):
        order = 8
        for ell in range(4):
            R = jet_ring((1,) * ell)
            _, _, a = qt_change_of_vars((1,) * ell, order)
            values = [R.one] + [R.variable(m) for m in range(ell)]
            coeffs = [R.one, R.zero] + [elementary(values, k, R.zero) * ((-1) ** (k - 1) * (k - 1))
                                        for k in range(2, order + 1)]
            assert a == TruncatedSeries(coeffs, order, R, "t"), ell


@criterion(8, "P1 x P1 coefficients and their series", 30)
def test_p1xp1():
    with timed(30):
        assert [p1xp1_coefficient(n) for n in range(1, 31)] == [(-1) ** n * (4 * n - 10) for n in range(1, 31)]
        Z = p1xp1_series(30)
        assert pade_reconstruct(Z, 10, 10) == RationalFunction([0, 6, -10], [1, -2, 1])


@criterion(9, "e/f factorization", 60)
def test_ef_suite():
    with timed(60):
        order = 16
        for N, ell in itertools.product((1, 2, 3), (0, 1, 2)):
            p = QuotProblem(N, None, tuple(range(ell)), (1,) * ell, order)
            ef = ef_recursion(p)
            assert ef.product() == p_polynomial(N, p.weights, ell, p.ring, order)
            assert ef.f[0].coeffs[0] == p.ring.one
            assert all(f.coeffs[0] == p.ring.zero for f in ef.f[1:])
        for N in (1, 2, 3):
            explicit = ef_specialized_check(N, order)
            # independent expansion of (g^N - q (g-1)^N) / (1-q) below g^N
            geo = [1] * (order + 1)
            for i in range(N):
                c = -(-1) ** (N - i) * comb(N, i)
                assert list(explicit[i].coeffs) == [0] + [c * g for g in geo[1:]]


@criterion(10, "binomial sums of star form", 60)
def test_sigma_suite():
    with timed(60):
        for a, b, c in itertools.product(range(-4, 5), repeat=3):
            p = SigmaParams(a, b, c)
            seq = sigma_extraction_sequence(p, 60)
            assert all(sigma_binomial(p, n) == v for n, v in seq.items()), p
            form = sigma_star_fit(p)
            n_fit_end = p.threshold + 2 * p.degree_bound + 6
            assert all(form(n) == sigma_binomial(p, n)
                       for n in range(n_fit_end, n_fit_end + VERIFY_COUNT)), p
        for a_total, m, i, j, r1, r2, cshift in itertools.product(
                (1, 2, 3), (0, 1, 2), (0, 1), (0, 1), (0, 1, 2), (-2, 0, 2), (-1, 0, 1, 2)):
            for n in range(8):
                if n + r1 - i < 0 or a_total - m + n + r1 - i < 0:
                    continue
                assert sigma_vandermonde_triple(a_total, m, i, j, r1, r2, cshift, n) == \
                    sigma_vandermonde_collapsed(a_total, m, i, j, r1, r2, cshift, n)


def brute_complete(ys, j):
    acc = mpq(0)
    for combo in itertools.combinations_with_replacement(ys, j):
        term = mpq(1)
        for y in combo:
            term *= y
        acc += term
    return acc


@criterion(11, "power sums, complete homogeneous and Chern characters", 10)
def test_symmetric_functions():
    with timed(10):
        xs = [mpq(1, 2), mpq(-1, 3), mpq(2, 5), mpq(3), mpq(-5, 7), mpq(1, 11)]
        for r in range(1, 7):
            ys = [1 / (1 - x) for x in xs[:r]]
            P = [None] + [power_sums(xs[:r], d, -1) for d in range(1, 9)]
            assert complete_from_power_sums(P, 8) == [brute_complete(ys, j) for j in range(9)]
        for r in range(1, 6):
            classes = [elementary(xs[:r], k, mpq(0)) for k in range(r + 1)]
            ch = chern_char_from_classes(classes, r, 8)
            assert ch == [sum(x ** k for x in xs[:r]) / factorial(k) for k in range(9)]
