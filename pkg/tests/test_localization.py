import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from quotseries.core import RationalFunction, TruncatedSeries, jet_ring, series_invert
from quotseries.localization import (Composition, DegenerateWeightsError, QuotProblem, compositions,
                                     default_weights, fixed_locus_contribution, phi_series, psi_series,
                                     quot_equivariant_series, quot_oracle_series)
from quotseries.weightlimit import ExtrapolationError, degree_bound, limit_along_ray, sample_points

EULER_RANK1 = RationalFunction([1, -2], [1, -2, 1])
EULER_RANK2_INV = RationalFunction([1, -8, 16], [1, -8, 14, -8, 1])


def test_default_weights_are_powers_of_two():
    assert default_weights(3) == (2, 4, 8)


@pytest.mark.parametrize("weights", [(2, 3), (5, 5), (1, 0)])
def test_degenerate_weights_rejected(weights):
    with pytest.raises(DegenerateWeightsError):
        QuotProblem(2, weights)


def test_problem_validation():
    with pytest.raises(ValueError):
        QuotProblem(0)
    with pytest.raises(ValueError):
        QuotProblem(2, (2, 4, 8))
    with pytest.raises(ValueError):
        QuotProblem(1, None, (0, 1), (1,))
    with pytest.raises(ValueError):
        QuotProblem(1, None, (0,), (-1,))


def test_compositions():
    assert [c.parts for c in compositions(2, 2)] == [(0, 2), (1, 1), (2, 0)]
    assert sum(1 for _ in compositions(4, 3)) == 15
    with pytest.raises(ValueError):
        Composition((1, -1))


def test_phi_rank1():
    p = QuotProblem(1, (mpq(5),), order=4)
    assert phi_series(p, 1, 3) == TruncatedSeries([1, -1], 3, p.ring, "h")
    p1 = QuotProblem(1, (mpq(5),), (3,), (2,), order=4)
    x = p1.ring.variable(0)
    h = TruncatedSeries([0, 1], 3, p1.ring, "h")
    assert phi_series(p1, 1, 3) == (1 - h) * (1 + (5 - h) * x)


def test_phi_rank2_constant_term():
    p = QuotProblem(2, (2, 4))
    assert phi_series(p, 1, 2).coeffs[0].constant == mpq(-1, 2)
    with pytest.raises(IndexError):
        phi_series(p, 3, 2)


def test_psi_rank1():
    p = QuotProblem(1, (mpq(3),), order=4)
    assert psi_series(p, (3,)).coefficient((0,)) == 1
    assert psi_series(p, (3,)).coefficient((1,)) == 1
    assert psi_series(p, (3,)).coefficient((2,)) == 0
    p1 = QuotProblem(1, (mpq(3),), (0,), (2,), order=4)
    R, x = p1.ring, p1.ring.variable(0)
    h = TruncatedSeries([0, 1], 3, R, "h")
    expected = (1 + h) * series_invert(1 + (3 - h) * x) * (1 + 3 * x)
    psi = psi_series(p1, (3,))
    assert [psi.coefficient((k,)) for k in range(4)] == list(expected.coeffs)


@pytest.mark.parametrize("N", [2, 3])
def test_psi_constant_term_is_sign(N):
    p = QuotProblem(N)
    assert psi_series(p, (1,) * N).coefficient((0,) * N).constant == (-1) ** (N * (N - 1) // 2)


def test_fixed_locus_rank1():
    p = QuotProblem(1)
    assert fixed_locus_contribution(p, Composition((0,))).constant == 1
    assert fixed_locus_contribution(p, Composition((2,))).constant == -1


def test_rank2_first_coefficient_vanishes():
    # 1/A = 1 + 0 q + 2 q^2 + .. for the rank 2 Euler characteristic series
    p = QuotProblem(2, order=3)
    assert sum(fixed_locus_contribution(p, c).constant for c in compositions(1, 2)) == 0
    assert quot_oracle_series(p).constant_part() == EULER_RANK2_INV.expand(3)


def test_contraction_matches_per_locus_sum():
    p = QuotProblem(3, (2, 5, 9), (1,), (1,), order=4)
    series = quot_equivariant_series(p)
    for n in range(5):
        assert series.coeffs[n] == sum((fixed_locus_contribution(p, c) for c in compositions(n, 3)),
                                       p.ring.zero)


def test_oracle_rank1_and_rank2():
    assert quot_oracle_series(QuotProblem(1, order=12)).constant_part() == EULER_RANK1.expand(12)
    assert quot_oracle_series(QuotProblem(2, order=10)).constant_part() == EULER_RANK2_INV.expand(10)


def test_equivariant_sum_depends_on_weights():
    a = quot_equivariant_series(QuotProblem(2, (2, 4), order=3))
    b = quot_equivariant_series(QuotProblem(2, (3, 9), order=3))
    assert a != b
    assert quot_oracle_series(QuotProblem(2, (2, 4), order=3)) == quot_oracle_series(QuotProblem(2, (3, 9), order=3))


admissible_pairs = st.tuples(st.integers(-12, 12), st.integers(-12, 12)).filter(lambda t: abs(t[0] - t[1]) > 1)


@settings(max_examples=15, deadline=None)
@given(admissible_pairs, st.sampled_from([((), ()), ((0,), (1,)), ((-1,), (2,))]))
def test_oracle_independent_of_ray(weights, setup):
    degrees, caps = setup
    ref = quot_oracle_series(QuotProblem(2, None, degrees, caps, 4))
    assert quot_oracle_series(QuotProblem(2, weights, degrees, caps, 4)) == ref


# -- weight limit ---------------------------------------------------------------

def test_sample_points_skip_inadmissible():
    pts = sample_points((mpq(0), mpq(1, 2)), 4)
    assert mpq(2) not in pts and mpq(-2) not in pts
    assert pts[:2] == [1, -1]


def test_degree_bound():
    assert degree_bound(2, 1, 0) == 0
    assert degree_bound(3, 4, 2) == 3 * 2 * 3 + 2


def test_limit_of_rational_family():
    # coefficient n: ((1 + eps)^2 / (1 - 4 eps^2))^(n - 1) for weights (0, 2 eps)
    u = (mpq(0), mpq(2))

    def evaluate(w):
        eps = w[1] / 2
        coeffs = [((1 + eps) ** 2 / (1 - 4 * eps ** 2)) ** max(n - 1, 0) for n in range(6)]
        return TruncatedSeries(coeffs, 5, R)

    R = jet_ring(())
    assert limit_along_ray(u, 5, R, evaluate) == TruncatedSeries([1] * 6, 5, R)


def test_limit_detects_non_polynomial_family():
    u = (mpq(0), mpq(2))

    def evaluate(w):
        eps = w[1] / 2
        return TruncatedSeries([mpq(2) ** int(eps)] * 3, 2, R)

    R = jet_ring(())
    with pytest.raises(ExtrapolationError):
        limit_along_ray(u, 2, R, evaluate)
