import itertools
from math import comb, factorial

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from quotseries.core import UniPolynomial
from quotseries.symfunc import (SigmaParams, StarFitError, VERIFY_COUNT, chern_char_from_classes,
                                complete_from_power_sums, power_sums, sigma_binomial, sigma_by_extraction,
                                sigma_extraction_sequence, sigma_star_fit, sigma_vandermonde,
                                sigma_vandermonde_collapsed, sigma_vandermonde_triple)


def poly_coeff(a_exp, b_exp, k):
    """``[x^k] (1-x)^a (1+x)^b`` for a, b >= 0 by convolving expanded polynomials."""
    left = [(-1) ** v * comb(a_exp, v) for v in range(a_exp + 1)]
    right = [comb(b_exp, w) for w in range(b_exp + 1)]
    return sum(left[v] * right[k - v] for v in range(len(left)) if 0 <= k - v < len(right))


def test_sigma_examples():
    zero = SigmaParams(0, 0, 0)
    assert [sigma_binomial(zero, n) for n in range(6)] == [(-1) ** n for n in range(6)]
    one = SigmaParams(0, 1, 0)
    assert [sigma_binomial(one, n) for n in range(6)] == [(-1) ** n * (1 - n) for n in range(6)]
    assert sigma_binomial(SigmaParams(0, 3, 0), 4) == poly_coeff(4, 3, 4)


def test_sigma_domain():
    with pytest.raises(ValueError):
        sigma_binomial(SigmaParams(-3, 0, 0), 2)
    with pytest.raises(ValueError):
        sigma_by_extraction(SigmaParams(-3, 0, 0), 2)
    assert sigma_binomial(SigmaParams(0, 0, -5), 2) == 0


@settings(max_examples=60)
@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4), st.integers(0, 30))
def test_sigma_two_ways(a, b, c, k):
    p = SigmaParams(a, b, c)
    n = p.threshold + k
    assert sigma_binomial(p, n) == sigma_by_extraction(p, n)
    assert sigma_binomial(p, n) == sigma_extraction_sequence(p, n)[n]


def test_star_fit_examples():
    f = sigma_star_fit(SigmaParams(0, 0, 0))
    assert f.p1 == UniPolynomial([1]) and not f.p2
    f = sigma_star_fit(SigmaParams(0, 1, 0))
    assert f.p1 == UniPolynomial([1, -1]) and not f.p2


def test_star_fit_two_power_term_needs_negative_b():
    assert sigma_star_fit(SigmaParams(0, -1, 0)).p2 == UniPolynomial([1])
    for b in (1, 2, 3):
        assert not sigma_star_fit(SigmaParams(1, b, 0)).p2


@settings(max_examples=40, deadline=None)
@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4))
def test_star_fit_degree_bounds(a, b, c):
    p = SigmaParams(a, b, c)
    f = sigma_star_fit(p)
    assert not f.p1 or f.p1.degree <= a + b - c
    assert not f.p2 or (b < 0 and f.p2.degree <= -b - 1)
    top = p.threshold + 2 * p.degree_bound + 6 + VERIFY_COUNT + 20
    assert f(top) == sigma_binomial(p, top)


def test_star_fit_window_check():
    with pytest.raises(ValueError):
        sigma_star_fit(SigmaParams(1, 1, 1), n_max=3)


def test_star_fit_failure_is_reported(monkeypatch):
    import quotseries.symfunc as sf
    real = sf.sigma_binomial
    # a term growing like 3^n has no star form
    monkeypatch.setattr(sf, "sigma_binomial", lambda p, n: real(p, n) + 3 ** n)
    with pytest.raises(StarFitError):
        sf.sigma_star_fit(SigmaParams(0, 0, 0))


def test_vandermonde_without_shift_is_plain_sigma():
    for n in range(6):
        assert sigma_vandermonde(2, 2, 0, 0, 1, 1, 0, n) == sigma_binomial(SigmaParams(1, 1, 0), n)


@pytest.mark.parametrize("i,j", list(itertools.product(range(2), range(2))))
def test_vandermonde_small_grid(i, j):
    for r1, r2, cshift, n in itertools.product(range(3), range(-1, 3), range(-1, 3), range(8)):
        if n + r1 - i < 0:
            continue
        assert sigma_vandermonde_triple(2, 1, i, j, r1, r2, cshift, n) == \
            sigma_vandermonde_collapsed(2, 1, i, j, r1, r2, cshift, n)


def test_vandermonde_collapsed_has_star_form():
    a_total, m, i, j, r1, r2, cshift = 3, 1, 1, 0, 2, -2, 1
    p = SigmaParams(a_total - m + r1 - i, r2 - j, cshift - i - j)
    f = sigma_star_fit(p)
    for n in range(p.threshold, p.threshold + 20):
        assert f(n) == sigma_vandermonde(a_total, m, i, j, r1, r2, cshift, n)


def test_vandermonde_domain():
    with pytest.raises(ValueError):
        sigma_vandermonde(1, 0, 2, 0, 0, 0, 0, 1)


def test_power_sums_examples():
    assert power_sums([0, 0, 0], 4, 1) == 3
    x = mpq(1, 5)
    assert power_sums([x], 1, -1) == 1 / (1 - x)
    assert power_sums([mpq(1, 2), mpq(1, 3)], 2, -1) == 4 + mpq(9, 4)
    with pytest.raises(ZeroDivisionError):
        power_sums([mpq(-1)], 1, 1)
    with pytest.raises(ValueError):
        power_sums([1], 1, 2)


def test_complete_examples():
    assert complete_from_power_sums([None] + [1] * 6, 6) == [1] * 7
    assert complete_from_power_sums([None], 0) == [1]
    with pytest.raises(ValueError):
        complete_from_power_sums([None, 1], 3)


def brute_h(ys, j):
    acc = mpq(0)
    for combo in itertools.combinations_with_replacement(ys, j):
        term = mpq(1)
        for y in combo:
            term *= y
        acc += term
    return acc


roots = st.lists(st.builds(lambda a, b: mpq(a, b), st.integers(-7, 7), st.integers(2, 6)).filter(lambda x: x != 1),
                 min_size=1, max_size=6)


@settings(max_examples=30, deadline=None)
@given(roots)
def test_complete_against_brute_force(xs):
    ys = [1 / (1 - x) for x in xs]
    P = [None] + [power_sums(xs, d, -1) for d in range(1, 9)]
    assert complete_from_power_sums(P, 8) == [brute_h(ys, j) for j in range(9)]


def elementary(xs, k):
    acc = mpq(0)
    for combo in itertools.combinations(xs, k):
        term = mpq(1)
        for x in combo:
            term *= x
        acc += term
    return acc


def test_chern_character_examples():
    c1, c2 = mpq(3), mpq(5)
    ch = chern_char_from_classes([1, c1, c2], 2, 3)
    assert ch[0] == 2 and ch[1] == c1
    assert ch[2] == (c1 ** 2 - 2 * c2) / 2


@settings(max_examples=30, deadline=None)
@given(st.lists(st.builds(lambda a, b: mpq(a, b), st.integers(-9, 9), st.integers(1, 4)), min_size=1, max_size=5))
def test_chern_character_from_roots(xs):
    r = len(xs)
    classes = [elementary(xs, k) for k in range(r + 1)]
    ch = chern_char_from_classes(classes, r, 7)
    assert ch == [sum(x ** k for x in xs) / factorial(k) for k in range(8)]
