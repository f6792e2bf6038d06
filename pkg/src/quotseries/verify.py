"""Built-in verification suite: every printed closed form plus the cross-checks.

Each :class:`VerificationCase` recomputes one family of values from scratch and
compares it exactly with the expected data.  :func:`run_verification` prints one
``PASS``/``FAIL`` line per case, in declaration order, and returns the number of
failures.  Shared heavy computations (oracle limits, closed forms) are cached.
"""

from __future__ import annotations

import itertools
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Callable

from gmpy2 import mpq

from .core import (RationalFunction, TruncatedSeries, UniPolynomial, int_power, jet_ring,
                   pade_reconstruct, series_invert)
from .hilbert import (SurfaceNumerics, hilbert_descendent_series, hilbert_w_series, p1xp1_coefficient,
                      p1xp1_series, qt_change_of_vars)
from .lagrange import (ef_recursion, ef_specialized_check, p_polynomial, w_closed_form,
                       w_equivariant_closed_form)
from .localization import QuotProblem, quot_equivariant_series, quot_oracle_series
from .symfunc import (SigmaParams, VERIFY_COUNT, chern_char_from_classes, complete_from_power_sums,
                      power_sums, sigma_binomial, sigma_extraction_sequence, sigma_star_fit,
                      sigma_vandermonde)

__all__ = ["VerificationCase", "CASES", "select_cases", "run_verification", "QUOT_GRID",
           "WEIGHT_RAYS", "GRID_ORDER", "rf"]


def rf(num, den=(1,)) -> RationalFunction:
    return RationalFunction(UniPolynomial(num), UniPolynomial(den))


@dataclass(frozen=True)
class VerificationCase:
    """One named check; ``run`` raises ``AssertionError`` on mismatch and returns a summary."""

    name: str
    tags: tuple
    computation: str
    expected: object
    citation: str
    run: Callable[[], str] = field(compare=False, repr=False)

    def matches(self, pattern: str) -> bool:
        return pattern in self.name or any(pattern in t for t in self.tags)


# (degrees, jet caps) for each l in {0, 1, 2}; every N in {1, 2, 3} runs all of them
QUOT_GRID = (
    ((), ()),
    ((0,), (2,)), ((1,), (2,)), ((-2,), (2,)),
    ((0, 1), (2, 1)), ((1, -2), (1, 2)), ((-2, 0), (2, 2)),
)
WEIGHT_RAYS = ((2, 4, 8), (3, 9, 27))
GRID_ORDER = 12


def _check(cond: bool, message: str):
    if not cond:
        raise AssertionError(message)


@lru_cache(maxsize=None)
def _problem(N, weights, degrees, caps, order) -> QuotProblem:
    return QuotProblem(N, weights, degrees, caps, order)


@lru_cache(maxsize=None)
def oracle_limit(N, weights, degrees, caps, order) -> TruncatedSeries:
    return quot_oracle_series(_problem(N, weights, degrees, caps, order))


@lru_cache(maxsize=None)
def closed_form(N, degrees, caps, order) -> TruncatedSeries:
    return w_closed_form(_problem(N, None, degrees, caps, order))


def _grid():
    for N in (1, 2, 3):
        for degrees, caps in QUOT_GRID:
            yield N, degrees, caps


# -- individual cases ---------------------------------------------------------

EULER_RANK2 = rf([1, -8, 14, -8, 1], [1, -8, 16])


def _euler_rank2() -> str:
    W = oracle_limit(2, None, (), (), 24).constant_part()
    A = series_invert(W)
    expected = rf([1, -2, 1]) * rf([1, -6, 1], [1, -8, 16])
    _check(A == expected.expand(24), f"A = 1/W = {A} differs from the closed form")
    got = pade_reconstruct(A, 4, 4)
    _check(got == EULER_RANK2, f"Pade of 1/W gave {got}")
    return f"1/W = {got}"


DESCENDENT_RANK2 = rf([0, 0, 2, -24, -66, 16], [1, -12, 48, -64])


def _descendent_rank2() -> str:
    W = oracle_limit(2, None, (0,), (1,), 16)
    W0, W1 = W.jet_coefficient((0,)), W.jet_coefficient((1,))
    # A = 1/W, so dA/dx = -W_x / W0^2
    dA = -(W1 * int_power(W0, -2))
    got = pade_reconstruct(dA, 6, 4)
    _check(got == DESCENDENT_RANK2, f"dA/dx reconstructed as {got}")
    return f"dA/dx = {got}"


def _oracle_vs_closed_form() -> str:
    count = 0
    for N, degrees, caps in _grid():
        target = closed_form(N, degrees, caps, GRID_ORDER)
        for ray in WEIGHT_RAYS:
            p = _problem(N, ray[:N], degrees, caps, GRID_ORDER)
            _check(quot_equivariant_series(p) == w_equivariant_closed_form(p),
                   f"equivariant sums differ at N={N} d={degrees} weights={ray[:N]}")
            _check(oracle_limit(N, ray[:N], degrees, caps, GRID_ORDER) == target,
                   f"oracle limit != closed form at N={N} d={degrees} weights={ray[:N]}")
            count += 1
    return f"{count} (problem, weight) pairs agree to q^{GRID_ORDER}"


def _weight_independence() -> str:
    for N, degrees, caps in _grid():
        a, b = (oracle_limit(N, ray[:N], degrees, caps, GRID_ORDER) for ray in WEIGHT_RAYS)
        _check(a == b, f"N={N} d={degrees}: limits along {WEIGHT_RAYS[0][:N]} and {WEIGHT_RAYS[1][:N]} differ")
    return f"{sum(1 for _ in _grid())} problems independent of the weight ray"


def _hilbert_x0() -> str:
    for M2, MK in itertools.product(range(-3, 4), repeat=2):
        W = hilbert_w_series(SurfaceNumerics(M2, MK, 0), 16)
        expected = rf([1, -1]) ** M2 * rf([1, -1], [1, -2]) ** MK
        _check(W == expected.expand(16), f"M2={M2} MK={MK}: {W}")
    return "49 pairs (M2, MK) to q^16"


CANONICAL_A0 = rf([1, -2, 1], [1, -2])
CANONICAL_DA = rf([0, 0, -1, 4], [1, -4, 4])


def _canonical_pair() -> str:
    # M = K and alpha.M = 0 give W = A^K2; K2 = 1 isolates A
    s = SurfaceNumerics(1, 1, 1, (0,), (1,))
    A0 = pade_reconstruct(hilbert_descendent_series(s, (0,), 16), 4, 4)
    dA = pade_reconstruct(hilbert_descendent_series(s, (1,), 16), 4, 4)
    _check(A0 == CANONICAL_A0, f"A|0 = {A0}")
    _check(dA == CANONICAL_DA, f"dA/dx|0 = {dA}")
    return f"A|0 = {A0}, dA/dx|0 = {dA}"


def _elementary(values, k):
    acc = 0
    for combo in itertools.combinations(values, k):
        term = 1
        for v in combo:
            term = term * v
        acc = acc + term
    return acc


def _a_series() -> str:
    order = 8
    for ell in range(4):
        ring = jet_ring((1,) * ell)
        a = qt_change_of_vars((1,) * ell, order)[2]
        roots = [ring.one] + [ring.variable(m) for m in range(ell)]
        coeffs = [ring.one, ring.zero]
        for k in range(2, order + 1):
            e_k = _elementary(roots, k) if k <= len(roots) else ring.zero
            coeffs.append(e_k * ((-1) ** (k - 1) * (k - 1)))
        _check(a == TruncatedSeries(coeffs, order, ring, "t"), f"l={ell}: a(t) = {a}")
    return "l = 0..3 to t^8"


P1XP1_Z = rf([0, 6, -10], [1, -2, 1])


def _p1xp1() -> str:
    for n in range(1, 31):
        got = p1xp1_coefficient(n)
        _check(got == (-1) ** n * (4 * n - 10), f"n={n}: {got}")
    Z = pade_reconstruct(p1xp1_series(30), 4, 4)
    _check(Z == P1XP1_Z, f"Z = {Z}")
    return f"n = 1..30, Z = {Z}"


def _ef_suite() -> str:
    order = 16
    for N in (1, 2, 3):
        for ell in range(3):
            p = QuotProblem(N, None, (0,) * ell, (1,) * ell, order)
            ef = ef_recursion(p)
            P = p_polynomial(N, p.weights, ell, p.ring, order)
            _check(ef.product() == P, f"N={N} l={ell}: e/f product differs from P")
            _check(ef.f[0].coeffs[0] == p.ring.one, f"N={N} l={ell}: f_0(0) != 1")
            _check(all(f.coeffs[0] == p.ring.zero for f in ef.f[1:]), f"N={N} l={ell}: f_m(0) != 0")
        ef_specialized_check(N, order)
    return "N <= 3, l <= 2 to q^16; zero-weight e and f_0 = 1 - q"


def _sigma_suite() -> str:
    fits = 0
    for a, b, c in itertools.product(range(-4, 5), repeat=3):
        p = SigmaParams(a, b, c)
        for n, v in sigma_extraction_sequence(p, 60).items():
            _check(sigma_binomial(p, n) == v, f"{p} n={n}: sum != extraction")
        sigma_star_fit(p)  # raises unless all held-out values match
        fits += 1
    checked = 0
    for a_total, m, i, j, r1, r2, cshift in itertools.product(
            (1, 2, 3), (0, 1, 2), (0, 1), (0, 1), (0, 1, 2), (-2, 0, 2), (-1, 0, 1, 2)):
        for n in range(0, 8):
            if n + r1 - i < 0 or a_total - m + n + r1 - i < 0:
                continue
            sigma_vandermonde(a_total, m, i, j, r1, r2, cshift, n)
            checked += 1
    return f"{fits} star fits verified on {VERIFY_COUNT} held-out n; {checked} Vandermonde collapses"


def _brute_complete(roots, j):
    acc = mpq(0)
    for combo in itertools.combinations_with_replacement(roots, j):
        term = mpq(1)
        for y in combo:
            term *= y
        acc += term
    return acc


def _symmetric_suite() -> str:
    xs = [mpq(1, 2), mpq(-1, 3), mpq(2, 5), mpq(3), mpq(-5, 7), mpq(1, 11)]
    for r in range(1, 7):
        roots = xs[:r]
        ys = [1 / (1 - x) for x in roots]
        P = [None] + [power_sums(roots, d, -1) for d in range(1, 9)]
        H = complete_from_power_sums(P, 8)
        for j in range(9):
            _check(H[j] == _brute_complete(ys, j), f"r={r} j={j}: H_j mismatch")
    for r in range(1, 6):
        roots = xs[:r]
        classes = [_elementary(roots, k) for k in range(r + 1)]
        ch = chern_char_from_classes(classes, r, 8)
        for k in range(9):
            direct = sum(x ** k for x in roots) / factorial(k)
            _check(ch[k] == direct, f"rank {r}: ch_{k} mismatch")
    return "H_j for r <= 6, j <= 8; ch from c for rank <= 5"


CASES = (
    VerificationCase("euler-rank2", ("quot", "oracle"), "quot oracle N=2 order 24, inverse and Pade",
                     EULER_RANK2, "Euler characteristic series of the rank 2 Quot scheme", _euler_rank2),
    VerificationCase("descendent-rank2", ("quot", "oracle"), "quot oracle N=2 d=0 jet 1 order 16",
                     DESCENDENT_RANK2, "first descendent derivative for rank 2", _descendent_rank2),
    VerificationCase("oracle-vs-closed-form", ("quot", "lb"), "grid N<=3, l<=2, order 12, two rays",
                     None, "localization equals the Lagrange-Buermann closed form", _oracle_vs_closed_form),
    VerificationCase("weight-independence", ("quot",), "grid limits along (2,4,8) and (3,9,27)",
                     None, "equivariant integral over a compact space", _weight_independence),
    VerificationCase("hilbert-x0", ("hilbert",), "hilbert_w_series x=0, M2, MK in -3..3",
                     "(1-q)^M2 ((1-q)/(1-2q))^MK", "Hilbert scheme series without insertions", _hilbert_x0),
    VerificationCase("canonical-pair", ("hilbert",), "M=K, alpha.M=0, K2=1",
                     (CANONICAL_A0, CANONICAL_DA), "universal series A and its x-derivative", _canonical_pair),
    VerificationCase("a-series", ("hilbert",), "a(t) for l <= 3 to t^8",
                     "1 - e2 t^2 + 2 e3 t^3 - 3 e4 t^4 + ..", "change of variables factor a(t)", _a_series),
    VerificationCase("p1xp1", ("hilbert", "p1xp1"), "residue coefficients n = 1..30",
                     P1XP1_Z, "P1 x P1 descendent example", _p1xp1),
    VerificationCase("ef-factorization", ("lb", "ef"), "e/f recursion N<=3, l<=2, order 16",
                     "f0(0) = 1, zero-weight f0 = 1 - q", "factorization of the root polynomial", _ef_suite),
    VerificationCase("sigma", ("sigma",), "|a|,|b|,|c| <= 4, n <= 60",
                     "(-1)^n (p1(n) + 2^n p2(n))", "binomial sums of star form", _sigma_suite),
    VerificationCase("symmetric-functions", ("symfunc",), "H_j and Chern characters",
                     None, "power sums, complete homogeneous and Newton identities", _symmetric_suite),
)


def select_cases(pattern: str | None = None) -> list[VerificationCase]:
    return [c for c in CASES if pattern is None or c.matches(pattern)]


def _execute(case: VerificationCase) -> tuple[bool, str]:
    start = time.perf_counter()
    try:
        detail = case.run()
        ok = True
    except Exception as exc:  # any exception is a failed case
        detail = f"{type(exc).__name__}: {exc}"
        ok = False
    elapsed = time.perf_counter() - start
    status = "PASS" if ok else "FAIL"
    return ok, f"{status} {case.name} [{case.citation}] ({elapsed:.1f}s) {detail}"


def _execute_by_name(name: str) -> tuple[bool, str]:
    return _execute(next(c for c in CASES if c.name == name))


def run_verification(pattern: str | None = None, jobs: int = 1, out=None) -> int:
    """Run the selected cases and print one line each; returns the number of failures."""
    out = out or sys.stdout
    cases = select_cases(pattern)
    if not cases:
        print(f"no verification case matches {pattern!r}", file=out)
        return 0
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_execute_by_name, [c.name for c in cases]))
    else:
        results = []
        for case in cases:
            results.append(_execute(case))
            print(results[-1][1], file=out, flush=True)
    if jobs > 1:
        for _, line in results:
            print(line, file=out)
    failures = sum(1 for ok, _ in results if not ok)
    print(f"{len(cases) - failures}/{len(cases)} passed", file=out)
    return failures
