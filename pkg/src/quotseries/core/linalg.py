"""Exact Gaussian elimination over Q."""

from __future__ import annotations

from typing import Sequence

from gmpy2 import mpq

from .rational import ZERO, to_q

__all__ = ["solve_linear", "rank"]


def _echelon(rows: list[list[mpq]], ncols: int):
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return pivots


def solve_linear(A: Sequence[Sequence], b: Sequence) -> list[mpq] | None:
    """A particular solution of ``A x = b`` (free variables set to 0).

    Returns ``None`` when the system is inconsistent.  Overdetermined systems
    are fine: every equation is enforced.
    """
    ncols = len(A[0]) if A else 0
    rows = [[to_q(x) for x in row] + [to_q(rhs)] for row, rhs in zip(A, b)]
    pivots = _echelon(rows, ncols)
    for row in rows[len(pivots):]:
        if row[-1] != 0:
            return None
    x = [ZERO] * ncols
    for r, col in enumerate(pivots):
        x[col] = rows[r][-1]
    return x


def rank(A: Sequence[Sequence]) -> int:
    if not A:
        return 0
    rows = [[to_q(x) for x in row] for row in A]
    return len(_echelon(rows, len(rows[0])))
