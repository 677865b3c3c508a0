"""Small exact linear algebra helpers over S and over the coefficient ring.

Matrices are lists of rows.  Over S the entries are :class:`Series`; over the
coefficient ring they are ``fmpq_mpoly`` constants (polynomials in the law's
parameters only).
"""

from __future__ import annotations

from .series import NotDivisible, Series


class SingularMatrix(ArithmeticError):
    pass


def invert_over_S(M: list[list[Series]], one: Series, zero: Series) -> list[list[Series]]:
    """Gauss-Jordan inverse; pivots are chosen among entries with a unit constant term."""
    n = len(M)
    A = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            c = A[r][col].part(0)
            if not c.is_zero() and c.is_constant():
                piv = r
                break
        if piv is None:
            raise SingularMatrix(f"no unit pivot in column {col}")
        A[col], A[piv] = A[piv], A[col]
        inv = A[col][col].inverse()
        A[col] = [e * inv for e in A[col]]
        for r in range(n):
            if r == col:
                continue
            f = A[r][col]
            if f.is_zero() and f.is_exact:
                continue
            A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [row[n:] for row in A]


def _exact_div(a, b):
    q, r = divmod(a, b)
    if not r.is_zero():
        raise NotDivisible("Bareiss step is not exact")
    return q


def det_poly(M: list) -> object:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = None
    for k in range(n - 1):
        if A[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not A[r][k].is_zero()), None)
            if swap is None:
                return A[k][k] * 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = num if prev is None else _exact_div(num, prev)
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign == 1 else -d


def rank_poly(rows: list[list]) -> int:
    """Rank over the fraction field of the coefficient ring (fraction-free elimination)."""
    A = [list(r) for r in rows if any(not e.is_zero() for e in r)]
    if not A:
        return 0
    ncols = len(A[0])
    rank = 0
    col = 0
    while rank < len(A) and col < ncols:
        piv = next((r for r in range(rank, len(A)) if not A[r][col].is_zero()), None)
        if piv is None:
            col += 1
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][col]
        for r in range(rank + 1, len(A)):
            f = A[r][col]
            if f.is_zero():
                continue
            A[r] = [p * a - f * b for a, b in zip(A[r], A[rank])]
            g = None
            for e in A[r]:
                if not e.is_zero():
                    g = e if g is None else g.gcd(e)
            if g is not None and not g.is_zero():
                A[r] = [_exact_div(e, g) if not e.is_zero() else e for e in A[r]]
        rank += 1
        col += 1
    return rank
