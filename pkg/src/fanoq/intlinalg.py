"""Exact integer linear algebra: extended gcd, integer kernels, Hermite normal form."""

from __future__ import annotations

from math import gcd
from typing import Sequence


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, p, q) with p*a + q*b = g = gcd(a, b) >= 0."""
    p0, q0, p1, q1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        p0, p1 = p1, p0 - k * p1
        q0, q1 = q1, q0 - k * q1
    if a < 0:
        return -a, -p0, -q0
    return a, p0, q0


def gcd_all(values) -> int:
    return gcd(*values)


def hermite_rows(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form; zero rows are dropped.

    Pivots are positive and entries above a pivot are reduced into [0, pivot).
    """
    m = [list(r) for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    pr = 0
    for c in range(ncols):
        for i in range(pr + 1, len(m)):
            if m[i][c] == 0:
                continue
            g, p, q = xgcd(m[pr][c], m[i][c])
            a, b = m[pr][c] // g, m[i][c] // g
            top, low = m[pr], m[i]
            m[pr] = [p * x + q * y for x, y in zip(top, low)]
            m[i] = [a * y - b * x for x, y in zip(top, low)]
        if pr < len(m) and m[pr][c] != 0:
            if m[pr][c] < 0:
                m[pr] = [-x for x in m[pr]]
            piv = m[pr][c]
            for i in range(pr):
                k = m[i][c] // piv
                if k:
                    m[i] = [x - k * y for x, y in zip(m[i], m[pr])]
            pr += 1
            if pr == len(m):
                break
    return [r for r in m if any(r)]


def integer_kernel(matrix: Sequence[Sequence[int]], ncols: int | None = None) -> list[tuple[int, ...]]:
    """Z-basis of {x in Z^n : matrix @ x = 0}, in Hermite normal form.

    Unimodular column operations bring the matrix to column echelon form while
    tracking the transform; the transform columns past the last pivot span the
    kernel.
    """
    a = [list(r) for r in matrix]
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    u = [[int(i == j) for j in range(n)] for i in range(n)]  # columns of u are tracked
    piv = 0
    for row in a:
        if piv == n:
            break
        for c in range(piv + 1, n):
            if row[c] == 0:
                continue
            g, p, q = xgcd(row[piv], row[c])
            s, t = row[piv] // g, row[c] // g
            # [col_piv, col_c] <- [p*col_piv + q*col_c, -t*col_piv + s*col_c]
            for r2 in a:
                x, y = r2[piv], r2[c]
                r2[piv], r2[c] = p * x + q * y, -t * x + s * y
            for r2 in u:
                x, y = r2[piv], r2[c]
                r2[piv], r2[c] = p * x + q * y, -t * x + s * y
        if row[piv] != 0:
            piv += 1
    basis = [[u[i][j] for i in range(n)] for j in range(piv, n)]
    return [tuple(b) for b in hermite_rows(basis)]
