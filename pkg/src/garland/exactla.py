"""Exact dense linear algebra over Q.

Rank and kernel extraction run fraction-free (Bareiss) on row-wise
denominator-cleared integer matrices, then back-substitute rationally.
Matrices here are small (cochain spaces of links, eigenspace recovery),
so dense rows are fine.  rank_mod_p is the one-sided shortcut used for
cohomology-vanishing certificates: a mod-p rank never exceeds the
rational rank.
"""

from __future__ import annotations

from math import lcm

import numpy as np

from .rationals import QQ, QQ0, QQ1


def dense_from_entries(nrows: int, ncols: int, entries: dict) -> list[list]:
    rows = [[QQ0] * ncols for _ in range(nrows)]
    for (r, c), v in entries.items():
        rows[r][c] = QQ(v)
    return rows


def _cleared_int_rows(rows) -> list[list[int]]:
    out = []
    for row in rows:
        scale = lcm(*(int(QQ(x).denominator) for x in row)) if row else 1
        out.append([int(QQ(x) * scale) for x in row])
    return out


def _bareiss_echelon(m: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon; returns (echelon rows, pivot columns)."""
    rows = [list(r) for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pivot = rows[r][c]
        for i in range(r + 1, nrows):
            mic = rows[i][c]
            ri, rr = rows[i], rows[r]
            # the Bareiss minor identity keeps every division exact, also when mic == 0
            for j in range(c, ncols):
                ri[j] = (pivot * ri[j] - mic * rr[j]) // prev
        prev = pivot
        pivots.append(c)
        r += 1
    return rows[: len(pivots)], pivots


def rank(rows) -> int:
    """Exact rank of a dense rational matrix (list of rows)."""
    if not rows or not rows[0]:
        return 0
    return len(_bareiss_echelon(_cleared_int_rows(rows))[1])


def kernel_basis(rows, ncols: int | None = None) -> list[list]:
    """Basis of the right kernel {x : A x = 0}, one vector per free column.

    Deterministic normalization: vector k has 1 in the k-th free column
    and 0 in the others.
    """
    if not rows:
        n = ncols if ncols is not None else 0
        return [[QQ1 if i == j else QQ0 for i in range(n)] for j in range(n)]
    n = len(rows[0])
    echelon, pivots = _bareiss_echelon(_cleared_int_rows(rows))
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [QQ0] * n
        x[f] = QQ1
        for k in range(len(pivots) - 1, -1, -1):
            pc = pivots[k]
            acc = QQ0
            row = echelon[k]
            for j in range(pc + 1, n):
                if row[j] and x[j]:
                    acc += QQ(row[j]) * x[j]
            x[pc] = -acc / QQ(row[pc])
        basis.append(x)
    return basis


def rank_mod_p(int_rows: list[list[int]], p: int) -> int:
    """Rank over F_p of an integer matrix; lower bound for the rational rank."""
    if not int_rows or not int_rows[0]:
        return 0
    a = np.array([[x % p for x in row] for row in int_rows], dtype=np.int64)
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        below = a[r + 1 :, c].nonzero()[0]
        if below.size:
            rows_idx = below + r + 1
            a[rows_idx] = (a[rows_idx] - np.outer(a[rows_idx, c], a[r])) % p
        r += 1
    return r
