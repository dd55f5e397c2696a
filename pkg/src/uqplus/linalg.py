"""Fraction-free elimination over an exact field (Q(q) or Q).

Matrices are lists of rows.  Entries are field elements supporting ``+ - * /``
and truthiness for zero tests.  Elimination follows Bareiss: each update is
divided by the previous pivot, which keeps entries as minors of the input and
bounds coefficient growth.  Pivots are the first nonzero entry of the column,
so bases come out the same on every run.
"""

from __future__ import annotations


class InconsistentSystem(ArithmeticError):
    """The linear system has no solution."""


def echelon(rows, one):
    """Bareiss row echelon form; returns ``(matrix, pivot_columns)``."""
    M, pivots, _ = _bareiss(rows, one)
    return M, pivots


def _bareiss(rows, one):
    M = [list(r) for r in rows]
    sign = 1
    if not M:
        return M, [], sign
    m, n = len(M), len(M[0])
    zero = one - one
    prev = one
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if M[i][c]), None)
        if p is None:
            continue
        if p != r:
            M[p], M[r] = M[r], M[p]
            sign = -sign
        piv = M[r][c]
        row_r = M[r]
        for i in range(r + 1, m):
            row_i = M[i]
            f = row_i[c]
            if f:
                for j in range(c + 1, n):
                    row_i[j] = (piv * row_i[j] - f * row_r[j]) / prev
            else:
                for j in range(c + 1, n):
                    if row_i[j]:
                        row_i[j] = piv * row_i[j] / prev
            row_i[c] = zero
        prev = piv
        pivots.append(c)
        r += 1
    return M, pivots, sign


def nullspace(rows, ncols: int, one) -> list:
    """Basis of ``{x : rows . x = 0}``, one vector per free column, in column order."""
    zero = one - one
    if not rows:
        basis = []
        for f in range(ncols):
            v = [zero] * ncols
            v[f] = one
            basis.append(v)
        return basis
    U, pivots = echelon(rows, one)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [zero] * ncols
        x[f] = one
        for k in range(len(pivots) - 1, -1, -1):
            pc = pivots[k]
            row = U[k]
            s = zero
            for j in range(pc + 1, ncols):
                if row[j] and x[j]:
                    s = s + row[j] * x[j]
            x[pc] = -s / row[pc]
        basis.append(x)
    return basis


def solve(rows, rhs, one):
    """Solve ``rows . x = rhs``; requires independent columns.

    Raises :class:`InconsistentSystem` when no solution exists and
    ``ValueError`` if the columns are dependent.
    """
    zero = one - one
    if not rows:
        raise ValueError("empty system")
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    U, pivots = echelon(aug, one)
    if ncols in pivots:
        raise InconsistentSystem("right-hand side is outside the column span")
    if len(pivots) < ncols:
        raise ValueError("columns are linearly dependent")
    x = [zero] * ncols
    for k in range(len(pivots) - 1, -1, -1):
        pc = pivots[k]
        row = U[k]
        s = row[ncols]
        for j in range(pc + 1, ncols):
            if row[j] and x[j]:
                s = s - row[j] * x[j]
        x[pc] = s / row[pc]
    return x


def determinant(rows, one):
    n = len(rows)
    if n == 0:
        return one
    U, pivots, sign = _bareiss(rows, one)
    if len(pivots) < n:
        return one - one
    # the last Bareiss pivot is the determinant up to the row-swap sign
    return U[n - 1][n - 1] if sign > 0 else -U[n - 1][n - 1]
