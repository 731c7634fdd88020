"""Dense Gaussian elimination over an exact field of scalars.

Matrices are lists of rows; entries are scalars of one ring (anything with
``+ - * /`` and a ``ring.is_zero`` test).
"""
from __future__ import annotations

__all__ = ["row_echelon", "rank", "solve", "inverse"]


def row_echelon(rows, ring):
    """Reduced row echelon form; returns ``(matrix, pivot columns)``."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if not ring.is_zero(m[i][c])), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = ring.one / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and not ring.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows, ring) -> int:
    return len(row_echelon(rows, ring)[1])


def solve(a, b, ring):
    """One solution ``x`` of ``a x = b`` or ``None`` if inconsistent."""
    n = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    m, pivots = row_echelon(aug, ring)
    if n in pivots:
        return None
    x = [ring.zero] * n
    for row, c in zip(m, pivots):
        x[c] = row[n]
    return x


def inverse(a, ring):
    n = len(a)
    aug = [list(row) + [ring.one if i == j else ring.zero for j in range(n)] for i, row in enumerate(a)]
    m, pivots = row_echelon(aug, ring)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in m[:n]]
