"""Exact linear algebra over the rationals (dense, small systems)."""

from __future__ import annotations

from fractions import Fraction


def solve_affine(rows, rhs):
    """Solve A c = b exactly.

    rows: list of lists of Fraction (the matrix A), rhs: list of Fraction.
    Returns (particular, nullspace, rank, consistent).  particular is one
    solution (None if inconsistent); nullspace is a list of basis vectors
    of ker A.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    pivots = []
    r = 0
    for col in range(n):
        piv = None
        for i in range(r, m):
            if a[i][col]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = Fraction(1, 1) / a[r][col]
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    # consistency
    for i in range(r, m):
        if a[i][n]:
            return None, [], r, False
    particular = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        particular[col] = a[i][n]
    free_cols = [c for c in range(n) if c not in pivots]
    nullspace = []
    for fc in free_cols:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, col in enumerate(pivots):
            v[col] = -a[i][fc]
        nullspace.append(v)
    return particular, nullspace, r, True


def in_span(vec, basis):
    """Is vec in the rational span of basis vectors?"""
    if not basis:
        return not any(vec)
    n = len(vec)
    rows = [[basis[j][i] for j in range(len(basis))] for i in range(n)]
    part, _, _, ok = solve_affine(rows, list(vec))
    return ok and part is not None


def lin_solve_square(rows, rhs):
    part, null, _, ok = solve_affine(rows, rhs)
    if not ok or null:
        raise ValueError("system not uniquely solvable")
    return part
