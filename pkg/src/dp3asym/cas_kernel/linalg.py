"""Exact linear algebra over the parameter field."""
from __future__ import annotations


def _weight(e):
    # pivot preference: fewest terms first
    return len(e.n) + len(e.d)


def row_reduce(rows, ncols):
    """Reduced row echelon form of an augmented matrix (list of lists of FieldElement).

    Returns (rows, pivots); columns >= ncols are carried along but never pivoted.
    """
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        best = None
        for i in range(r, len(rows)):
            e = rows[i][c]
            if not e.is_zero() and (best is None or _weight(e) < _weight(rows[best][c])):
                best = i
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [v * inv if not v.is_zero() else v for v in rows[r]]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if not f.is_zero():
                    rows[i] = [a - f * b if not b.is_zero() else a for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def solve_affine(A, b, space):
    """All solutions of A v = b as (particular, nullspace basis) or None if inconsistent."""
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    rows, piv = row_reduce(aug, ncols)
    for row in rows[len(piv):]:
        if not row[ncols].is_zero():
            return None
    part = [space.zero() for _ in range(ncols)]
    for i, c in enumerate(piv):
        part[c] = rows[i][ncols]
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [space.zero() for _ in range(ncols)]
        v[f] = space.one()
        for i, c in enumerate(piv):
            v[c] = -rows[i][f]
        basis.append(v)
    return part, basis


def determinant(M, space):
    n = len(M)
    rows = [list(r) for r in M]
    det = space.one()
    for c in range(n):
        p = None
        for i in range(c, n):
            if not rows[i][c].is_zero():
                p = i
                break
        if p is None:
            return space.zero()
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det = det * rows[c][c]
        inv = rows[c][c].inverse()
        for i in range(c + 1, n):
            f = rows[i][c]
            if not f.is_zero():
                f = f * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det
