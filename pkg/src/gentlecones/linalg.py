"""Small dense exact linear algebra over a coefficient field.

Matrices are lists of rows of field elements.  Everything here is plain
Gaussian elimination; the systems that arise (chain-map and homotopy
spaces of desk-scale complexes) stay small.
"""

from __future__ import annotations


def rank(field, rows):
    """Rank of a matrix given as a list of rows."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if not field.is_zero(rows[i][col]):
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.inv(rows[r][col])
        rows[r] = [field.mul(x, inv) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not field.is_zero(rows[i][col]):
                c = rows[i][col]
                rows[i] = [
                    field.sub(x, field.mul(c, y)) for x, y in zip(rows[i], rows[r])
                ]
        r += 1
        if r == len(rows):
            break
    return r


def nullspace(field, rows, ncols):
    """A basis (list of vectors) of the right nullspace of the matrix."""
    rows = [list(r) for r in rows if any(not field.is_zero(x) for x in r)]
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if not field.is_zero(rows[i][col]):
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.inv(rows[r][col])
        rows[r] = [field.mul(x, inv) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not field.is_zero(rows[i][col]):
                c = rows[i][col]
                rows[i] = [
                    field.sub(x, field.mul(c, y)) for x, y in zip(rows[i], rows[r])
                ]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [field.zero] * ncols
        vec[fcol] = field.one
        for i, pcol in enumerate(pivots):
            vec[pcol] = field.neg(rows[i][fcol])
        basis.append(vec)
    return basis


def det(field, rows):
    """Determinant of a square matrix."""
    n = len(rows)
    if n == 0:
        return field.one
    rows = [list(r) for r in rows]
    sign = field.one
    acc = field.one
    for col in range(n):
        pivot = None
        for i in range(col, n):
            if not field.is_zero(rows[i][col]):
                pivot = i
                break
        if pivot is None:
            return field.zero
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            sign = field.neg(sign)
        acc = field.mul(acc, rows[col][col])
        inv = field.inv(rows[col][col])
        for i in range(col + 1, n):
            if not field.is_zero(rows[i][col]):
                c = field.mul(rows[i][col], inv)
                rows[i] = [
                    field.sub(x, field.mul(c, y)) for x, y in zip(rows[i], rows[col])
                ]
    return field.mul(sign, acc)
