"""Pure-Python integer kernels.

These are the reference implementations of the three hot loops used by
:mod:`heckext.linalg`.  The compiled module ``heckext._kernels`` exposes the
same functions with the same results; :mod:`heckext.kernels` picks one at
import time.

All matrices are sequences of rows of Python ints.  Shapes are passed
explicitly so that empty matrices are unambiguous.
"""

from math import gcd

__all__ = ["int_matmul", "int_rref", "int_det"]


def int_matmul(a, b, m, k, n):
    """Return the ``m x n`` product of an ``m x k`` and a ``k x n`` matrix."""
    _check_shape(a, m, k)
    _check_shape(b, k, n)
    if k == 0:
        return [[0] * n for _ in range(m)]
    cols = list(zip(*b))
    out = []
    for row in a:
        nz = [(t, x) for t, x in enumerate(row) if x]
        out.append([sum(x * col[t] for t, x in nz) for col in cols])
    return out


def _check_shape(rows, m, n):
    if len(rows) != m:
        raise ValueError(f"expected {m} rows, got {len(rows)}")
    for row in rows:
        if len(row) != n:
            raise ValueError(f"row of length {len(row)}, expected {n}")


def _primitive(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def int_rref(rows, ncols):
    """Fraction-free Gauss-Jordan elimination.

    Returns ``(reduced, pivots)`` where ``reduced`` holds one primitive integer
    row per pivot, with a positive pivot entry and zeros in every other pivot
    column.  Dividing each row by its pivot entry gives the rational RREF.
    """
    _check_shape(rows, len(rows), ncols)
    work = [list(r) for r in rows]
    m = len(work)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        p = None
        best = None
        for i in range(r, m):
            x = work[i][c]
            if x and (best is None or abs(x) < best):
                p, best = i, abs(x)
                if best == 1:
                    break
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        piv = _primitive(work[r])
        if piv[c] < 0:
            piv = [-x for x in piv]
        work[r] = piv
        pc = piv[c]
        for i in range(m):
            if i == r:
                continue
            f = work[i][c]
            if f:
                g = gcd(pc, f)
                s, t = pc // g, f // g
                work[i] = _primitive([s * x - t * y for x, y in zip(work[i], piv)])
        pivots.append(c)
        r += 1
    return work[:r], pivots


def int_det(a, n):
    """Determinant of an ``n x n`` integer matrix (Bareiss elimination)."""
    _check_shape(a, n, n)
    if n == 0:
        return 1
    work = [list(r) for r in a]
    sign = 1
    prev = 1
    for c in range(n - 1):
        if work[c][c] == 0:
            for i in range(c + 1, n):
                if work[i][c]:
                    work[c], work[i] = work[i], work[c]
                    sign = -sign
                    break
            else:
                return 0
        pcc = work[c][c]
        rowc = work[c]
        for i in range(c + 1, n):
            rowi = work[i]
            f = rowi[c]
            for j in range(c + 1, n):
                rowi[j] = (pcc * rowi[j] - f * rowc[j]) // prev
            rowi[c] = 0
        prev = pcc
    return sign * work[n - 1][n - 1]
