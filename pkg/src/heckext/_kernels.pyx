# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels.

Same contract as :mod:`heckext._pykernels`.  Each kernel first runs on a C
``int64`` buffer with overflow-checked arithmetic; on overflow it restarts on
Python ints, so results never depend on the word size.
"""

from libc.stdlib cimport malloc, free
from math import gcd as _pygcd

cdef extern from *:
    """
    static inline int hk_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int hk_sub(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    static inline int hk_add(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    bint hk_mul(long long a, long long b, long long *r) nogil
    bint hk_sub(long long a, long long b, long long *r) nogil
    bint hk_add(long long a, long long b, long long *r) nogil


class _Overflow(Exception):
    pass


cdef inline long long _gcd(long long a, long long b) nogil:
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


# the most negative int64 cannot be negated
cdef long long _LIM = 0x3FFFFFFFFFFFFFFF


def _check_shape(rows, Py_ssize_t m, Py_ssize_t n):
    # the loops below index without bounds checks
    if len(rows) != m:
        raise ValueError(f"expected {m} rows, got {len(rows)}")
    for row in rows:
        if len(row) != n:
            raise ValueError(f"row of length {len(row)}, expected {n}")


cdef long long* _load(rows, Py_ssize_t m, Py_ssize_t n) except NULL:
    cdef long long* buf = <long long*> malloc(max(m * n, 1) * sizeof(long long))
    cdef Py_ssize_t i, j
    cdef object x
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(m):
            row = rows[i]
            for j in range(n):
                x = row[j]
                if x > _LIM or x < -_LIM:
                    raise _Overflow()
                buf[i * n + j] = x
    except BaseException:
        free(buf)
        raise
    return buf


# ---------------------------------------------------------------- matmul

cdef list _matmul_obj(a, b, Py_ssize_t m, Py_ssize_t k, Py_ssize_t n):
    cdef Py_ssize_t i, j, t
    cdef list out = []
    cdef list orow
    cols = list(zip(*b))
    for i in range(m):
        row = a[i]
        nz = [(t, row[t]) for t in range(k) if row[t]]
        orow = []
        for j in range(n):
            col = cols[j]
            s = 0
            for t, x in nz:
                s += x * col[t]
            orow.append(s)
        out.append(orow)
    return out


def int_matmul(a, b, Py_ssize_t m, Py_ssize_t k, Py_ssize_t n):
    """Return the ``m x n`` product of an ``m x k`` and a ``k x n`` matrix."""
    cdef long long* A
    cdef long long* B
    cdef long long* C
    cdef Py_ssize_t i, j, t
    cdef long long acc, prod, x
    cdef bint bad = False
    _check_shape(a, m, k)
    _check_shape(b, k, n)
    if k == 0:
        return [[0] * n for _ in range(m)]
    try:
        A = _load(a, m, k)
    except _Overflow:
        return _matmul_obj(a, b, m, k, n)
    try:
        B = _load(b, k, n)
    except _Overflow:
        free(A)
        return _matmul_obj(a, b, m, k, n)
    C = <long long*> malloc(max(m * n, 1) * sizeof(long long))
    if C == NULL:
        free(A)
        free(B)
        raise MemoryError()
    with nogil:
        for i in range(m * n):
            C[i] = 0
        for i in range(m):
            if bad:
                break
            for t in range(k):
                x = A[i * k + t]
                if x == 0:
                    continue
                for j in range(n):
                    if hk_mul(x, B[t * n + j], &prod) or hk_add(C[i * n + j], prod, &acc):
                        bad = True
                        break
                    C[i * n + j] = acc
                if bad:
                    break
    free(A)
    free(B)
    if bad:
        free(C)
        return _matmul_obj(a, b, m, k, n)
    out = [[C[i * n + j] for j in range(n)] for i in range(m)]
    free(C)
    return out


# ------------------------------------------------------------------ rref

cdef list _primitive_obj(list row):
    g = 0
    for x in row:
        if x:
            g = _pygcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


cdef tuple _rref_obj(rows, Py_ssize_t ncols):
    cdef list work = [list(row) for row in rows]
    cdef Py_ssize_t m = len(work)
    cdef list pivots = []
    cdef Py_ssize_t r = 0, c, i
    cdef list piv
    for c in range(ncols):
        if r == m:
            break
        p = -1
        best = None
        for i in range(r, m):
            x = work[i][c]
            if x and (best is None or abs(x) < best):
                p, best = i, abs(x)
                if best == 1:
                    break
        if p < 0:
            continue
        work[r], work[p] = work[p], work[r]
        piv = _primitive_obj(work[r])
        if piv[c] < 0:
            piv = [-x for x in piv]
        work[r] = piv
        pc = piv[c]
        for i in range(m):
            if i == r:
                continue
            f = work[i][c]
            if f:
                g = _pygcd(pc, f)
                s = pc // g
                t = f // g
                work[i] = _primitive_obj([s * x - t * y for x, y in zip(work[i], piv)])
        pivots.append(c)
        r += 1
    return work[:r], pivots


cdef bint _rref_i64(long long* W, Py_ssize_t m, Py_ssize_t n, Py_ssize_t* piv_out,
                    Py_ssize_t* rank_out) nogil:
    """In-place fraction-free Gauss-Jordan; returns True on overflow."""
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef long long best, x, g, s, t, pc, f, u, v, tmp
    for c in range(n):
        if r == m:
            break
        p = -1
        best = 0
        for i in range(r, m):
            x = W[i * n + c]
            if x < 0:
                x = -x
            if x and (p < 0 or x < best):
                p = i
                best = x
                if best == 1:
                    break
        if p < 0:
            continue
        if p != r:
            for j in range(n):
                tmp = W[r * n + j]
                W[r * n + j] = W[p * n + j]
                W[p * n + j] = tmp
        g = 0
        for j in range(n):
            if W[r * n + j]:
                g = _gcd(g, W[r * n + j])
        if W[r * n + c] < 0:
            g = -g
        if g != 1:
            for j in range(n):
                W[r * n + j] = W[r * n + j] // g
        pc = W[r * n + c]
        for i in range(m):
            if i == r:
                continue
            f = W[i * n + c]
            if f == 0:
                continue
            g = _gcd(pc, f)
            s = pc // g
            t = f // g
            for j in range(n):
                if hk_mul(s, W[i * n + j], &u) or hk_mul(t, W[r * n + j], &v) or hk_sub(u, v, &x):
                    return True
                if x > _LIM or x < -_LIM:
                    return True
                W[i * n + j] = x
            g = 0
            for j in range(n):
                if W[i * n + j]:
                    g = _gcd(g, W[i * n + j])
            if g > 1:
                for j in range(n):
                    W[i * n + j] = W[i * n + j] // g
        piv_out[r] = c
        r += 1
    rank_out[0] = r
    return False


def int_rref(rows, Py_ssize_t ncols):
    """Fraction-free Gauss-Jordan elimination.

    Returns ``(reduced, pivots)``: one primitive integer row per pivot, pivot
    entry positive, zeros in every other pivot column.
    """
    cdef Py_ssize_t m = len(rows)
    cdef long long* W
    cdef Py_ssize_t* piv
    cdef Py_ssize_t rank = 0, i, j
    cdef bint bad
    _check_shape(rows, m, ncols)
    if m == 0 or ncols == 0:
        return _rref_obj(rows, ncols)
    try:
        W = _load(rows, m, ncols)
    except _Overflow:
        return _rref_obj(rows, ncols)
    piv = <Py_ssize_t*> malloc(max(m, 1) * sizeof(Py_ssize_t))
    if piv == NULL:
        free(W)
        raise MemoryError()
    with nogil:
        bad = _rref_i64(W, m, ncols, piv, &rank)
    if bad:
        free(W)
        free(piv)
        return _rref_obj(rows, ncols)
    out = [[W[i * ncols + j] for j in range(ncols)] for i in range(rank)]
    pivots = [piv[i] for i in range(rank)]
    free(W)
    free(piv)
    return out, pivots


# ------------------------------------------------------------------- det

cdef object _det_obj(a, Py_ssize_t n):
    cdef list work = [list(r) for r in a]
    cdef Py_ssize_t c, i, j
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


def int_det(a, Py_ssize_t n):
    """Determinant of an ``n x n`` integer matrix (Bareiss elimination)."""
    cdef long long* W
    cdef Py_ssize_t c, i, j
    cdef long long prev = 1, pcc, f, u, v, x, tmp
    cdef int sign = 1
    cdef bint bad = False, zero = False
    _check_shape(a, n, n)
    if n == 0:
        return 1
    try:
        W = _load(a, n, n)
    except _Overflow:
        return _det_obj(a, n)
    with nogil:
        for c in range(n - 1):
            if W[c * n + c] == 0:
                zero = True
                for i in range(c + 1, n):
                    if W[i * n + c]:
                        for j in range(n):
                            tmp = W[c * n + j]
                            W[c * n + j] = W[i * n + j]
                            W[i * n + j] = tmp
                        sign = -sign
                        zero = False
                        break
                if zero:
                    break
            pcc = W[c * n + c]
            for i in range(c + 1, n):
                f = W[i * n + c]
                for j in range(c + 1, n):
                    if hk_mul(pcc, W[i * n + j], &u) or hk_mul(f, W[c * n + j], &v) or hk_sub(u, v, &x):
                        bad = True
                        break
                    W[i * n + j] = x // prev
                if bad:
                    break
                W[i * n + c] = 0
            if bad:
                break
            prev = pcc
    if bad:
        free(W)
        return _det_obj(a, n)
    if zero:
        free(W)
        return 0
    x = W[n * n - 1]
    free(W)
    return sign * x
