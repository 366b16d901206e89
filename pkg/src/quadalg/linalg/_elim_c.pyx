# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Dense fraction-free elimination on int64 with overflow detection.

Same contract as ``_elim_py``; raises ``OverflowError`` when an intermediate
value leaves the int64 range so the caller can retry with the unbounded kernel.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset, memcpy

cdef extern from *:
    """
    #include <stdint.h>
    static inline int qa_mul_ovf(int64_t a, int64_t b, int64_t *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int qa_sub_ovf(int64_t a, int64_t b, int64_t *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int qa_mul_ovf(long long a, long long b, long long *r) nogil
    int qa_sub_ovf(long long a, long long b, long long *r) nogil


cdef inline long long _gcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef int _primitive(long long *row, Py_ssize_t start, Py_ssize_t n) nogil:
    cdef long long g = 0
    cdef Py_ssize_t k
    cdef long long lead = 0
    for k in range(start, n):
        if row[k] != 0:
            if lead == 0:
                lead = row[k]
            g = _gcd(g, row[k])
            if g == 1 and lead > 0:
                return 0
    if g == 0:
        return 0
    if lead < 0:
        g = -g
    if g != 1:
        for k in range(start, n):
            row[k] = row[k] // g
    return 0


cdef int _eliminate(long long *row, long long *prow, Py_ssize_t c,
                    Py_ssize_t lo, Py_ssize_t n) nogil:
    """row <- ma*row - mb*prow so that row[c] == 0; returns 1 on overflow."""
    cdef long long a = row[c]
    cdef long long b = prow[c]
    cdef long long g = _gcd(a, b)
    cdef long long ma = b // g
    cdef long long mb = a // g
    cdef long long t1, t2
    cdef Py_ssize_t k
    if ma < 0:
        ma = -ma
        mb = -mb
    if ma != 1:
        for k in range(lo, n):
            if row[k] != 0:
                if qa_mul_ovf(row[k], ma, &t1):
                    return 1
                row[k] = t1
    for k in range(c, n):
        if prow[k] != 0:
            if qa_mul_ovf(prow[k], mb, &t2):
                return 1
            if qa_sub_ovf(row[k], t2, &t1):
                return 1
            row[k] = t1
    row[c] = 0
    return 0


cdef long long *_load(list rows, Py_ssize_t m, Py_ssize_t n) except NULL:
    cdef long long *a = <long long *> malloc(max(m * n, 1) * sizeof(long long))
    cdef Py_ssize_t i
    cdef dict r
    if a == NULL:
        raise MemoryError()
    memset(a, 0, max(m * n, 1) * sizeof(long long))
    try:
        for i in range(m):
            r = rows[i]
            for k, v in r.items():
                a[i * n + <Py_ssize_t> k] = v
    except OverflowError:
        free(a)
        raise
    return a


cdef Py_ssize_t _ncols(list rows):
    cdef Py_ssize_t n = 0
    for r in rows:
        for k in r:
            if k + 1 > n:
                n = k + 1
    return n


def rref_int(list rows, ncols=None):
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t n = _ncols(rows) if ncols is None else max(<Py_ssize_t> ncols, _ncols(rows))
    cdef long long *a = _load(rows, m, n)
    cdef long long *tmp
    cdef Py_ssize_t rank = 0, col, i, j, k
    cdef bint overflow = False
    cdef list pivots = []
    tmp = <long long *> malloc(max(n, 1) * sizeof(long long))
    try:
        with nogil:
            for col in range(n):
                if rank >= m:
                    break
                i = rank
                while i < m and a[i * n + col] == 0:
                    i += 1
                if i == m:
                    continue
                if i != rank:
                    memcpy(tmp, a + i * n, n * sizeof(long long))
                    memcpy(a + i * n, a + rank * n, n * sizeof(long long))
                    memcpy(a + rank * n, tmp, n * sizeof(long long))
                _primitive(a + rank * n, col, n)
                for j in range(m):
                    if j != rank and a[j * n + col] != 0:
                        if _eliminate(a + j * n, a + rank * n, col,
                                      0 if j < rank else col, n):
                            overflow = True
                            break
                        _primitive(a + j * n, 0 if j < rank else col, n)
                if overflow:
                    break
                with gil:
                    pivots.append(col)
                rank += 1
        if overflow:
            raise OverflowError("int64 overflow in dense elimination")
        out = []
        for i in range(rank):
            row = {}
            for k in range(pivots[i], n):
                if a[i * n + k] != 0:
                    row[k] = a[i * n + k]
            out.append((pivots[i], row))
        return out
    finally:
        free(a)
        free(tmp)


def rank_int(list rows, ncols=None):
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t n = _ncols(rows) if ncols is None else max(<Py_ssize_t> ncols, _ncols(rows))
    cdef long long *a = _load(rows, m, n)
    cdef long long *tmp
    cdef Py_ssize_t rank = 0, col, i, j
    cdef bint overflow = False
    tmp = <long long *> malloc(max(n, 1) * sizeof(long long))
    try:
        with nogil:
            for col in range(n):
                if rank >= m:
                    break
                i = rank
                while i < m and a[i * n + col] == 0:
                    i += 1
                if i == m:
                    continue
                if i != rank:
                    memcpy(tmp, a + i * n, n * sizeof(long long))
                    memcpy(a + i * n, a + rank * n, n * sizeof(long long))
                    memcpy(a + rank * n, tmp, n * sizeof(long long))
                _primitive(a + rank * n, col, n)
                for j in range(rank + 1, m):
                    if a[j * n + col] != 0:
                        if _eliminate(a + j * n, a + rank * n, col, col, n):
                            overflow = True
                            break
                        _primitive(a + j * n, col, n)
                if overflow:
                    break
                rank += 1
        if overflow:
            raise OverflowError("int64 overflow in dense elimination")
        return rank
    finally:
        free(a)
        free(tmp)
