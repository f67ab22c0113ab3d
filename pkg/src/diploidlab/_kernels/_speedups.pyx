# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled string kernels: suffix-prefix overlap computations.

Mirrors the API of ``_fallback``; selected at import when available.
"""

import numpy as np

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

IS_COMPILED = True


cdef int _overlap_c(const unsigned char* x, Py_ssize_t nx,
                    const unsigned char* y, Py_ssize_t ny,
                    int* pi_buf) nogil:
    # KMP prefix function over t = y + '\0' + x; returns longest border
    # capped strictly below min(nx, ny).
    cdef Py_ssize_t n = nx + ny + 1
    cdef Py_ssize_t i
    cdef int k
    cdef unsigned char c
    pi_buf[0] = 0
    for i in range(1, n):
        if i < ny:
            c = y[i]
        elif i == ny:
            c = 0
        else:
            c = x[i - ny - 1]
        k = pi_buf[i - 1]
        while k and ((y[k] if k < ny else 0) != c):
            k = pi_buf[k - 1]
        if (y[k] if k < ny else 0) == c:
            k += 1
        pi_buf[i] = k
    cdef int l = pi_buf[n - 1]
    cdef int cap = <int>((nx if nx < ny else ny) - 1)
    while l > cap:
        l = pi_buf[l - 1]
    return l


def sp_overlap(bytes x, bytes y):
    """Longest l < min(|x|,|y|) with suffix of x equal to prefix of y."""
    cdef Py_ssize_t nx = len(x), ny = len(y)
    cdef int* buf = <int*>malloc((nx + ny + 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    cdef const unsigned char* px = x
    cdef const unsigned char* py = y
    cdef int res
    try:
        res = _overlap_c(px, nx, py, ny, buf)
    finally:
        free(buf)
    return res


def sp_overlap_matrix(list seqs):
    """Ordered all-pairs suffix-prefix overlaps; diagonal set to 0."""
    cdef Py_ssize_t n = len(seqs)
    out = np.zeros((n, n), dtype=np.int32)
    cdef int[:, :] mv = out
    cdef Py_ssize_t i, j, maxlen = 1
    cdef bytes bi, bj
    for i in range(n):
        if len(<bytes>seqs[i]) > maxlen:
            maxlen = len(<bytes>seqs[i])
    cdef int* buf = <int*>malloc((2 * maxlen + 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            bi = seqs[i]
            for j in range(n):
                if i == j:
                    continue
                bj = seqs[j]
                mv[i, j] = _overlap_c(<const unsigned char*>bi, len(bi),
                                      <const unsigned char*>bj, len(bj), buf)
    finally:
        free(buf)
    return out


def sp_overlap_rows(bytes s, list seqs):
    """Overlaps of s against every sequence, both directions."""
    cdef Py_ssize_t n = len(seqs)
    out_row = np.zeros(n, dtype=np.int32)
    in_col = np.zeros(n, dtype=np.int32)
    cdef int[:] mo = out_row
    cdef int[:] mi = in_col
    cdef Py_ssize_t j, maxlen = len(s)
    cdef bytes bj
    for j in range(n):
        if len(<bytes>seqs[j]) > maxlen:
            maxlen = len(<bytes>seqs[j])
    cdef int* buf = <int*>malloc((2 * maxlen + 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    try:
        for j in range(n):
            bj = seqs[j]
            mo[j] = _overlap_c(<const unsigned char*>s, len(s),
                               <const unsigned char*>bj, len(bj), buf)
            mi[j] = _overlap_c(<const unsigned char*>bj, len(bj),
                               <const unsigned char*>s, len(s), buf)
    finally:
        free(buf)
    return out_row, in_col
