# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the scaled-integer matrix kernels (int64 only).

Callers in ``kernels`` guarantee that no intermediate exceeds 2**62.
"""
import numpy as np

ctypedef long long i64


cdef inline i64 _gcd(i64 a, i64 b) noexcept nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


def mul_canon(const i64[:, :, ::1] a, const i64[::1] ad, const i64[:, :, ::1] b, const i64[::1] bd):
    cdef Py_ssize_t F = a.shape[0], n = a.shape[1]
    cdef bint single = b.shape[0] == 1
    out = np.empty((F, n, n), dtype=np.int64)
    outd = np.empty(F, dtype=np.int64)
    cdef i64[:, :, ::1] c = out
    cdef i64[::1] cd = outd
    cdef Py_ssize_t f, fb, i, j, l
    cdef i64 s, g, den
    with nogil:
        for f in range(F):
            fb = 0 if single else f
            den = ad[f] * bd[fb]
            g = den
            for i in range(n):
                for j in range(n):
                    s = 0
                    for l in range(n):
                        s = s + a[f, i, l] * b[fb, l, j]
                    c[f, i, j] = s
                    if g != 1 and s != 0:
                        g = _gcd(g, s)
            if g != 1:
                for i in range(n):
                    for j in range(n):
                        c[f, i, j] = c[f, i, j] // g
            cd[f] = den // g
    return out, outd


def charpoly_batch(const i64[:, :, ::1] a):
    cdef Py_ssize_t F = a.shape[0], n = a.shape[1]
    out = np.zeros((F, n + 1), dtype=np.int64)
    cdef i64[:, ::1] res = out
    poly_buf = np.zeros(n + 1, dtype=np.int64)
    new_buf = np.zeros(n + 1, dtype=np.int64)
    col_buf = np.zeros(n + 1, dtype=np.int64)
    v_buf = np.zeros(n, dtype=np.int64)
    w_buf = np.zeros(n, dtype=np.int64)
    cdef i64[::1] poly = poly_buf, new = new_buf, col = col_buf, v = v_buf, w = w_buf
    cdef Py_ssize_t f, r, size, i, j, t, plen
    cdef i64 s
    with nogil:
        for f in range(F):
            poly[0] = 1
            poly[1] = -a[f, n - 1, n - 1]
            plen = 2
            for r in range(n - 2, -1, -1):
                size = n - r - 1
                col[0] = 1
                col[1] = -a[f, r, r]
                for i in range(size):
                    v[i] = a[f, r + 1 + i, r]
                for t in range(size):
                    s = 0
                    for i in range(size):
                        s = s + a[f, r, r + 1 + i] * v[i]
                    col[2 + t] = -s
                    if t + 1 < size:
                        for i in range(size):
                            s = 0
                            for j in range(size):
                                s = s + a[f, r + 1 + i, r + 1 + j] * v[j]
                            w[i] = s
                        for i in range(size):
                            v[i] = w[i]
                for i in range(size + 2):
                    s = 0
                    for j in range((i if i < size else size) + 1):
                        s = s + col[i - j] * poly[j]
                    new[i] = s
                for i in range(size + 2):
                    poly[i] = new[i]
                plen = size + 2
            for i in range(n + 1):
                res[f, i] = poly[i]
    return out
