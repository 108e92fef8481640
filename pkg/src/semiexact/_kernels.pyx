# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; see :mod:`semiexact._pykernels` for the contract."""

from libc.stdlib cimport malloc, free


cdef int* _as_c(list xs) except NULL:
    cdef Py_ssize_t i, k = len(xs)
    cdef int* p = <int*> malloc((k if k > 0 else 1) * sizeof(int))
    if p == NULL:
        raise MemoryError()
    for i in range(k):
        p[i] = xs[i]
    return p


def image_codes(A, int m, int n, add, mul, int q, int side):
    cdef int* a = _as_c(list(A))
    cdef int* ad = _as_c(list(add))
    cdef int* mu = _as_c(list(mul))
    cdef int k = m if side == 0 else n
    cdef int* digits = <int*> malloc(k * sizeof(int))
    cdef long long total = 1, idx, code
    cdef int i, j, acc, t
    cdef list out
    for t in range(k):
        total *= q
        digits[t] = 0
    out = [0] * total
    try:
        for idx in range(total):
            code = 0
            if side == 0:
                for j in range(n):
                    acc = mu[digits[0] * q + a[j]]
                    for i in range(1, m):
                        acc = ad[acc * q + mu[digits[i] * q + a[i * n + j]]]
                    code = code * q + acc
            else:
                for i in range(m):
                    acc = mu[a[i * n] * q + digits[0]]
                    for j in range(1, n):
                        acc = ad[acc * q + mu[a[i * n + j] * q + digits[j]]]
                    code = code * q + acc
            out[idx] = code
            # odometer step, last digit least significant
            t = k - 1
            while t >= 0:
                digits[t] += 1
                if digits[t] < q:
                    break
                digits[t] = 0
                t -= 1
    finally:
        free(a)
        free(ad)
        free(mu)
        free(digits)
    return out


def matmul(A, B, int m, int k, int n, add, mul, int q):
    cdef int* a = _as_c(list(A))
    cdef int* b = _as_c(list(B))
    cdef int* ad = _as_c(list(add))
    cdef int* mu = _as_c(list(mul))
    cdef int i, j, t, acc
    cdef list out = [0] * (m * n)
    try:
        for i in range(m):
            for j in range(n):
                acc = mu[a[i * k] * q + b[j]]
                for t in range(1, k):
                    acc = ad[acc * q + mu[a[i * k + t] * q + b[t * n + j]]]
                out[i * n + j] = acc
    finally:
        free(a)
        free(b)
        free(ad)
        free(mu)
    return out
