"""Pure-Python enumeration kernels (fallback for :mod:`semiexact._kernels`).

All functions work on element indices of a finite semiring.  ``add`` and
``mul`` are flattened ``q*q`` tables: ``add[a*q + b]`` is the index of a+b.
Vectors of length k are encoded as base-q integers, first coordinate most
significant, so code order is lexicographic order.
"""

from itertools import product


def image_codes(A, m, n, add, mul, q, side):
    """Codes of every product uA (side 0) or Av (side 1).

    ``A`` is a flat row-major list of m*n indices.  The i-th output belongs
    to the multiplier whose code is i.
    """
    out = []
    if side == 0:
        cols = [[A[i * n + j] for i in range(m)] for j in range(n)]
        for u in product(range(q), repeat=m):
            code = 0
            for col in cols:
                acc = mul[u[0] * q + col[0]]
                for i in range(1, m):
                    acc = add[acc * q + mul[u[i] * q + col[i]]]
                code = code * q + acc
            out.append(code)
    else:
        rows = [A[i * n:(i + 1) * n] for i in range(m)]
        for v in product(range(q), repeat=n):
            code = 0
            for row in rows:
                acc = mul[row[0] * q + v[0]]
                for j in range(1, n):
                    acc = add[acc * q + mul[row[j] * q + v[j]]]
                code = code * q + acc
            out.append(code)
    return out


def matmul(A, B, m, k, n, add, mul, q):
    """Flat index product of an m*k and a k*n matrix."""
    out = []
    for i in range(m):
        row = A[i * k:(i + 1) * k]
        for j in range(n):
            acc = mul[row[0] * q + B[j]]
            for t in range(1, k):
                acc = add[acc * q + mul[row[t] * q + B[t * n + j]]]
            out.append(acc)
    return out
