"""Reference (uncompiled) implementations of the hot kernels.

Matrices are stacked as integer arrays ``nums`` of shape (F, n, n) together
with positive denominators ``dens`` of shape (F,); element f stands for
``nums[f] / dens[f]`` and is kept in lowest terms.  The array dtype is either
int64 or object (Python integers), chosen by the caller in ``kernels``.
"""
import numpy as np


def mul_canon(a, ad, b, bd):
    """Products a[f] @ b[f] in lowest terms; ``b`` may hold a single matrix."""
    c = np.matmul(a, b)
    den = ad * bd
    flat = np.abs(c).reshape(c.shape[0], -1)
    g = np.gcd.reduce(flat, axis=1) if flat.shape[1] else np.zeros(c.shape[0], dtype=c.dtype)
    g = np.gcd(g, den)
    return c // g[:, None, None], den // g


def charpoly_batch(a):
    """Coefficients of det(x I - a[f]) for every f, highest power first.

    Berkowitz's algorithm vectorised over the batch; only ring operations.
    """
    F, n, _ = a.shape
    poly = [np.ones(F, dtype=a.dtype), -a[:, n - 1, n - 1]]
    for r in range(n - 2, -1, -1):
        size = n - r - 1
        R = a[:, r, r + 1:]
        v = a[:, r + 1:, r]
        S = a[:, r + 1:, r + 1:]
        col = [np.ones(F, dtype=a.dtype), -a[:, r, r]]
        for _ in range(size):
            col.append(-(R * v).sum(axis=1))
            v = np.einsum("fij,fj->fi", S, v)
        new = []
        for i in range(size + 2):
            s = col[i] * poly[0]
            for j in range(1, min(i, size) + 1):
                s = s + col[i - j] * poly[j]
            new.append(s)
        poly = new
    return np.stack(poly, axis=1)
