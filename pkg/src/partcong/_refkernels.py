"""Pure-Python reference implementations of the hot series kernels.

Used when the compiled extension is unavailable, and as the oracle the
compiled kernels are benchmarked and tested against.
"""

import numpy as np

from ._util import dtype_for_modulus


def partition_table(n_terms, modulus):
    """p(0..n_terms-1) mod modulus via the pentagonal-number recurrence."""
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    # generalized pentagonal numbers g(k) = k(3k-1)/2 for k = 1, -1, 2, -2, ...
    pents = []
    k = 1
    while k * (3 * k - 1) // 2 < n_terms:
        pents.append((k * (3 * k - 1) // 2, k * (3 * k + 1) // 2, 1 if k % 2 else -1))
        k += 1
    p = [0] * n_terms
    p[0] = 1 % modulus
    for n in range(1, n_terms):
        s = 0
        for g1, g2, sign in pents:
            if g1 > n:
                break
            t = p[n - g1]
            if g2 <= n:
                t += p[n - g2]
            s = s + t if sign > 0 else s - t
        p[n] = s % modulus
    return np.array(p, dtype=dtype_for_modulus(modulus))
