"""Shared small helpers."""

import numpy as np


def dtype_for_modulus(modulus):
    """Narrowest unsigned dtype holding residues in [0, modulus)."""
    if modulus <= 1 << 8:
        return np.uint8
    if modulus <= 1 << 16:
        return np.uint16
    if modulus <= 1 << 32:
        return np.uint32
    if modulus <= 1 << 63:
        return np.uint64
    raise ValueError("modulus must fit in 63 bits")


def is_prime_power(n):
    """Return (p, e) if n = p^e with p prime, else None."""
    from .arith import is_prime

    if n < 2:
        return None
    for e in range(1, n.bit_length()):
        p = round(n ** (1.0 / e))
        for cand in (p - 1, p, p + 1):
            if cand >= 2 and cand**e == n and is_prime(cand):
                return (cand, e)
    return None
