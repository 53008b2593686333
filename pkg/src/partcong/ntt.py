"""Modular convolution: schoolbook and a number-theoretic-transform fast path.

The fast path computes the integer convolution by CRT over two NTT-friendly
primes (both with 2^27 | p-1), then reduces mod the target modulus.  It is
exact whenever the largest true convolution coefficient is below p1*p2,
which the caller-facing ``convolve_mod`` checks before dispatching.
"""

import numpy as np

_P1, _G1 = 2013265921, 31  # 15 * 2^27 + 1
_P2, _G2 = 2281701377, 3  # 17 * 2^27 + 1
_P1P2 = _P1 * _P2
_INV_P1_MOD_P2 = pow(_P1, -1, _P2)
_MAX_LOG2 = 27

FAST_THRESHOLD = 2048


def _bit_reverse_indices(n):
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    bits = n.bit_length() - 1
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def _ntt(a, p, g, inverse=False):
    """In-place radix-2 NTT of int64 array a (length a power of two) mod p."""
    n = len(a)
    a[:] = a[_bit_reverse_indices(n)]
    root = pow(g, (p - 1) // n, p)
    if inverse:
        root = pow(root, -1, p)
    length = 2
    while length <= n:
        w_len = pow(root, n // length, p)
        half = length // 2
        w = np.empty(half, dtype=np.int64)
        w[0] = 1
        for i in range(1, half):
            w[i] = w[i - 1] * w_len % p
        blocks = a.reshape(-1, length)
        lo = blocks[:, :half]
        hi = blocks[:, half:]
        t = hi * w % p
        hi[:] = (lo - t) % p
        lo[:] = (lo + t) % p
        length *= 2
    if inverse:
        n_inv = pow(n, -1, p)
        a[:] = a * n_inv % p
    return a


def _convolve_ntt_prime(a, b, p, g, size):
    fa = np.zeros(size, dtype=np.int64)
    fb = np.zeros(size, dtype=np.int64)
    fa[: len(a)] = a % p
    fb[: len(b)] = b % p
    _ntt(fa, p, g)
    _ntt(fb, p, g)
    fa = fa * fb % p
    return _ntt(fa, p, g, inverse=True)


def convolve_mod_fast(a, b, modulus, out_len=None):
    """NTT/CRT convolution of residue arrays a, b mod modulus."""
    full = len(a) + len(b) - 1
    if out_len is None:
        out_len = full
    size = 1 << max(1, (full - 1).bit_length())
    if size > 1 << _MAX_LOG2:
        raise ValueError("transform length exceeds NTT support")
    if min(len(a), len(b)) * (modulus - 1) ** 2 >= _P1P2:
        raise ValueError("convolution coefficients may overflow the CRT modulus")
    a64 = np.asarray(a, dtype=np.int64)
    b64 = np.asarray(b, dtype=np.int64)
    r1 = _convolve_ntt_prime(a64, b64, _P1, _G1, size)
    r2 = _convolve_ntt_prime(a64, b64, _P2, _G2, size)
    # CRT: value = r1 + p1 * ((r2 - r1) / p1 mod p2), below p1*p2 < 2^62
    mid = (r2 - r1) % _P2 * _INV_P1_MOD_P2 % _P2
    val = r1 + _P1 * mid
    return (val[:out_len] % modulus).astype(np.int64)


def convolve_mod_schoolbook(a, b, modulus, out_len=None):
    """Direct convolution mod modulus, chunked so int64 sums never overflow."""
    full = len(a) + len(b) - 1
    if out_len is None:
        out_len = full
    sq = max(1, (modulus - 1) ** 2)
    if min(len(a), len(b)) * sq < 1 << 62:
        res = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        return res[:out_len] % modulus
    chunk = max(1, (1 << 62) // sq)
    a64 = np.asarray(a, dtype=np.int64)
    b64 = np.asarray(b, dtype=np.int64)
    acc = np.zeros(full, dtype=np.int64)
    for start in range(0, len(b64), chunk):
        part = np.convolve(a64, b64[start : start + chunk])
        acc[start : start + len(part)] = (acc[start : start + len(part)] + part) % modulus
    return acc[:out_len] % modulus


def convolve_mod(a, b, modulus, out_len=None):
    """Convolution mod modulus; picks the NTT path for large inputs."""
    if (
        min(len(a), len(b)) >= FAST_THRESHOLD
        and len(a) + len(b) - 1 <= 1 << _MAX_LOG2
        and min(len(a), len(b)) * (modulus - 1) ** 2 < _P1P2
    ):
        return convolve_mod_fast(a, b, modulus, out_len)
    return convolve_mod_schoolbook(a, b, modulus, out_len)


def invert_series(f, modulus, n_terms, convolve=convolve_mod):
    """First n_terms coefficients of 1/f mod modulus by Newton iteration.

    Requires f[0] to be a unit mod modulus.
    """
    import math

    f = np.asarray(f, dtype=np.int64)
    c0 = int(f[0])
    if math.gcd(c0, modulus) != 1:
        raise ValueError("constant term is not a unit mod modulus")
    g = np.array([pow(c0, -1, modulus)], dtype=np.int64)
    prec = 1
    while prec < n_terms:
        prec = min(2 * prec, n_terms)
        fg = convolve(f[:prec], g, modulus, prec)
        corr = (-fg) % modulus
        corr[0] = (corr[0] + 2) % modulus
        g = convolve(g, corr, modulus, prec)
    return g[:n_terms]
