# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: the pentagonal-number partition recurrence.

The recurrence is O(N^1.5) total work and dominates the runtime of every
large partition-table computation, so it gets a tight typed loop here.
A byte-wide coefficient path is provided for moduli < 256 so that tables
with hundreds of millions of entries stay within ~N bytes of memory.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def partition_table(Py_ssize_t n_terms, unsigned long long modulus):
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if modulus <= 255:
        return _partition_u8(n_terms, <unsigned char> modulus)
    if modulus <= (<unsigned long long> 1) << 31:
        return _partition_u64(n_terms, modulus)
    raise ValueError("compiled kernel supports moduli < 2^31")


cdef _pentagonals(Py_ssize_t n_terms):
    cdef list g1 = [], g2 = []
    cdef Py_ssize_t k = 1
    while k * (3 * k - 1) // 2 < n_terms:
        g1.append(k * (3 * k - 1) // 2)
        g2.append(k * (3 * k + 1) // 2)
        k += 1
    return (np.array(g1, dtype=np.intp), np.array(g2, dtype=np.intp))


cdef _partition_u8(Py_ssize_t n_terms, unsigned char modulus):
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] out = np.zeros(n_terms, dtype=np.uint8)
    g1_arr, g2_arr = _pentagonals(n_terms)
    cdef cnp.ndarray[cnp.intp_t, ndim=1] g1 = g1_arr
    cdef cnp.ndarray[cnp.intp_t, ndim=1] g2 = g2_arr
    cdef Py_ssize_t npent = g1.shape[0]
    cdef unsigned char * p = <unsigned char *> out.data
    cdef Py_ssize_t n, i
    cdef long long s, t, m = modulus
    p[0] = 1 % modulus
    for n in range(1, n_terms):
        s = 0
        for i in range(npent):
            if g1[i] > n:
                break
            t = p[n - g1[i]]
            if g2[i] <= n:
                t += p[n - g2[i]]
            if i & 1:
                s -= t
            else:
                s += t
        s %= m
        if s < 0:
            s += m
        p[n] = <unsigned char> s
    return out


cdef _partition_u64(Py_ssize_t n_terms, unsigned long long modulus):
    # residues < 2^31, so a sum of ~n_terms^0.5 signed terms fits in int64
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] out = np.zeros(n_terms, dtype=np.uint64)
    g1_arr, g2_arr = _pentagonals(n_terms)
    cdef cnp.ndarray[cnp.intp_t, ndim=1] g1 = g1_arr
    cdef cnp.ndarray[cnp.intp_t, ndim=1] g2 = g2_arr
    cdef Py_ssize_t npent = g1.shape[0]
    cdef unsigned long long * p = <unsigned long long *> out.data
    cdef Py_ssize_t n, i
    cdef long long s, t, m = <long long> modulus
    p[0] = 1 % modulus
    for n in range(1, n_terms):
        s = 0
        for i in range(npent):
            if g1[i] > n:
                break
            t = <long long> p[n - g1[i]]
            if g2[i] <= n:
                t += <long long> p[n - g2[i]]
            if i & 1:
                s -= t
            else:
                s += t
        s %= m
        if s < 0:
            s += m
        p[n] = <unsigned long long> s
    return out
