"""Dense truncated power series over Z/M (M a prime power), eta expansions,
and partition numbers modulo M."""

import struct
from dataclasses import dataclass, field

import numpy as np

from . import kernels, ntt
from ._util import dtype_for_modulus, is_prime_power

MAGIC = b"PCZS"
FORMAT_VERSION = 1


def _check_modulus(modulus):
    if is_prime_power(modulus) is None:
        raise ValueError(f"modulus must be a prime power, got {modulus}")


@dataclass(frozen=True)
class ZSeries:
    """Truncated power series with canonical residue coefficients mod a
    prime power.  coeffs[n] is the q^n coefficient, valid for n < precision."""

    modulus: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        _check_modulus(self.modulus)
        arr = np.asarray(self.coeffs)
        if arr.ndim != 1 or len(arr) < 1:
            raise ValueError("coeffs must be a nonempty 1-d array")
        arr = np.remainder(arr, self.modulus).astype(dtype_for_modulus(self.modulus))
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    @property
    def precision(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        if not 0 <= n < self.precision:
            raise IndexError(f"coefficient {n} beyond precision {self.precision}")
        return int(self.coeffs[n])

    def __eq__(self, other):
        return (
            isinstance(other, ZSeries)
            and self.modulus == other.modulus
            and self.precision == other.precision
            and bool(np.array_equal(self.coeffs, other.coeffs))
        )

    def truncate(self, precision):
        if precision > self.precision:
            raise ValueError("cannot extend precision")
        return ZSeries(self.modulus, self.coeffs[:precision])

    def is_zero(self):
        return not self.coeffs.any()


@dataclass(frozen=True)
class SparseSeries:
    """Finitely supported series: ascending (exponent, nonzero residue) terms."""

    modulus: int
    terms: tuple

    def __post_init__(self):
        _check_modulus(self.modulus)
        terms = tuple((int(e), int(c) % self.modulus) for e, c in self.terms)
        exps = [e for e, _ in terms]
        if exps != sorted(set(exps)):
            raise ValueError("exponents must be distinct and ascending")
        if any(c == 0 for _, c in terms):
            raise ValueError("coefficients must be nonzero mod modulus")
        object.__setattr__(self, "terms", terms)

    def densify(self, precision):
        arr = np.zeros(precision, dtype=np.int64)
        for e, c in self.terms:
            if e < precision:
                arr[e] = c
        return ZSeries(self.modulus, arr)


def eta_sparse(n_terms, modulus):
    """prod_{n>=1} (1 - q^n) truncated below q^n_terms: terms (g_k, (-1)^k)
    at the generalized pentagonal numbers g_k = k(3k-1)/2, k in Z."""
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    terms = {0: 1}
    k = 1
    while k * (3 * k - 1) // 2 < n_terms:
        sign = -1 if k % 2 else 1
        for g in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
            if g < n_terms:
                terms[g] = sign % modulus
        k += 1
    return SparseSeries(modulus, sorted(terms.items()))


def partition_mod(n_terms, modulus, method="auto"):
    """ZSeries with coefficient p(n) mod modulus at q^n, 0 <= n < n_terms.

    method: "auto" / "recurrence" use the pentagonal recurrence kernel;
    "inverse" inverts the eta factor with the transform-based fast path
    (worthwhile only for very large n_terms).
    """
    _check_modulus(modulus)
    if method in ("auto", "recurrence"):
        return ZSeries(modulus, kernels.partition_table(n_terms, modulus))
    if method == "inverse":
        eta = eta_sparse(n_terms, modulus).densify(n_terms)
        inv = ntt.invert_series(eta.coeffs, modulus, n_terms, convolve=ntt.convolve_mod)
        return ZSeries(modulus, inv)
    raise ValueError(f"unknown method {method!r}")


def series_mul(a, b, path="auto"):
    """Product truncated to the smaller operand precision.

    path: "auto" picks the NTT route above a size threshold, "schoolbook"
    and "fast" force one side (used by the oracle-equivalence tests).
    """
    if a.modulus != b.modulus:
        raise ValueError("modulus mismatch")
    out_len = min(a.precision, b.precision)
    fns = {
        "auto": ntt.convolve_mod,
        "schoolbook": ntt.convolve_mod_schoolbook,
        "fast": ntt.convolve_mod_fast,
    }
    res = fns[path](a.coeffs, b.coeffs, a.modulus, out_len)
    return ZSeries(a.modulus, res)


def series_inverse(s, precision=None):
    """Inverse series to the given precision; s may be sparse or dense.
    Requires a unit constant term."""
    if isinstance(s, SparseSeries):
        if precision is None:
            raise ValueError("precision is required to invert a sparse series")
        s = s.densify(precision)
    if precision is None:
        precision = s.precision
    if precision > s.precision:
        raise ValueError("cannot extend precision")
    inv = ntt.invert_series(s.coeffs[:precision], s.modulus, precision)
    return ZSeries(s.modulus, inv)


def extract_progression(s, a, m):
    """Coefficients of s along exponents a, a+m, a+2m, ..."""
    if not 0 <= a < m:
        raise ValueError("need 0 <= a < m")
    return ZSeries(s.modulus, s.coeffs[a::m].copy())


def interleave_progressions(parts, m):
    """Inverse of extract_progression over a full set of m residues."""
    if len(parts) != m:
        raise ValueError("need exactly m progressions")
    total = sum(p.precision for p in parts)
    out = np.zeros(total, dtype=np.int64)
    for a, p in enumerate(parts):
        out[a::m] = p.coeffs
    return ZSeries(parts[0].modulus, out)


def dump_zseries(s, path):
    """Binary dump: magic, version u32, modulus u64, precision u64 (all LE),
    then raw coefficient words (width implied by the modulus)."""
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<IQQ", FORMAT_VERSION, s.modulus, s.precision))
        fh.write(s.coeffs.astype(s.coeffs.dtype.newbyteorder("<")).tobytes())


def load_zseries(path):
    with open(path, "rb") as fh:
        if fh.read(4) != MAGIC:
            raise ValueError("bad magic")
        version, modulus, precision = struct.unpack("<IQQ", fh.read(20))
        if version != FORMAT_VERSION:
            raise ValueError(f"unsupported version {version}")
        dtype = np.dtype(dtype_for_modulus(modulus)).newbyteorder("<")
        data = np.frombuffer(fh.read(), dtype=dtype)
    if len(data) != precision:
        raise ValueError("truncated coefficient data")
    return ZSeries(modulus, data.astype(dtype.newbyteorder("=")))
