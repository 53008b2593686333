"""Expansions sum a(n) q^(n/24) attached to eta-power multipliers: the forms
carrying p(ln+1)/24 and the quadratic-restricted partition series, the
half-integral-weight Hecke operator T(Q^2), and the Shimura lifts."""

import math
from dataclasses import dataclass, field

import numpy as np

from ._util import dtype_for_modulus, is_prime_power
from .arith import is_prime, kronecker
from .qseries import partition_mod


def _pow_mod(base, exp, modulus):
    """base^exp mod modulus for exp >= 0, with the exponent reduced mod the
    order of the unit group when base is a unit (prime-power modulus)."""
    p, e = is_prime_power(modulus)
    if base % p != 0:
        exp = exp % ((p - 1) * p ** (e - 1))
    return pow(base, exp, modulus)


@dataclass(frozen=True)
class EtaForm:
    """Cusp form of half-integral weight k with eta-multiplier exponent r:
    coefficients a(n) supported on n = r (mod 24), valid for n <= precision.

    weight2 is the integer 2k; r is canonical in [1, 24) with gcd(r,24)=1
    and r = 2k (mod 4); coeffs[j] stores a(r + 24j).
    """

    modulus: int
    weight2: int
    r: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if is_prime_power(self.modulus) is None:
            raise ValueError("modulus must be a prime power")
        if self.weight2 % 2 == 0:
            raise ValueError("weight2 must be odd (half-integral weight)")
        if not (0 < self.r < 24 and math.gcd(self.r, 24) == 1):
            raise ValueError("r must be a canonical residue mod 24 coprime to 24")
        if (self.r - self.weight2) % 4 != 0:
            raise ValueError("need r = 2k (mod 4); the space is zero otherwise")
        arr = np.remainder(np.asarray(self.coeffs), self.modulus)
        arr = arr.astype(dtype_for_modulus(self.modulus))
        if len(arr) < 1:
            raise ValueError("need at least one coefficient")
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    @property
    def precision(self):
        return self.r + 24 * (len(self.coeffs) - 1)

    def indices(self):
        return self.r + 24 * np.arange(len(self.coeffs), dtype=np.int64)

    def a(self, n):
        """a(n); zero off the support, error beyond the precision."""
        if n > self.precision or n < 0:
            raise IndexError(f"coefficient {n} beyond precision {self.precision}")
        if n % 24 != self.r:
            return 0
        return int(self.coeffs[(n - self.r) // 24])

    def is_zero(self):
        return not self.coeffs.any()

    def scale(self, c):
        return EtaForm(self.modulus, self.weight2, self.r, self.coeffs * (c % self.modulus))

    def add(self, other):
        if (self.modulus, self.weight2, self.r) != (other.modulus, other.weight2, other.r):
            raise ValueError("weight/multiplier/modulus mismatch")
        n = min(len(self.coeffs), len(other.coeffs))
        return EtaForm(
            self.modulus,
            self.weight2,
            self.r,
            self.coeffs[:n].astype(np.int64) + other.coeffs[:n],
        )

    def truncate(self, precision):
        if precision > self.precision:
            raise ValueError("cannot extend precision")
        count = (precision - self.r) // 24 + 1
        return EtaForm(self.modulus, self.weight2, self.r, self.coeffs[:count])

    def dump_text(self, fh):
        fh.write(f"k={self.weight2}/2 r={self.r} mod={self.modulus} prec={self.precision}\n")
        for n, c in zip(self.indices(), self.coeffs):
            fh.write(f"{n} {c}\n")


def load_etaform_text(fh):
    header = fh.readline().split()
    fields = dict(part.split("=") for part in header)
    weight2 = int(fields["k"].split("/")[0])
    r, modulus, prec = int(fields["r"]), int(fields["mod"]), int(fields["prec"])
    count = (prec - r) // 24 + 1
    coeffs = np.zeros(count, dtype=np.int64)
    for line in fh:
        n, c = line.split()
        coeffs[(int(n) - r) // 24] = int(c)
    return EtaForm(modulus, weight2, r, coeffs)


@dataclass(frozen=True)
class IntegralForm:
    """Integral-weight expansion sum A(n) q^n; coeffs[n] = A(n), A(0) = 0."""

    modulus: int
    weight: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.remainder(np.asarray(self.coeffs), self.modulus)
        arr = arr.astype(dtype_for_modulus(self.modulus))
        if len(arr) < 2:
            raise ValueError("need precision >= 1")
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    @property
    def precision(self):
        return len(self.coeffs) - 1

    def a(self, n):
        if not 0 <= n <= self.precision:
            raise IndexError(f"coefficient {n} beyond precision {self.precision}")
        return int(self.coeffs[n])

    def is_zero(self):
        return not self.coeffs.any()


def _check_ell(ell):
    if ell < 5 or not is_prime(ell):
        raise ValueError(f"need a prime >= 5, got {ell}")


def make_f_ell(ell, precision):
    """The weight-(ell-2)/2 form whose coefficient at admissible n is
    p((ell*n + 1)/24) mod ell; identically zero exactly for ell = 5, 7, 11."""
    _check_ell(ell)
    r = (-ell) % 24
    ns = r + 24 * np.arange((precision - r) // 24 + 1, dtype=np.int64)
    args = (ell * ns + 1) // 24
    table = partition_mod(int(args[-1]) + 1, ell)
    return EtaForm(ell, ell - 2, r, table.coeffs[args])


def make_g_ell(ell, precision):
    """The weight-(ell^2-2)/2 form with coefficient p((n+1)/24) mod ell on
    admissible n with (-n/ell) = -1, and zero elsewhere."""
    _check_ell(ell)
    r = 23
    ns = r + 24 * np.arange((precision - r) // 24 + 1, dtype=np.int64)
    args = (ns + 1) // 24
    table = partition_mod(int(args[-1]) + 1, ell)
    vals = table.coeffs[args].astype(np.int64)
    mask = np.array([kronecker(-int(n), ell) == -1 for n in ns])
    return EtaForm(ell, ell * ell - 2, r, np.where(mask, vals, 0))


def hecke_TQ2(f, Q):
    """Half-integral-weight Hecke operator of index Q^2 on an eta-multiplier
    form: output coefficient at n is
    a(Q^2 n) + Q^(k-3/2) (-1/Q)^(k-1/2) (12n/Q) a(n) + Q^(2k-2) a(n/Q^2)."""
    M = f.modulus
    p, _ = is_prime_power(M)
    if not is_prime(Q) or Q < 5 or Q % p == 0:
        raise ValueError(f"Q must be a prime >= 5 coprime to 6 and the modulus, got {Q}")
    out_prec = f.precision // (Q * Q)
    if out_prec < f.r:
        raise ValueError(f"precision {f.precision} too small for T({Q}^2)")
    count = (out_prec - f.r) // 24 + 1
    ns = f.r + 24 * np.arange(count, dtype=np.int64)
    mid_unit = _pow_mod(Q, (f.weight2 - 3) // 2, M)
    if (f.weight2 - 1) // 2 % 2 == 1:
        mid_unit = mid_unit * kronecker(-1, Q) % M
    third_unit = _pow_mod(Q, f.weight2 - 2, M)
    k12 = kronecker(12, Q)
    out = np.zeros(count, dtype=np.int64)
    coeffs = f.coeffs.astype(np.int64)
    for j, n in enumerate(ns):
        total = coeffs[(Q * Q * int(n) - f.r) // 24]
        total += mid_unit * (k12 * kronecker(int(n), Q) % M) * coeffs[j]
        if n % (Q * Q) == 0 and (n // (Q * Q)) % 24 == f.r:
            total += third_unit * coeffs[(int(n) // (Q * Q) - f.r) // 24]
        out[j] = total % M
    return EtaForm(M, f.weight2, f.r, out)


def shimura_lift(f, t):
    """Shimura lift Sh_t to integral weight 2k-1:
    A_t(n) = sum_{d|n} (-1/d)^(k-1/2) (12t/d) d^(k-3/2) a(t n^2 / d^2)."""
    if t < 1 or math.gcd(t, 6) != 1:
        raise ValueError("t must be positive and coprime to 6")
    # squarefree check (t is small in all uses)
    for d in range(2, math.isqrt(t) + 1):
        if t % (d * d) == 0:
            raise ValueError("t must be squarefree")
    M = f.modulus
    out_prec = math.isqrt(f.precision // t)
    if out_prec < 1:
        raise ValueError("precision too small for the requested lift")
    odd_half = (f.weight2 - 1) // 2 % 2 == 1
    out = np.zeros(out_prec + 1, dtype=np.int64)
    for n in range(1, out_prec + 1):
        total = 0
        for d in range(1, n + 1):
            if n % d:
                continue
            sym = kronecker(12 * t, d)
            if sym == 0:
                continue
            if odd_half:
                sym *= kronecker(-1, d)
            m = t * (n // d) ** 2
            if m % 24 != f.r:
                continue
            total += sym * _pow_mod(d, (f.weight2 - 3) // 2, M) * f.a(m)
        out[n] = total % M
    return IntegralForm(M, f.weight2 - 1, out)


def hecke_TQ_integral(F, Q):
    """Weight-w Hecke operator T(Q) on integral-weight expansions for primes
    Q coprime to the level: A(n) -> A(Qn) + Q^(w-1) A(n/Q)."""
    M = F.modulus
    out_prec = F.precision // Q
    if out_prec < 1:
        raise ValueError("precision too small for T(Q)")
    unit = _pow_mod(Q, F.weight - 1, M)
    out = np.zeros(out_prec + 1, dtype=np.int64)
    for n in range(1, out_prec + 1):
        total = F.coeffs[Q * n]
        if n % Q == 0:
            total = total + unit * F.coeffs[n // Q]
        out[n] = total % M
    return IntegralForm(M, F.weight, out)


def twist_12(F):
    """Coefficient twist A(n) -> (12/n) A(n)."""
    out = np.array(
        [0] + [kronecker(12, n) * int(F.coeffs[n]) for n in range(1, len(F.coeffs))],
        dtype=np.int64,
    )
    return IntegralForm(F.modulus, F.weight, out)
