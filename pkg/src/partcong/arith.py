"""Elementary modular arithmetic: Kronecker symbols, prime tables,
multiplicative-order conditions at 2 and 3, exponent lifting, and density scans."""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "PrimeTable",
    "DensityReport",
    "kronecker",
    "is_prime",
    "prime_table",
    "multiplicative_order",
    "satisfies_2a",
    "satisfies_3a",
    "solve_3a",
    "lift_exponent_2",
    "density_scan",
]


def kronecker(a, n):
    """Kronecker symbol (a/n), defined for all integers a, n.

    Extends the Jacobi symbol by (a/0) = 1 iff a = +-1 else 0,
    (a/-1) = -1 for a < 0 else 1, and (a/2) = 0, 1, -1 according to
    a mod 8 (0 for even a, 1 for a = +-1, -1 for a = +-3).
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    # factor out twos of n
    while n % 2 == 0:
        n //= 2
        am8 = a % 8
        if am8 == 0 or am8 % 2 == 0:
            return 0
        if am8 in (3, 5):
            result = -result
    if n == 1:
        return result
    # Jacobi symbol for odd n >= 3 by quadratic reciprocity
    a %= n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, valid for all n < 3.3 * 10**24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeTable:
    bound: int
    primes: tuple

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)


def prime_table(bound):
    """All primes <= bound, by Eratosthenes sieve."""
    if bound < 2:
        return PrimeTable(bound, ())
    sieve = np.ones(bound + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(bound**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return PrimeTable(bound, tuple(int(p) for p in np.nonzero(sieve)[0]))


def _factorize(n):
    facs = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            facs[d] = facs.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        facs[n] = facs.get(n, 0) + 1
    return facs


def multiplicative_order(a, m):
    """Order of a in (Z/m)^*; requires gcd(a, m) = 1."""
    import math

    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit mod {m}")
    # group order for m = p^e (the only shapes we need) or general m
    facs = _factorize(m)
    group = 1
    for p, e in facs.items():
        group *= (p - 1) * p ** (e - 1)
    order = group
    for p, e in _factorize(group).items():
        for _ in range(e):
            if pow(a, order // p, m) == 1:
                order //= p
            else:
                break
    return order


def _check_ell(ell):
    if ell < 5 or not is_prime(ell):
        raise ValueError(f"ell must be a prime >= 5, got {ell}")


def satisfies_2a(ell):
    """True iff some power of 2 is -1 mod ell (the order of 2 is even).

    With ell - 1 = 2^s * t (t odd): the order of 2 is odd iff 2^t = 1.
    """
    _check_ell(ell)
    t = ell - 1
    while t % 2 == 0:
        t //= 2
    return pow(2, t, ell) != 1


def satisfies_3a(ell):
    """True iff some power of 3 is -2 mod ell.

    Membership test in the cyclic subgroup generated by 3: x is a power
    of 3 iff x^ord(3) = 1.
    """
    _check_ell(ell)
    return pow(-2, multiplicative_order(3, ell), ell) == 1


def solve_3a(ell, m=1):
    """Least a >= 1 with 3^a = -2 mod ell^m, or None.

    Searches one full multiplicative-order period of 3 mod ell^m.
    """
    _check_ell(ell)
    if m < 1:
        raise ValueError("m must be >= 1")
    mod = ell**m
    target = mod - 2
    order = multiplicative_order(3, mod)
    x = 1
    for a in range(1, order + 1):
        x = x * 3 % mod
        if x == target:
            return a
    return None


def lift_exponent_2(a, ell, m):
    """Lift 2^a = -2 (mod ell) to the exponent a' = ell^(m-1)*(a-1)+1
    with 2^a' = -2 (mod ell^m).  a' has the same parity as a."""
    _check_ell(ell)
    if m < 1:
        raise ValueError("m must be >= 1")
    if pow(2, a, ell) != ell - 2:
        raise ValueError(f"precondition failed: 2^{a} != -2 mod {ell}")
    return ell ** (m - 1) * (a - 1) + 1


@dataclass(frozen=True)
class DensityReport:
    bound: int
    predicate_name: str
    numerator: int
    denominator: int
    fraction: Fraction


_PREDICATES = {
    "2a": satisfies_2a,
    "3a": satisfies_3a,
    "2a-or-3a": lambda ell: satisfies_2a(ell) or satisfies_3a(ell),
}


def predicate_names():
    """Names accepted by density_scan."""
    return tuple(_PREDICATES)


def density_scan(bound, predicate):
    """Count primes 5 <= ell <= bound satisfying a named predicate.

    predicate is one of "2a", "3a", "2a-or-3a".  The denominator counts all
    primes in [5, bound] (2 and 3 are excluded).
    """
    if bound < 10:
        raise ValueError("bound must be >= 10")
    if predicate not in _PREDICATES:
        raise ValueError(f"unknown predicate {predicate!r}")
    pred = _PREDICATES[predicate]
    num = den = 0
    for ell in prime_table(bound).primes:
        if ell < 5:
            continue
        den += 1
        if pred(ell):
            num += 1
    return DensityReport(bound, predicate, num, den, Fraction(num, den))
