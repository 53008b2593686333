"""Integral-weight newform data on Gamma_0(6): coefficient fields, residue
maps at primes above ell, Atkin-Lehner sign filtering, pairwise congruence
detection, and the exceptional-image test."""

import itertools
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .arith import is_prime

_X = sympy.symbols("x")


@dataclass(frozen=True)
class NewformRecord:
    """One Galois orbit of newforms: label, level (always 6 here), weight,
    Atkin-Lehner signs, defining polynomial of the coefficient field (low
    degree first, monic), and a_n as vectors of rationals over the power
    basis, for 1 <= n <= n_stored."""

    label: str
    level: int
    weight: int
    al_signs: tuple  # (eps2, eps3)
    field_poly: tuple  # integer coefficients, low degree first, monic
    an: tuple  # an[n] = tuple of Fractions, length = degree; an[0] = zeros

    @property
    def degree(self):
        return len(self.field_poly) - 1

    @property
    def n_stored(self):
        return len(self.an) - 1

    def coefficient(self, n):
        if not 1 <= n <= self.n_stored:
            raise IndexError(f"a_{n} not stored (have 1..{self.n_stored})")
        return self.an[n]

    def rational_coefficient(self, n):
        """a_n as a Fraction; error if a_n is not rational."""
        v = self.coefficient(n)
        if any(v[i] != 0 for i in range(1, len(v))):
            raise ValueError(f"a_{n} of {self.label} is not rational")
        return v[0]


def validate_record(rec, spot_checks=20, rng=None):
    """Assert the NewformRecord invariants; raises ValueError naming the
    violated one."""
    if rec.field_poly[-1] != 1:
        raise ValueError("field_poly is not monic")
    if len(rec.an) < 4:
        raise ValueError("need at least a_1..a_3")
    deg = rec.degree
    if any(len(v) != deg for v in rec.an):
        raise ValueError("coefficient vector length mismatch")
    one = (Fraction(1),) + (Fraction(0),) * (deg - 1)
    if tuple(rec.an[1]) != one:
        raise ValueError("a_1 != 1")
    k = rec.weight
    e2, e3 = rec.al_signs
    if e2 not in (1, -1) or e3 not in (1, -1):
        raise ValueError("Atkin-Lehner signs must be +-1")
    if rec.rational_coefficient(2) != -e2 * 2 ** ((k - 2) // 2):
        raise ValueError("Atkin-Lehner identity fails at 2")
    if rec.rational_coefficient(3) != -e3 * 3 ** ((k - 2) // 2):
        raise ValueError("Atkin-Lehner identity fails at 3")
    # Hecke recursion / multiplicativity spot checks (exact rationals)
    field = _PowerBasisField(rec.field_poly)
    import random

    rng = rng or random.Random(20240601)
    n_max = rec.n_stored
    for _ in range(spot_checks):
        p = rng.choice([2, 3, 5, 7, 11, 13, 17])
        n = rng.randrange(2, max(3, n_max // p))
        if p * n > n_max:
            continue
        lhs = rec.an[p * n]
        if n % p != 0:
            rhs = field.mul(rec.an[p], rec.an[n])
        elif p in (2, 3):
            rhs = field.mul(rec.an[p], rec.an[n])
        else:
            rhs = field.sub(
                field.mul(rec.an[p], rec.an[n]),
                field.scal(Fraction(p ** (k - 1)), rec.an[n // p]),
            )
        if tuple(lhs) != tuple(rhs):
            raise ValueError(f"Hecke recursion fails at p={p}, n={n}")
    return True


class _PowerBasisField:
    """Exact arithmetic in Q[x]/(field_poly) on power-basis Fraction vectors."""

    def __init__(self, field_poly):
        self.h = [Fraction(c) for c in field_poly]
        self.deg = len(field_poly) - 1

    def mul(self, a, b):
        d = self.deg
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        for i in range(len(prod) - 1, d - 1, -1):
            c = prod[i]
            if c:
                for j in range(d + 1):
                    prod[i - d + j] -= c * self.h[j]
        return tuple(prod[:d])

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def scal(self, c, a):
        return tuple(c * x for x in a)


# ---------------------------------------------------------------------------
# finite fields F_{ell^f} as F_ell[y]/(g), elements = tuples of ints


class FiniteField:
    def __init__(self, ell, g):
        """g: monic polynomial over F_ell, low degree first, as int tuple."""
        self.ell = ell
        self.g = tuple(c % ell for c in g)
        self.deg = len(g) - 1

    @property
    def order(self):
        return self.ell ** self.deg

    def zero(self):
        return (0,) * self.deg

    def one(self):
        return (1,) + (0,) * (self.deg - 1)

    def from_int(self, c):
        return (c % self.ell,) + (0,) * (self.deg - 1)

    def gen(self):
        if self.deg == 1:
            return ((-self.g[0]) % self.ell,)
        return (0, 1) + (0,) * (self.deg - 2)

    def add(self, a, b):
        return tuple((x + y) % self.ell for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.ell for x, y in zip(a, b))

    def mul(self, a, b):
        d = self.deg
        ell = self.ell
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        for i in range(len(prod) - 1, d - 1, -1):
            c = prod[i] % ell
            if c:
                for j in range(d + 1):
                    prod[i - d + j] -= c * self.g[j]
        return tuple(c % ell for c in prod[:d])

    def pow(self, a, e):
        out = self.one()
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, a):
        if all(c == 0 for c in a):
            raise ZeroDivisionError
        return self.pow(a, self.order - 2)

    def frobenius(self, a):
        return self.pow(a, self.ell)

    def eval_poly(self, poly, point):
        """Evaluate a polynomial with integer coefficients (low degree
        first) at a field element."""
        out = self.zero()
        for c in reversed(poly):
            out = self.add(self.mul(out, point), self.from_int(c))
        return out

    def roots_of(self, poly):
        """All roots in this field of a polynomial irreducible over F_ell
        of degree equal to some divisor pattern; brute Cantor-Zassenhaus."""
        # polynomial arithmetic over this field: coefficient lists of tuples
        f_ = [self.from_int(c) for c in poly]

        def pdeg(p):
            for i in range(len(p) - 1, -1, -1):
                if any(p[i]):
                    return i
            return -1

        def pmod(a, b):
            a = list(a)
            db = pdeg(b)
            inv_lead = self.inv(b[db])
            while pdeg(a) >= db:
                da = pdeg(a)
                f = self.mul(a[da], inv_lead)
                for i in range(db + 1):
                    a[da - db + i] = self.sub(a[da - db + i], self.mul(f, b[i]))
            return a[: max(pdeg(a) + 1, 1)]

        def pgcd(a, b):
            while pdeg(b) >= 0:
                a, b = b, pmod(a, b)
            da = pdeg(a)
            inv_lead = self.inv(a[da])
            return [self.mul(c, inv_lead) for c in a[: da + 1]]

        def pow_x_mod(e, modpoly):
            # X^e mod modpoly
            result = [self.one()]
            base = [self.zero(), self.one()]
            if pdeg(modpoly) <= 1:
                base = pmod(base, modpoly)
            while e:
                if e & 1:
                    result = pmod(_pmul(result, base), modpoly)
                base = pmod(_pmul(base, base), modpoly)
                e >>= 1
            return result

        def _pmul(a, b):
            out = [self.zero()] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if any(x):
                    for j, y in enumerate(b):
                        if any(y):
                            out[i + j] = self.add(out[i + j], self.mul(x, y))
            return out

        # restrict to the part of f_ splitting into linear factors here
        xq = pow_x_mod(self.order, f_)
        xq_minus_x = list(xq) + [self.zero()] * (2 - len(xq))
        xq_minus_x[1] = self.sub(xq_minus_x[1], self.one())
        lin = pgcd(f_, xq_minus_x)
        roots = []

        def split(p):
            d = pdeg(p)
            if d == 0:
                return
            if d == 1:
                roots.append(self.mul(self.sub(self.zero(), p[0]), self.inv(p[1])))
                return
            # Cantor-Zassenhaus equal-degree (degree 1) splitting
            import random

            rng = random.Random(hash((self.ell, self.g, tuple(map(tuple, p)))))
            while True:
                r = tuple(rng.randrange(self.ell) for _ in range(self.deg))
                shift = [r, self.one()]
                t = pow_x_mod_poly(shift, (self.order - 1) // 2, p)
                t = list(t) + [self.zero()] * (1 - len(t)) if not t else list(t)
                t[0] = self.sub(t[0], self.one())
                g = pgcd(p, t)
                dg = pdeg(g)
                if 0 < dg < d:
                    split(g)
                    # divide p by g
                    q = pdiv(p, g)
                    split(q)
                    return

        def pow_x_mod_poly(base, e, modpoly):
            result = [self.one()]
            base = pmod(list(base), modpoly)
            while e:
                if e & 1:
                    result = pmod(_pmul(result, base), modpoly)
                base = pmod(_pmul(base, base), modpoly)
                e >>= 1
            return result

        def pdiv(a, b):
            a = list(a)
            db = pdeg(b)
            inv_lead = self.inv(b[db])
            q = [self.zero()] * (pdeg(a) - db + 1)
            while pdeg(a) >= db:
                da = pdeg(a)
                f = self.mul(a[da], inv_lead)
                q[da - db] = f
                for i in range(db + 1):
                    a[da - db + i] = self.sub(a[da - db + i], self.mul(f, b[i]))
            return q

        split(lin)
        return roots


# ---------------------------------------------------------------------------
# residue maps (primes above ell)


@dataclass(frozen=True)
class ResidueMap:
    """Reduction of the coefficient field at one prime above ell, realized
    by an irreducible factor of field_poly over F_ell."""

    ell: int
    factor: tuple  # irreducible over F_ell, low degree first, monic
    multiplicity: int
    field_poly: tuple

    @property
    def residue_degree(self):
        return len(self.factor) - 1

    @property
    def codomain(self):
        return FiniteField(self.ell, self.factor)

    def reduce_vector(self, vec):
        """Image of a power-basis rational vector in F_{ell^f}."""
        F = self.codomain
        theta = F.gen()
        out = F.zero()
        power = F.one()
        for c in vec:
            c = Fraction(c)
            if c.denominator % self.ell == 0:
                raise ValueError(
                    f"denominator not {self.ell}-integral: {c}")
            ci = c.numerator * pow(c.denominator, -1, self.ell) % self.ell
            if ci:
                out = F.add(out, F.mul(F.from_int(ci), power))
            power = F.mul(power, theta)
        return out


def _poly_mod_factors(field_poly, ell):
    """Irreducible factors of field_poly over F_ell with multiplicities,
    as (coeff tuple low-first, multiplicity)."""
    poly = sympy.Poly([int(c) for c in reversed(field_poly)], _X, modulus=ell,
                      symmetric=False)
    _, factors = poly.factor_list()
    out = []
    for f, mult in factors:
        coeffs = [int(c) % ell for c in f.all_coeffs()[::-1]]
        # normalize monic
        lead = coeffs[-1]
        if lead != 1:
            inv = pow(lead, -1, ell)
            coeffs = [c * inv % ell for c in coeffs]
        out.append((tuple(coeffs), int(mult)))
    return out


def _dedekind_index_coprime(field_poly, ell, factors):
    """Dedekind's criterion: True iff ell does not divide the index
    [O_K : Z[theta]] for theta a root of field_poly."""
    ZX = lambda coeffs: sympy.Poly(list(reversed([int(c) for c in coeffs])), _X)
    fp = ZX(field_poly)
    gbar_factors = [sympy.Poly(list(reversed([int(c) for c in fac])), _X,
                               modulus=ell, symmetric=False)
                    for fac, _ in factors]
    g_lift = sympy.Poly(1, _X)
    h_lift = sympy.Poly(1, _X)
    for (fac, mult), gb in zip(factors, gbar_factors):
        lift = sympy.Poly([int(c) % ell for c in gb.all_coeffs()], _X)
        g_lift *= lift
        h_lift *= lift ** (mult - 1)
    T = (g_lift * h_lift - fp).quo(sympy.Poly(ell, _X))
    Tbar = sympy.Poly(T, _X, modulus=ell, symmetric=False)
    gbar = sympy.Poly(g_lift, _X, modulus=ell, symmetric=False)
    hbar = sympy.Poly(h_lift, _X, modulus=ell, symmetric=False)
    d = sympy.gcd(sympy.gcd(Tbar, gbar), hbar)
    return d.degree() == 0


def primes_above(field_poly, ell):
    """Residue maps for the primes above ell in Q[x]/(field_poly).

    Refuses with "index-divisible: unsupported" when ell divides the index
    of the power-basis order (Dedekind's criterion), since the factors of
    field_poly mod ell then need not correspond to the primes above ell."""
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    field_poly = tuple(int(c) for c in field_poly)
    if field_poly[-1] != 1:
        raise ValueError("field_poly must be monic")
    factors = _poly_mod_factors(field_poly, ell)
    if sum((len(f) - 1) * m for f, m in factors) != len(field_poly) - 1:
        raise RuntimeError("factorization degree bookkeeping failed")
    if not _dedekind_index_coprime(field_poly, ell, factors):
        raise ValueError(f"index-divisible: unsupported (ell={ell})")
    return [ResidueMap(ell, fac, mult, field_poly) for fac, mult in factors]


def reduce_an(rec, rmap, n):
    """Image of a_n(rec) under the residue map."""
    return rmap.reduce_vector(rec.coefficient(n))


# ---------------------------------------------------------------------------
# eigenspace filtering and congruence detection


def sturm_bound(weight, level=6):
    """Sturm bound for weight-k trivial-character forms on Gamma_0(6):
    ceil(k * [SL2(Z):Gamma_0(6)] / 12) = k."""
    if level != 6:
        raise ValueError("only level 6 supported")
    return weight


def filter_eigenspace(records, eps2, eps3):
    """Records in S_k^new(6, eps2, eps3); signs cross-checked against
    a_2 and a_3."""
    out = []
    for rec in records:
        if rec.al_signs != (eps2, eps3):
            continue
        k = rec.weight
        if rec.rational_coefficient(2) != -eps2 * 2 ** ((k - 2) // 2):
            raise ValueError(f"{rec.label}: sign/coefficient mismatch at 2")
        if rec.rational_coefficient(3) != -eps3 * 3 ** ((k - 2) // 2):
            raise ValueError(f"{rec.label}: sign/coefficient mismatch at 3")
        out.append(rec)
    return out


@dataclass(frozen=True)
class CongruencePair:
    label_a: str
    label_b: str
    map_a: ResidueMap
    map_b: ResidueMap
    checked_bound: int
    status: str  # "congruent" or "distinguished"
    witness: int = 0  # n distinguishing the pair, when status=distinguished

    def report_line(self):
        tail = ("congruent" if self.status == "congruent"
                else f"distinguished@n={self.witness}")
        return (f"{self.label_a} {self.label_b} "
                f"{_factor_str(self.map_a)} {_factor_str(self.map_b)} "
                f"{tail} bound={self.checked_bound}")


def _factor_str(rmap):
    return "[" + ",".join(str(c) for c in rmap.factor) + "]"


def _embeddings(map_a, map_b):
    """The residue-field isomorphisms F_ell[y]/(factor_a) -> codomain of
    map_b, as images of the generator (the Frobenius orbit of a root)."""
    Fb = map_b.codomain
    roots = Fb.roots_of(map_a.factor)
    if not roots:
        return []
    root = roots[0]
    out = [root]
    for _ in range(map_a.residue_degree - 1):
        out.append(Fb.frobenius(out[-1]))
    return out


def _apply_embedding(Fa, Fb, image_of_gen, elt):
    out = Fb.zero()
    power = Fb.one()
    for c in elt:
        if c:
            out = Fb.add(out, Fb.mul(Fb.from_int(c), power))
        power = Fb.mul(power, image_of_gen)
    return out


def reductions_congruent(rec_a, map_a, rec_b, map_b, bound):
    """True iff the two reduced eigensystems agree for all n <= bound, up
    to an isomorphism of the residue fields (Frobenius ambiguity)."""
    if map_a.residue_degree != map_b.residue_degree:
        return False
    if min(rec_a.n_stored, rec_b.n_stored) < bound:
        raise ValueError("insufficient stored coefficients for the bound")
    Fa, Fb = map_a.codomain, map_b.codomain
    red_a = [None, Fa.one()] + [reduce_an(rec_a, map_a, n) for n in range(2, bound + 1)]
    red_b = [None, Fb.one()] + [reduce_an(rec_b, map_b, n) for n in range(2, bound + 1)]
    for gen_image in _embeddings(map_a, map_b):
        if all(
            _apply_embedding(Fa, Fb, gen_image, red_a[n]) == red_b[n]
            for n in range(1, bound + 1)
        ):
            return True
    return False


def pairwise_congruence_check(records, ell, bound):
    """All CongruencePairs between distinct records of one eigenspace,
    considering every pair of residue maps of equal residue degree."""
    if records:
        k = records[0].weight
        if bound < sturm_bound(k):
            raise ValueError(
                f"bound {bound} below the Sturm bound {sturm_bound(k)}")
    maps = {rec.label: primes_above(rec.field_poly, ell) for rec in records}
    out = []
    for rec_a, rec_b in itertools.combinations(records, 2):
        for map_a in maps[rec_a.label]:
            for map_b in maps[rec_b.label]:
                if map_a.residue_degree != map_b.residue_degree:
                    continue
                status, witness = "congruent", 0
                if not reductions_congruent(rec_a, map_a, rec_b, map_b, bound):
                    status = "distinguished"
                    witness = _first_witness(rec_a, map_a, rec_b, map_b, bound)
                out.append(CongruencePair(rec_a.label, rec_b.label, map_a,
                                          map_b, bound, status, witness))
    return out


def _first_witness(rec_a, map_a, rec_b, map_b, bound):
    """Smallest n at which the best embedding still distinguishes the
    reductions (0 when fields are not isomorphic)."""
    if map_a.residue_degree != map_b.residue_degree:
        return 0
    Fa, Fb = map_a.codomain, map_b.codomain
    best = 0
    for gen_image in _embeddings(map_a, map_b):
        n = 1
        while n <= bound:
            lhs = _apply_embedding(Fa, Fb, gen_image, reduce_an(rec_a, map_a, n))
            if lhs != reduce_an(rec_b, map_b, n):
                break
            n += 1
        best = max(best, n)
    return best if best <= bound else 0


def count_distinct_reductions(records, ell, bound):
    """Number of pairwise-inequivalent reduced eigensystems arising from
    all records and all their residue maps (orbit-internal collisions from
    ramification included)."""
    systems = []  # (rec, map)
    for rec in records:
        for rmap in primes_above(rec.field_poly, ell):
            systems.append((rec, rmap))
    distinct = []
    for rec, rmap in systems:
        if not any(
            reductions_congruent(rec, rmap, rec2, rmap2, bound)
            for rec2, rmap2 in distinct
        ):
            distinct.append((rec, rmap))
    return len(distinct)


# ---------------------------------------------------------------------------
# exceptional-image test


def exceptional_test(rec, ell, p, normalization="weight"):
    """Verdict "not-exceptional" or "possibly-exceptional" from
    u(p) = a_p^2 / p^(k-1) mod ell (normalization="weight"), or the
    fixed-exponent variant u(p) = a_p^2 / p^9 (normalization="p9").

    The image of the mod-ell representation is small only if u lies in
    {4, 0, 1, 2} or satisfies u^2 - 3u + 1 = 0."""
    if p % 6 in (0, 2, 3, 4) or p == ell or not is_prime(p):
        raise ValueError("need a prime p coprime to 6*ell")
    ap = rec.rational_coefficient(p)
    if ap.denominator % ell == 0:
        raise ValueError("a_p not ell-integral")
    exponent = rec.weight - 1 if normalization == "weight" else 9
    ap_red = ap.numerator * pow(ap.denominator, -1, ell) % ell
    u = ap_red * ap_red * pow(p, -exponent, ell) % ell
    if u in (4 % ell, 0, 1 % ell, 2 % ell):
        return "possibly-exceptional"
    if (u * u - 3 * u + 1) % ell == 0:
        return "possibly-exceptional"
    return "not-exceptional"


def eigenvalue_mod(records, maps, Q):
    """reduce_an applied per record/map pair at index Q."""
    out = []
    for rec, rmap in zip(records, maps):
        if Q > rec.n_stored:
            raise IndexError(f"a_{Q} not stored for {rec.label}")
        out.append(reduce_an(rec, rmap, Q))
    return out
