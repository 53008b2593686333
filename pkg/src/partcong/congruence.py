"""Discovery and certification of partition congruences: scan newform
eigenvalue data for accidental primes Q, turn accidents into explicit
certificates with sign/class conditions, and verify certificates against
partition tables."""

import json
import math
from dataclasses import dataclass, field, replace

from .arith import is_prime, kronecker
from .etaforms import hecke_TQ2
from .newforms import primes_above, reduce_an
from .qseries import partition_mod

CERT_SCHEMA = 1


def ramanujan_beta(ell):
    """beta_ell = 1/24 mod ell; the class of Eq.-style p(ell*n + beta)."""
    return pow(24, -1, ell)


def type1_signs(ell):
    """Atkin-Lehner signs of the weight-(ell-3) eigenspace relevant to the
    quadratic-twist mechanism: (-(8/-ell), -(12/-ell))."""
    return (-kronecker(8, -ell), -kronecker(12, -ell))


@dataclass(frozen=True)
class CongruenceCertificate:
    """A claimed partition congruence.

    kind: "ramanujan" | "type1" | "type2" | "ono"
    conditions: kind-specific extra conditions on n, as a dict:
        type1: {"kronecker_nQ": eps_Q}
        type2: {"kronecker_negn_ell": -1, "kronecker_negn_Q": -1}
        ono:   {"family": "zero"|"minus", "Q_ndivides_n": True}
    n_class_mod_24: residue of n mod 24 making the argument integral
        (None for ramanujan, where n is unconstrained)
    """

    kind: str
    ell: int
    Q: int = None
    epsilon: int = None
    conditions: dict = field(default_factory=dict)
    n_class_mod_24: int = None
    provenance: dict = field(default_factory=dict)
    verification: dict = field(
        default_factory=lambda: {"mode": "unverified", "bound": 0, "checked": 0})

    def argument(self, n):
        """Partition argument for admissible n."""
        if self.kind == "ramanujan":
            return self.ell * n + ramanujan_beta(self.ell)
        if self.kind == "type1":
            return (self.Q ** 2 * self.ell * n + 1) // 24
        if self.kind == "type2":
            return (self.Q ** 2 * n + 1) // 24
        if self.kind == "ono":
            return (self.Q ** 3 * n + 1) // 24
        raise ValueError(f"unknown kind {self.kind}")

    def admissible(self, n):
        """Does n satisfy all stored conditions (class + kind-specific)?"""
        if self.kind == "ramanujan":
            return n >= 0
        if n < 0 or n % 24 != self.n_class_mod_24:
            return False
        if self.kind == "type1":
            return kronecker(n, self.Q) == self.conditions["kronecker_nQ"]
        if self.kind == "type2":
            return (kronecker(-n, self.ell) == -1
                    and kronecker(-n, self.Q) == -1)
        if self.kind == "ono":
            if n % self.Q == 0:
                return False
            if self.conditions["family"] == "zero":
                return n % self.ell == 0
            return kronecker(n, self.ell) == -1
        raise ValueError(f"unknown kind {self.kind}")


def certificate_to_json(cert):
    return {
        "schema": CERT_SCHEMA,
        "kind": cert.kind,
        "ell": cert.ell,
        "Q": cert.Q,
        "epsilon": cert.epsilon,
        "conditions": cert.conditions,
        "n_class_mod_24": cert.n_class_mod_24,
        "provenance": cert.provenance,
        "verification": cert.verification,
    }


def certificate_from_json(doc):
    if doc.get("schema") != CERT_SCHEMA:
        raise ValueError(f"unsupported certificate schema {doc.get('schema')!r}")
    return CongruenceCertificate(
        kind=doc["kind"], ell=doc["ell"], Q=doc.get("Q"),
        epsilon=doc.get("epsilon"), conditions=doc.get("conditions") or {},
        n_class_mod_24=doc.get("n_class_mod_24"),
        provenance=doc.get("provenance") or {},
        verification=doc.get("verification")
        or {"mode": "unverified", "bound": 0, "checked": 0},
    )


def save_certificate(cert, path):
    with open(path, "w") as fh:
        json.dump(certificate_to_json(cert), fh, indent=1)


def load_certificate(path):
    with open(path) as fh:
        return certificate_from_json(json.load(fh))


# ---------------------------------------------------------------------------
# accident searches


def _prepare_maps(records, ell):
    return [(rec, primes_above(rec.field_poly, ell)) for rec in records]


def _horizon_check(records, q_max):
    horizon = min(rec.n_stored for rec in records)
    if q_max > horizon:
        raise ValueError(
            f"eigenvalue horizon exceeded: need a_Q to {q_max}, have {horizon}")


def _scan_primes(q_range, skip):
    lo, hi = q_range
    for Q in range(max(lo, 5), hi + 1):
        if Q % 2 and Q % 3 and Q != skip and is_prime(Q):
            yield Q


def _matches_scalar(rec, maps, Q, scalar, ell, twist=1):
    """Is twist * red(a_Q) = scalar (in F_ell) under EVERY residue map?

    All primes above ell must agree: the congruence mechanism factors
    through the full (Galois-stable) eigenspace, so every conjugate
    eigensystem has to reduce to the same scalar."""
    for rmap in maps:
        F = rmap.codomain
        red = reduce_an(rec, rmap, Q)
        lhs = F.mul(F.from_int(twist), red) if twist != 1 else red
        if lhs != F.from_int(scalar):
            return False
    return True


def accident_search_type1(ell, records, q_range, class_constraint=None):
    """Primes Q (with an accompanying sign alpha) such that, for a single
    alpha in {+1,-1}, every record in the weight-(ell-3) eigenspace has
    some residue map with (12/Q) * red(a_Q) = alpha * Q^((ell-5)/2) mod ell.

    class_constraint optionally restricts to Q = class_constraint (mod ell).
    Returns ascending [(Q, alpha)]."""
    if not records:
        raise ValueError("empty eigenspace: no records supplied")
    _horizon_check(records, q_range[1])
    prepared = _prepare_maps(records, ell)
    hits = []
    for Q in _scan_primes(q_range, ell):
        if class_constraint is not None and Q % ell != class_constraint % ell:
            continue
        t = pow(Q, (ell - 5) // 2, ell)
        k12 = kronecker(12, Q)
        for alpha in (1, -1):
            scalar = alpha * t % ell
            if all(_matches_scalar(rec, maps, Q, scalar, ell, twist=k12)
                   for rec, maps in prepared):
                hits.append((Q, alpha))
                break
    return hits


def certify_type1(ell, Q, alpha, provenance=None):
    """Certificate p((Q^2 ell n + 1)/24) = 0 mod ell for n = -ell (mod 24)
    with (n/Q) = eps_Q, where eps_Q = alpha * (12/Q) * (-1/Q)^((ell-3)/2)."""
    eps = alpha * kronecker(12, Q)
    if (ell - 3) // 2 % 2 == 1:
        eps *= kronecker(-1, Q)
    return CongruenceCertificate(
        kind="type1", ell=ell, Q=Q, epsilon=eps,
        conditions={"kronecker_nQ": eps},
        n_class_mod_24=(-ell) % 24,
        provenance=provenance or {
            "mode": "accident-search",
            "eigenspace": {"weight": ell - 3, "signs": list(type1_signs(ell))},
            "alpha": alpha,
        },
    )


def certify_ramanujan(ell):
    """The classical congruence p(ell*n + beta_ell) = 0 mod ell."""
    if ell not in (5, 7, 11):
        raise ValueError("classical congruences exist only for 5, 7, 11")
    return CongruenceCertificate(
        kind="ramanujan", ell=ell,
        provenance={"mode": "classical", "beta": ramanujan_beta(ell)},
    )


def accident_search_type2(ell, records, q_range):
    """Primes Q with red(a_Q) = -Q^((ell^2-5)/2) mod ell for every record
    in the weight-(ell^2-3) eigenspace with signs (-1, -1)."""
    if not records:
        raise ValueError("empty eigenspace: no records supplied")
    _horizon_check(records, q_range[1])
    prepared = _prepare_maps(records, ell)
    hits = []
    exponent = (ell * ell - 5) // 2
    for Q in _scan_primes(q_range, ell):
        scalar = -pow(Q, exponent, ell) % ell
        if all(_matches_scalar(rec, maps, Q, scalar, ell)
               for rec, maps in prepared):
            hits.append(Q)
    return hits


def certify_type2(ell, Q, provenance=None):
    """Certificate p((Q^2 n + 1)/24) = 0 mod ell for n = 23 (mod 24) with
    (-n/ell) = -1 and (-n/Q) = -1.

    With provenance mode "atkin-theorem" (ell in {5,7,13}, Q = -2 mod ell)
    no accident is needed."""
    if provenance and provenance.get("mode") == "atkin-theorem":
        if ell not in (5, 7, 13) or Q % ell != (-2) % ell:
            raise ValueError(
                "atkin-theorem provenance needs ell in {5,7,13} and Q = -2 (mod ell)")
    return CongruenceCertificate(
        kind="type2", ell=ell, Q=Q,
        conditions={"kronecker_negn_ell": -1, "kronecker_negn_Q": -1},
        n_class_mod_24=23,
        provenance=provenance or {
            "mode": "accident-search",
            "eigenspace": {"weight": ell * ell - 3, "signs": [-1, -1]},
        },
    )


def accident_search_ono(ell, records, q_range):
    """Primes Q = -1 (mod ell) annihilated by every record: red(a_Q) = 0
    under some residue map of each record in the target eigenspace."""
    if not records:
        raise ValueError("empty eigenspace: no records supplied")
    _horizon_check(records, q_range[1])
    prepared = _prepare_maps(records, ell)
    hits = []
    for Q in _scan_primes(q_range, ell):
        if Q % ell != ell - 1:
            continue
        if all(_matches_scalar(rec, maps, Q, 0, ell)
               for rec, maps in prepared):
            hits.append(Q)
    return hits


def certify_ono(ell, Q, family, provenance=None):
    """Certificate p((Q^3 n + 1)/24) = 0 mod ell for n = -Q (mod 24) with
    Q not dividing n, restricted to the zero family (ell | n) or the minus
    family ((n/ell) = -1)."""
    if family not in ("zero", "minus"):
        raise ValueError("family must be 'zero' or 'minus'")
    if Q % ell != ell - 1:
        raise ValueError("Ono-type accidents require Q = -1 (mod ell)")
    weight = (ell - 3) if family == "zero" else (ell * ell - 3)
    signs = list(type1_signs(ell)) if family == "zero" else [-1, -1]
    return CongruenceCertificate(
        kind="ono", ell=ell, Q=Q,
        conditions={"family": family, "Q_ndivides_n": True},
        n_class_mod_24=(-Q) % 24,
        provenance=provenance or {
            "mode": "accident-search",
            "eigenspace": {"weight": weight, "signs": signs},
        },
    )


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class VerificationResult:
    certificate: CongruenceCertificate
    checked: int
    failures: tuple  # tuple of (n, argument, p mod ell) counterexamples

    @property
    def ok(self):
        return self.checked > 0 and not self.failures


def verify_partition(cert, n_budget, method="auto", max_failures=5):
    """Check p(argument) = 0 mod ell for every admissible n with argument
    below n_budget; returns a VerificationResult whose certificate carries
    updated verification metadata.

    Reports an error (ValueError) if the budget admits no admissible n."""
    ell = cert.ell
    table = partition_mod(n_budget, ell, method=method)
    checked = 0
    failures = []
    for n in _admissible_iter(cert, n_budget):
        arg = cert.argument(n)
        if int(table[arg]) != 0:
            failures.append((n, arg, int(table[arg])))
            if len(failures) >= max_failures:
                break
        checked += 1
    if checked == 0:
        raise ValueError(
            f"budget {n_budget} admits no admissible n for this certificate")
    mode = "partition-checked" if not failures else "REFUTED"
    new_cert = replace(
        cert, verification={"mode": mode, "bound": n_budget, "checked": checked})
    return VerificationResult(new_cert, checked, tuple(failures))


def _admissible_iter(cert, n_budget):
    """Admissible n with cert.argument(n) < n_budget, ascending."""
    if cert.kind == "ramanujan":
        beta = ramanujan_beta(cert.ell)
        n = 0
        while cert.ell * n + beta < n_budget:
            yield n
            n += 1
        return
    if cert.kind == "type1":
        step = cert.Q ** 2 * cert.ell
    elif cert.kind == "type2":
        step = cert.Q ** 2
    else:
        step = cert.Q ** 3
    n = cert.n_class_mod_24
    while (step * n + 1) // 24 < n_budget:
        if cert.admissible(n):
            yield n
        n += 24


@dataclass(frozen=True)
class EigenReport:
    Q: int
    alpha: int
    checked: int
    vacuous: bool
    mismatch_at: int = None  # admissible index n of first mismatch, if any

    @property
    def ok(self):
        return self.mismatch_at is None


def verify_eigen(f, Q, alpha, n_checks=20, rigorous=False):
    """Check the eigen-hypothesis f|T(Q^2) = alpha * Q^((2k-3)/2) * f mod ell
    on the first n_checks admissible coefficients (heuristic), or on every
    coefficient up to the half-integral Sturm horizon when rigorous=True.

    The rigorous horizon uses the index-1152 bound for the level-576
    realization of these expansions: n <= 24 * ceil(weight2/2 * 1152 / 12),
    which demands f.precision >= Q^2 * that; expect this to be out of reach
    for large Q."""
    scalar = alpha * pow(Q, (f.weight2 - 3) // 2, f.modulus) % f.modulus
    if rigorous:
        horizon = 24 * ((f.weight2 * 1152 // 2 // 12) + 1)
        if f.precision < Q * Q * horizon:
            raise ValueError(
                f"rigorous check needs precision {Q * Q * horizon}, "
                f"have {f.precision}")
    Tf = hecke_TQ2(f, Q)
    lhs = Tf.coeffs
    rhs = (f.coeffs[: len(lhs)].astype("int64") * scalar) % f.modulus
    indices = f.indices()[: len(lhs)]
    if rigorous:
        limit = len(lhs)
    else:
        limit = min(n_checks, len(lhs))
    checked = 0
    vacuous = True
    for j in range(limit):
        if int(lhs[j]) != int(rhs[j]):
            return EigenReport(Q, alpha, checked, vacuous, int(indices[j]))
        if int(f.coeffs[j]) != 0:
            vacuous = False
        checked += 1
    return EigenReport(Q, alpha, checked, vacuous)
