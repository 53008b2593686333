"""Acceptance gate: the package's headline numerical claims, end to end.

Every test below reads only committed fixtures (fixtures/newforms/) and the
library itself -- no network.  Timing budgets are asserted with wall-clock
measurements; they are generous enough for a single-core CI runner but tight
enough to catch an accidental fallback onto a quadratic code path.

The final test (``test_11_...``) is an optional slow tier: it needs ~1 GB and
tens of minutes, is marked ``slow`` and excluded from the default pytest run
(see pyproject.toml addopts).  Run it explicitly with ``pytest -m slow``.
"""

import os
import time

import numpy as np
import pytest

from partcong.arith import density_scan, is_prime, kronecker, lift_exponent_2, \
    multiplicative_order, prime_table
from partcong.congruence import (
    accident_search_type1,
    certify_type1,
    certify_type2,
    type1_signs,
    verify_partition,
)
from partcong.etaforms import (
    hecke_TQ2,
    hecke_TQ_integral,
    make_f_ell,
    make_g_ell,
    shimura_lift,
)
from partcong.lmfdb_client import FixtureSource
from partcong.newforms import (
    exceptional_test,
    filter_eigenspace,
    pairwise_congruence_check,
    primes_above,
    count_distinct_reductions,
    sturm_bound,
)
from partcong.qseries import partition_mod

FIXDIR = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures", "newforms")


def space(weight, signs=None):
    records = [e.record for e in FixtureSource(FIXDIR).newspace(weight)]
    if signs is not None:
        records = filter_eigenspace(records, *signs)
    return records


class Stopwatch:
    def __enter__(self):
        self.t0 = time.monotonic()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.monotonic() - self.t0

    def check(self, budget):
        assert self.elapsed < budget, (
            f"runtime budget exceeded: {self.elapsed:.1f}s >= {budget}s")


# -- 1. Ramanujan congruences to n = 10^5, three moduli, zero tolerance ----


def test_01_ramanujan_congruences_to_1e5():
    n_max = 100_000
    with Stopwatch() as sw:
        for ell, beta in ((5, 4), (7, 5), (11, 6)):
            table = partition_mod(ell * n_max + beta + 1, ell)
            args = ell * np.arange(n_max + 1, dtype=np.int64) + beta
            bad = np.nonzero(table.coeffs[args])[0]
            assert bad.size == 0, f"p({ell}*{bad[0]}+{beta}) != 0 mod {ell}"
    sw.check(5)


# -- 2. f_ell vanishing dichotomy on 500 admissible coefficients -----------


def test_02_f_ell_dichotomy():
    with Stopwatch() as sw:
        for ell in (5, 7, 11, 13, 17, 19, 23):
            r = (-ell) % 24
            f = make_f_ell(ell, r + 24 * 500)
            assert len(f.coeffs) >= 500
            if ell in (5, 7, 11):
                assert f.is_zero(), f"f_{ell} should vanish mod {ell}"
            else:
                assert not f.is_zero(), f"f_{ell} should be nonzero mod {ell}"
    sw.check(5)


# -- 3. Shimura-Hecke commutation, exact mod ell, >= 15 coefficients -------


def test_03_shimura_hecke_commutation():
    pairs = ((1, 5), (1, 7), (11, 5), (1, 11))
    # worst case below is t=11, Q=11: T(Q^2) divides precision by 121 and
    # Sh_11 needs 11 * 15^2 of what is left
    prec = 121 * 11 * 15 * 15 + 24
    cases = ((make_f_ell, 13), (make_f_ell, 17), (make_g_ell, 5))
    saw_nonzero = False
    with Stopwatch() as sw:
        for maker, ell in cases:
            f = maker(ell, prec)
            for t, Q in pairs:
                if Q == ell:
                    continue
                lhs = shimura_lift(hecke_TQ2(f, Q), t)
                rhs = hecke_TQ_integral(shimura_lift(f, t), Q)
                m = min(lhs.precision, rhs.precision)
                assert m >= 15
                assert (lhs.coeffs[: m + 1] == rhs.coeffs[: m + 1]).all(), (
                    f"commutation fails for ell={ell}, t={t}, Q={Q}")
                saw_nonzero = saw_nonzero or lhs.coeffs[: m + 1].any()
    # only t = 11 meets the support class of f_13, the rest lift to zero;
    # make sure the nonzero case really exercised the identity
    assert saw_nonzero
    sw.check(60)


# -- 4. ell = 37 accident reproduction: exactly Q = 6599, 7541, 9547 -------


def test_04_ell37_accidents():
    with Stopwatch() as sw:
        records = space(34, type1_signs(37))
        assert records, "weight-34 eigenspace for ell=37 missing from fixtures"
        hits = accident_search_type1(37, records, (5, 10_000))
    sw.check(30)
    assert [Q for Q, _ in hits] == [6599, 7541, 9547]
    eps = {Q: certify_type1(37, Q, alpha).epsilon for Q, alpha in hits}
    assert eps[6599] == -1
    assert eps[7541] == +1


# -- 5. Newform congruence checks across 13 <= ell <= 79 -------------------


def test_05a_no_congruent_pairs_in_type1_eigenspaces():
    # Scaled-down version of the full ell < 150 claim: public eigenvalue
    # data at level 6 runs out beyond weight 76, so the scan stops at
    # ell = 79.  That data-coverage limitation is the only reason for the
    # bound; every eigenspace that is available is checked to its full
    # Sturm bound.
    primes = [ell for ell in range(13, 80) if is_prime(ell)]
    with Stopwatch() as sw:
        for ell in primes:
            weight = ell - 3
            records = space(weight, type1_signs(ell))
            assert records, f"no fixtures for weight {weight}"
            pairs = pairwise_congruence_check(records, ell, sturm_bound(weight))
            congruent = [p for p in pairs if p.status == "congruent"]
            assert not congruent, (
                f"ell={ell}: congruent pair(s) "
                f"{[(p.label_a, p.label_b) for p in congruent]}")
    sw.check(600)


def test_05b_ell71_weight68_two_reduction_orbit():
    opposite = tuple(-s for s in type1_signs(71))
    with Stopwatch() as sw:
        records = space(68, opposite)
        orbits = [rec for rec in records if rec.degree == 3]
        assert orbits, "expected a 3-form orbit in the (+,+) weight-68 space"
        rec = orbits[0]
        maps = primes_above(rec.field_poly, 71)
        assert any(m.multiplicity > 1 for m in maps), (
            "coefficient field should ramify at 71")
        distinct = count_distinct_reductions([rec], 71, sturm_bound(68))
        assert distinct == 2
    sw.check(600)


# -- 6. Exceptional-image rejections ----------------------------------------


def test_06_exceptional_image_checks():
    rec4 = space(4)[0]
    assert rec4.rational_coefficient(5) == 6
    assert exceptional_test(rec4, 7, 5) == "not-exceptional"

    rec10 = space(10)[0]
    assert rec10.rational_coefficient(5) == 2694
    assert exceptional_test(rec10, 13, 5) == "not-exceptional"

    a19s = sorted(int(rec.rational_coefficient(19)) for rec in space(16))
    assert a19s == sorted((2163188180, 4934015444, -5895116260))
    for a19 in a19s:
        assert a19 % 19 != 0


# -- 7. Type II partition verification, budget 10^6 -------------------------


def test_07_type2_partition_verification():
    cases = ((5, 13), (7, 5), (13, 11))
    with Stopwatch() as sw:
        for ell, Q in cases:
            cert = certify_type2(ell, Q, provenance={"mode": "atkin-theorem"})
            result = verify_partition(cert, 10**6)
            assert result.failures == ()
            assert result.checked > 0
            assert result.ok
    sw.check(30)
    # the classical spot values land inside the checked ranges:
    # (ell=5, Q=13): n=47 gives argument (169*47+1)/24 = 331
    cert5 = certify_type2(5, 13)
    assert cert5.admissible(47) and cert5.argument(47) == 331
    assert int(partition_mod(332, 5)[331]) == 0
    # (ell=13, Q=11): n=47 gives argument (121*47+1)/24 = 237
    cert13 = certify_type2(13, 11)
    assert cert13.admissible(47) and cert13.argument(47) == 237
    assert int(partition_mod(238, 13)[237]) == 0


# -- 8. Type I end-to-end for ell = 13 --------------------------------------


def test_08_type1_end_to_end_ell13():
    with Stopwatch() as sw:
        records = space(10, type1_signs(13))
        hits = accident_search_type1(13, records, (5, 500))
        assert hits, "no type I accident for ell=13 below 500"
        Q0, alpha = hits[0]
        assert Q0 <= 500
        cert = certify_type1(13, Q0, alpha)
        result = verify_partition(cert, 10**7)
        assert result.failures == ()
        assert result.checked > 0
        assert result.ok
    sw.check(300)


# -- 9. Density claims -------------------------------------------------------


def test_09_density_claims():
    with Stopwatch() as sw:
        either = density_scan(10**5, "2a-or-3a")
        assert 0.823 <= either.fraction <= 0.833
        two_a = density_scan(10**6, "2a")
        assert abs(float(two_a.fraction) - 17 / 24) < 0.01
    sw.check(60)


# -- 10. Exponent lifting, 200 randomized instances --------------------------


def test_10_exponent_lifting_randomized():
    import random

    rng = random.Random(0x2A17)
    primes = [ell for ell in prime_table(3000).primes if ell >= 5]
    done = 0
    while done < 200:
        ell = rng.choice(primes)
        # need a base exponent with 2^a = -2 (mod ell); scan one period
        order = multiplicative_order(2, ell)
        a0 = next(
            (a for a in range(1, order + 1) if pow(2, a, ell) == ell - 2),
            None)
        if a0 is None:
            continue
        a = a0 + order * rng.randrange(3)
        m = rng.randint(1, 4)
        lifted = lift_exponent_2(a, ell, m)
        assert pow(2, lifted, ell**m) == ell**m - 2
        assert lifted % 2 == a % 2
        done += 1


# -- 11. Optional slow tier: ell = 37, Q = 6599 spot check -------------------


@pytest.mark.slow
def test_11_ell37_q6599_partition_spot_check():
    """Smallest admissible case of the ell=37, Q=6599 congruence.

    The partition argument is ~7.4e8.  The compiled recurrence kernel holds
    the mod-37 table as uint8 (~0.75 GB) and needs a few hours on one core;
    the transform-based inverse path cannot reach this size (its NTT primes
    support length 2^27 transforms only), so the table route is the one that
    terminates.  Excluded from the default run; invoke with ``pytest -m slow``.
    """
    ell, Q = 37, 6599
    cert = certify_type1(ell, Q, alpha=1)
    assert cert.epsilon == -1
    n = cert.n_class_mod_24
    while not (cert.admissible(n) and kronecker(n, Q) == cert.epsilon):
        n += 24
    arg = cert.argument(n)
    assert 7.3e8 < arg < 7.5e8
    table = partition_mod(arg + 1, ell)
    assert int(table[arg]) == 0
