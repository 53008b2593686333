import io

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from partcong import etaforms
from partcong.arith import kronecker
from partcong.qseries import partition_mod


class TestEtaFormBasics:
    def test_validation(self):
        with pytest.raises(ValueError):
            etaforms.EtaForm(6, 11, 11, np.arange(4))  # modulus not prime power
        with pytest.raises(ValueError):
            etaforms.EtaForm(13, 10, 11, np.arange(4))  # even weight2
        with pytest.raises(ValueError):
            etaforms.EtaForm(13, 11, 12, np.arange(4))  # gcd(r, 24) != 1
        with pytest.raises(ValueError):
            etaforms.EtaForm(13, 11, 13, np.arange(4))  # r != 2k mod 4

    def test_support_and_precision(self):
        f = etaforms.EtaForm(13, 11, 11, np.array([1, 2, 3]))
        assert f.precision == 11 + 48
        assert f.a(11) == 1 and f.a(35) == 2 and f.a(59) == 3
        assert f.a(12) == 0 and f.a(58) == 0  # off-support
        with pytest.raises(IndexError):
            f.a(60)

    def test_scale_add_truncate(self):
        f = etaforms.EtaForm(13, 11, 11, np.array([1, 2, 3]))
        g = f.scale(5)
        assert [g.a(n) for n in (11, 35, 59)] == [5, 10, 15 % 13]
        h = f.add(f.scale(12))  # f - f
        assert h.is_zero()
        t = f.truncate(35)
        assert t.precision == 35 and t.a(35) == 2

    def test_text_roundtrip(self):
        f = etaforms.make_f_ell(13, 11 + 24 * 20)
        buf = io.StringIO()
        f.dump_text(buf)
        buf.seek(0)
        g = etaforms.load_etaform_text(buf)
        assert (g.modulus, g.weight2, g.r) == (f.modulus, f.weight2, f.r)
        assert np.array_equal(g.coeffs, f.coeffs)


class TestMakeForms:
    def test_f_ell_values(self):
        # a(n) = p((13n+1)/24) mod 13 on n = 11 (mod 24)
        f = etaforms.make_f_ell(13, 11 + 24 * 50)
        for n in f.indices():
            arg = (13 * int(n) + 1) // 24
            assert f.a(int(n)) == int(sympy.npartitions(arg)) % 13

    @pytest.mark.parametrize("ell", [5, 7, 11])
    def test_f_ell_vanishes_ramanujan(self, ell):
        f = etaforms.make_f_ell(ell, 2000)
        assert f.is_zero()

    @pytest.mark.parametrize("ell", [13, 17, 19, 23])
    def test_f_ell_nonzero(self, ell):
        f = etaforms.make_f_ell(ell, 2000)
        assert not f.is_zero()

    def test_g_ell_values(self):
        g = etaforms.make_g_ell(5, 23 + 24 * 50)
        table = partition_mod(60, 5)
        for n in g.indices():
            n = int(n)
            expect = table[(n + 1) // 24] if kronecker(-n, 5) == -1 else 0
            assert g.a(n) == expect

    def test_rejects_bad_ell(self):
        with pytest.raises(ValueError):
            etaforms.make_f_ell(9, 1000)
        with pytest.raises(ValueError):
            etaforms.make_f_ell(3, 1000)


class TestHeckeTQ2:
    def test_definition_direct(self):
        # compare against a literal transcription of the three-term formula
        f = etaforms.make_f_ell(13, 11 + 24 * 3000)
        Q = 7
        g = etaforms.hecke_TQ2(f, Q)
        M, w2 = 13, 11
        mid = pow(Q, (w2 - 3) // 2, M) * kronecker(-1, Q)  # (w2-1)/2 = 5 odd
        third = pow(Q, w2 - 2, M)
        for n in g.indices():
            n = int(n)
            expect = f.a(Q * Q * n) + mid * kronecker(12 * n, Q) * f.a(n)
            if n % (Q * Q) == 0:
                expect += third * f.a(n // (Q * Q))
            assert g.a(n) == expect % M

    def test_precision_contract(self):
        f = etaforms.make_f_ell(13, 11 + 24 * 3000)
        g = etaforms.hecke_TQ2(f, 5)
        assert g.precision == max(
            m for m in range(f.precision // 25 - 23, f.precision // 25 + 1)
            if m % 24 == 11)
        with pytest.raises(ValueError):
            etaforms.hecke_TQ2(etaforms.make_f_ell(13, 100), 11)

    def test_eigenform_property_f13(self):
        # f_13 spans a one-dimensional space, so T(Q^2) acts by a scalar
        f = etaforms.make_f_ell(13, 11 + 24 * 6000)
        for Q in (5, 7, 11):
            g = etaforms.hecke_TQ2(f, Q)
            n0 = next(int(n) for n in g.indices() if f.a(int(n)) % 13 != 0)
            lam = g.a(n0) * pow(f.a(n0), -1, 13) % 13
            for n in g.indices():
                assert g.a(int(n)) == lam * f.a(int(n)) % 13


class TestShimuraLift:
    def test_t_validation(self):
        f = etaforms.make_f_ell(13, 11 + 24 * 100)
        with pytest.raises(ValueError):
            etaforms.shimura_lift(f, 12)  # not coprime to 6
        with pytest.raises(ValueError):
            etaforms.shimura_lift(f, 25)  # not squarefree

    def test_wrong_class_lifts_to_zero(self):
        # t must be = r (mod 24) for a nonzero lift
        f = etaforms.make_f_ell(13, 11 + 24 * 2000)
        assert etaforms.shimura_lift(f, 1).is_zero()
        assert not etaforms.shimura_lift(f, 11).is_zero()

    def test_multiplicativity(self):
        # the lift of an eigenform has multiplicative coefficients after
        # normalization; check A(1)*A(mn) = A(m)*A(n) for coprime m, n
        f = etaforms.make_f_ell(13, 11 + 24 * 40000)
        F = etaforms.shimura_lift(f, 11)
        a1 = F.a(1)
        assert a1 % 13 != 0
        for m, n in ((2, 3), (2, 5), (3, 5), (4, 5), (2, 7), (5, 7)):
            if m * n <= F.precision:
                assert a1 * F.a(m * n) % 13 == F.a(m) * F.a(n) % 13


class TestCommutation:
    def test_lift_commutes_with_hecke(self):
        # Sh_t(f | T(Q^2)) = (Sh_t f) | T(Q) coefficientwise
        f = etaforms.make_f_ell(13, 11 + 24 * 60000)
        for Q in (5, 7):
            lhs = etaforms.shimura_lift(etaforms.hecke_TQ2(f, Q), 11)
            rhs = etaforms.hecke_TQ_integral(etaforms.shimura_lift(f, 11), Q)
            n_cmp = min(lhs.precision, rhs.precision)
            assert n_cmp >= 15
            assert all(lhs.a(n) == rhs.a(n) for n in range(1, n_cmp + 1))


class TestIntegralForm:
    def test_hecke_TQ_definition(self):
        F = etaforms.IntegralForm(13, 12, np.arange(100))
        G = etaforms.hecke_TQ_integral(F, 5)
        assert G.precision == 19
        unit = pow(5, 11, 13)
        for n in range(1, 20):
            expect = F.a(5 * n) + (unit * F.a(n // 5) if n % 5 == 0 else 0)
            assert G.a(n) == expect % 13

    def test_twist(self):
        F = etaforms.IntegralForm(13, 12, np.ones(50))
        T = etaforms.twist_12(F)
        for n in range(1, 50):
            assert T.a(n) == kronecker(12, n) % 13


@given(st.integers(0, 10**6))
@settings(max_examples=50, deadline=None)
def test_pow_mod_matches_builtin(seed):
    import random

    rng = random.Random(seed)
    p = rng.choice([5, 13, 31])
    e = rng.randint(1, 3)
    modulus = p**e
    base = rng.randint(0, modulus - 1)
    exp = rng.randint(0, 10**9)
    assert etaforms._pow_mod(base, exp, modulus) == pow(base, exp, modulus)
