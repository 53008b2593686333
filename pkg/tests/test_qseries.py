import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from partcong import qseries

# [DERIVED] p(0..30), frozen from sympy.npartitions (independent oracle).
PARTITION_SMALL = (
    1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297,
    385, 490, 627, 792, 1002, 1255, 1575, 1958, 2436, 3010, 3718, 4565, 5604,
)
# [DERIVED] spot values, frozen from sympy.npartitions.
PARTITION_SPOT = {
    100: 190569292,
    331: 78801255302666615,
    1000: 24061467864032622473692149727991,
}


def test_frozen_oracle_values_match_sympy():
    assert PARTITION_SMALL == tuple(
        int(sympy.npartitions(n)) for n in range(31))
    for n, v in PARTITION_SPOT.items():
        assert int(sympy.npartitions(n)) == v


class TestPartitionMod:
    @pytest.mark.parametrize("modulus", [5, 13, 9, 121, 2**31 - 1])
    def test_small_values(self, modulus):
        s = qseries.partition_mod(31, modulus)
        for n, v in enumerate(PARTITION_SMALL):
            assert s[n] == v % modulus

    @pytest.mark.parametrize("modulus", [5, 13, 2**31 - 1])
    def test_spot_values(self, modulus):
        s = qseries.partition_mod(1001, modulus)
        for n, v in PARTITION_SPOT.items():
            assert s[n] == v % modulus

    def test_methods_agree(self):
        a = qseries.partition_mod(2000, 13, method="recurrence")
        b = qseries.partition_mod(2000, 13, method="inverse")
        assert a == b

    def test_ramanujan_5(self):
        s = qseries.partition_mod(10**4, 5)
        assert all(s[5 * k + 4] == 0 for k in range(1999))

    def test_bad_method(self):
        with pytest.raises(ValueError):
            qseries.partition_mod(10, 5, method="nope")

    def test_bad_modulus(self):
        with pytest.raises(ValueError):
            qseries.partition_mod(10, 6)


class TestZSeries:
    def test_canonical_residues(self):
        s = qseries.ZSeries(7, np.array([-1, 8, 14]))
        assert [s[i] for i in range(3)] == [6, 1, 0]

    def test_precision_is_enforced(self):
        s = qseries.ZSeries(7, np.arange(5))
        with pytest.raises(IndexError):
            s[5]
        with pytest.raises(IndexError):
            s[-1]

    def test_truncate_cannot_extend(self):
        s = qseries.ZSeries(7, np.arange(5))
        assert s.truncate(3).precision == 3
        with pytest.raises(ValueError):
            s.truncate(6)

    def test_coeffs_immutable(self):
        s = qseries.ZSeries(7, np.arange(5))
        with pytest.raises(ValueError):
            s.coeffs[0] = 3


class TestEtaSparse:
    def test_euler_pentagonal(self):
        # [TRIVIAL] direct expansion of prod (1 - q^n)
        dense = qseries.eta_sparse(60, 999983).densify(60)
        x = sympy.symbols("x")
        prod = sympy.prod([1 - x**n for n in range(1, 60)])
        expect = sympy.Poly(prod, x).all_coeffs()[::-1]
        for n in range(60):
            assert dense[n] == expect[n] % 999983

    def test_inverse_is_partition_series(self):
        eta = qseries.eta_sparse(200, 13)
        inv = qseries.series_inverse(eta, precision=200)
        assert inv == qseries.partition_mod(200, 13)


class TestSeriesMul:
    @given(st.integers(0, 10**6), st.lists(st.integers(-50, 50),
                                           min_size=1, max_size=40),
           st.lists(st.integers(-50, 50), min_size=1, max_size=40))
    @settings(max_examples=100, deadline=None)
    def test_paths_agree(self, seed, a, b):
        mod = [5, 13, 9, 121][seed % 4]
        sa = qseries.ZSeries(mod, np.array(a))
        sb = qseries.ZSeries(mod, np.array(b))
        school = qseries.series_mul(sa, sb, path="schoolbook")
        fast = qseries.series_mul(sa, sb, path="fast")
        auto = qseries.series_mul(sa, sb, path="auto")
        assert school == fast == auto

    def test_against_sympy(self):
        rng = np.random.default_rng(7)
        a = rng.integers(0, 13, 30)
        b = rng.integers(0, 13, 30)
        x = sympy.symbols("x")
        pa = sum(int(c) * x**i for i, c in enumerate(a))
        pb = sum(int(c) * x**i for i, c in enumerate(b))
        expect = sympy.Poly(pa * pb, x)
        prod = qseries.series_mul(qseries.ZSeries(13, a),
                                  qseries.ZSeries(13, b))
        for n in range(30):
            assert prod[n] == int(expect.coeff_monomial(x**n)) % 13

    def test_modulus_mismatch(self):
        with pytest.raises(ValueError):
            qseries.series_mul(qseries.ZSeries(5, np.arange(3)),
                               qseries.ZSeries(7, np.arange(3)))


class TestSeriesInverse:
    @given(st.lists(st.integers(0, 12), min_size=1, max_size=50))
    @settings(max_examples=100, deadline=None)
    def test_mul_roundtrip(self, coeffs):
        coeffs[0] = 1
        s = qseries.ZSeries(13, np.array(coeffs))
        inv = qseries.series_inverse(s)
        prod = qseries.series_mul(s, inv)
        assert prod[0] == 1
        assert all(prod[n] == 0 for n in range(1, prod.precision))


class TestProgressions:
    def test_roundtrip(self):
        s = qseries.partition_mod(120, 11)
        parts = [qseries.extract_progression(s, a, 5) for a in range(5)]
        back = qseries.interleave_progressions(parts, 5)
        assert back == s

    def test_extract_values(self):
        s = qseries.partition_mod(50, 999983)
        p4 = qseries.extract_progression(s, 4, 5)
        for k in range(p4.precision):
            assert p4[k] == PARTITION_SMALL[5 * k + 4] % 999983 \
                if 5 * k + 4 < 31 else True


class TestSerialization:
    @pytest.mark.parametrize("modulus", [5, 2**31 - 1, 2**61 - 1])
    def test_roundtrip(self, tmp_path, modulus):
        s = qseries.partition_mod(500, modulus)
        path = tmp_path / "series.bin"
        qseries.dump_zseries(s, path)
        assert qseries.load_zseries(path) == s

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "bad.bin"
        path.write_bytes(b"XXXX" + b"\0" * 40)
        with pytest.raises(ValueError):
            qseries.load_zseries(path)

    def test_truncated(self, tmp_path):
        s = qseries.partition_mod(100, 13)
        path = tmp_path / "series.bin"
        qseries.dump_zseries(s, path)
        data = path.read_bytes()
        path.write_bytes(data[:-4])
        with pytest.raises(ValueError):
            qseries.load_zseries(path)
