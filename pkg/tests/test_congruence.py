import pytest
import sympy

from partcong import congruence, etaforms
from partcong.arith import kronecker
from partcong.newforms import filter_eigenspace
from partcong.qseries import partition_mod


def _eigenspace(all_records, weight, signs):
    recs = all_records.get(weight)
    if not recs:
        pytest.skip(f"weight-{weight} fixtures not available")
    out = filter_eigenspace(recs, *signs)
    if not out:
        pytest.skip(f"no records with signs {signs} at weight {weight}")
    return out


class TestBasics:
    def test_ramanujan_beta(self):
        assert congruence.ramanujan_beta(5) == 4
        assert congruence.ramanujan_beta(7) == 5
        assert congruence.ramanujan_beta(11) == 6
        for ell in (13, 17, 37):
            assert congruence.ramanujan_beta(ell) * 24 % ell == 1

    def test_type1_signs(self):
        # [DERIVED] from the Kronecker symbols directly
        for ell in (13, 17, 19, 23, 29, 31, 37):
            e2, e3 = congruence.type1_signs(ell)
            assert e2 == -kronecker(8, -ell)
            assert e3 == -kronecker(12, -ell)
            assert e2 in (1, -1) and e3 in (1, -1)


class TestCertificates:
    def test_argument_integrality(self):
        cert = congruence.certify_type1(13, 97, 1)
        for n in range(cert.n_class_mod_24, 3000, 24):
            assert (97 * 97 * 13 * n + 1) % 24 == 0
            if cert.admissible(n):
                assert cert.argument(n) == (97 * 97 * 13 * n + 1) // 24

    def test_type1_epsilon(self):
        # eps = alpha * (12/Q) * (-1/Q)^((ell-3)/2)
        cert = congruence.certify_type1(13, 97, 1)
        expect = 1 * kronecker(12, 97) * kronecker(-1, 97)  # (13-3)/2 = 5 odd
        assert cert.epsilon == expect
        assert cert.conditions["kronecker_nQ"] == expect
        assert cert.n_class_mod_24 == (-13) % 24

    def test_ramanujan_kind(self):
        cert = congruence.certify_ramanujan(5)
        assert cert.argument(3) == 19
        assert cert.admissible(0)
        with pytest.raises(ValueError):
            congruence.certify_ramanujan(13)

    def test_type2_conditions(self):
        cert = congruence.certify_type2(5, 13)
        assert cert.n_class_mod_24 == 23
        n = next(n for n in range(23, 5000, 24)
                 if kronecker(-n, 5) == -1 and kronecker(-n, 13) == -1)
        assert cert.admissible(n)
        bad = next(n for n in range(23, 5000, 24) if kronecker(-n, 5) == 1)
        assert not cert.admissible(bad)

    def test_type2_atkin_provenance_validation(self):
        congruence.certify_type2(5, 13, provenance={"mode": "atkin-theorem"})
        with pytest.raises(ValueError):
            congruence.certify_type2(5, 11, provenance={"mode": "atkin-theorem"})
        with pytest.raises(ValueError):
            congruence.certify_type2(11, 9, provenance={"mode": "atkin-theorem"})

    def test_ono_conditions(self):
        cert = congruence.certify_ono(13, 389, "zero")
        assert cert.n_class_mod_24 == (-389) % 24
        with pytest.raises(ValueError):
            congruence.certify_ono(13, 389, "both")
        with pytest.raises(ValueError):
            congruence.certify_ono(13, 397, "zero")  # 397 != -1 mod 13

    def test_json_roundtrip(self, tmp_path):
        cert = congruence.certify_type1(13, 97, -1)
        path = tmp_path / "cert.json"
        congruence.save_certificate(cert, path)
        back = congruence.load_certificate(path)
        assert back == cert
        with pytest.raises(ValueError):
            congruence.certificate_from_json({"schema": 0})


class TestAccidentSearch:
    def test_type1_ell13(self, all_records):
        recs = _eigenspace(all_records, 10, congruence.type1_signs(13))
        hits = congruence.accident_search_type1(13, recs, (5, 500))
        assert hits, "expected at least one type-1 accident for ell=13"
        assert hits[0][0] == 97
        # every hit really is an eigenvalue accident
        rec = recs[0]
        for Q, alpha in hits:
            a_Q = rec.rational_coefficient(Q)
            lhs = kronecker(12, Q) * a_Q % 13
            assert lhs == alpha * pow(Q, (13 - 5) // 2, 13) % 13

    def test_type1_horizon(self, all_records):
        recs = _eigenspace(all_records, 10, congruence.type1_signs(13))
        with pytest.raises(ValueError, match="horizon"):
            congruence.accident_search_type1(13, recs, (5, 10**7))

    def test_type1_empty_records(self):
        with pytest.raises(ValueError):
            congruence.accident_search_type1(13, [], (5, 100))

    def test_type2_ell5_matches_atkin_class(self, all_records):
        recs = _eigenspace(all_records, 22, (-1, -1))
        hits = congruence.accident_search_type2(5, recs, (5, 300))
        expect = [Q for Q in range(5, 301)
                  if sympy.isprime(Q) and Q % 5 == 3 and Q % 6 in (1, 5)]
        assert hits == expect
        assert 13 in hits

    def test_ono_ell13(self, all_records):
        recs = _eigenspace(all_records, 10, congruence.type1_signs(13))
        hits = congruence.accident_search_ono(13, recs, (5, 2100))
        assert hits[:3] == [389, 1091, 2027]
        rec = recs[0]
        for Q in hits:
            assert Q % 13 == 12
            assert rec.rational_coefficient(Q) % 13 == 0


class TestVerifyPartition:
    @pytest.mark.parametrize("ell", [5, 7, 11])
    def test_ramanujan(self, ell):
        res = congruence.verify_partition(congruence.certify_ramanujan(ell),
                                          10**4)
        assert res.ok and res.checked > 800
        assert res.certificate.verification["mode"] == "partition-checked"

    def test_type2_5_13_includes_p331(self):
        cert = congruence.certify_type2(5, 13,
                                        provenance={"mode": "atkin-theorem"})
        res = congruence.verify_partition(cert, 10**5)
        assert res.ok
        args = [cert.argument(n) for n in congruence._admissible_iter(cert, 10**5)]
        assert 331 in args
        assert int(sympy.npartitions(331)) % 5 == 0

    def test_refutes_false_claim(self):
        # a deliberately wrong certificate must be refuted, not accepted
        cert = congruence.CongruenceCertificate(
            kind="type2", ell=5, Q=7,
            conditions={"kronecker_negn_ell": -1, "kronecker_negn_Q": -1},
            n_class_mod_24=23)
        # (7, 5) is NOT an accident pair: 7 = 2 mod 5, not -2
        res = congruence.verify_partition(cert, 10**5)
        assert not res.ok
        assert res.certificate.verification["mode"] == "REFUTED"
        n, arg, residue = res.failures[0]
        assert int(sympy.npartitions(arg)) % 5 == residue != 0

    def test_empty_budget_raises(self):
        cert = congruence.certify_type2(5, 13)
        with pytest.raises(ValueError, match="admissible"):
            congruence.verify_partition(cert, 10)


class TestVerifyEigen:
    def test_f13_eigen_at_accident_prime(self):
        # Q = 97 is the first type-1 accident for ell = 13: the T(97^2)
        # eigenvalue really is alpha * 97^((2k-3)/2) with alpha = +1
        Q, n_checks = 97, 25
        prec = Q * Q * (11 + 24 * (n_checks + 1))
        f = etaforms.make_f_ell(13, prec)
        good = congruence.verify_eigen(f, Q, 1, n_checks=n_checks)
        assert good.ok and not good.vacuous and good.checked == n_checks
        bad = congruence.verify_eigen(f, Q, -1, n_checks=n_checks)
        assert bad.mismatch_at is not None

    def test_non_accident_prime_rejected(self):
        # at Q = 5 (no accident for ell = 13) neither sign matches
        f = etaforms.make_f_ell(13, 11 + 24 * 30000)
        for a in (1, -1):
            rep = congruence.verify_eigen(f, 5, a, n_checks=40)
            assert rep.mismatch_at is not None

    def test_rigorous_needs_precision(self):
        f = etaforms.make_f_ell(13, 11 + 24 * 100)
        with pytest.raises(ValueError, match="precision"):
            congruence.verify_eigen(f, 5, 1, rigorous=True)

    def test_vacuous_flag(self):
        f = etaforms.make_f_ell(5, 19 + 24 * 2000)  # identically zero
        rep = congruence.verify_eigen(f, 7, 1, n_checks=10)
        assert rep.ok and rep.vacuous
