import pytest

from gl2mod.serialize import emit_json
from gl2mod.verify import (BUNDLES, LEMMA_IDS, VerificationReport, char_ell_corpus,
                           char_p_corpus, ps_factor_exponents, cusp_factor_exponents, verify_lemma)


def test_report_status_tracks_assertions():
    r = VerificationReport("x", {})
    assert r.check("a", 1, 1) and r.passed
    assert not r.check("b", [1], [2])
    assert r.status == "fail" and len(r.failures()) == 1


def test_every_id_has_a_bundle():
    assert set(LEMMA_IDS) == set(BUNDLES)


@pytest.mark.parametrize("lemma_id,params", [
    ("1.1", {"q": 4}), ("1.1", {"q": 3, "n": 3}), ("1.3", {"q": 4}),
    ("2.ps", {"q": 5, "ell": 3}), ("3.dl", {"q": 5, "ell": 2}), ("3.2a", {"q": 5}),
    ("3.2b", {"q": 5, "ell": 3}), ("4.tables", {"p": 5}), ("4.1", {"p": 5}),
    ("4.2", {"p": 7}), ("6.1", {"q": 4}), ("6.2", {"p": 5}), ("7.cw", {}),
    ("7.st", {"p": 5}), ("8.1", {"q": 7, "ell": 3}),
])
def test_bundles_pass(lemma_id, params):
    rep = verify_lemma(lemma_id, **params)
    assert rep.status == "pass", rep.failures()
    assert rep.details


def test_twisted_tensor_bundle_q9():
    rep = verify_lemma("1.3", q=9)
    assert rep.passed
    assert rep.details[0]["actual"] == 72


def test_unsupported_parameters_are_skipped():
    assert verify_lemma("3.2b", q=7, ell=3).status == "skipped"
    assert verify_lemma("4.1", p=4).status == "skipped"
    assert verify_lemma("8.1", q=3, ell=3).status == "skipped"
    assert verify_lemma("7.st", p=17).reason
    with pytest.raises(KeyError):
        verify_lemma("9.9")


def test_principal_series_factor_formula():
    # both factors have total dimension p + 1
    for p in (3, 5, 7):
        for i1 in range(p - 1):
            for i2 in range(p - 1):
                if i1 != i2:
                    (_, s1), (_, s2) = ps_factor_exponents(p, i1, i2)
                    assert s1 + s2 + 2 == p + 1


def test_cuspidal_factor_formula():
    for p in (3, 5, 7):
        for a in range(p):
            for b in range(a):
                assert sum(i + 1 for _, i in cusp_factor_exponents(p, a, b)) == p - 1


def test_corpora_are_nonempty():
    assert len(char_p_corpus(4)) > 10
    assert all(M.field.p == 3 for M in char_ell_corpus(5, 3))


def test_sweep_is_deterministic():
    a = emit_json(verify_lemma("all", max_p=5).to_json())
    b = emit_json(verify_lemma("all", max_p=5).to_json())
    assert a == b
    assert '"status":"fail"' not in a
