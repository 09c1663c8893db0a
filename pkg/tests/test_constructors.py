import pytest

from tandeg import Automorphism, Poly, Theorem1Params, esteves_homma, from_affine, make_field, theorem1, translate_set
from tandeg.certificate import FAIL, PASS, SKIPPED
from tandeg.constructors import VerifyConfig, default_ext_deg, expected_count, theorem1_sigmas, verify_all
from tandeg.errors import BadCharacteristic, HypothesisViolation

F5, F7 = make_field(5), make_field(7)


def test_esteves_homma_examples():
    t = Poly.t(F5)
    assert esteves_homma(5).affine == (Poly.one(F5), t, t**2 - t**5, t**3 + 2 * t**5 + 2 * t**6)
    t = Poly.t(F7)
    assert esteves_homma(7).affine == (Poly.one(F7), t, t**2 - t**7, t**3 + 2 * t**7 + 4 * t**8)
    for bad in (2, 4, 9):
        with pytest.raises(BadCharacteristic):
            esteves_homma(bad)


def test_theorem1_examples():
    t = Poly.t(make_field(3))
    assert theorem1(Theorem1Params(3, 3, 1)).affine == (Poly.one(t.spec), t, t**2 - t**3, t**3 - t**9, t**4 - t**10)
    assert theorem1(Theorem1Params(5, 5, 2)).degree == 626
    assert Theorem1Params(3, 3, 2).degree == 82


def test_params_validation():
    with pytest.raises(HypothesisViolation, match="does not divide"):
        Theorem1Params(5, 5, 1)
    with pytest.raises(BadCharacteristic):
        Theorem1Params(2, 4, 1)
    with pytest.raises(HypothesisViolation):
        Theorem1Params(3, 5, 1)
    with pytest.raises(HypothesisViolation):
        Theorem1Params(3, 3, 0)
    with pytest.raises(HypothesisViolation):
        Theorem1Params(6, 6, 1)
    assert Theorem1Params(3, 9, 3).r == 2


def test_hypothesis_forms_agree():
    for q in range(3, 101):
        for n in range(1, 13):
            assert Theorem1Params.hypothesis_holds(q, n) == Theorem1Params.hypothesis_via_power(q, n)


@pytest.mark.parametrize("pqn,size", [((3, 3, 1), 1), ((3, 3, 2), 1), ((5, 5, 2), 3), ((3, 9, 3), 7)])
def test_translate_set(pqn, size):
    params = Theorem1Params(*pqn)
    roots = translate_set(params)
    assert len(roots) == len(set(roots)) == size == params.q - 2
    assert all(a ** (params.q - 2) == a.spec.one for a in roots)
    assert all(a ** (params.q**params.n) == a for a in roots)


def test_expected_count_and_ext():
    c = theorem1(Theorem1Params(3, 3, 2))
    assert expected_count(c) == 1
    assert expected_count(esteves_homma(5)) is None
    # smallest ext with 3^ext >= 2 * samples
    assert default_ext_deg(c, 50) == 5
    assert default_ext_deg(esteves_homma(5), 50) == 3
    c9 = theorem1(Theorem1Params(3, 9, 3))
    assert (2 * default_ext_deg(c9, 50)) % 6 == 0


def test_verify_all_theorem1():
    params = Theorem1Params(3, 3, 1)
    cert = verify_all(theorem1(params), theorem1_sigmas(params))
    assert cert.verdict == PASS, cert.failures
    assert cert["tangency_symbolic"].value["generic_count"] == 1
    assert cert["tangency_sampled"].value["modal_count"] == 1
    assert cert["tangency_cross_leg"].passed
    assert cert["gauss_degree"].value == {"degree": 1, "separable": True}
    assert cert["embedding"].passed and cert["nonclassical[0]"].passed
    assert len(cert.witnesses["sigmas"]) == 1


def test_verify_all_esteves_homma():
    cert = verify_all(esteves_homma(5), [Automorphism.translation(F5(1))], VerifyConfig(ext_deg=3))
    assert cert.verdict == PASS, cert.failures
    assert cert["tangency_symbolic"].value["generic_count"] == 1
    assert cert["tangency_sampled"].value["modal_count"] == 1
    assert cert["gauss_degree"].value == {"degree": 1, "separable": True}


def test_verify_all_negative_control():
    cubic = from_affine([Poly.monomial(F5, e) for e in range(4)])
    cert = verify_all(cubic, [Automorphism.translation(F5(1))], VerifyConfig(ext_deg=3))
    assert cert.verdict == FAIL
    assert cert["nonclassical[0]"].status == FAIL
    assert cert["tangency_symbolic"].value["generic_count"] == 0
    assert "nonclassical[0]" in cert.failures


def test_verify_all_above_cap():
    params = Theorem1Params(3, 3, 2)
    cert = verify_all(theorem1(params), theorem1_sigmas(params), VerifyConfig(symbolic_cap=50, samples=30))
    assert cert["tangency_symbolic"].status == SKIPPED
    assert cert["tangency_symbolic"].reason.startswith("skipped(degree)")
    assert cert["gauss_degree"].status == SKIPPED
    assert cert["tangency_sampled"].passed and cert["nonclassical[0]"].leg == "sampled"
    assert cert.verdict == PASS


def test_verify_all_records_failures_without_raising():
    line = from_affine([Poly.one(F5), Poly.t(F5)])
    cert = verify_all(line, [], VerifyConfig(ext_deg=2))
    assert cert.verdict == FAIL
    assert any("DegenerateTangentSystem" in (cert[k].reason or "") for k in cert.failures)


def test_checks_subset():
    cert = verify_all(esteves_homma(5), [], VerifyConfig(checks=["gauss_degree"]))
    assert list(cert.checks) == ["gauss_degree"]
