import numpy as np
import pytest

from oracles import modal, tangency_counts
from tandeg import (
    BiPoly,
    CurvePoint,
    Poly,
    ProjPoint,
    Theorem1Params,
    esteves_homma,
    field_recovery_certificate,
    from_affine,
    gauss_degree,
    make_field,
    span_line,
    tangency_profile_symbolic,
    tangency_sampled,
    tangent_line,
    theorem1,
)
from tandeg.errors import DegenerateTangentSystem, InsufficientPoints, RamifiedPoint
from tandeg.gauss import infinity_incidence

F3, F5 = make_field(3), make_field(5)


def mono(spec, *exps):
    return from_affine([Poly.monomial(spec, e) for e in exps])


def thm1(p, q, n):
    return theorem1(Theorem1Params(p, q, n))


def test_tangent_line_examples():
    c = thm1(3, 3, 1)
    L = tangent_line(c, CurvePoint.affine(F3(0)))
    assert L == span_line(ProjPoint.of(F3, [1, 0, 0, 0, 0]), ProjPoint.of(F3, [0, 1, 0, 0, 0]))
    tw = mono(F5, 0, 1, 2, 3)
    L = tangent_line(tw, CurvePoint.affine(F5(1)))
    assert L == span_line(ProjPoint.of(F5, [1, 1, 1, 1]), ProjPoint.of(F5, [0, 1, 2, 3]))


@pytest.mark.parametrize("pqn", [(3, 3, 1), (3, 3, 2)])
def test_tangent_line_row_reduced_form(pqn):
    p, q, n = pqn
    c = thm1(*pqn)
    E = make_field(p, 5)
    rng = np.random.default_rng(0)
    for _ in range(10):
        t = E.random(rng)
        a = t ** (q**n) - t ** (q ** (2 * n))
        r1 = ProjPoint([E.one, E.zero, -(t**2) - t**q, a, E.zero])
        r2 = ProjPoint([E.zero, E.one, 2 * t, E.zero, a])
        assert tangent_line(c, CurvePoint.affine(t)) == span_line(r1, r2)


def test_tangent_line_at_infinity():
    c = thm1(3, 3, 1)
    L = tangent_line(c, CurvePoint.infinity(F3))
    assert L == span_line(ProjPoint.of(F3, [0, 0, 0, 0, 1]), ProjPoint.of(F3, [0, 0, 0, 1, 0]))


def test_tangent_line_ramified():
    cusp = mono(F5, 0, 2, 3, 4)
    with pytest.raises(RamifiedPoint):
        tangent_line(cusp, CurvePoint.affine(F5(0)))


def test_profile_theorem1_331():
    prof = tangency_profile_symbolic(thm1(3, 3, 1))
    assert prof.generic_count == 1
    u, t = BiPoly.u(F3), BiPoly.t(F3)
    # the reduced tangency gcd: u = t and u = t + 1
    assert prof.details["separable_part"] == ((u - t) * (u - t - 1)).to_str()
    assert prof.details["separable_part_degree"] == prof.generic_count + 1
    # the full gcd carries the tangency of u = t to second order
    assert prof.details["gcd"] == ((u - t) ** 2 * (u - t - 1)).to_str()
    assert prof.details["diagonal_multiplicity"] == 2
    assert prof.details["infinity_incident"] is False
    assert prof.bad_locus_size == 0


def test_profile_theorem1_552():
    prof = tangency_profile_symbolic(thm1(5, 5, 2))
    assert prof.generic_count == 3
    assert prof.details["separable_part_degree"] == 4


def test_profile_twisted_cubic():
    prof = tangency_profile_symbolic(mono(F5, 0, 1, 2, 3))
    assert prof.generic_count == 0
    u, t = BiPoly.u(F5), BiPoly.t(F5)
    assert prof.details["separable_part"] == (u - t).to_str()


def test_profile_line_rejected():
    with pytest.raises(DegenerateTangentSystem):
        tangency_profile_symbolic(mono(F5, 0, 1))


def test_infinity_not_on_generic_tangent():
    # phi(P_inf) = (0:0:0:0:1) is not on the tangent line at a general point
    for pqn in [(3, 3, 1), (3, 3, 2)]:
        assert not infinity_incidence(thm1(*pqn)).is_zero()


@pytest.mark.parametrize("p", [5, 7])
def test_sampled_matches_brute_force_oracle(p):
    c = esteves_homma(p)
    prof = tangency_sampled(c, 3, 50, 0)
    ref = tangency_counts(p, [[int(x) for x in f.coeffs] for f in c.affine], 3, 50, 0)
    assert prof.generic_count == modal(ref) == 1
    assert not prof.details["disagreement"]


def test_sampled_twisted_cubic():
    prof = tangency_sampled(mono(F5, 0, 1, 2, 3), 3, 50, 0)
    assert prof.generic_count == 0
    assert prof.details["histogram"] == {"0": 50}


def test_sampled_deterministic():
    c = esteves_homma(5)
    a = tangency_sampled(c, 3, 30, 7)
    b = tangency_sampled(c, 3, 30, 7, threads=1)
    assert a.to_dict() == b.to_dict()


def test_sampled_insufficient_points():
    with pytest.raises(InsufficientPoints):
        tangency_sampled(mono(F5, 0, 1, 2, 3), 1, 50, 0)


def test_sampled_avoids_bad_locus():
    c = thm1(3, 3, 1)
    prof = tangency_profile_symbolic(c)
    smp = tangency_sampled(c, 4, 50, 3, avoid=prof.details["bad_locus_poly"])
    assert smp.generic_count == 1


def test_gauss_degree_examples():
    assert gauss_degree(thm1(3, 3, 1)) == (1, True)
    assert gauss_degree(mono(F5, 0, 1, 5, 10)) == (5, False)
    assert gauss_degree(mono(F3, 0, 1, 3, 6)) == (3, False)
    assert gauss_degree(esteves_homma(5)) == (1, True)
    with pytest.raises(DegenerateTangentSystem):
        gauss_degree(mono(F5, 0, 1))


def _all_lines(c, params):
    out = {}
    for t1 in params:
        try:
            out[t1] = tangent_line(c, CurvePoint.affine(t1))
        except RamifiedPoint:
            pass
    return out


@pytest.mark.parametrize("curve,expected", [
    (lambda: mono(F5, 0, 1, 2, 3), 1),
    (lambda: mono(F5, 0, 2, 4, 6), 2),
    (lambda: thm1(3, 3, 1), 1),
])
def test_gauss_degree_matches_fiber_count(curve, expected):
    c = curve()
    deg, sep = gauss_degree(c)
    assert sep and deg == expected
    E = make_field(c.p, 4 if c.p == 3 else 3)
    params = list(E.elements())
    rng = np.random.default_rng(5)
    lines = _all_lines(c, params)
    picks = [params[int(k)] for k in rng.choice(len(params), 60, replace=False)]
    sizes = [sum(L == lines[t0] for L in lines.values()) for t0 in picks if t0 in lines][:50]
    assert len(sizes) == 50
    assert max(set(sizes), key=sizes.count) == deg


def test_recovery_certificate():
    w = field_recovery_certificate(thm1(3, 3, 1))
    assert w is not None and w.coordinate == 2
    assert w.derivative == (2 * Poly.t(F3)).to_str()
    w3 = field_recovery_certificate(mono(F3, 0, 1, 2, 3))
    assert w3 is not None
    assert gauss_degree(mono(F3, 0, 1, 2, 3)) == (1, True)
    assert field_recovery_certificate(mono(F5, 0, 1, 5, 10)) is None


@pytest.mark.parametrize("curve", [
    lambda: thm1(3, 3, 1), lambda: esteves_homma(5), lambda: mono(F5, 0, 1, 2, 3), lambda: mono(F5, 0, 2, 4, 6),
])
def test_certificate_implies_birational(curve):
    c = curve()
    if field_recovery_certificate(c) is not None:
        assert gauss_degree(c) == (1, True)
