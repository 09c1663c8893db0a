import warnings

import numpy as np
import pytest

from tandeg import (
    BiPoly,
    CurvePoint,
    Poly,
    ProjPoint,
    RatFunc,
    Theorem1Params,
    derivative_vector,
    esteves_homma,
    evaluate,
    from_affine,
    gcd_over_ratfield,
    injectivity_unramified,
    make_field,
    nondegenerate,
    theorem1,
)
from tandeg.curves import injectivity_sampled, pair_system
from tandeg.errors import DegenerateInput

F3, F5 = make_field(3), make_field(5)


def mono(spec, *exps):
    return [Poly.monomial(spec, e) for e in exps]


def cubic(spec=F5):
    return from_affine(mono(spec, 0, 1, 2, 3))


def test_from_affine_examples():
    assert cubic().degree == 3 and cubic().N == 3
    c = theorem1(Theorem1Params(3, 3, 1))
    t = Poly.t(F3)
    assert c.affine == (Poly.one(F3), t, t**2 - t**3, t**3 - t**9, t**4 - t**10)
    assert c.degree == 10
    c1 = from_affine(mono(F5, 1, 2))
    assert c1.affine == (Poly.one(F5), Poly.t(F5)) and c1.N == 1


def test_from_affine_rejects_proportional():
    t = Poly.t(F5)
    with pytest.raises(DegenerateInput):
        from_affine([t + 1, 2 * t + 2])
    with pytest.raises(DegenerateInput):
        from_affine([Poly.zero(F5), Poly.zero(F5)])


def test_evaluate_examples():
    c = theorem1(Theorem1Params(3, 3, 1))
    assert evaluate(c, CurvePoint.infinity(F3)) == ProjPoint.of(F3, [0, 0, 0, 0, 1])
    assert evaluate(c, CurvePoint.affine(F3(0))) == ProjPoint.of(F3, [1, 0, 0, 0, 0])
    assert evaluate(cubic(), CurvePoint.affine(F5(2))) == ProjPoint.of(F5, [1, 2, 4, 3])


def test_evaluate_chart_independent():
    """Homogeneous evaluation of the forms at (s : t) agrees with the affine chart."""
    c = theorem1(Theorem1Params(3, 3, 1))
    E = make_field(3, 4)
    rng = np.random.default_rng(0)
    forms = c.forms()
    for _ in range(30):
        s, t = E.random(rng), E.random(rng)
        if not s and not t:
            continue
        vals = []
        for i in range(c.N + 1):
            acc = E.zero
            for k in range(c.degree + 1):
                coef = F3(int(forms[i, k, 0]))
                if coef:
                    acc = acc + E.elem(coef) * s ** (c.degree - k) * t**k
            vals.append(acc)
        assert ProjPoint(vals) == evaluate(c, CurvePoint(s, t))


def test_derivative_vector_examples():
    for p, q, n in [(3, 3, 1), (3, 3, 2), (5, 5, 2)]:
        c = theorem1(Theorem1Params(p, q, n))
        t = Poly.t(c.spec)
        a = t ** (q**n) - t ** (q ** (2 * n))
        assert derivative_vector(c) == tuple(RatFunc.of(c.spec, f) for f in (Poly.zero(c.spec), Poly.one(c.spec),
                                                                              2 * t, Poly.zero(c.spec), a))
    t = Poly.t(F5)
    assert derivative_vector(cubic()) == tuple(RatFunc.of(F5, f) for f in (Poly.zero(F5), Poly.one(F5), 2 * t, 3 * t**2))


def test_esteves_homma_p3_is_flagged():
    with pytest.warns(UserWarning):
        c = esteves_homma(3)
    assert "flag" in c.meta
    assert c.affine[3].is_zero()
    assert derivative_vector(c)[3].is_zero()
    assert not nondegenerate(c)


def test_nondegenerate_examples():
    t = Poly.t(F5)
    assert nondegenerate(cubic())
    assert not nondegenerate(from_affine([Poly.one(F5), t, t**2, 3 * t + 2]))
    assert nondegenerate(theorem1(Theorem1Params(3, 3, 1)))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for p in (5, 7, 11):
            assert nondegenerate(esteves_homma(p))


def test_injectivity_examples():
    rep = injectivity_unramified(theorem1(Theorem1Params(3, 3, 1)))
    assert rep.embedding and rep.leg == "symbolic"
    even = injectivity_unramified(from_affine(mono(F5, 0, 2, 4, 6)))
    assert not even.injective
    u, t = BiPoly.u(F5), BiPoly.t(F5)
    assert gcd_over_ratfield(pair_system(mono(F5, 0, 2, 4, 6))) == ((u - t) * (u + t)).normalized()
    frob = injectivity_unramified(from_affine(mono(F5, 0, 5, 10, 15)))
    assert not frob.unramified


def test_even_curve_collapses_t_and_minus_t():
    c = from_affine(mono(F5, 0, 2, 4, 6))
    for x in range(1, 5):
        assert evaluate(c, CurvePoint.affine(F5(x))) == evaluate(c, CurvePoint.affine(F5(-x)))


def test_cusp_is_ramified():
    # (1 : t^2 : t^3 : t^4) has a cusp at t = 0
    rep = injectivity_unramified(from_affine(mono(F5, 0, 2, 3, 4)))
    assert rep.injective and not rep.unramified


def test_point_at_infinity_collision_detected():
    # (1 + t^4 : t : t^2 : t^3) sends 0 and infinity to the same point
    t = Poly.t(F5)
    c = from_affine([1 + t**4, t, t**2, t**3])
    assert evaluate(c, CurvePoint.infinity(F5)) == evaluate(c, CurvePoint.affine(F5(0)))
    rep = injectivity_unramified(c)
    assert not rep.details["infinity_separated"] and not rep.injective


@pytest.mark.parametrize("params", [(3, 3, 1), (3, 3, 2)])
def test_embedding_cross_leg(params):
    c = theorem1(Theorem1Params(*params))
    assert injectivity_unramified(c).embedding
    rep = injectivity_sampled(c, samples=500, seed=1)
    assert rep.embedding
    assert rep.details["samples"] >= 500


def test_sampled_leg_finds_collisions():
    c = from_affine(mono(F5, 0, 2, 4, 6))
    rep = injectivity_sampled(c, samples=500, seed=0)
    assert not rep.injective


def test_above_cap_falls_back_to_sampling():
    c = theorem1(Theorem1Params(3, 3, 2))
    rep = injectivity_unramified(c, symbolic_cap=50, samples=200)
    assert rep.leg == "sampled" and rep.embedding
