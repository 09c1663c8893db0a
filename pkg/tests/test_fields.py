import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import GF, smallest_irreducible
from tandeg import arith, frobenius, lift, make_field, roots_of_unity
from tandeg.errors import DivisionByZero, FieldMismatch, NonPrimeCharacteristic, NotAnExtension, ReducibleModulus
from tandeg.fields import FieldSpec, vec

FIELDS = [(2, 1), (3, 1), (3, 2), (5, 2), (3, 4), (7, 2), (2, 5)]


@pytest.mark.parametrize("p,m", FIELDS + [(5, 3), (3, 6)])
def test_modulus_matches_exhaustive_scan(p, m):
    F = make_field(p, m)
    if m == 1:
        assert F.modulus is None
    else:
        assert F.modulus == smallest_irreducible(p, m)


def test_make_field_examples():
    assert [a.coeffs[0] for a in make_field(3).elements()] == [0, 1, 2]
    assert make_field(3, 2).modulus == (1, 0, 1)
    with pytest.raises(NonPrimeCharacteristic):
        make_field(4, 1)
    assert make_field(3, 2) is make_field(3, 2)
    assert make_field(3, 2) == FieldSpec(3, 2, (1, 0, 1))


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        FieldSpec(5, 2, (1, 0, 1))  # -1 is a square mod 5


def test_arith_examples():
    F3, F9, F5 = make_field(3), make_field(3, 2), make_field(5)
    assert arith(F3(2), F3(2), "mul") == F3(1)
    X = F9.gen
    assert arith(X, X, "mul") == F9(2)
    assert arith(F5(3), F5(4), "div") == F5(2)
    with pytest.raises(DivisionByZero):
        arith(F5(3), F5(0), "div")
    with pytest.raises(FieldMismatch):
        arith(F5(1), F3(1), "add")


@pytest.mark.parametrize("p,m", FIELDS)
def test_multiplication_against_oracle(p, m):
    F, G = make_field(p, m), GF(p, m)
    rng = np.random.default_rng(1)
    for _ in range(200):
        a, b = F.random(rng), F.random(rng)
        assert (a * b).coeffs == G.mul(a.coeffs, b.coeffs)
        assert (a + b).coeffs == G.add(a.coeffs, b.coeffs)
        if b:
            assert (a / b).coeffs == G.mul(a.coeffs, G.inv(b.coeffs))


@pytest.mark.parametrize("p,m", FIELDS)
def test_field_axioms_random(p, m):
    F = make_field(p, m)
    rng = np.random.default_rng(2)
    for _ in range(1000):
        a, b, c = F.random(rng), F.random(rng), F.random(rng)
        assert (a * b) * c == a * (b * c)
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c


def test_frobenius_examples():
    F3, F9 = make_field(3), make_field(3, 2)
    for a in F3.elements():
        assert frobenius(a, 1) == a
    X = F9.gen
    assert frobenius(X, 1) == 2 * X
    assert frobenius(X, 0) == X


@pytest.mark.parametrize("p,m", [(3, 2), (5, 2), (3, 4), (2, 5)])
def test_frobenius_properties(p, m):
    F = make_field(p, m)
    rng = np.random.default_rng(3)
    for _ in range(100):
        a, b = F.random(rng), F.random(rng)
        assert frobenius(a, m) == a
        assert frobenius(a * b, 1) == frobenius(a, 1) * frobenius(b, 1)
        assert frobenius(a + b, 1) == frobenius(a, 1) + frobenius(b, 1)


def test_roots_of_unity_examples():
    assert roots_of_unity(make_field(3), 1) == [make_field(3).one]
    r = roots_of_unity(make_field(5, 2), 3)
    assert len(r) == 3
    brute = [a for a in make_field(5, 2).units() if a**3 == make_field(5, 2).one]
    assert sorted(brute, key=lambda a: a.coeffs) == r
    assert roots_of_unity(make_field(5), 3) == [make_field(5).one]


@pytest.mark.parametrize("p,m", [(3, 2), (5, 2), (7, 1), (3, 3), (2, 4)])
def test_roots_of_unity_count(p, m):
    F = make_field(p, m)
    for d in range(1, 30):
        if d % p == 0:
            continue
        r = roots_of_unity(F, d)
        assert len(r) == math.gcd(d, p**m - 1)
        assert all(a**d == F.one for a in r)


def test_lift_examples():
    F3, F9, F81 = make_field(3), make_field(3, 2), make_field(3, 4)
    assert lift(F3(2), F9) == F9(2)
    assert lift(F9.gen, F9) == F9.gen
    z = lift(F9.gen, F81)
    assert z * z == F81(-1)
    assert frobenius(frobenius(z, 1), 1) == z
    with pytest.raises(NotAnExtension):
        lift(F9.gen, make_field(3, 3))
    with pytest.raises(NotAnExtension):
        lift(F9.gen, make_field(5, 2))


@pytest.mark.parametrize("src,dst", [((3, 2), (3, 4)), ((3, 2), (3, 6)), ((5, 1), (5, 3)), ((2, 2), (2, 6))])
def test_lift_is_homomorphism(src, dst):
    S, T = make_field(*src), make_field(*dst)
    for a, b in itertools.product(list(S.elements())[:12], repeat=2):
        assert lift(a * b, T) == lift(a, T) * lift(b, T)
        assert lift(a + b, T) == lift(a, T) + lift(b, T)
    assert len({lift(a, T) for a in S.elements()}) == S.order


def test_lift_tower_commutes():
    F9, F81, F6561 = make_field(3, 2), make_field(3, 4), make_field(3, 8)
    # embeddings are chosen independently per pair, so composites may differ by
    # Frobenius; the image set is what must agree
    direct = {lift(a, F6561) for a in F9.elements()}
    via = {lift(lift(a, F81), F6561) for a in F9.elements()}
    assert direct == via


@pytest.mark.parametrize("p,m", [(3, 2), (5, 2), (2, 4), (7, 2)])
def test_vecfield_agrees_with_scalar(p, m):
    F = make_field(p, m)
    vf = vec(F)
    xs = vf.arange()
    rng = np.random.default_rng(4)
    ys = rng.permutation(xs)
    prod, tot, inv = vf.mul(xs, ys), vf.add(xs, ys), vf.inv(ys[ys != 0])
    for i in range(0, F.order, max(1, F.order // 40)):
        a, b = vf.unpack(xs[i]), vf.unpack(ys[i])
        assert vf.unpack(prod[i]) == a * b
        assert vf.unpack(tot[i]) == a + b
    for y, iy in zip(ys[ys != 0][:40], inv[:40]):
        assert vf.unpack(y) * vf.unpack(iy) == F.one


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(3, 2), (5, 2), (7, 3)]), st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 40))
def test_power_rules(pm, i, j, e):
    F = make_field(*pm)
    a, b = F.from_packed(i % F.order), F.from_packed(j % F.order)
    assert (a * b) ** e == a**e * b**e
    if a:
        assert a ** (F.order - 1) == F.one
        assert a**-e * a**e == F.one
