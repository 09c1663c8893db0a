import numpy as np
import pytest

from oracles import GF, gcd_degree, resultant
from tandeg import BiPoly, Poly, gcd_over_ratfield, make_field, resultant_u, squarefree_decomposition
from tandeg.bipoly import diagonal_root_in
from tandeg.errors import AllConstantInU

F3, F5 = make_field(3), make_field(5)


def U(spec):
    return BiPoly.u(spec)


def T(spec):
    return BiPoly.t(spec)


def rand_bi(spec, du, dt, rng):
    coeffs = [Poly.from_coeffs(spec, [spec.random(rng) for _ in range(dt + 1)]) for _ in range(du + 1)]
    # keep the u-degree: the leading coefficient is monic of degree dt in t
    coeffs[-1] = Poly.from_coeffs(spec, [spec.random(rng) for _ in range(dt)] + [1])
    return BiPoly(spec, coeffs)


def specialized(F: GF, f: BiPoly, t0):
    """Coefficient list of f(u, t0) in the oracle field."""
    out = []
    for c in f.coeffs:
        acc = F.zero
        for k in range(c.degree, -1, -1):
            acc = F.add(F.mul(acc, t0), F.scalar(int(c[k])))
        out.append(acc)
    while out and not any(out[-1]):
        out.pop()
    return out


def oracle_gcd_degree(f, g, trials=6, seed=0):
    """Generic gcd degree over F(t): minimum over random specializations t0 in
    a large extension (specialization can only raise the gcd degree)."""
    F = GF(f.spec.p, 6)
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(trials):
        t0 = tuple(int(x) for x in rng.integers(0, F.p, F.m))
        a, b = specialized(F, f, t0), specialized(F, g, t0)
        if len(a) - 1 != f.u_degree or len(b) - 1 != g.u_degree:
            continue
        d = gcd_degree(F, a, b)
        best = d if best is None else min(best, d)
    return best


def test_examples():
    u, t = U(F5), T(F5)
    assert gcd_over_ratfield([u - t, (u - t) * (u - t - 1)]) == u - t
    u3, t3 = U(F3), T(F3)
    g = gcd_over_ratfield([u3**3 - t3**3])
    assert g == (u3 - t3) ** 3
    with pytest.raises(AllConstantInU):
        gcd_over_ratfield([t, t * t])


def test_gcd_clears_content():
    u, t = U(F5), T(F5)
    f = (t * t + 1) * (u - t) * (u + 2)
    g = (t + 3) * (u - t) * (u * t - 1)
    assert gcd_over_ratfield([f, g]) == u - t


@pytest.mark.parametrize("seed", range(8))
def test_gcd_planted_common_factor(seed):
    rng = np.random.default_rng(seed)
    spec = F5 if seed % 2 else F3
    g = rand_bi(spec, int(rng.integers(1, 3)), 2, rng)
    a = g * rand_bi(spec, int(rng.integers(1, 3)), 2, rng)
    b = g * rand_bi(spec, int(rng.integers(1, 3)), 2, rng)
    h = gcd_over_ratfield([a, b])
    assert h.divides(a) and h.divides(b)
    assert gcd_over_ratfield([g, h]).u_degree == g.u_degree  # g divides h over F(t)
    assert h.u_degree == oracle_gcd_degree(a, b, seed=seed)


@pytest.mark.parametrize("seed", range(6))
def test_gcd_random_pairs_against_sylvester(seed):
    rng = np.random.default_rng(100 + seed)
    a, b = rand_bi(F3, 3, 2, rng), rand_bi(F3, 2, 3, rng)
    assert gcd_over_ratfield([a, b]).u_degree == oracle_gcd_degree(a, b, seed=seed)


def test_gcd_many_inputs():
    u, t = U(F5), T(F5)
    base = (u - t) * (u - 2 * t - 1)
    fs = [base * (u + k * t) for k in range(1, 4)] + [base * base]
    h = gcd_over_ratfield(fs)
    assert h == base.normalized()


@pytest.mark.parametrize("seed", range(5))
def test_resultant_specializes(seed):
    rng = np.random.default_rng(200 + seed)
    a, b = rand_bi(F5, 2, 2, rng), rand_bi(F5, 3, 1, rng)
    R = resultant_u(a, b)
    F = GF(5, 1)
    for x in range(5):
        sa, sb = specialized(F, a, (x,)), specialized(F, b, (x,))
        if len(sa) - 1 != a.u_degree or len(sb) - 1 != b.u_degree:
            continue
        assert R(F5(x)).coeffs == resultant(F, sa, sb)


def test_resultant_vanishes_on_common_root():
    u, t = U(F5), T(F5)
    assert resultant_u((u - t) * (u + 1), (u - t) * (u - 2)).is_zero()
    r = resultant_u(u - t, u - 1)
    assert r.degree == 1 and r(F5(1)) == F5.zero


def test_squarefree_decomposition_char_p():
    u, t = U(F3), T(F3)
    f = (u - t) ** 2 * (u - t - 1) * (u**3 - t) ** 2
    pieces = squarefree_decomposition(f)
    recon = BiPoly.one(F3)
    for pc in pieces:
        # each root of factor(u^(p^level)) has multiplicity p^level already
        recon = recon * pc.expanded() ** (pc.multiplicity // 3**pc.level)
    assert recon.normalized() == f.normalized()
    # u^3 - t is inseparable over F(t): it lives at level 1, roots of multiplicity 6
    assert [(pc.level, pc.multiplicity) for pc in pieces if pc.level] == [(1, 6)]
    diag = [pc for pc in pieces if diagonal_root_in(pc)]
    assert len(diag) == 1 and diag[0].multiplicity == 2


def test_squarefree_separable_input():
    u, t = U(F5), T(F5)
    f = (u - t) * (u + t) * (u - 1)
    (pc,) = squarefree_decomposition(f)
    assert pc.multiplicity == 1 and pc.level == 0 and pc.distinct_roots == 3
