"""Automorphisms of the line, the spaces V_{sigma,x}, and non-classicality."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .curves import ParamCurve, plucker_minors
from .errors import DerivativeUndefined, IdentityAutomorphism, UnsupportedKind, ZeroAlpha, ZeroF
from .fields import FieldElem, FieldSpec, common_field, make_field
from .poly import Poly, RatFunc, compose_moebius, derivative


@dataclass(frozen=True)
class Automorphism:
    """t -> (a t + b) / (c t + d)."""

    kind: str
    a: FieldElem
    b: FieldElem
    c: FieldElem
    d: FieldElem

    def __post_init__(self):
        if not (self.a * self.d - self.b * self.c):
            raise ValueError("singular Moebius matrix")

    @classmethod
    def translation(cls, alpha: FieldElem) -> "Automorphism":
        s = alpha.spec
        return cls("translation", s.one, alpha, s.zero, s.one)

    @classmethod
    def affine(cls, a: FieldElem, b: FieldElem) -> "Automorphism":
        s = common_field([a.spec, b.spec])
        return cls("affine", s.elem(a), s.elem(b), s.zero, s.one)

    @classmethod
    def moebius(cls, a, b, c, d) -> "Automorphism":
        s = common_field([x.spec for x in (a, b, c, d)])
        return cls("moebius", *(s.elem(x) for x in (a, b, c, d)))

    @property
    def spec(self) -> FieldSpec:
        return self.a.spec

    @property
    def alpha(self) -> FieldElem:
        if self.kind != "translation":
            raise UnsupportedKind(f"{self.kind} has no translation amount")
        return self.b

    def matrix(self) -> tuple[FieldElem, ...]:
        return (self.a, self.b, self.c, self.d)

    def is_identity(self) -> bool:
        a, b, c, d = self.matrix()
        return not b and not c and a == d

    def __matmul__(self, other: "Automorphism") -> "Automorphism":
        """self o other as maps of the parameter."""
        a, b, c, d = self.matrix()
        e, f, g, h = other.matrix()
        kind = self.kind if self.kind == other.kind else "moebius"
        return Automorphism(kind, a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def pullback(self, g) -> RatFunc:
        """sigma* g = g o sigma."""
        return compose_moebius(g, *self.matrix())

    def __call__(self, t0: FieldElem) -> FieldElem:
        a, b, c, d = self.matrix()
        return (a * t0 + b) / (c * t0 + d)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "matrix": [list(x.coeffs) for x in self.matrix()]}


@dataclass(frozen=True)
class VMembershipResult:
    member: bool
    residual: object


def v_membership(g, sigma: Automorphism, x_param=None) -> VMembershipResult:
    """Residual sigma*g - g - f dg/dx with f = sigma*x - x."""
    g = g if isinstance(g, RatFunc) else RatFunc.of(g.spec, g)
    spec = common_field([g.spec, sigma.spec])
    g = g.lift(spec)
    x = RatFunc.t(spec) if x_param is None else (
        x_param if isinstance(x_param, RatFunc) else RatFunc.of(x_param.spec, x_param)).lift(spec)
    f = sigma.pullback(x) - x
    if f.is_zero():
        raise ZeroF("sigma fixes x")
    dx = derivative(x)
    if dx.is_zero():
        raise DerivativeUndefined("x is not a local parameter (dx/dt = 0)")
    res = sigma.pullback(g) - g - f * derivative(g) / dx
    return VMembershipResult(res.is_zero(), res)


def witness_quadratic(alpha: FieldElem, p: int | None = None, n: int = 1) -> Poly:
    """t^2 + beta t^(p^n) with beta alpha^(p^n) + alpha^2 = 0."""
    if not alpha:
        raise ZeroAlpha("alpha must be nonzero")
    spec = alpha.spec
    if p is not None and p != spec.p:
        raise ValueError(f"alpha lives in characteristic {spec.p}, not {p}")
    e = spec.p**n
    beta = -(alpha ** (2 - e))
    return Poly.from_terms(spec, {2: 1, e: beta})


def invariant_pth_powers(sigma: Automorphism, count: int) -> list[RatFunc]:
    """((t^p - alpha^(p-1) t)^p)^j for j = 1..count."""
    if sigma.kind != "translation":
        raise UnsupportedKind("only translations are supported")
    alpha = sigma.alpha
    if not alpha:
        raise ZeroAlpha("translation by zero")
    spec = alpha.spec
    p = spec.p
    h = Poly.from_terms(spec, {p: 1, 1: -(alpha ** (p - 1))})
    hp = h**p
    out, acc = [], Poly.one(spec)
    for _ in range(count):
        acc = acc * hp
        out.append(RatFunc.of(spec, acc))
    return out


def order_of(sigma: Automorphism, bound: int) -> int | None:
    acc = sigma
    for m in range(1, bound + 1):
        if acc.is_identity():
            return m
        acc = acc @ sigma
    return None


def _sigma_images(c: ParamCurve, sigma: Automorphism) -> tuple[list[Poly], list[Poly]]:
    """Affine coordinates over a common field and (c t + d)^deg * f_i(sigma t)."""
    spec = common_field([c.spec, sigma.spec])
    f = [g.lift(spec) for g in c.affine]
    a, b, cc, d = (spec.elem(x) for x in sigma.matrix())
    if not cc and d == spec.one and a == spec.one:
        return f, [g.shift(b) for g in f]
    A = Poly.from_coeffs(spec, [b, a])
    B = Poly.from_coeffs(spec, [d, cc])
    return f, [g.homogeneous_substitute(A, B, c.degree) for g in f]


def nonclassical_check(c: ParamCurve, sigma: Automorphism) -> bool:
    """phi(sigma t) lies on the tangent line at phi(t), identically in t."""
    if sigma.is_identity():
        raise IdentityAutomorphism("sigma is the identity")
    f, img = _sigma_images(c, sigma)
    lifted = ParamCurve(f[0].spec, tuple(f), c.degree, c.meta)
    C = plucker_minors(lifted)
    for i, j, k in combinations(range(c.N + 1), 3):
        m = img[i] * C[(j, k)] - img[j] * C[(i, k)] + img[k] * C[(i, j)]
        if not m.is_zero():
            return False
    return True


def nonclassical_sampled(c: ParamCurve, sigma: Automorphism, samples: int = 50, seed: int = 0,
                         field_spec: FieldSpec | None = None) -> tuple[bool, int]:
    """Evaluate the minors at random parameters; returns (all vanish, points tested)."""
    if sigma.is_identity():
        raise IdentityAutomorphism("sigma is the identity")
    base = common_field([c.spec, sigma.spec])
    if field_spec is None:
        k = 1
        while base.order**k < 4 * samples:
            k += 1
        field_spec = make_field(base.p, base.m * k)
    F = field_spec
    f = [g.lift(F) for g in c.affine]
    df = [g.derivative() for g in f]
    rng = np.random.default_rng(seed)
    tested = 0
    for k in rng.choice(F.order, size=min(F.order, 4 * samples), replace=False):
        t0 = F.from_packed(int(k))
        a, b, cc, d = (F.elem(x) for x in sigma.matrix())
        if not (cc * t0 + d):
            continue
        s0 = (a * t0 + b) / (cc * t0 + d)
        rows = [[g(t0) for g in f], [g(t0) for g in df], [g(s0) for g in f]]
        for i, j, kk in combinations(range(c.N + 1), 3):
            m = (rows[0][i] * (rows[1][j] * rows[2][kk] - rows[1][kk] * rows[2][j])
                 - rows[0][j] * (rows[1][i] * rows[2][kk] - rows[1][kk] * rows[2][i])
                 + rows[0][kk] * (rows[1][i] * rows[2][j] - rows[1][j] * rows[2][i]))
            if m:
                return False, tested + 1
        tested += 1
        if tested >= samples:
            break
    return True, tested
