"""Parametrized rational curves P^1 -> P^N."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .bipoly import BiPoly, gcd_over_ratfield
from .errors import DegenerateInput, FieldMismatch
from .fields import FieldElem, FieldSpec, common_field, make_field
from .linalg import poly_rows, rank
from .poly import Poly, RatFunc, gcd_many
from .projective import ProjPoint, pair_index

SYMBOLIC_DEGREE_LIMIT = 10_000


@dataclass(frozen=True, eq=False)
class ParamCurve:
    """phi = (f_0(t) : ... : f_N(t)), homogenized to common degree `degree`."""

    spec: FieldSpec
    affine: tuple[Poly, ...]
    degree: int
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def N(self) -> int:
        return len(self.affine) - 1

    @property
    def p(self) -> int:
        return self.spec.p

    def forms(self) -> np.ndarray:
        """(N+1, d+1, m) coefficient array; forms_i(S, T) = sum_k c_ik S^(d-k) T^k."""
        return poly_rows(list(self.affine), self.degree + 1)

    def leading_vector(self) -> tuple[FieldElem, ...]:
        return tuple(f[self.degree] for f in self.affine)

    def subleading_vector(self) -> tuple[FieldElem, ...]:
        return tuple(f[self.degree - 1] for f in self.affine)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParamCurve):
            return NotImplemented
        return self.spec == other.spec and self.affine == other.affine and self.degree == other.degree

    def __hash__(self) -> int:
        return hash((self.spec, self.affine, self.degree))

    def __repr__(self) -> str:
        body = ", ".join(f.to_str() for f in self.affine)
        return f"ParamCurve(GF({self.p}^{self.spec.m}), d={self.degree}, [{body}])"


@dataclass(frozen=True)
class CurvePoint:
    """A point (s : t) of P^1, normalized to (1 : t) or (0 : 1)."""

    s: FieldElem
    t: FieldElem

    def __init__(self, s: FieldElem, t: FieldElem):
        if s.spec != t.spec:
            spec = common_field([s.spec, t.spec])
            s, t = spec.elem(s), spec.elem(t)
        if s:
            t, s = t / s, s.spec.one
        elif t:
            t = t.spec.one
        else:
            raise ValueError("(0 : 0) is not a point of P^1")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)

    @classmethod
    def affine(cls, t0: FieldElem) -> "CurvePoint":
        return cls(t0.spec.one, t0)

    @classmethod
    def infinity(cls, spec: FieldSpec) -> "CurvePoint":
        return cls(spec.zero, spec.one)

    @property
    def at_infinity(self) -> bool:
        return not self.s

    @property
    def spec(self) -> FieldSpec:
        return self.s.spec


def from_affine(polys: Sequence[Poly], meta: dict | None = None) -> ParamCurve:
    """Homogenize to common degree and divide out the gcd of the forms."""
    polys = list(polys)
    if len(polys) < 2:
        raise DegenerateInput("need at least two coordinates")
    spec = polys[0].spec
    if any(f.spec != spec for f in polys):
        raise FieldMismatch("coordinates over different fields")
    if all(f.is_zero() for f in polys):
        raise DegenerateInput("all coordinates vanish")
    g = gcd_many(polys)
    if g.degree > 0:
        polys = [f.exact_div(g) for f in polys]
    d = max(f.degree for f in polys)
    if d < 1 or rank(spec, poly_rows(polys, d + 1)) < 2:
        raise DegenerateInput("all coordinates are proportional")
    return ParamCurve(spec, tuple(polys), d, dict(meta or {}))


def evaluate(c: ParamCurve, P: CurvePoint) -> ProjPoint:
    """phi(P); at (0:1) the leading coefficients of the forms."""
    spec = common_field([c.spec, P.spec])
    if P.at_infinity:
        return ProjPoint([spec.elem(x) for x in c.leading_vector()])
    t0 = spec.elem(P.t)
    return ProjPoint([f(t0) for f in c.affine])


def derivative_vector(c: ParamCurve) -> tuple[RatFunc, ...]:
    return tuple(RatFunc.of(c.spec, f.derivative()) for f in c.affine)


def nondegenerate(c: ParamCurve) -> bool:
    """The N+1 forms are linearly independent (curve spans P^N)."""
    return rank(c.spec, c.forms()) == c.N + 1


def plucker_minors(c: ParamCurve) -> dict[tuple[int, int], Poly]:
    """2x2 minors f_i f_j' - f_j f_i' of the matrix [phi; dphi/dt]."""
    d = [f.derivative() for f in c.affine]
    return {(i, j): c.affine[i] * d[j] - c.affine[j] * d[i] for i, j in pair_index(c.N)}


def pair_system(polys: Sequence[Poly]) -> list[BiPoly]:
    """f_i(u) f_j(t) - f_j(u) f_i(t) for all i < j (zero members dropped)."""
    out = []
    n = len(polys)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = polys[i], polys[j]
            if a.is_zero() and b.is_zero():
                continue
            f = BiPoly.sum_outer(a.spec, [(a, b), (b, -a)])
            if not f.is_zero():
                out.append(f)
    return out


@dataclass
class EmbeddingReport:
    injective: bool
    unramified: bool
    leg: str = "symbolic"
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def embedding(self) -> bool:
        return self.injective and self.unramified

    def to_dict(self) -> dict[str, Any]:
        return {
            "injective": self.injective,
            "unramified": self.unramified,
            "embedding": self.embedding,
            "leg": self.leg,
            "details": self.details,
        }


def injectivity_unramified(c: ParamCurve, symbolic_cap: int = SYMBOLIC_DEGREE_LIMIT,
                           samples: int = 500, seed: int = 0) -> EmbeddingReport:
    if c.degree > symbolic_cap:
        return injectivity_sampled(c, samples=samples, seed=seed)
    spec = c.spec
    details: dict[str, Any] = {}
    u_minus_t = (BiPoly.u(spec) - BiPoly.t(spec)).normalized()

    # injectivity on the affine chart
    pairs = pair_system(c.affine)
    G = gcd_over_ratfield(pairs)
    details["pair_gcd"] = G.to_str()
    generic = G == u_minus_t
    everywhere = False
    if generic:
        for f in pairs:
            if f.u_degree == 1 and f.t_degree <= 1:
                q = f.exact_div(u_minus_t)
                if q is not None and q.u_degree == 0 and q[0].degree == 0:
                    everywhere = True
                    break
    details["affine_separation_certified"] = everywhere

    # phi(P_inf) against the affine chart
    lead = c.leading_vector()
    minors = [c.affine[i] * lead[j] - c.affine[j] * lead[i] for i, j in pair_index(c.N)]
    if all(m.is_zero() for m in minors):
        inf_sep = False
    else:
        inf_sep = gcd_many(minors).degree == 0
    details["infinity_separated"] = inf_sep
    injective = generic and inf_sep

    # ramification on the affine chart
    pm = plucker_minors(c)
    if all(m.is_zero() for m in pm.values()):
        affine_unram = False
        details["ramification_gcd"] = "0"
    else:
        rg = gcd_many(pm.values())
        affine_unram = rg.degree == 0
        details["ramification_gcd"] = rg.to_str()
    # chart (s : 1): g_i(s) = s^d f_i(1/s); g(0) = leading, g'(0) = subleading
    sub = c.subleading_vector()
    inf_unram = any(lead[i] * sub[j] - lead[j] * sub[i] for i, j in pair_index(c.N))
    details["infinity_unramified"] = inf_unram
    return EmbeddingReport(injective, affine_unram and inf_unram, "symbolic", details)


def sample_field(c: ParamCurve, minimum: int) -> FieldSpec:
    k = 1
    while c.spec.order**k < minimum:
        k += 1
    return make_field(c.p, c.spec.m * k)


def injectivity_sampled(c: ParamCurve, samples: int = 500, seed: int = 0,
                        field_spec: FieldSpec | None = None) -> EmbeddingReport:
    """Collision and ramification search at sampled parameters."""
    F = field_spec or sample_field(c, max(samples + 1, 2))
    rng = np.random.default_rng(seed)
    n = min(samples, F.order)
    picks = rng.choice(F.order, size=n, replace=False)
    seen: dict[ProjPoint, FieldElem] = {}
    collisions, ramified = [], []
    polys = [f.lift(F) for f in c.affine]
    ders = [f.derivative() for f in polys]
    for k in picks:
        t0 = F.from_packed(int(k))
        P = ProjPoint([f(t0) for f in polys])
        if P in seen:
            collisions.append((seen[P], t0))
        seen[P] = t0
        v = [f(t0) for f in ders]
        if not any(P.coords[i] * v[j] - P.coords[j] * v[i] for i, j in pair_index(c.N)):
            ramified.append(t0)
    inf = ProjPoint(list(F.elem(x) for x in c.leading_vector()))
    if inf in seen:
        collisions.append(("inf", seen[inf]))
    details = {
        "field": f"GF({F.p}^{F.m})",
        "samples": int(n),
        "seed": seed,
        "collisions": [repr(x) for x in collisions[:5]],
        "ramified": [repr(x) for x in ramified[:5]],
        "sampled_only": True,
    }
    return EmbeddingReport(not collisions, not ramified, "sampled", details)
