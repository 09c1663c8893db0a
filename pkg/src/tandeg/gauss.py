"""Tangent lines, the Gauss map and tangency profiles."""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

import numpy as np

from .bipoly import (
    BiPoly,
    SqfPiece,
    diagonal_root_in,
    gcd_over_ratfield,
    resultant_u,
    squarefree_decomposition,
)
from .curves import CurvePoint, ParamCurve, pair_system, plucker_minors
from .errors import AllConstantInU, CoincidentPoints, DegenerateTangentSystem, InsufficientPoints, RamifiedPoint
from .fields import FieldSpec, common_field, embedding, make_field, vec
from .poly import Poly, RatFunc, distinct_root_count, gcd_many
from .projective import PlueckerLine, ProjPoint, incidence_mask, on_line, pair_index, span_line

DISCRIMINANT_DEGREE_LIMIT = 64


def thread_count() -> int:
    try:
        n = int(os.environ.get("TANDEG_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)


# --- tangent lines -----------------------------------------------------------

def tangent_line(c: ParamCurve, P: CurvePoint) -> PlueckerLine:
    spec = common_field([c.spec, P.spec])
    if P.at_infinity:
        # chart (s : 1): g(0) and g'(0) are the two top coefficient rows
        a = [spec.elem(x) for x in c.leading_vector()]
        b = [spec.elem(x) for x in c.subleading_vector()]
    else:
        t0 = spec.elem(P.t)
        a = [f(t0) for f in c.affine]
        b = [f.derivative()(t0) for f in c.affine]
    if not any(b):
        raise RamifiedPoint("derivative vanishes")
    try:
        return span_line(ProjPoint(a), ProjPoint(b))
    except CoincidentPoints:
        raise RamifiedPoint("derivative direction equals the point") from None


# --- Gauss map -----------------------------------------------------------------

@dataclass(frozen=True)
class GaussData:
    """Content-free Pluecker functions of the tangent line, indexed by pair_index(N)."""

    plucker_funcs: tuple[Poly, ...]
    content: Poly
    N: int

    def p(self, i: int, j: int) -> Poly:
        return self.plucker_funcs[pair_index(self.N).index((i, j))]


def gauss_data(c: ParamCurve) -> GaussData:
    pm = plucker_minors(c)
    funcs = [pm[k] for k in pair_index(c.N)]
    if all(f.is_zero() for f in funcs):
        raise DegenerateTangentSystem("all Pluecker functions vanish")
    g = gcd_many(funcs)
    if g.degree > 0:
        funcs = [f.exact_div(g) for f in funcs]
    return GaussData(tuple(funcs), g, c.N)


def gauss_degree(c: ParamCurve) -> tuple[int, bool]:
    gd = gauss_data(c)
    funcs = list(gd.plucker_funcs)
    pairs = pair_system(funcs)
    if not pairs:
        raise DegenerateTangentSystem("the tangent line is constant: the curve is a line")
    try:
        G = gcd_over_ratfield(pairs)
    except AllConstantInU:
        raise DegenerateTangentSystem("the tangent line is constant: the curve is a line") from None
    ref = next(f for f in funcs if not f.is_zero())
    dref = ref.derivative()
    separable = any(not (f.derivative() * ref - f * dref).is_zero() for f in funcs)
    return G.u_degree, separable


@dataclass
class Witness:
    pair: tuple[tuple[int, int], tuple[int, int]]
    ratio: str
    coordinate: int | None
    coordinate_poly: str | None
    derivative: str | None
    chain: list[str]

    def to_dict(self) -> dict[str, Any]:
        return {
            "pair": [list(self.pair[0]), list(self.pair[1])],
            "ratio": self.ratio,
            "coordinate": self.coordinate,
            "coordinate_poly": self.coordinate_poly,
            "derivative": self.derivative,
            "chain": self.chain,
        }


def _moebius_ratio(a: Poly, b: Poly) -> RatFunc | None:
    if a.is_zero() or b.is_zero():
        return None
    r = RatFunc(a, b)
    if max(r.num.degree, r.den.degree) == 1:
        return r
    return None


def field_recovery_certificate(c: ParamCurve) -> Witness | None:
    """A ratio of Pluecker functions of degree one in t, so t lies in k(gamma)."""
    pm = plucker_minors(c)
    N = c.N
    base = pm[(0, 1)]
    if not base.is_zero():
        for i in range(2, N + 1):
            r = _moebius_ratio(pm[(0, i)], base)
            if r is None:
                continue
            if c.affine[0].degree == 0 and c.affine[1].degree == 1 and not c.affine[1][0]:
                coord, deriv = c.affine[i].to_str(), c.affine[i].derivative().to_str()
            else:
                coord = deriv = None
            return Witness(
                ((0, i), (0, 1)), repr(r), i, coord, deriv,
                [f"p_0{i}/p_01 = {r!r} lies in k(gamma)",
                 "a degree-one function of t generates k(t)",
                 "k(gamma) = k(t), so the Gauss map is birational"],
            )
    keys = sorted((k for k in pm if not pm[k].is_zero()), key=lambda k: pm[k].degree)
    for a, b in combinations(keys, 2):
        r = _moebius_ratio(pm[b], pm[a])
        if r is not None:
            return Witness(
                (b, a), repr(r), None, None, None,
                [f"p_{b[0]}{b[1]}/p_{a[0]}{a[1]} = {r!r} lies in k(gamma)",
                 "a degree-one function of t generates k(t)",
                 "k(gamma) = k(t), so the Gauss map is birational"],
            )
    return None


# --- tangency profile ----------------------------------------------------------

@dataclass
class TangencyProfile:
    generic_count: int
    multiplicity_pattern: list[dict[str, Any]]
    bad_locus_size: int
    leg: str
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "generic_count": self.generic_count,
            "multiplicity_pattern": self.multiplicity_pattern,
            "bad_locus_size": self.bad_locus_size,
            "leg": self.leg,
            "details": self.details,
        }


def tangency_minors(c: ParamCurve) -> list[BiPoly]:
    """3x3 minors of [phi(t); phi'(t); phi(u)], expanded along the u-row."""
    C = plucker_minors(c)
    f = c.affine
    out = []
    for i, j, k in combinations(range(c.N + 1), 3):
        m = BiPoly.sum_outer(c.spec, [(f[i], C[(j, k)]), (f[j], -C[(i, k)]), (f[k], C[(i, j)])])
        if not m.is_zero():
            out.append(m)
    return out


def infinity_incidence(c: ParamCurve) -> Poly:
    """det[phi(t); phi'(t); phi(P_inf)] minors; their gcd (zero: always incident)."""
    C = plucker_minors(c)
    a = c.leading_vector()
    ms = [C[(j, k)] * a[i] - C[(i, k)] * a[j] + C[(i, j)] * a[k]
          for i, j, k in combinations(range(c.N + 1), 3)]
    ms = [m for m in ms if not m.is_zero()]
    if not ms:
        return Poly.zero(c.spec)
    return gcd_many(ms)


def _at_diagonal(piece: SqfPiece) -> Poly:
    spec = piece.factor.spec
    return piece.factor.evaluate_u(Poly.monomial(spec, spec.p**piece.level))


def tangency_profile_symbolic(c: ParamCurve) -> TangencyProfile:
    spec = c.spec
    minors = tangency_minors(c)
    if not minors:
        raise DegenerateTangentSystem("all 3x3 minors vanish: the curve is a line")
    G = gcd_over_ratfield(minors)
    pieces = squarefree_decomposition(G)
    pattern = []
    diag_mult = 0
    affine_roots = 0
    off_diag: list[SqfPiece] = []
    sep = BiPoly.one(spec)
    sep_ok = True
    for pc in pieces:
        diag = diagonal_root_in(pc)
        pattern.append({
            "factor": pc.factor.to_str(),
            "level": pc.level,
            "multiplicity": pc.multiplicity,
            "distinct_roots": pc.distinct_roots,
            "contains_diagonal": diag,
        })
        affine_roots += pc.distinct_roots
        if diag:
            diag_mult = pc.multiplicity
        if pc.level == 0:
            sep = sep * pc.factor
        else:
            sep_ok = False
        if pc.distinct_roots > (1 if diag else 0):
            off_diag.append(pc)
    if not diag_mult:
        raise DegenerateTangentSystem("u = t is not a root of the tangency gcd")
    extra_affine = affine_roots - 1

    inf = infinity_incidence(c)
    inf_incident = inf.is_zero()

    # bad locus: t where the generic picture may change
    bad: list[Poly] = [G.lc]
    C = plucker_minors(c)
    nz = [m for m in C.values() if not m.is_zero()]
    bad.append(gcd_many(nz))
    if not inf_incident:
        bad.append(inf)
    partial = False
    u_minus_t = BiPoly.u(spec) - BiPoly.t(spec)
    expanded = []
    for pc in off_diag:
        f = pc.expanded()
        while f.u_degree > 0:
            q = f.exact_div(u_minus_t)
            if q is None:
                break
            f = q
        expanded.append(f)
    for k, f in enumerate(expanded):
        if f.u_degree > DISCRIMINANT_DEGREE_LIMIT:
            partial = True
            continue
        df = f.derivative_u()
        if not df.is_zero() and f.u_degree > 1:
            bad.append(resultant_u(f, df))
        bad.append(f.evaluate_u(Poly.t(spec)))
        for g in expanded[k + 1:]:
            if g.u_degree <= DISCRIMINANT_DEGREE_LIMIT:
                bad.append(resultant_u(f, g))
    B = Poly.one(spec)
    for b in bad:
        if not b.is_zero():
            B = B * b.monic()
    details = {
        "gcd": G.to_str(),
        "gcd_degree": G.u_degree,
        "separable_part": sep.to_str() if sep_ok else None,
        "separable_part_degree": sep.u_degree if sep_ok else None,
        "diagonal_multiplicity": diag_mult,
        "affine_extra": extra_affine,
        "infinity_incident": inf_incident,
        "bad_locus": B.to_str() if B.degree <= 40 else f"<degree {B.degree}>",
        "bad_locus_partial": partial,
    }
    count = extra_affine + (1 if inf_incident else 0)
    prof = TangencyProfile(count, pattern, distinct_root_count(B), "symbolic", details)
    prof.details["bad_locus_poly"] = B
    return prof


# --- sampled leg -----------------------------------------------------------------

class _PointCloud:
    """Images phi(u) for every u of a field, with a BLAS prefilter for line incidence."""

    def __init__(self, coords: list[np.ndarray], spec: FieldSpec):
        self.coords = coords
        self.spec = spec
        self.vf = vec(spec)
        p, m, n = spec.p, spec.m, len(coords)
        bound = (p - 1) ** 2 * n * m
        if m == 1:
            self.dtype = None
        elif bound < 2**24:
            self.dtype = np.float32
        elif bound < 2**53:
            self.dtype = np.float64
        else:
            self.dtype = None
        self.D = None
        if self.dtype is not None:
            self.D = np.concatenate([self.vf.digits(x) for x in coords], axis=1).astype(self.dtype)

    def _first_functional(self, L: PlueckerLine):
        for i, j, k in combinations(range(L.N + 1), 3):
            w = {k: L.p(i, j), j: -L.p(i, k), i: L.p(j, k)}
            w = {a: b for a, b in w.items() if b}
            if w:
                return w
        return {}

    def on_line(self, L: PlueckerLine) -> np.ndarray:
        spec, p, m = self.spec, self.spec.p, self.spec.m
        w = self._first_functional(L)
        if m == 1:
            val = np.zeros_like(self.coords[0])
            for a, c in w.items():
                val = (val + int(c) * self.coords[a]) % p
            cand = np.nonzero(val == 0)[0]
        elif self.D is not None:
            W = np.zeros((len(self.coords) * m, m), dtype=self.dtype)
            for a, c in w.items():
                W[a * m:(a + 1) * m] = spec.mul_matrix(c).T
            # one output digit first, the rest only on survivors
            first = np.rint(self.D @ W[:, 0]).astype(np.int64) % p
            cand = np.nonzero(first == 0)[0]
            rest = np.rint(self.D[cand] @ W[:, 1:]).astype(np.int64) % p
            cand = cand[~rest.any(axis=1)]
        else:
            cand = np.arange(len(self.coords[0]))
        sub = incidence_mask(L, [x[cand] for x in self.coords], self.vf)
        return cand[sub]


def _lift_packed(src: FieldSpec, dst: FieldSpec, xs: np.ndarray) -> np.ndarray:
    if src == dst:
        return xs
    M = np.array([e.coeffs for e in embedding(src, dst)], dtype=np.int64)
    return vec(dst).from_digits(vec(src).digits(xs) @ M)


def tangency_sampled(c: ParamCurve, ext_deg: int, samples: int, seed: int,
                     avoid: Poly | None = None, threads: int | None = None) -> TangencyProfile:
    """Count points of the curve on sampled tangent lines by enumerating F_{q^(2 ext_deg)}."""
    if ext_deg < 1:
        raise ValueError("ext_deg must be positive")
    p, m = c.p, c.spec.m
    T = make_field(p, m * ext_deg)
    U = make_field(p, m * 2 * ext_deg)
    vu = vec(U)
    polys = [f.lift(U) for f in c.affine]
    ders = [f.derivative() for f in polys]
    allu = vu.arange()
    coords = [vu.eval_poly(f.coeffs, allu) for f in polys]
    cloud = _PointCloud(coords, U)

    tvals = _lift_packed(T, U, vec(T).arange())
    vals = [x[tvals] for x in coords]
    dvals = [vu.eval_poly(f.coeffs, tvals) for f in ders]
    bad = np.ones(len(tvals), dtype=bool)
    for i, j in pair_index(c.N):
        mnr = vu.sub(vu.mul(vals[i], dvals[j]), vu.mul(vals[j], dvals[i]))
        bad &= mnr == 0
    if avoid is not None and not avoid.is_zero():
        bad |= vu.eval_poly(avoid.lift(U).coeffs, tvals) == 0
    good = np.nonzero(~bad)[0]
    if len(good) < samples:
        raise InsufficientPoints(f"only {len(good)} admissible parameters in GF({p}^{m * ext_deg})")
    rng = np.random.default_rng(seed)
    picks = np.sort(rng.choice(good, size=samples, replace=False))

    inf_pt = ProjPoint([U.elem(x) for x in c.leading_vector()])

    def count(idx: int) -> int:
        t0 = int(tvals[idx])
        a = ProjPoint([U.from_packed(int(x[t0])) for x in coords])
        b = [U.from_packed(int(v[idx])) for v in dvals]
        L = span_line(a, ProjPoint(b))
        hits = cloud.on_line(L)
        pts = {ProjPoint([U.from_packed(int(x[h])) for x in coords]) for h in hits if h != t0}
        pts.discard(a)
        pts.discard(inf_pt)
        return len(pts) + (1 if on_line(inf_pt, L) else 0)

    n_threads = threads or thread_count()
    if n_threads > 1:
        with ThreadPoolExecutor(n_threads) as ex:
            counts = list(ex.map(count, picks))
    else:
        counts = [count(i) for i in picks]
    hist = Counter(counts)
    top = max(hist.values())
    modal = min(k for k, v in hist.items() if v == top)
    details = {
        "t_field": f"GF({p}^{m * ext_deg})",
        "u_field": f"GF({p}^{m * 2 * ext_deg})",
        "samples": samples,
        "seed": seed,
        "histogram": {str(k): v for k, v in sorted(hist.items())},
        "disagreement": len(hist) > 1,
    }
    pattern = [{"count": k, "samples": v} for k, v in sorted(hist.items())]
    return TangencyProfile(modal, pattern, int(bad.sum()), "sampled", details)
