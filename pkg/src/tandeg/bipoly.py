"""Polynomials in u over F[t], and gcds over the rational function field F(t).

A BiPoly stores one t-polynomial per power of u.  gcds over F(t) are computed
fraction-free: pseudo-remainders followed by content removal for the bulk
reduction against a pivot, and Brown-Collins subresultant sequences for the
pairwise gcds that follow.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import AllConstantInU, FieldMismatch
from .fields import FieldElem, FieldSpec, common_field
from .poly import Poly, gcd_many


class BiPoly:
    """Element of F[t][u]; coeffs[k] is the t-polynomial multiplying u^k."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: Sequence[Poly]):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        for c in coeffs:
            if c.spec != spec:
                raise FieldMismatch(f"{c.spec} vs {spec}")
        self.spec = spec
        self.coeffs = tuple(coeffs)

    # -- construction
    @classmethod
    def zero(cls, spec: FieldSpec) -> "BiPoly":
        return cls(spec, ())

    @classmethod
    def one(cls, spec: FieldSpec) -> "BiPoly":
        return cls(spec, (Poly.one(spec),))

    @classmethod
    def u(cls, spec: FieldSpec) -> "BiPoly":
        return cls(spec, (Poly.zero(spec), Poly.one(spec)))

    @classmethod
    def t(cls, spec: FieldSpec) -> "BiPoly":
        return cls(spec, (Poly.t(spec),))

    @classmethod
    def from_t(cls, f: Poly) -> "BiPoly":
        return cls(f.spec, (f,))

    @classmethod
    def from_u(cls, f: Poly) -> "BiPoly":
        """f(u), constant in t."""
        return cls.outer(f, Poly.one(f.spec))

    @classmethod
    def outer(cls, fu: Poly, gt: Poly) -> "BiPoly":
        """fu(u) * gt(t)."""
        spec = fu.spec
        zero = Poly.zero(spec)
        if fu.is_zero() or gt.is_zero():
            return cls.zero(spec)
        coeffs = [zero] * (fu.degree + 1)
        for k in fu.support():
            coeffs[k] = gt * fu[k]
        return cls(spec, coeffs)

    @classmethod
    def sum_outer(cls, spec: FieldSpec, terms: Iterable[tuple[Poly, Poly]]) -> "BiPoly":
        """sum of fu(u) * gt(t), accumulated coefficientwise."""
        acc: dict[int, Poly] = {}
        for fu, gt in terms:
            if fu.is_zero() or gt.is_zero():
                continue
            for k in fu.support():
                term = gt * fu[k]
                acc[k] = acc[k] + term if k in acc else term
        if not acc:
            return cls.zero(spec)
        zero = Poly.zero(spec)
        return cls(spec, [acc.get(k, zero) for k in range(max(acc) + 1)])

    # -- inspection
    @property
    def u_degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def t_degree(self) -> int:
        return max((c.degree for c in self.coeffs), default=-1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def lc(self) -> Poly:
        return self.coeffs[-1] if self.coeffs else Poly.zero(self.spec)

    def __getitem__(self, k: int) -> Poly:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Poly.zero(self.spec)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.spec == other.spec and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.spec, self.coeffs))

    def __repr__(self) -> str:
        return f"BiPoly({self.to_str()})"

    def to_str(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.u_degree, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            mon = "" if k == 0 else ("u" if k == 1 else f"u^{k}")
            cs = c.to_str()
            if not mon:
                parts.append(f"({cs})")
            elif cs == "1":
                parts.append(mon)
            else:
                parts.append(f"({cs})*{mon}")
        return " + ".join(parts)

    # -- arithmetic
    def _co(self, other) -> "BiPoly":
        if isinstance(other, BiPoly):
            if other.spec != self.spec:
                raise FieldMismatch(f"{self.spec} vs {other.spec}")
            return other
        if isinstance(other, Poly):
            return BiPoly.from_t(other)
        if isinstance(other, (int, FieldElem)):
            return BiPoly.from_t(Poly.const(self.spec, other))
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coeffs), len(o.coeffs))
        return BiPoly(self.spec, [self[k] + o[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return BiPoly(self.spec, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (Poly, int, FieldElem)):
            return BiPoly(self.spec, [c * other for c in self.coeffs])
        o = self._co(other)
        if o is NotImplemented:
            return o
        if self.is_zero() or o.is_zero():
            return BiPoly.zero(self.spec)
        out = [Poly.zero(self.spec)] * (self.u_degree + o.u_degree + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return BiPoly(self.spec, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "BiPoly":
        acc = BiPoly.one(self.spec)
        for _ in range(e):
            acc = acc * self
        return acc

    def shift_u(self, k: int) -> "BiPoly":
        if self.is_zero() or k == 0:
            return self
        return BiPoly(self.spec, [Poly.zero(self.spec)] * k + list(self.coeffs))

    # -- content and normal form
    def content(self) -> Poly:
        """Monic gcd of the t-coefficients."""
        return gcd_many(self.coeffs)

    def primitive(self) -> "BiPoly":
        if self.is_zero():
            return self
        c = self.content()
        if c.degree <= 0:
            return self
        return BiPoly(self.spec, [x.exact_div(c) for x in self.coeffs])

    def normalized(self) -> "BiPoly":
        """Primitive, with the leading u-coefficient monic as a t-polynomial."""
        if self.is_zero():
            return self
        f = self.primitive()
        return f * f.lc.lc.inverse()

    def lc_is_unit(self) -> bool:
        return self.lc.degree == 0

    # -- calculus and substitution
    def derivative_u(self) -> "BiPoly":
        p = self.spec.p
        return BiPoly(self.spec, [self.coeffs[k] * (k % p) for k in range(1, len(self.coeffs))])

    def derivative_t(self) -> "BiPoly":
        return BiPoly(self.spec, [c.derivative() for c in self.coeffs])

    def specialize_t(self, t0: FieldElem) -> Poly:
        """The u-polynomial F(u, t0) over the field of t0 (or of F)."""
        spec = common_field([self.spec, t0.spec])
        return Poly.from_coeffs(spec, [c(t0) for c in self.coeffs]) if self.coeffs else Poly.zero(spec)

    def evaluate_u(self, r: Poly) -> Poly:
        """F(r(t), t) as a t-polynomial."""
        acc = Poly.zero(self.spec)
        for c in reversed(self.coeffs):
            acc = acc * r + c
        return acc

    def evaluate_at(self, u0: FieldElem, t0: FieldElem) -> FieldElem:
        return self.specialize_t(t0)(u0)

    def deflate_u(self, p: int) -> "BiPoly":
        if any(k % p for k, c in enumerate(self.coeffs) if not c.is_zero()):
            raise ValueError("not a polynomial in u^p")
        return BiPoly(self.spec, self.coeffs[::p])

    def inflate_u(self, p: int) -> "BiPoly":
        if self.is_zero():
            return self
        zero = Poly.zero(self.spec)
        out = [zero] * (self.u_degree * p + 1)
        for k, c in enumerate(self.coeffs):
            out[k * p] = c
        return BiPoly(self.spec, out)

    def lift(self, target: FieldSpec) -> "BiPoly":
        return BiPoly(target, [c.lift(target) for c in self.coeffs])

    # -- division
    def prem(self, g: "BiPoly") -> "BiPoly":
        """lc(g)^(deg F - deg g + 1) * F  mod g, computed in F[t][u]."""
        if g.is_zero():
            raise ZeroDivisionError("pseudo-division by zero")
        dg = g.u_degree
        if self.u_degree < dg:
            return self
        e = self.u_degree - dg + 1
        r = list(self.coeffs)
        lc = g.lc
        steps = 0
        for k in range(self.u_degree, dg - 1, -1):
            lead = r[k]
            r[k] = Poly.zero(self.spec)
            if lead.is_zero():
                continue
            steps += 1
            for j in range(k):
                r[j] = r[j] * lc
            for j in range(dg):
                gj = g.coeffs[j]
                if not gj.is_zero():
                    r[k - dg + j] = r[k - dg + j] - lead * gj
        if e - steps:
            mult = lc ** (e - steps)
            r = [x * mult for x in r]
        return BiPoly(self.spec, r[:dg])

    def rem_over_field(self, g: "BiPoly") -> "BiPoly":
        """A representative of F mod g in F(t)[u], up to a factor in F(t)*."""
        if g.is_zero():
            raise ZeroDivisionError("division by zero")
        dg = g.u_degree
        if self.u_degree < dg:
            return self
        r = list(self.coeffs)
        zero = Poly.zero(self.spec)
        if g.lc_is_unit():
            inv = g.lc.lc.inverse()
            for k in range(self.u_degree, dg - 1, -1):
                lead = r[k]
                r[k] = zero
                if lead.is_zero():
                    continue
                c = lead * inv
                for j in range(dg):
                    gj = g.coeffs[j]
                    if not gj.is_zero():
                        r[k - dg + j] = r[k - dg + j] - c * gj
            return BiPoly(self.spec, r[:dg])
        lc = g.lc
        for k in range(self.u_degree, dg - 1, -1):
            lead = r[k]
            r[k] = zero
            if lead.is_zero():
                continue
            for j in range(k):
                if not r[j].is_zero():
                    r[j] = r[j] * lc
            for j in range(dg):
                gj = g.coeffs[j]
                if not gj.is_zero():
                    r[k - dg + j] = r[k - dg + j] - lead * gj
        return BiPoly(self.spec, r[:dg]).primitive()

    def exact_div(self, g: "BiPoly") -> "BiPoly | None":
        """Quotient in F[t][u] if g divides F there, else None."""
        if g.is_zero():
            raise ZeroDivisionError("division by zero")
        if self.is_zero():
            return self
        dg = g.u_degree
        if self.u_degree < dg:
            return None
        r = list(self.coeffs)
        q = [Poly.zero(self.spec)] * (self.u_degree - dg + 1)
        for k in range(self.u_degree, dg - 1, -1):
            lead = r[k]
            if lead.is_zero():
                continue
            c, rem = lead.divmod(g.lc)
            if not rem.is_zero():
                return None
            q[k - dg] = c
            for j in range(dg + 1):
                gj = g.coeffs[j]
                if not gj.is_zero():
                    r[k - dg + j] = r[k - dg + j] - c * gj
        if any(not x.is_zero() for x in r[:dg]):
            return None
        return BiPoly(self.spec, q)

    def divides(self, f: "BiPoly") -> bool:
        return f.exact_div(self) is not None


def subresultant_gcd(a: BiPoly, b: BiPoly) -> BiPoly:
    """gcd over F(t) by the Brown-Collins subresultant PRS; primitive result."""
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    if a.u_degree < b.u_degree:
        a, b = b, a
    a, b = a.primitive(), b.primitive()
    spec = a.spec
    g = Poly.one(spec)
    h = Poly.one(spec)
    while True:
        delta = a.u_degree - b.u_degree
        r = a.prem(b)
        if r.is_zero():
            return b.primitive()
        if r.u_degree == 0:
            return BiPoly.one(spec)
        a = b
        div = g * h**delta
        b = BiPoly(spec, [c.exact_div(div) for c in r.coeffs])
        g = a.lc
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g**delta).exact_div(h ** (delta - 1))


def _pivot_key(f: BiPoly):
    return (f.u_degree, 0 if f.lc_is_unit() else 1, f.t_degree)


def gcd_over_ratfield(fs: Iterable[BiPoly]) -> BiPoly:
    """gcd in F(t)[u] of a family, as a normalized element of F[t][u].

    The u-degree of the result counts common roots over the algebraic closure
    of F(t), with multiplicity.
    """
    fs = [f for f in fs if not f.is_zero()]
    if not fs or all(f.u_degree <= 0 for f in fs):
        raise AllConstantInU("no input has positive degree in u")
    spec = fs[0].spec
    if any(f.u_degree == 0 for f in fs):
        return BiPoly.one(spec)
    fs.sort(key=_pivot_key)
    g = fs[0].primitive()
    rems = []
    for f in fs[1:]:
        r = f.rem_over_field(g)
        if not r.is_zero():
            if r.u_degree == 0:
                return BiPoly.one(spec)
            rems.append(r.primitive())
    rems.sort(key=_pivot_key)
    for r in rems:
        if r.u_degree >= g.u_degree:
            r = r.rem_over_field(g)
            if r.is_zero():
                continue
        g = subresultant_gcd(g, r)
        if g.u_degree == 0:
            return BiPoly.one(spec)
    return g.normalized()


def gcd_pair(a: BiPoly, b: BiPoly) -> BiPoly:
    return gcd_over_ratfield([a, b])


def exact_quotient(f: BiPoly, g: BiPoly) -> BiPoly:
    """f / g in F[t][u] for g primitive dividing f over F(t)."""
    q = f.exact_div(g)
    if q is None:
        raise ArithmeticError("inexact bivariate division")
    return q


@dataclass(frozen=True)
class SqfPiece:
    """factor(u^(p^level)) occurs with the given multiplicity for each of its roots."""

    factor: BiPoly
    level: int
    multiplicity: int

    @property
    def distinct_roots(self) -> int:
        return self.factor.u_degree

    def expanded(self) -> BiPoly:
        f = self.factor
        p = f.spec.p
        for _ in range(self.level):
            f = f.inflate_u(p)
        return f


def squarefree_decomposition(f: BiPoly) -> list[SqfPiece]:
    """Square-free decomposition over F(t) in characteristic p."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    out: list[SqfPiece] = []
    _sqf(f.normalized(), 0, 1, out)
    return out


def _sqf(f: BiPoly, level: int, scale: int, out: list[SqfPiece]) -> None:
    if f.u_degree <= 0:
        return
    spec, p = f.spec, f.spec.p
    df = f.derivative_u()
    if df.is_zero():
        c, w = f, BiPoly.one(spec)
    else:
        c = subresultant_gcd(f, df)
        w = exact_quotient(f, c)
    i = 1
    while w.u_degree > 0:
        y = subresultant_gcd(w, c)
        fac = exact_quotient(w, y)
        if fac.u_degree > 0:
            out.append(SqfPiece(fac.normalized(), level, i * scale))
        w = y
        c = exact_quotient(c, y)
        i += 1
    if c.u_degree > 0:
        _sqf(c.deflate_u(p).primitive(), level + 1, scale * p, out)


def diagonal_root_in(piece: SqfPiece) -> bool:
    """Whether u = t is a root of the piece."""
    spec = piece.factor.spec
    tp = Poly.monomial(spec, spec.p**piece.level)
    return piece.factor.evaluate_u(tp).is_zero()


def resultant_u(a: BiPoly, b: BiPoly) -> Poly:
    """Res_u(a, b) in F[t], by fraction-free elimination of the Sylvester matrix."""
    spec = a.spec
    m, n = a.u_degree, b.u_degree
    if m < 0 or n < 0:
        return Poly.zero(spec)
    if m == 0:
        return a.lc**n
    if n == 0:
        return b.lc**m
    size = m + n
    zero = Poly.zero(spec)
    rows = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + k] = a[m - k]
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + k] = b[n - k]
        rows.append(row)
    return bareiss_det(rows)


def bareiss_det(M: list[list[Poly]]) -> Poly:
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    spec = M[0][0].spec
    M = [list(r) for r in M]
    sign = 1
    prev = Poly.one(spec)
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(spec)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).exact_div(prev)
            M[i][k] = Poly.zero(spec)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign == 1 else -det
