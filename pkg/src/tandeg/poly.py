"""Dense univariate polynomials and reduced rational functions over F_{p^m}.

Coefficients are held in an (n, m) int64 array, row k holding the power-basis
coordinates of the coefficient of t^k.  Trailing zero rows are always
trimmed, so the zero polynomial has shape (0, m).
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from .errors import BothZero, DivisionByZero, FieldMismatch
from .fields import FieldElem, FieldSpec, common_field, embedding

KARATSUBA_THRESHOLD = 2048


# --- kernels on 1-D residue arrays -------------------------------------------

def _conv_direct(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if (p - 1) ** 2 * min(len(a), len(b)) < 2**62:
        return np.convolve(a, b) % p
    r = np.convolve(a.astype(object), b.astype(object)) % p
    return r.astype(np.int64)


def _conv(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    n, k = len(a), len(b)
    if n == 0 or k == 0:
        return np.zeros(0, dtype=np.int64)
    if min(n, k) < KARATSUBA_THRESHOLD:
        return _conv_direct(a, b, p)
    if 2 * n < k or 2 * k < n:
        if n < k:
            a, b, n, k = b, a, k, n
        out = np.zeros(n + k - 1, dtype=np.int64)
        for s in range(0, n, k):
            piece = _conv(a[s:s + k], b, p)
            out[s:s + len(piece)] += piece
        return out % p
    h = max(n, k) // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = _conv(a0, b0, p)
    z2 = _conv(a1, b1, p)
    sa = _padd(a0, a1, p)
    sb = _padd(b0, b1, p)
    z1 = _conv(sa, sb, p)
    out = np.zeros(n + k - 1, dtype=np.int64)
    out[:len(z0)] += z0
    out[2 * h:2 * h + len(z2)] += z2
    mid = z1.copy()
    mid[:len(z0)] -= z0
    mid[:len(z2)] -= z2
    out[h:h + len(mid)] += mid
    return out % p


def _padd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if len(a) < len(b):
        a, b = b, a
    r = a.copy()
    r[:len(b)] += b
    return r % p


def _trim2(c: np.ndarray) -> np.ndarray:
    n = c.shape[0]
    while n and not c[n - 1].any():
        n -= 1
    return c[:n]


def _mul2(A: np.ndarray, B: np.ndarray, spec: FieldSpec) -> np.ndarray:
    p, m = spec.p, spec.m
    if A.shape[0] == 0 or B.shape[0] == 0:
        return np.zeros((0, m), dtype=np.int64)
    if m == 1:
        return _conv(A[:, 0], B[:, 0], p)[:, None]
    n = A.shape[0] + B.shape[0] - 1
    acc = np.zeros((n, 2 * m - 1), dtype=np.int64)
    for r in range(m):
        if not A[:, r].any():
            continue
        for s in range(m):
            if B[:, s].any():
                acc[:, r + s] += _conv(A[:, r], B[:, s], p)
    acc %= p
    mod = spec.modulus
    for j in range(2 * m - 2, m - 1, -1):
        col = acc[:, j]
        if col.any():
            for i in range(m):
                if mod[i]:
                    acc[:, j - m + i] -= col * mod[i]
            acc[:, j - m:j] %= p
    return acc[:, :m] % p


def _scale2(A: np.ndarray, c: FieldElem) -> np.ndarray:
    spec = c.spec
    if spec.m == 1:
        return (A * c.coeffs[0]) % spec.p
    return (A @ spec.mul_matrix(c).T) % spec.p


class Poly:
    """Polynomial in one variable over a FieldSpec (immutable)."""

    __slots__ = ("spec", "c", "_hash")

    def __init__(self, spec: FieldSpec, c, _trusted: bool = False):
        self.spec = spec
        if not _trusted:
            c = np.asarray(c, dtype=np.int64).reshape(-1, spec.m) % spec.p
            c = _trim2(c)
        c.setflags(write=False)
        self.c = c
        self._hash = None

    # -- construction
    @classmethod
    def zero(cls, spec: FieldSpec) -> "Poly":
        return cls(spec, np.zeros((0, spec.m), dtype=np.int64), True)

    @classmethod
    def one(cls, spec: FieldSpec) -> "Poly":
        return cls.const(spec, spec.one)

    @classmethod
    def const(cls, spec: FieldSpec, a) -> "Poly":
        a = spec.elem(a)
        if not a:
            return cls.zero(spec)
        return cls(spec, np.array([a.coeffs], dtype=np.int64), True)

    @classmethod
    def t(cls, spec: FieldSpec) -> "Poly":
        return cls.monomial(spec, 1)

    @classmethod
    def monomial(cls, spec: FieldSpec, k: int, coeff=1) -> "Poly":
        coeff = spec.elem(coeff)
        if not coeff:
            return cls.zero(spec)
        c = np.zeros((k + 1, spec.m), dtype=np.int64)
        c[k] = coeff.coeffs
        return cls(spec, c, True)

    @classmethod
    def from_coeffs(cls, spec: FieldSpec, coeffs: Iterable) -> "Poly":
        rows = [spec.elem(x).coeffs for x in coeffs]
        if not rows:
            return cls.zero(spec)
        return cls(spec, np.array(rows, dtype=np.int64))

    @classmethod
    def from_terms(cls, spec: FieldSpec, terms: Mapping[int, object]) -> "Poly":
        if not terms:
            return cls.zero(spec)
        c = np.zeros((max(terms) + 1, spec.m), dtype=np.int64)
        for k, v in terms.items():
            c[k] = (c[k] + np.array(spec.elem(v).coeffs)) % spec.p
        return cls(spec, c)

    # -- inspection
    @property
    def degree(self) -> int:
        return self.c.shape[0] - 1

    def is_zero(self) -> bool:
        return self.c.shape[0] == 0

    def __bool__(self) -> bool:
        return self.c.shape[0] > 0

    def __getitem__(self, k: int) -> FieldElem:
        if 0 <= k < self.c.shape[0]:
            return FieldElem(self.spec, tuple(int(x) for x in self.c[k]))
        return self.spec.zero

    @property
    def coeffs(self) -> tuple[FieldElem, ...]:
        return tuple(self[k] for k in range(self.c.shape[0]))

    @property
    def lc(self) -> FieldElem:
        if self.is_zero():
            return self.spec.zero
        return self[self.degree]

    def support(self) -> list[int]:
        return [int(k) for k in np.nonzero(self.c.any(axis=1))[0]]

    def is_constant(self) -> bool:
        return self.c.shape[0] <= 1

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, FieldElem)):
            other = Poly.const(self.spec, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.c, other.c)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.spec, self.c.shape, self.c.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({self.to_str()})"

    def to_str(self, var: str = "t") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in reversed(self.support()):
            c = self[k]
            cs = repr(c)
            if k == 0:
                parts.append(cs)
            else:
                mon = var if k == 1 else f"{var}^{k}"
                parts.append(mon if c == self.spec.one else f"{cs}*{mon}")
        return " + ".join(parts)

    def int_rows(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.c]

    # -- coercion
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.spec != self.spec:
                raise FieldMismatch(f"{self.spec} vs {other.spec}")
            return other
        if isinstance(other, (int, np.integer, FieldElem)):
            if isinstance(other, FieldElem) and other.spec != self.spec:
                raise FieldMismatch(f"{self.spec} vs {other.spec}")
            return Poly.const(self.spec, other)
        return NotImplemented

    # -- arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.c, other.c
        if a.shape[0] < b.shape[0]:
            a, b = b, a
        r = a.copy()
        r[:b.shape[0]] += b
        r %= self.spec.p
        return Poly(self.spec, _trim2(r), True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.spec, (-self.c) % self.spec.p, True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, FieldElem) or isinstance(other, (int, np.integer)):
            c = self.spec.elem(other) if not isinstance(other, FieldElem) else other
            if c.spec != self.spec:
                raise FieldMismatch(f"{self.spec} vs {c.spec}")
            if not c:
                return Poly.zero(self.spec)
            return Poly(self.spec, _scale2(self.c, c), True)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly(self.spec, _trim2(_mul2(self.c, other.c, self.spec)), True)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative exponent")
        acc, base = Poly.one(self.spec), self
        while e:
            if e & 1:
                acc = acc * base
            e >>= 1
            if e:
                base = base * base
        return acc

    def shift_up(self, k: int) -> "Poly":
        """Multiply by t^k."""
        if self.is_zero() or k == 0:
            return self
        pad = np.zeros((k, self.spec.m), dtype=np.int64)
        return Poly(self.spec, np.vstack([pad, self.c]), True)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * self.lc.inverse()

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        other = self._coerce(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        spec, p, m = self.spec, self.spec.p, self.spec.m
        na, nb = self.c.shape[0], other.c.shape[0]
        if na < nb:
            return Poly.zero(spec), self
        a = self.c.copy()
        B = other.c
        inv = other.lc.inverse()
        quot = np.zeros((na - nb + 1, m), dtype=np.int64)
        if m == 1:
            iv = inv.coeffs[0]
            b = B[:, 0]
            col = a[:, 0]
            if nb == 1:
                quot[:, 0] = (col * iv) % p
                return Poly(spec, _trim2(quot), True), Poly.zero(spec)
            for k in range(na - nb, -1, -1):
                c = (int(col[k + nb - 1]) * iv) % p
                if c:
                    quot[k, 0] = c
                    col[k:k + nb] = (col[k:k + nb] - c * b) % p
            return Poly(spec, _trim2(quot), True), Poly(spec, _trim2(a[:nb - 1]), True)
        basis = [B]
        xm = spec.mul_matrix(spec.gen).T
        for _ in range(m - 1):
            basis.append((basis[-1] @ xm) % p)
        basis = np.stack(basis)  # (m, nb, m): X^i * B
        for k in range(na - nb, -1, -1):
            top = a[k + nb - 1]
            if top.any():
                c = spec._mul(tuple(int(x) for x in top), inv.coeffs)
                quot[k] = c
                a[k:k + nb] = (a[k:k + nb] - np.tensordot(np.array(c), basis, axes=1)) % p
        return Poly(spec, _trim2(quot), True), Poly(spec, _trim2(a[:nb - 1]), True)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero()

    # -- calculus and substitution
    def derivative(self) -> "Poly":
        n = self.c.shape[0]
        if n <= 1:
            return Poly.zero(self.spec)
        k = (np.arange(1, n, dtype=np.int64) % self.spec.p)[:, None]
        return Poly(self.spec, _trim2((self.c[1:] * k) % self.spec.p), True)

    def lift(self, target: FieldSpec) -> "Poly":
        if target == self.spec:
            return self
        images = embedding(self.spec, target)
        M = np.array([e.coeffs for e in images], dtype=np.int64)  # (m_s, m_t)
        return Poly(target, _trim2((self.c @ M) % target.p), True)

    def __call__(self, x):
        """Evaluate at a field element (the larger of the two fields is used)."""
        if isinstance(x, (int, np.integer)):
            x = self.spec.elem(x)
        if isinstance(x, Poly):
            return self.compose(x)
        spec = common_field([self.spec, x.spec])
        f = self.lift(spec)
        x = spec.elem(x)
        supp = f.support()
        if not supp:
            return spec.zero
        if len(supp) * 4 < f.degree:
            acc = spec.zero
            for k in supp:
                acc = acc + f[k] * x**k
            return acc
        acc = spec.zero
        for k in range(f.degree, -1, -1):
            acc = acc * x + f[k]
        return acc

    def compose(self, g: "Poly") -> "Poly":
        acc = Poly.zero(g.spec)
        f = self.lift(g.spec)
        for k in range(f.degree, -1, -1):
            acc = acc * g + f[k]
        return acc

    def shift(self, alpha: FieldElem) -> "Poly":
        """f(t + alpha), computed by Horner recomposition."""
        spec = common_field([self.spec, alpha.spec])
        f = self.lift(spec)
        alpha = spec.elem(alpha)
        if not alpha or f.degree <= 0:
            return f
        p, m = spec.p, spec.m
        n = f.c.shape[0]
        acc = np.zeros((n, m), dtype=np.int64)
        if m == 1:
            a = alpha.coeffs[0]
            for k in range(n - 1, -1, -1):
                # acc <- acc*(t+alpha) + f_k; acc currently has degree n-2-k
                deg = n - 1 - k
                acc[1:deg + 1] = (acc[:deg] + a * acc[1:deg + 1]) % p
                acc[0] = (a * acc[0] + f.c[k]) % p
        else:
            M = spec.mul_matrix(alpha).T
            for k in range(n - 1, -1, -1):
                deg = n - 1 - k
                acc[1:deg + 1] = (acc[:deg] + acc[1:deg + 1] @ M) % p
                acc[0] = (acc[0] @ M + f.c[k]) % p
        return Poly(spec, _trim2(acc), True)

    def homogeneous_substitute(self, A: "Poly", B: "Poly", D: int) -> "Poly":
        """sum_k c_k A^k B^(D-k) for D >= deg."""
        f = self.lift(A.spec)
        acc = Poly.zero(A.spec)
        powB = [Poly.one(A.spec)]
        for _ in range(D):
            powB.append(powB[-1] * B)
        powA = Poly.one(A.spec)
        for k in range(f.degree + 1):
            if f[k]:
                acc = acc + powA * powB[D - k] * f[k]
            powA = powA * A
        return acc

    def reverse(self, d: int) -> "Poly":
        """t^d f(1/t) for d >= deg."""
        if self.is_zero():
            return self
        c = np.zeros((d + 1, self.spec.m), dtype=np.int64)
        c[d - self.degree:] = self.c[::-1]
        return Poly(self.spec, _trim2(c), True)

    def pth_root(self) -> "Poly | None":
        """h with h^p = self, or None."""
        p = self.spec.p
        supp = self.support()
        if any(k % p for k in supp):
            return None
        terms = {k // p: self.spec.frobenius_inverse(self[k]) for k in supp}
        return Poly.from_terms(self.spec, terms)

    def deflate(self, p: int) -> "Poly":
        """g with g(t^p) = self (requires all exponents divisible by p)."""
        if any(k % p for k in self.support()):
            raise ValueError("not a polynomial in t^p")
        return Poly(self.spec, self.c[::p].copy(), True)

    def inflate(self, p: int) -> "Poly":
        if self.is_zero():
            return self
        c = np.zeros(((self.c.shape[0] - 1) * p + 1, self.spec.m), dtype=np.int64)
        c[::p] = self.c
        return Poly(self.spec, c, True)


def gcd_uni(a: Poly, b: Poly) -> Poly:
    """Monic gcd by Euclid's algorithm."""
    if a.spec != b.spec:
        raise FieldMismatch(f"{a.spec} vs {b.spec}")
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        if b.degree == 0:
            return Poly.one(a.spec)
        a, b = b, a % b
    return a.monic()


def gcd_many(polys: Iterable[Poly]) -> Poly:
    """Monic gcd of a family; zero if every member is zero."""
    g = None
    for f in sorted((f for f in polys if not f.is_zero()), key=lambda f: f.degree):
        g = f.monic() if g is None else gcd_uni(g, f)
        if g.degree == 0:
            return g
    if g is None:
        raise BothZero("all polynomials are zero")
    return g


def xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, s, t) with s*a + t*b = g monic."""
    spec = a.spec
    r0, r1 = a, b
    s0, s1 = Poly.one(spec), Poly.zero(spec)
    t0, t1 = Poly.zero(spec), Poly.one(spec)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = r0.lc.inverse()
    return r0 * inv, s0 * inv, t0 * inv


def squarefree_part(f: Poly) -> Poly:
    """Product of the distinct monic irreducible factors of f (f != 0)."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    f = f.monic()
    if f.degree <= 0:
        return Poly.one(f.spec)
    d = f.derivative()
    if d.is_zero():
        return squarefree_part(f.pth_root())
    c = gcd_uni(f, d)
    w = f.exact_div(c)
    # strip the remaining copies of w's roots out of c; what remains is a p-th power
    while True:
        y = gcd_uni(w, c)
        if y.degree == 0:
            break
        c = c.exact_div(y)
    if c.degree > 0:
        rest = squarefree_part(c.pth_root())
        return (w * rest).exact_div(gcd_uni(w, rest))
    return w


def distinct_root_count(f: Poly) -> int:
    """Number of distinct roots of f in the algebraic closure."""
    return max(squarefree_part(f).degree, 0)


# --- rational functions -----------------------------------------------------

class RatFunc:
    """num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, _reduced: bool = False):
        if den is None:
            den = Poly.one(num.spec)
        if num.spec != den.spec:
            raise FieldMismatch(f"{num.spec} vs {den.spec}")
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly.one(num.spec)
            else:
                g = gcd_uni(num, den)
                if g.degree > 0:
                    num, den = num.exact_div(g), den.exact_div(g)
                inv = den.lc.inverse()
                num, den = num * inv, den * inv
        self.num, self.den = num, den

    @property
    def spec(self) -> FieldSpec:
        return self.num.spec

    @classmethod
    def of(cls, spec: FieldSpec, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return cls(x, Poly.one(x.spec), True)
        return cls(Poly.const(spec, x), Poly.one(spec), True)

    @classmethod
    def t(cls, spec: FieldSpec) -> "RatFunc":
        return cls.of(spec, Poly.t(spec))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            if isinstance(other, (Poly, int, FieldElem)):
                other = RatFunc.of(self.spec, other)
            else:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        if self.is_poly():
            return f"RatFunc({self.num.to_str()})"
        return f"RatFunc(({self.num.to_str()}) / ({self.den.to_str()}))"

    def _co(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.spec != self.spec:
                raise FieldMismatch(f"{self.spec} vs {other.spec}")
            return other
        if isinstance(other, (Poly, int, np.integer, FieldElem)):
            return RatFunc.of(self.spec, other)
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, True)

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
        o = self._co(other)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise DivisionByZero("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.num**e, self.den**e, True)

    def lift(self, target: FieldSpec) -> "RatFunc":
        return RatFunc(self.num.lift(target), self.den.lift(target), True)

    def __call__(self, x: FieldElem) -> FieldElem:
        d = self.den(x)
        if not d:
            raise DivisionByZero("pole")
        return self.num(x) / d

    def derivative(self) -> "RatFunc":
        return derivative(self)

    def shift(self, alpha: FieldElem) -> "RatFunc":
        return shift(self, alpha)


def _as_ratfunc(f) -> RatFunc:
    if isinstance(f, RatFunc):
        return f
    if isinstance(f, Poly):
        return RatFunc.of(f.spec, f)
    raise TypeError(f"expected RatFunc or Poly, got {type(f).__name__}")


def derivative(f) -> RatFunc:
    """d/dt by the quotient rule."""
    f = _as_ratfunc(f)
    if f.is_poly():
        return RatFunc(f.num.derivative(), f.den, True)
    return RatFunc(f.num.derivative() * f.den - f.num * f.den.derivative(), f.den * f.den)


def shift(g, alpha: FieldElem) -> RatFunc:
    """g(t + alpha)."""
    g = _as_ratfunc(g)
    return RatFunc(g.num.shift(alpha), g.den.shift(alpha))


def is_pth_power(f) -> RatFunc | None:
    """The unique h with h^p = f, or None."""
    f = _as_ratfunc(f)
    a = f.num.pth_root()
    if a is None:
        return None
    b = f.den.pth_root()
    if b is None:
        return None
    return RatFunc(a, b, True)


def compose_moebius(g, a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> RatFunc:
    """g((a t + b) / (c t + d))."""
    g = _as_ratfunc(g)
    spec = common_field([g.spec, a.spec, b.spec, c.spec, d.spec])
    a, b, c, d = (spec.elem(x) for x in (a, b, c, d))
    A = Poly.from_coeffs(spec, [b, a])
    B = Poly.from_coeffs(spec, [d, c])
    D = max(g.num.degree, g.den.degree, 0)
    num = g.num.homogeneous_substitute(A, B, D)
    den = g.den.homogeneous_substitute(A, B, D)
    return RatFunc(num, den)
