"""Finite fields F_{p^m} in a fixed power basis.

Elements are stored as tuples of residues (coordinates in the basis
1, X, ..., X^{m-1} of F_p[X]/(modulus)).  A second, array-oriented view of
the same field is provided by :class:`VecField`, where an element is packed
into the integer sum(c_i * p^i); it backs the brute-force sampling legs.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    DivisionByZero,
    FieldMismatch,
    NonPrimeCharacteristic,
    NotAnExtension,
    ReducibleModulus,
)

MAX_CHARACTERISTIC = 2**31
TABLE_LIMIT = 2**24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, e) with n = p**e, or None."""
    if n < 2:
        return None
    f = factorize(n)
    if len(f) != 1:
        return None
    (p, e), = f.items()
    return p, e


# --- small dense F_p[X] helpers (lists, low degree first) ------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    df = len(f) - 1
    inv = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = (a[-1] * inv) % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _fp_mulmod(a: list[int], b: list[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _fp_mod(prod, f, p)


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([x % p for x in a]), _trim([x % p for x in b])
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def _fp_frobenius_power_of_x(i: int, f: Sequence[int], p: int) -> list[int]:
    """X^(p^i) mod f."""
    r = _fp_mod([0, 1], f, p)
    for _ in range(i):
        base, e, acc = r, p, [1]
        while e:
            if e & 1:
                acc = _fp_mulmod(acc, base, f, p)
            base = _fp_mulmod(base, base, f, p)
            e >>= 1
        r = acc
    return r


def _fp_inverse_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    """a^{-1} mod f by the extended Euclidean algorithm (f irreducible, a nonzero mod f)."""
    r0, r1 = _trim([x % p for x in f]), _trim([x % p for x in a])
    s0, s1 = [], [1]
    while len(r1) > 1:
        quo = [0] * (len(r0) - len(r1) + 1)
        rem = list(r0)
        inv = pow(r1[-1], -1, p)
        for k in range(len(quo) - 1, -1, -1):
            c = (rem[k + len(r1) - 1] * inv) % p
            quo[k] = c
            if c:
                for i, y in enumerate(r1):
                    rem[k + i] = (rem[k + i] - c * y) % p
        rem = _trim(rem[:len(r1) - 1])
        prod = [0] * (len(quo) + len(s1) - 1) if s1 else []
        for i, x in enumerate(quo):
            if x:
                for j, y in enumerate(s1):
                    prod[i + j] += x * y
        n = max(len(s0), len(prod))
        s_new = _trim([((s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)) % p for i in range(n)])
        r0, r1, s0, s1 = r1, rem, s1, s_new
    c = pow(r1[0], -1, p)
    return _fp_mod([x * c for x in s1], f, p)


@lru_cache(maxsize=None)
def _is_irreducible(p: int, modulus: tuple[int, ...]) -> bool:
    m = len(modulus) - 1
    if m == 1:
        return True
    if modulus[0] == 0:
        return False
    for c in range(p):
        if sum(x * pow(c, i, p) for i, x in enumerate(modulus)) % p == 0:
            return False
    for i in range(1, m // 2 + 1):
        xp = _fp_frobenius_power_of_x(i, modulus, p)
        xp = xp + [0] * max(0, 2 - len(xp))
        xp[1] -= 1
        if len(_fp_gcd(list(modulus), xp, p)) > 1:
            return False
    return True


# --- FieldSpec / FieldElem --------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """The field F_{p^m} = F_p[X]/(modulus)."""

    p: int
    m: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise NonPrimeCharacteristic(f"{self.p} is not prime")
        if self.p >= MAX_CHARACTERISTIC:
            raise ValueError("characteristic must be below 2^31")
        if self.m < 1:
            raise ValueError("extension degree must be >= 1")
        if self.m == 1:
            if self.modulus is not None:
                object.__setattr__(self, "modulus", None)
            return
        if self.modulus is None:
            raise ValueError("modulus required for m > 1")
        mod = tuple(int(c) for c in self.modulus)
        if len(mod) != self.m + 1 or mod[-1] != 1 or any(not 0 <= c < self.p for c in mod):
            raise ValueError(f"modulus must be monic of degree {self.m} with residues mod {self.p}")
        if not _is_irreducible(self.p, mod):
            raise ReducibleModulus(f"{mod} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    # -- basic data
    @property
    def order(self) -> int:
        return self.p**self.m

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"

    @cached_property
    def zero(self) -> "FieldElem":
        return FieldElem(self, (0,) * self.m)

    @cached_property
    def one(self) -> "FieldElem":
        return FieldElem(self, (1,) + (0,) * (self.m - 1))

    @cached_property
    def gen(self) -> "FieldElem":
        """The class of X (equals 0 in a prime field's trivial basis; avoid there)."""
        if self.m == 1:
            raise ValueError("prime field has no polynomial generator")
        return FieldElem(self, (0, 1) + (0,) * (self.m - 2))

    def __call__(self, value) -> "FieldElem":
        return self.elem(value)

    def elem(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.spec == self:
                return value
            return lift(value, self)
        if isinstance(value, (int, np.integer)):
            return FieldElem(self, (int(value) % self.p,) + (0,) * (self.m - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) != self.m:
            raise ValueError(f"expected {self.m} coordinates, got {len(coeffs)}")
        return FieldElem(self, tuple(coeffs))

    def from_packed(self, n: int) -> "FieldElem":
        c = []
        for _ in range(self.m):
            n, r = divmod(int(n), self.p)
            c.append(r)
        return FieldElem(self, tuple(c))

    def elements(self) -> Iterator["FieldElem"]:
        """All elements, coordinates in lexicographic (low-degree-first) order."""
        for c in itertools.product(range(self.p), repeat=self.m):
            yield FieldElem(self, c)

    def units(self) -> Iterator["FieldElem"]:
        return (a for a in self.elements() if a)

    def random(self, rng: np.random.Generator) -> "FieldElem":
        return FieldElem(self, tuple(int(x) for x in rng.integers(0, self.p, self.m)))

    # -- coordinate arithmetic
    def _mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p, m = self.p, self.m
        if m == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        mod = self.modulus
        for j in range(2 * m - 2, m - 1, -1):
            c = prod[j] % p
            if c:
                base = j - m
                for i in range(m):
                    prod[base + i] -= c * mod[i]
        return tuple(x % p for x in prod[:m])

    @cached_property
    def _basis_mul_matrices(self) -> np.ndarray:
        """Stack of the multiplication matrices of 1, X, ..., X^{m-1}."""
        m = self.m
        out = np.zeros((m, m, m), dtype=np.int64)
        for k in range(m):
            xk = tuple(1 if i == k else 0 for i in range(m))
            for j in range(m):
                ej = tuple(1 if i == j else 0 for i in range(m))
                out[k, :, j] = self._mul(xk, ej)
        return out

    def mul_matrix(self, a: "FieldElem") -> np.ndarray:
        """m x m integer matrix of the F_p-linear map z -> a*z (acts on column vectors)."""
        if self.m == 1:
            return np.array([[a.coeffs[0] % self.p]], dtype=np.int64)
        return np.tensordot(np.asarray(a.coeffs, dtype=np.int64), self._basis_mul_matrices, axes=1) % self.p

    @cached_property
    def primitive_element(self) -> "FieldElem":
        q = self.order
        if q == 2:
            return self.one
        primes = list(factorize(q - 1))
        for n in range(1, q):
            c = self.from_packed(n)
            if all(c ** ((q - 1) // r) != self.one for r in primes):
                return c
        raise AssertionError("no primitive element")  # pragma: no cover

    def element_of_order(self, e: int) -> "FieldElem":
        if (self.order - 1) % e:
            raise ValueError(f"{e} does not divide {self.order - 1}")
        return self.primitive_element ** ((self.order - 1) // e)

    def frobenius_inverse(self, a: "FieldElem") -> "FieldElem":
        """The unique b with b^p = a."""
        return a ** (self.p ** (self.m - 1))


@dataclass(frozen=True, slots=True)
class FieldElem:
    spec: FieldSpec
    coeffs: tuple[int, ...]

    # -- coercion
    def _other(self, b) -> "FieldElem":
        if isinstance(b, FieldElem):
            if b.spec != self.spec:
                raise FieldMismatch(f"{self.spec} vs {b.spec}")
            return b
        if isinstance(b, (int, np.integer)):
            return self.spec.elem(int(b))
        return NotImplemented

    @property
    def packed(self) -> int:
        p = self.spec.p
        return sum(c * p**i for i, c in enumerate(self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __int__(self) -> int:
        if any(self.coeffs[1:]):
            raise ValueError(f"{self!r} is not in the prime field")
        return self.coeffs[0]

    def in_prime_field(self) -> bool:
        return not any(self.coeffs[1:])

    def __repr__(self) -> str:
        if self.spec.m == 1:
            return f"{self.coeffs[0]}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else (f"{c if c != 1 else ''}a" + (f"^{i}" if i > 1 else "")))
        return "(" + ("+".join(terms) or "0") + ")"

    def __add__(self, b):
        b = self._other(b)
        if b is NotImplemented:
            return b
        p = self.spec.p
        return FieldElem(self.spec, tuple((x + y) % p for x, y in zip(self.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.spec.p
        return FieldElem(self.spec, tuple((-x) % p for x in self.coeffs))

    def __sub__(self, b):
        b = self._other(b)
        if b is NotImplemented:
            return b
        p = self.spec.p
        return FieldElem(self.spec, tuple((x - y) % p for x, y in zip(self.coeffs, b.coeffs)))

    def __rsub__(self, b):
        b = self._other(b)
        if b is NotImplemented:
            return b
        return b - self

    def __mul__(self, b):
        b = self._other(b)
        if b is NotImplemented:
            return b
        return FieldElem(self.spec, self.spec._mul(self.coeffs, b.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if not self:
            raise DivisionByZero("inverse of zero")
        if self.spec.m == 1:
            return FieldElem(self.spec, (pow(self.coeffs[0], -1, self.spec.p),))
        out = _fp_inverse_mod(self.coeffs, self.spec.modulus, self.spec.p)
        return FieldElem(self.spec, tuple(out) + (0,) * (self.spec.m - len(out)))

    def __truediv__(self, b):
        b = self._other(b)
        if b is NotImplemented:
            return b
        return self * b.inverse()

    def __rtruediv__(self, b):
        b = self._other(b)
        if b is NotImplemented:
            return b
        return b * self.inverse()

    def __pow__(self, e: int):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        if not self:
            return self.spec.one if e == 0 else self
        if self.spec.m == 1:
            return FieldElem(self.spec, (pow(self.coeffs[0], e, self.spec.p),))
        e %= self.spec.order - 1
        acc, base = self.spec.one.coeffs, self.coeffs
        mul = self.spec._mul
        while e:
            if e & 1:
                acc = mul(acc, base)
            base = mul(base, base)
            e >>= 1
        return FieldElem(self.spec, acc)


# --- operations ------------------------------------------------------------

@lru_cache(maxsize=None)
def make_field(p: int, m: int = 1) -> FieldSpec:
    """Deterministic F_{p^m}: the lexicographically smallest monic irreducible modulus."""
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return FieldSpec(p)
    for low in itertools.product(range(p), repeat=m):
        if low[0] == 0:
            continue
        mod = low + (1,)
        if _is_irreducible(p, mod):
            return FieldSpec(p, m, mod)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    if a.spec != b.spec:
        raise FieldMismatch(f"{a.spec} vs {b.spec}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def frobenius(a: FieldElem, e: int = 1) -> FieldElem:
    """a^(p^e)."""
    if e < 0:
        raise ValueError("e must be non-negative")
    e %= a.spec.m
    return a ** (a.spec.p**e) if e else a


def roots_of_unity(spec: FieldSpec, d: int) -> list[FieldElem]:
    """All a with a^d = 1, sorted by coordinates."""
    if d < 1:
        raise ValueError("d must be positive")
    e = math.gcd(d, spec.order - 1)
    h = spec.element_of_order(e)
    out, x = [], spec.one
    for _ in range(e):
        out.append(x)
        x = x * h
    return sorted(out, key=lambda a: a.coeffs)


def is_subfield(source: FieldSpec, target: FieldSpec) -> bool:
    return source.p == target.p and target.m % source.m == 0


def subfield_elements(target: FieldSpec, k: int) -> list[FieldElem]:
    """The copy of F_{p^k} inside target (k | target.m), sorted by coordinates."""
    if target.m % k:
        raise NotAnExtension(f"F_{target.p}^{k} is not a subfield of {target}")
    size = target.p**k
    h = target.element_of_order(size - 1)
    out, x = [target.zero], target.one
    for _ in range(size - 1):
        out.append(x)
        x = x * h
    return sorted(out, key=lambda a: a.coeffs)


_embed_lock = threading.Lock()
_embed_cache: dict[tuple[FieldSpec, FieldSpec], tuple[FieldElem, ...]] = {}


def embedding(source: FieldSpec, target: FieldSpec) -> tuple[FieldElem, ...]:
    """Images of the basis 1, X, ..., X^{m-1} of source inside target."""
    if not is_subfield(source, target):
        raise NotAnExtension(f"{source} does not embed in {target}")
    key = (source, target)
    with _embed_lock:
        hit = _embed_cache.get(key)
    if hit is not None:
        return hit
    if source.m == 1:
        images = (target.one,)
    else:
        mod = source.modulus
        roots = []
        for z in subfield_elements(target, source.m):
            acc = target.zero
            for c in reversed(mod):
                acc = acc * z + c
            if not acc:
                roots.append(z)
        theta = min(roots, key=lambda a: a.coeffs)
        images, x = [], target.one
        for _ in range(source.m):
            images.append(x)
            x = x * theta
        images = tuple(images)
    with _embed_lock:
        _embed_cache.setdefault(key, images)
        return _embed_cache[key]


def lift(a: FieldElem, target: FieldSpec) -> FieldElem:
    if a.spec == target:
        return a
    images = embedding(a.spec, target)
    acc = target.zero
    for c, img in zip(a.coeffs, images):
        if c:
            acc = acc + img * c
    return acc


def common_field(specs: Iterable[FieldSpec]) -> FieldSpec:
    """Smallest field of make_field type containing all given fields (or the largest given one)."""
    specs = list(specs)
    p = specs[0].p
    if any(s.p != p for s in specs):
        raise FieldMismatch("different characteristics")
    biggest = max(specs, key=lambda s: s.m)
    if all(biggest.m % s.m == 0 for s in specs):
        return biggest
    m = math.lcm(*(s.m for s in specs))
    return make_field(p, m)


# --- vectorized view --------------------------------------------------------

class VecField:
    """Array arithmetic on packed elements of a field.

    Multiplication goes through exp/log tables when the field has at most
    TABLE_LIMIT elements, otherwise through coordinate convolution.
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p, self.m, self.q = spec.p, spec.m, spec.order
        self.pw = np.array([self.p**i for i in range(self.m)], dtype=np.int64)
        self._lock = threading.Lock()
        self._tables: tuple[np.ndarray, np.ndarray] | None = None

    def pack(self, a: FieldElem) -> int:
        return a.packed

    def unpack(self, n) -> FieldElem:
        return self.spec.from_packed(int(n))

    def arange(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def digits(self, a: np.ndarray) -> np.ndarray:
        return (np.asarray(a, dtype=np.int64)[..., None] // self.pw) % self.p

    def from_digits(self, d: np.ndarray) -> np.ndarray:
        return (np.asarray(d, dtype=np.int64) % self.p) @ self.pw

    def add(self, a, b):
        if self.m == 1:
            return (np.asarray(a) + b) % self.p
        return self.from_digits(self.digits(a) + self.digits(b))

    def sub(self, a, b):
        if self.m == 1:
            return (np.asarray(a) - b) % self.p
        return self.from_digits(self.digits(a) - self.digits(b))

    def neg(self, a):
        if self.m == 1:
            return (-np.asarray(a)) % self.p
        return self.from_digits(-self.digits(a))

    @property
    def tables(self) -> tuple[np.ndarray, np.ndarray]:
        with self._lock:
            if self._tables is None:
                self._tables = self._build_tables()
            return self._tables

    def _build_tables(self) -> tuple[np.ndarray, np.ndarray]:
        q, spec = self.q, self.spec
        g = spec.primitive_element
        block = min(q - 1, 1024)
        first, x = [], spec.one
        for _ in range(block):
            first.append(x.coeffs)
            x = x * g
        step = spec.mul_matrix(x).T  # x = g^block
        cur = np.array(first, dtype=np.int64)
        chunks = []
        done = 0
        while done < q - 1:
            take = min(block, q - 1 - done)
            chunks.append(cur[:take] @ self.pw)
            done += take
            cur = (cur @ step) % self.p
        exp = np.concatenate(chunks)
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        return exp, log

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a * b) % self.p
        if self.q <= TABLE_LIMIT:
            exp, log = self.tables
            res = exp[(log[a] + log[b]) % (self.q - 1)]
            return np.where((a == 0) | (b == 0), 0, res)
        return self._mul_digits(a, b)

    def _mul_digits(self, a, b):
        da, db = np.broadcast_arrays(self.digits(a), self.digits(b))
        m, p = self.m, self.p
        prod = np.zeros(da.shape[:-1] + (2 * m - 1,), dtype=np.int64)
        for i in range(m):
            for j in range(m):
                prod[..., i + j] += da[..., i] * db[..., j]
        prod %= p
        mod = self.spec.modulus
        for j in range(2 * m - 2, m - 1, -1):
            c = prod[..., j]
            for i in range(m):
                prod[..., j - m + i] = (prod[..., j - m + i] - c * mod[i]) % p
        return self.from_digits(prod[..., :m])

    def scale(self, c: FieldElem, a):
        """c * a for a scalar c (linear map on coordinates)."""
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return (a * c.coeffs[0]) % self.p
        return self.from_digits(self.digits(a) @ self.spec.mul_matrix(c).T)

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        if self.q <= TABLE_LIMIT and self.m > 1:
            exp, log = self.tables
            res = exp[(log[a] * (e % (self.q - 1))) % (self.q - 1)]
            return np.where(a == 0, 0, res)
        acc = np.ones_like(a)
        base = a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        return self.pow(a, self.q - 2)

    def eval_poly(self, coeffs: Sequence[FieldElem], xs) -> np.ndarray:
        """Evaluate sum coeffs[k] x^k at every packed x (coefficients in this field)."""
        xs = np.asarray(xs, dtype=np.int64)
        out = np.zeros_like(xs)
        nz = [(k, c) for k, c in enumerate(coeffs) if c]
        if not nz:
            return out
        if self.m > 1 and (self.q <= TABLE_LIMIT or len(nz) * 8 < len(coeffs)):
            # powers are cheap here: accumulate digit vectors and pack once
            acc = np.zeros(xs.shape + (self.m,), dtype=np.int64)
            for k, c in nz:
                acc += self.digits(self.pow(xs, k)) @ self.spec.mul_matrix(c).T
            return self.from_digits(acc)
        if len(nz) * 8 < len(coeffs):
            for k, c in nz:
                out = self.add(out, self.scale(c, self.pow(xs, k)))
            return out
        for c in reversed(coeffs):
            out = self.mul(out, xs)
            if c:
                out = self.add(out, np.full_like(xs, c.packed))
        return out


@lru_cache(maxsize=None)
def vec(spec: FieldSpec) -> VecField:
    return VecField(spec)
