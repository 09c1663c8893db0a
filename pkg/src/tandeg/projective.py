"""Points of P^N and lines of P^N in Pluecker coordinates."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import CoincidentPoints, InvalidLine
from .fields import FieldElem, FieldSpec, VecField


def _normalize(coords: Sequence[FieldElem]) -> tuple[FieldElem, ...]:
    for c in coords:
        if c:
            inv = c.inverse()
            return tuple(x * inv for x in coords)
    raise ValueError("the zero vector is not a projective point")


@lru_cache(maxsize=None)
def pair_index(N: int) -> tuple[tuple[int, int], ...]:
    return tuple(combinations(range(N + 1), 2))


@lru_cache(maxsize=None)
def _pair_pos(N: int) -> dict[tuple[int, int], int]:
    return {pair: k for k, pair in enumerate(pair_index(N))}


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[FieldElem, ...]

    def __init__(self, coords: Sequence[FieldElem]):
        object.__setattr__(self, "coords", _normalize(list(coords)))

    @property
    def N(self) -> int:
        return len(self.coords) - 1

    @property
    def spec(self) -> FieldSpec:
        return self.coords[0].spec

    @classmethod
    def of(cls, spec: FieldSpec, values) -> "ProjPoint":
        return cls([spec.elem(v) for v in values])

    def __repr__(self) -> str:
        return "(" + ":".join(repr(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class PlueckerLine:
    """Line through two points of P^N; pl[k] = p_ij for the k-th pair i < j."""

    N: int
    pl: tuple[FieldElem, ...]

    def __init__(self, N: int, pl: Sequence[FieldElem], check: bool = True):
        if len(pl) != (N + 1) * N // 2:
            raise InvalidLine(f"expected {(N + 1) * N // 2} coordinates")
        pl = _normalize(list(pl))
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "pl", pl)
        if check and not self.is_decomposable():
            raise InvalidLine("coordinates violate the Pluecker relations")

    @property
    def spec(self) -> FieldSpec:
        return self.pl[0].spec

    def p(self, i: int, j: int) -> FieldElem:
        if i == j:
            return self.spec.zero
        if i > j:
            return -self.p(j, i)
        return self.pl[self._index[(i, j)]]

    @property
    def _index(self) -> dict[tuple[int, int], int]:
        return _pair_pos(self.N)

    def is_decomposable(self) -> bool:
        """omega ^ omega = 0: all four-index Pluecker relations hold."""
        idx = self._index
        pl = self.pl
        for i, j, k, l in combinations(range(self.N + 1), 4):
            v = (pl[idx[(i, j)]] * pl[idx[(k, l)]] - pl[idx[(i, k)]] * pl[idx[(j, l)]]
                 + pl[idx[(i, l)]] * pl[idx[(j, k)]])
            if v:
                return False
        return True

    def points(self) -> tuple[ProjPoint, ProjPoint]:
        """Two spanning points, recovered from the contraction rows of omega."""
        pairs = pair_index(self.N)
        k = next(k for k, c in enumerate(self.pl) if c)
        i, j = pairs[k]
        row_i = [self.p(i, x) for x in range(self.N + 1)]
        row_j = [self.p(j, x) for x in range(self.N + 1)]
        return ProjPoint(row_i), ProjPoint(row_j)

    def __repr__(self) -> str:
        return "PlueckerLine[" + ", ".join(repr(c) for c in self.pl) + "]"


def span_line(a: ProjPoint, b: ProjPoint) -> PlueckerLine:
    if a.N != b.N:
        raise ValueError("points live in different spaces")
    pl = [a.coords[i] * b.coords[j] - a.coords[j] * b.coords[i] for i, j in pair_index(a.N)]
    if not any(pl):
        raise CoincidentPoints("points coincide")
    return PlueckerLine(a.N, pl, check=False)


def on_line(q: ProjPoint, L: PlueckerLine) -> bool:
    """omega ^ q = 0."""
    x = q.coords
    for i, j, k in combinations(range(L.N + 1), 3):
        if L.p(i, j) * x[k] - L.p(i, k) * x[j] + L.p(j, k) * x[i]:
            return False
    return True


def incidence_mask(L: PlueckerLine, coords: Sequence[np.ndarray], vf: VecField) -> np.ndarray:
    """Vectorized on_line: coords[i] holds packed i-th coordinates of many points."""
    spec = vf.spec
    mask = np.ones(np.shape(coords[0]), dtype=bool)
    for i, j, k in combinations(range(L.N + 1), 3):
        terms = [(L.p(i, j), coords[k]), (-L.p(i, k), coords[j]), (L.p(j, k), coords[i])]
        acc = None
        for c, x in terms:
            if not c:
                continue
            y = vf.scale(spec.elem(c), x[mask])
            acc = y if acc is None else vf.add(acc, y)
        if acc is None:
            continue
        sub = acc == 0
        idx = np.nonzero(mask)[0]
        mask[idx[~sub]] = False
        if not mask.any():
            break
    return mask
