"""Gaussian elimination over F_{p^m} for small dense matrices."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .fields import FieldElem, FieldSpec


def _to_array(spec: FieldSpec, rows: Sequence[Sequence]) -> np.ndarray:
    if not rows:
        return np.zeros((0, 0, spec.m), dtype=np.int64)
    return np.array([[spec.elem(x).coeffs for x in row] for row in rows], dtype=np.int64).reshape(
        len(rows), len(rows[0]), spec.m
    )


def rref(spec: FieldSpec, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of an (r, c, m) coordinate array."""
    A = np.array(A, dtype=np.int64) % spec.p
    r, c = A.shape[0], A.shape[1] if A.ndim > 1 else 0
    pivots: list[int] = []
    row = 0
    for col in range(c):
        if row >= r:
            break
        nz = [i for i in range(row, r) if A[i, col].any()]
        if not nz:
            continue
        i = nz[0]
        if i != row:
            A[[row, i]] = A[[i, row]]
        piv = FieldElem(spec, tuple(int(x) for x in A[row, col]))
        A[row] = (A[row] @ spec.mul_matrix(piv.inverse()).T) % spec.p
        for j in range(r):
            if j != row and A[j, col].any():
                f = FieldElem(spec, tuple(int(x) for x in A[j, col]))
                A[j] = (A[j] - A[row] @ spec.mul_matrix(f).T) % spec.p
        pivots.append(col)
        row += 1
    return A, pivots


def rank(spec: FieldSpec, rows) -> int:
    A = rows if isinstance(rows, np.ndarray) else _to_array(spec, rows)
    if A.size == 0:
        return 0
    return len(rref(spec, A)[1])


def nullspace(spec: FieldSpec, rows) -> list[list[FieldElem]]:
    """Basis of {x : A x = 0}."""
    A = rows if isinstance(rows, np.ndarray) else _to_array(spec, rows)
    c = A.shape[1]
    R, pivots = rref(spec, A)
    free = [j for j in range(c) if j not in pivots]
    basis = []
    for f in free:
        v = [spec.zero] * c
        v[f] = spec.one
        for i, pc in enumerate(pivots):
            v[pc] = -FieldElem(spec, tuple(int(x) for x in R[i, f]))
        basis.append(v)
    return basis


def poly_rows(polys, width: int | None = None) -> np.ndarray:
    """Stack coefficient arrays of polynomials as matrix rows (r, width, m)."""
    spec = polys[0].spec
    width = width if width is not None else max(max(f.degree for f in polys) + 1, 1)
    A = np.zeros((len(polys), width, spec.m), dtype=np.int64)
    for i, f in enumerate(polys):
        A[i, : f.c.shape[0]] = f.c
    return A
