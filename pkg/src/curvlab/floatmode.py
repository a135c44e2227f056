"""Opt-in floating-point rank engine for large dimensions.

Replaces only the big rank-4 kernel computations; everything rank-2 and all
probe evaluations stay exact.  Ranks are decided by singular values against a
relative tolerance, so this mode must never silently decide an exact claim:
it exists for n = 8 scale runs where exact elimination is slow, and every
report it produces is annotated with the tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np


@dataclass(frozen=True)
class FloatSubspace:
    """Subspace with an orthonormal (row) basis and a rank tolerance."""

    ambient_dim: int
    rows: np.ndarray  # shape (dim, ambient)
    tol: float

    @property
    def dim(self) -> int:
        return int(self.rows.shape[0])


class _FloatReducer:
    def __init__(self, sub: FloatSubspace):
        self.sub = sub

    def contains(self, vec) -> bool:
        dense = _densify(vec, self.sub.ambient_dim)
        resid = dense - self.sub.rows.T @ (self.sub.rows @ dense)
        scale = max(1.0, float(np.linalg.norm(dense)))
        return float(np.linalg.norm(resid)) <= self.sub.tol * scale


def _densify(vec, ambient: int) -> np.ndarray:
    if isinstance(vec, np.ndarray):
        return vec.astype(float)
    out = np.zeros(ambient)
    for c, v in vec.items():
        out[c] = float(v)
    return out


def _rows_matrix(rows: Sequence[Mapping[int, object]], ambient: int) -> np.ndarray:
    mat = np.zeros((len(rows), ambient))
    for i, row in enumerate(rows):
        for c, v in row.items():
            mat[i, c] = float(v)
    return mat


def _nullspace(mat: np.ndarray, tol: float) -> np.ndarray:
    if mat.shape[0] == 0:
        return np.eye(mat.shape[1])
    _, s, vh = np.linalg.svd(mat, full_matrices=True)
    cutoff = tol * (s[0] if s.size else 1.0)
    rank = int(np.sum(s > cutoff))
    return vh[rank:]


def _rowspace(mat: np.ndarray, tol: float) -> np.ndarray:
    if mat.shape[0] == 0:
        return np.zeros((0, mat.shape[1]))
    _, s, vh = np.linalg.svd(mat, full_matrices=False)
    cutoff = tol * (s[0] if s.size else 1.0)
    rank = int(np.sum(s > cutoff))
    return vh[:rank]


class FloatEngine:
    """Tolerance-based drop-in for the exact engine (rank-4 pipelines only)."""

    label = "float"

    def __init__(self, tol: float = 1e-8):
        self.tolerance = tol

    def kernel(self, rows, ambient: int) -> FloatSubspace:
        return FloatSubspace(ambient, _nullspace(_rows_matrix(rows, ambient), self.tolerance), self.tolerance)

    def span(self, vectors, ambient: int) -> FloatSubspace:
        return FloatSubspace(ambient, _rowspace(_rows_matrix(vectors, ambient), self.tolerance), self.tolerance)

    def meet_operator_kernel(self, base: FloatSubspace, op: Callable) -> FloatSubspace:
        basis = self.basis(base)
        if not basis:
            return base
        columns: dict[int, dict[int, float]] = {}
        for i, b in enumerate(basis):
            for coord, v in op(b).items():
                columns.setdefault(coord, {})[i] = float(v)
        mat = np.zeros((len(columns), len(basis)))
        for r, (_, row) in enumerate(sorted(columns.items())):
            for i, v in row.items():
                mat[r, i] = v
        coeff_null = _nullspace(mat, self.tolerance)
        if coeff_null.shape[0] == 0:
            return FloatSubspace(base.ambient_dim, np.zeros((0, base.ambient_dim)), self.tolerance)
        vecs = coeff_null @ base.rows
        return FloatSubspace(base.ambient_dim, _rowspace(vecs, self.tolerance), self.tolerance)

    def rank_of_vectors(self, vectors, ambient: int) -> int:
        return int(_rowspace(_rows_matrix(vectors, ambient), self.tolerance).shape[0])

    def dim(self, sub: FloatSubspace) -> int:
        return sub.dim

    def basis(self, sub: FloatSubspace) -> list[dict[int, float]]:
        out = []
        for row in sub.rows:
            out.append({int(c): float(v) for c, v in enumerate(row) if abs(v) > 1e-14})
        return out

    def reducer(self, sub: FloatSubspace) -> _FloatReducer:
        return _FloatReducer(sub)

    def contains(self, sub: FloatSubspace, vec) -> bool:
        return _FloatReducer(sub).contains(vec)

    def is_subspace(self, a: FloatSubspace, b: FloatSubspace) -> bool:
        red = _FloatReducer(b)
        return all(red.contains(row) for row in a.rows)

    def equals(self, a: FloatSubspace, b: FloatSubspace) -> bool:
        return a.dim == b.dim and self.is_subspace(a, b)

    def sum(self, a: FloatSubspace, b: FloatSubspace) -> FloatSubspace:
        stacked = np.vstack([a.rows, b.rows])
        return FloatSubspace(a.ambient_dim, _rowspace(stacked, self.tolerance), self.tolerance)

    def intersect(self, a: FloatSubspace, b: FloatSubspace) -> FloatSubspace:
        # null(a_perp stacked with b_perp): use projector ranks instead
        pa = a.rows.T @ a.rows
        pb = b.rows.T @ b.rows
        mat = np.vstack([np.eye(a.ambient_dim) - pa, np.eye(a.ambient_dim) - pb])
        return FloatSubspace(a.ambient_dim, _nullspace(mat, self.tolerance), self.tolerance)

    def orthogonality_violations(self, a: FloatSubspace, b: FloatSubspace, weight) -> int:
        w = np.array([float(weight(c)) for c in range(a.ambient_dim)])
        prods = (a.rows * w) @ b.rows.T
        return int(np.sum(np.abs(prods) > self.tolerance))
