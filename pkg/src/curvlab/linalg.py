"""Exact rational linear algebra: echelon forms, kernels, subspace lattice.

Everything here runs over the rational field with no rounding.  Rows are
integer-scaled internally (fraction-free eliminations) to keep coefficient
growth under control; the results handed back are exact rationals.

Subspaces are always stored with a reduced row-echelon basis, so two
subspaces are equal iff their stored bases are structurally equal.  That
canonical form is what makes every downstream report deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Scalar = Fraction

SparseVec = Mapping[int, Fraction]


class DegenerateGramError(ValueError):
    """Raised when an inner product matrix is singular where nondegeneracy is required."""


def scalar_to_str(x: Fraction) -> str:
    """Render a rational as ``p/q`` (or ``p`` when the denominator is one)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def scalar_from_str(s: str) -> Fraction:
    return Fraction(s)


# ---------------------------------------------------------------------------
# Integer-scaled sparse rows and the online echelon accumulator
# ---------------------------------------------------------------------------


def _strip_content(row: dict[int, int]) -> dict[int, int]:
    """Divide an integer row by the gcd of its entries (in place)."""
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        for c in row:
            row[c] //= g
    return row


def _to_int_row(entries: Mapping[int, Fraction | int]) -> dict[int, int]:
    """Clear denominators and strip content; drops explicit zeros."""
    den = 1
    for v in entries.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    row: dict[int, int] = {}
    for c, v in entries.items():
        if isinstance(v, Fraction):
            iv = v.numerator * (den // v.denominator)
        else:
            iv = v * den
        if iv:
            row[c] = iv
    return _strip_content(row)


def _combine(row: dict[int, int], pivot_row: dict[int, int], col: int) -> dict[int, int]:
    """Return a*row - b*pivot_row scaled to kill ``col``; result content-stripped."""
    a = pivot_row[col]
    b = row[col]
    g = gcd(a, b)
    ma = a // g
    mb = b // g
    out: dict[int, int] = {c: ma * v for c, v in row.items()}
    for c, v in pivot_row.items():
        w = out.get(c, 0) - mb * v
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    return _strip_content(out)


class Echelon:
    """Online row-echelon accumulator over the rationals.

    Pivot rows are keyed by their leading column; each pivot row's support
    starts at its pivot column, so reducing an incoming row strictly
    advances its leading column and terminates.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivot_rows: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def reduce(self, row: Mapping[int, Fraction | int]) -> dict[int, int]:
        """Fully reduce a row against current pivots; returns the residual."""
        r = _to_int_row(row)
        while r:
            c = min(r)
            piv = self.pivot_rows.get(c)
            if piv is None:
                return r
            r = _combine(r, piv, c)
        return r

    def add(self, row: Mapping[int, Fraction | int]) -> int | None:
        """Insert a row; returns its pivot column, or None if dependent."""
        r = self.reduce(row)
        if not r:
            return None
        c = min(r)
        self.pivot_rows[c] = r
        return c

    def add_all(self, rows: Iterable[Mapping[int, Fraction | int]]) -> None:
        for row in rows:
            self.add(row)

    def contains(self, vec: Mapping[int, Fraction | int]) -> bool:
        return not self.reduce(vec)

    def reduced_rows(self) -> list[tuple[int, dict[int, Fraction]]]:
        """Back-substituted, pivot-normalized rows sorted by pivot column."""
        done: dict[int, dict[int, int]] = {}
        for c in sorted(self.pivot_rows, reverse=True):
            row = dict(self.pivot_rows[c])
            targets = sorted(c2 for c2 in row if c2 != c and c2 in self.pivot_rows)
            for c2 in targets:
                if c2 in row:
                    row = _combine(row, done[c2], c2)
            done[c] = row
        out: list[tuple[int, dict[int, Fraction]]] = []
        for c in sorted(done):
            row = done[c]
            piv = row[c]
            out.append((c, {c2: Fraction(v, piv) for c2, v in row.items()}))
        return out

    def kernel(self) -> list[dict[int, Fraction]]:
        """Canonical basis of the solution space of (rows) * x = 0."""
        reduced = self.reduced_rows()
        pivot_cols = {c for c, _ in reduced}
        free_cols = [c for c in range(self.ncols) if c not in pivot_cols]
        vectors: list[dict[int, Fraction]] = []
        for f in free_cols:
            vec: dict[int, Fraction] = {f: Fraction(1)}
            for c, row in reduced:
                coeff = row.get(f)
                if coeff is not None:
                    vec[c] = -coeff
            vectors.append(vec)
        return rref_vectors(vectors, self.ncols)


def rref_vectors(vectors: Iterable[Mapping[int, Fraction | int]], ncols: int) -> list[dict[int, Fraction]]:
    """Canonical reduced row-echelon basis of the span of ``vectors``."""
    ech = Echelon(ncols)
    ech.add_all(vectors)
    return [row for _, row in ech.reduced_rows()]


def kernel_of_rows(rows: Iterable[Mapping[int, Fraction | int]], ncols: int) -> list[dict[int, Fraction]]:
    ech = Echelon(ncols)
    ech.add_all(rows)
    return ech.kernel()


def rank_of_rows(rows: Iterable[Mapping[int, Fraction | int]], ncols: int) -> int:
    ech = Echelon(ncols)
    ech.add_all(rows)
    return ech.rank


# ---------------------------------------------------------------------------
# Dense matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix of exact rationals."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Fraction | int]]) -> "Matrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        ent = []
        for r in rows:
            if len(r) != nc:
                raise ValueError("ragged rows")
            ent.extend(Fraction(v) for v in r)
        return cls(nr, nc, tuple(ent))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(Fraction(1 if i == j else 0) for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence[Fraction | int]) -> "Matrix":
        n = len(diag)
        return cls(n, n, tuple(Fraction(diag[i]) if i == j else Fraction(0) for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_dicts(self) -> list[dict[int, Fraction]]:
        return [{j: v for j, v in enumerate(self.row(i)) if v} for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ent = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                ent.append(sum((ri[k] * other[k, j] for k in range(self.cols)), Fraction(0)))
        return Matrix(self.rows, other.cols, tuple(ent))

    def matvec(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if self.cols != len(v):
            raise ValueError("shape mismatch")
        return tuple(
            sum((self[i, k] * v[k] for k in range(self.cols) if v[k]), Fraction(0)) for i in range(self.rows)
        )

    def scale(self, a: Fraction | int) -> "Matrix":
        a = Fraction(a)
        return Matrix(self.rows, self.cols, tuple(a * v for v in self.entries))

    def add(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def sub(self, other: "Matrix") -> "Matrix":
        return self.add(other.scale(-1))

    def is_symmetric(self) -> bool:
        return all(self[i, j] == self[j, i] for i in range(self.rows) for j in range(i))

    def rank(self) -> int:
        return rank_of_rows(self.row_dicts(), self.cols)


def rref(m: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
    """Reduced row-echelon form, rank and pivot columns.

    The output keeps the input shape (zero rows padded at the bottom) and is
    the unique RREF of the row space, independent of row order.
    """
    ech = Echelon(m.cols)
    ech.add_all(m.row_dicts())
    reduced = ech.reduced_rows()
    rows: list[list[Fraction]] = []
    for _, row in reduced:
        dense = [Fraction(0)] * m.cols
        for c, v in row.items():
            dense[c] = v
        rows.append(dense)
    while len(rows) < m.rows:
        rows.append([Fraction(0)] * m.cols)
    return Matrix.from_rows(rows), len(reduced), tuple(c for c, _ in reduced)


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------

BasisRow = tuple[tuple[int, Fraction], ...]


def _freeze_row(row: Mapping[int, Fraction]) -> BasisRow:
    return tuple(sorted(row.items()))


@dataclass(frozen=True)
class Subspace:
    """Linear subspace given by a canonical reduced row-echelon basis.

    ``basis`` rows are sparse ``(column, value)`` pairs with ascending
    columns; the first column of each row is its pivot with value one.
    Structural equality of two Subspace values is subspace equality.
    """

    ambient_dim: int
    basis: tuple[BasisRow, ...]

    @classmethod
    def from_vectors(cls, vectors: Iterable[Mapping[int, Fraction | int] | Sequence[Fraction | int]], ambient_dim: int) -> "Subspace":
        dicts = []
        for v in vectors:
            if isinstance(v, Mapping):
                dicts.append(v)
            else:
                if len(v) != ambient_dim:
                    raise ValueError("vector length does not match ambient dimension")
                dicts.append({i: x for i, x in enumerate(v) if x})
        rows = rref_vectors(dicts, ambient_dim)
        return cls(ambient_dim, tuple(_freeze_row(r) for r in rows))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(((i, Fraction(1)),) for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(row[0][0] for row in self.basis)

    def basis_dicts(self) -> list[dict[int, Fraction]]:
        return [dict(row) for row in self.basis]

    def basis_dense(self) -> list[list[Fraction]]:
        out = []
        for row in self.basis:
            dense = [Fraction(0)] * self.ambient_dim
            for c, v in row:
                dense[c] = v
            out.append(dense)
        return out

    def contains(self, vec: Mapping[int, Fraction | int] | Sequence[Fraction | int]) -> bool:
        return SubspaceReducer(self).contains(vec)

    def is_subspace_of(self, other: "Subspace") -> bool:
        red = SubspaceReducer(other)
        return all(red.contains(dict(row)) for row in self.basis)


class SubspaceReducer:
    """Reusable membership tester backed by the subspace's echelon pivots."""

    def __init__(self, sub: Subspace):
        self._ech = Echelon(sub.ambient_dim)
        for row in sub.basis:
            r = _to_int_row(dict(row))
            self._ech.pivot_rows[min(r)] = r

    def residual(self, vec: Mapping[int, Fraction | int] | Sequence[Fraction | int]) -> dict[int, int]:
        if not isinstance(vec, Mapping):
            vec = {i: x for i, x in enumerate(vec) if x}
        return self._ech.reduce(vec)

    def contains(self, vec) -> bool:
        return not self.residual(vec)

    def coordinates(self, vec: Mapping[int, Fraction], sub: Subspace) -> list[Fraction] | None:
        """Coefficients of ``vec`` in the canonical basis, or None if outside."""
        if not self.contains(vec):
            return None
        return [Fraction(vec.get(p, 0)) for p in sub.pivots]


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection of two subspaces (Zassenhaus double-block elimination)."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    amb = a.ambient_dim
    ech = Echelon(2 * amb)
    for row in a.basis_dicts():
        doubled = dict(row)
        doubled.update({c + amb: v for c, v in row.items()})
        ech.add(doubled)
    for row in b.basis_dicts():
        ech.add(row)
    vecs = []
    for pivot, row in ech.pivot_rows.items():
        if pivot >= amb:
            vecs.append({c - amb: v for c, v in row.items()})
    return Subspace.from_vectors(vecs, amb)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return Subspace.from_vectors(a.basis_dicts() + b.basis_dicts(), a.ambient_dim)


def contains(a: Subspace, vec) -> bool:
    return a.contains(vec)


def orthogonal_complement(a: Subspace, gram: Matrix) -> Subspace:
    """All vectors gram-orthogonal to ``a``.

    The gram matrix must be symmetric and nondegenerate; the complement then
    has dimension ``ambient - dim(a)``.  For indefinite gram matrices the
    intersection ``a ∩ a⊥`` can be nonzero (degenerate restriction); that is
    legitimate output, not an error.
    """
    if gram.rows != gram.cols or gram.rows != a.ambient_dim:
        raise ValueError("gram matrix incompatible with ambient dimension")
    if not gram.is_symmetric():
        raise ValueError("gram matrix must be symmetric")
    if gram.rank() != gram.rows:
        raise DegenerateGramError("gram matrix is degenerate")
    rows = []
    for v in a.basis_dicts():
        row: dict[int, Fraction] = {}
        for j in range(a.ambient_dim):
            s = sum((gram[j, c] * x for c, x in v.items()), Fraction(0))
            if s:
                row[j] = s
        rows.append(row)
    kernel = kernel_of_rows(rows, a.ambient_dim)
    return Subspace(a.ambient_dim, tuple(_freeze_row(r) for r in kernel))


def is_totally_isotropic(a: Subspace, gram: Matrix) -> bool:
    """True iff the gram form restricted to ``a`` vanishes identically."""
    if gram.rows != gram.cols or gram.rows != a.ambient_dim:
        raise ValueError("gram matrix incompatible with ambient dimension")
    vs = a.basis_dicts()
    images = []
    for v in vs:
        img: dict[int, Fraction] = {}
        for j in range(a.ambient_dim):
            s = sum((gram[j, c] * x for c, x in v.items()), Fraction(0))
            if s:
                img[j] = s
        images.append(img)
    for i, gi in enumerate(images):
        for j in range(i + 1):
            val = sum((x * gi.get(c, Fraction(0)) for c, x in vs[j].items()), Fraction(0))
            if val:
                return False
    return True


def kernel_basis(m: Matrix) -> Subspace:
    """Exact kernel of a dense matrix as a canonical subspace."""
    rows = kernel_of_rows(m.row_dicts(), m.cols)
    return Subspace(m.cols, tuple(_freeze_row(r) for r in rows))


def sparse_dot(a: Mapping[int, Fraction], b: Mapping[int, Fraction], weights: Sequence[Fraction] | None = None) -> Fraction:
    """Dot product of two sparse vectors, optionally weighted per coordinate."""
    if len(b) < len(a):
        a, b = b, a
    total = Fraction(0)
    if weights is None:
        for c, v in a.items():
            w = b.get(c)
            if w is not None:
                total += v * w
    else:
        for c, v in a.items():
            w = b.get(c)
            if w is not None:
                total += v * w * weights[c]
    return total
