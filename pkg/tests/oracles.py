"""Independent brute-force oracles used to derive and cross-check expected values.

Everything here is deliberately naive and shares no code path with the
package's sparse elimination engine: dense textbook Gauss-Jordan over exact
rationals, and constraint matrices assembled by applying the public dense
defect operators to every standard basis tensor.
"""

from __future__ import annotations

from fractions import Fraction

from curvlab.spaces import ModelSpace
from curvlab.tensors import (
    Tensor4,
    defect_antisym,
    defect_bianchi,
    defect_kaehler,
    defect_riemann,
    defect_weyl,
    ricci,
)


def dense_rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], int, list[int]]:
    """Textbook Gauss-Jordan elimination; returns (rref rows, rank, pivot cols)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, r, pivots


def dense_kernel(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Kernel basis from the textbook RREF (one vector per free column)."""
    if not rows:
        rows = [[Fraction(0)] * ncols]
    red, rank, pivots = dense_rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -red[r][f]
        basis.append(vec)
    return basis


def standard_basis_tensor(n: int, flat_index: int) -> Tensor4:
    comp = [Fraction(0)] * n ** 4
    comp[flat_index] = Fraction(1)
    return Tensor4(n, tuple(comp))


def operator_matrix(space: ModelSpace, names: list[str]) -> list[list[Fraction]]:
    """Stacked matrices of the named dense defect operators on all basis tensors.

    Columns index input coordinates; each operator contributes one block of
    n^4 rows (built column by column from the dense public operations).
    """
    n = space.n
    dim = n ** 4
    ops = {
        "antisym": lambda t: defect_antisym(t),
        "bianchi": lambda t: defect_bianchi(t),
        "riemann": lambda t: defect_riemann(t),
        "weyl": lambda t: defect_weyl(t, space),
        "kaehler": lambda t: defect_kaehler(t, space),
    }
    blocks = []
    for name in names:
        cols = [ops[name](standard_basis_tensor(n, c)).components for c in range(dim)]
        block = [[cols[c][r] for c in range(dim)] for r in range(dim)]
        blocks.extend(block)
    return blocks


def ricci_matrix(space: ModelSpace) -> list[list[Fraction]]:
    """Matrix of the Ricci contraction on all basis tensors (n^2 rows)."""
    n = space.n
    dim = n ** 4
    cols = [ricci(standard_basis_tensor(n, c), space).components for c in range(dim)]
    return [[cols[c][r] for c in range(dim)] for r in range(n * n)]


def span_contains(basis: list[list[Fraction]], vec: list[Fraction]) -> bool:
    """Membership via a rank jump, fully independent of the package engine."""
    if not basis:
        return all(v == 0 for v in vec)
    _, rank_before, _ = dense_rref(basis)
    _, rank_after, _ = dense_rref(basis + [vec])
    return rank_before == rank_after


def same_span(a: list[list[Fraction]], b: list[list[Fraction]]) -> bool:
    ra, _, _ = dense_rref(a) if a else ([], 0, [])
    rb, _, _ = dense_rref(b) if b else ([], 0, [])
    clean_a = [row for row in ra if any(row)]
    clean_b = [row for row in rb if any(row)]
    return clean_a == clean_b
