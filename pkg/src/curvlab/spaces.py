"""Model inner-product spaces and their structure groups.

A model space is R^n with a diagonal metric h = diag(eps) and, optionally, a
standard complex or para-complex structure J acting per plane:

    J e_{2i}   =  e_{2i+1}
    J e_{2i+1} =  u * e_{2i}        (0-based indices)

with u = -1 for a complex structure (J^2 = -Id) and u = +1 for a para-complex
structure (J^2 = +Id, trace zero).  The sign u is the single point where the
stacked plus/minus conventions of the two parallel geometries are resolved;
every module downstream pulls it from :func:`structure_sign`.

Compatibility is J*h = h in the complex case and J*h = -h in the para case,
so complex metrics carry constant signs on each J-plane while para metrics
alternate (+,-) inside every plane (neutral signature).

Group data: the orthogonal group of h, the (para-)unitary group of (h, J),
and its Z2 extension containing J-anticommuting isometries.  Exact arithmetic
cannot average over a Lie group, so invariance is always certified through a
Lie algebra basis (the connected component) plus an explicit, finite list of
component representatives; both are produced here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import Matrix, kernel_of_rows

KINDS = ("none", "complex", "para")
GROUPS = ("O", "U", "Ustar")


def structure_sign(kind: str) -> int:
    """Resolve stacked sign conventions: para-complex -> +1, complex -> -1."""
    if kind == "para":
        return 1
    if kind == "complex":
        return -1
    raise ValueError(f"no structure sign for kind={kind!r}")


@dataclass(frozen=True)
class ModelSpace:
    """Dimension, diagonal metric signs, structure kind and J matrix."""

    n: int
    kind: str
    eps: tuple[int, ...]
    j: Matrix | None

    @property
    def signature(self) -> tuple[int, int]:
        p = sum(1 for e in self.eps if e > 0)
        return (p, self.n - p)

    def gram(self) -> Matrix:
        return Matrix.diagonal(self.eps)

    def h(self, i: int, k: int) -> Fraction:
        return Fraction(self.eps[i]) if i == k else Fraction(0)

    def describe(self) -> dict:
        p, q = self.signature
        return {"n": self.n, "kind": self.kind, "signature": [p, q], "eps": list(self.eps)}


@lru_cache(maxsize=None)
def j_signed_permutation(space: ModelSpace) -> tuple[tuple[int, int], ...]:
    """For each basis index k: (image index, sign) with J e_k = sign * e_image."""
    if space.j is None:
        raise ValueError("space has no structure")
    out = []
    for k in range(space.n):
        hits = [(a, space.j[a, k]) for a in range(space.n) if space.j[a, k]]
        if len(hits) != 1 or abs(hits[0][1]) != 1:
            raise ValueError("structure matrix is not a signed permutation")
        out.append((hits[0][0], int(hits[0][1])))
    return tuple(out)


def _default_eps(n: int, kind: str, signature: tuple[int, int] | None) -> tuple[int, ...]:
    if kind == "para":
        if signature is not None and signature != (n // 2, n // 2):
            raise ValueError("para-complex structures force neutral signature")
        return tuple(1 if i % 2 == 0 else -1 for i in range(n))
    if signature is None:
        signature = (n, 0)
    p, q = signature
    if p < 0 or q < 0 or p + q != n:
        raise ValueError(f"signature {signature} incompatible with n={n}")
    if kind == "complex":
        if p % 2 or q % 2:
            raise ValueError("complex structures need an even number of signs of each type")
        # constant signs per J-plane, negative planes last
        return tuple(1 if i < p else -1 for i in range(n))
    return tuple(1 if i < p else -1 for i in range(n))


def _standard_j(n: int, kind: str) -> Matrix:
    u = structure_sign(kind)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(0, n, 2):
        rows[i + 1][i] = Fraction(1)      # J e_{2i}   = e_{2i+1}
        rows[i][i + 1] = Fraction(u)      # J e_{2i+1} = u e_{2i}
    return Matrix.from_rows(rows)


def _validate(space: ModelSpace) -> None:
    n, kind, eps = space.n, space.kind, space.eps
    if len(eps) != n or any(e not in (1, -1) for e in eps):
        raise ValueError("eps must be n signs")
    if kind == "none":
        if n < 2:
            raise ValueError("need n >= 2")
        if space.j is not None:
            raise ValueError("kind 'none' carries no structure matrix")
        return
    if kind not in ("complex", "para"):
        raise ValueError(f"unknown kind {kind!r}")
    if n < 4 or n % 2:
        raise ValueError("structures require even n >= 4")
    u = structure_sign(kind)
    j = space.j
    if j is None:
        raise ValueError("structured space needs a J matrix")
    jj = j.mul(j)
    if jj != Matrix.identity(n).scale(u):
        raise ValueError("J^2 must equal the structure sign times the identity")
    if kind == "para" and sum(j[i, i] for i in range(n)) != 0:
        raise ValueError("para structure must be trace free")
    # pull-back test J*h = -u h on basis pairs
    h = space.gram()
    jthj = j.transpose().mul(h).mul(j)
    if jthj != h.scale(-u):
        raise ValueError("metric incompatible with the structure (pull-back test failed)")


def make_standard(n: int, kind: str = "none", signature: tuple[int, int] | None = None,
                  eps: tuple[int, ...] | None = None) -> ModelSpace:
    """Build the standard model space, validating all structural invariants.

    ``eps`` overrides the default diagonal sign layout (complex: constant on
    planes, negative planes last; para: (+,-) alternating).  Any explicit
    layout is still checked against the structure compatibility rules.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if eps is None:
        eps = _default_eps(n, kind, signature)
    else:
        eps = tuple(int(e) for e in eps)
        if signature is not None:
            p = sum(1 for e in eps if e > 0)
            if (p, n - p) != tuple(signature):
                raise ValueError("explicit eps disagrees with requested signature")
    j = _standard_j(n, kind) if kind != "none" else None
    space = ModelSpace(n=n, kind=kind, eps=eps, j=j)
    _validate(space)
    return space


# ---------------------------------------------------------------------------
# Structure groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupSpec:
    group: str
    lie_algebra_basis: tuple[Matrix, ...]
    component_reps: tuple[Matrix, ...]


def _check_group_args(space: ModelSpace, group: str) -> None:
    if group not in GROUPS:
        raise ValueError(f"unknown group {group!r}")
    if group in ("U", "Ustar") and space.kind == "none":
        raise ValueError("unitary-type groups need a structured space")


def lie_algebra_basis(space: ModelSpace, group: str) -> list[Matrix]:
    """Basis of {X : X^T H + H X = 0}, intersected with {XJ = JX} for U/Ustar.

    The Lie algebras of the unitary group and of its Z2 extension coincide,
    so ``Ustar`` shares the ``U`` basis.
    """
    _check_group_args(space, group)
    n = space.n
    rows: list[dict[int, Fraction]] = []
    for a in range(n):
        for b in range(a, n):
            # eps_b X[b][a] + eps_a X[a][b] = 0
            row: dict[int, Fraction] = {}
            row[b * n + a] = row.get(b * n + a, Fraction(0)) + space.eps[b]
            row[a * n + b] = row.get(a * n + b, Fraction(0)) + space.eps[a]
            rows.append({c: v for c, v in row.items() if v})
    if group in ("U", "Ustar"):
        perm = j_signed_permutation(space)
        for a in range(n):
            for b in range(n):
                pb, sb = perm[b]
                pa, sa = perm[a]
                # (XJ - JX)[a][b] = s_b X[a][p(b)] - s_{p(a)} X[p(a)][b]
                # with p an involution, s_{p(a)} = u / s_a = u * s_a
                row = {}
                row[a * n + pb] = row.get(a * n + pb, Fraction(0)) + sb
                c = pa * n + b
                row[c] = row.get(c, Fraction(0)) - Fraction(structure_sign(space.kind) * sa)
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    kernel = kernel_of_rows(rows, n * n)
    mats = []
    for vec in kernel:
        dense = [[Fraction(0)] * n for _ in range(n)]
        for c, v in vec.items():
            dense[c // n][c % n] = v
        mats.append(Matrix.from_rows(dense))
    return mats


def _diag_reflection(n: int, flip: tuple[int, ...]) -> Matrix:
    return Matrix.diagonal([Fraction(-1 if i in flip else 1) for i in range(n)])


def structure_reversal(space: ModelSpace) -> Matrix:
    """The default isometry anticommuting with J: fix e_{2i}, negate e_{2i+1}."""
    if space.kind == "none":
        raise ValueError("no structure to reverse")
    return Matrix.diagonal([Fraction(-1 if i % 2 else 1) for i in range(space.n)])


def component_reps(space: ModelSpace, group: str) -> list[Matrix]:
    """Finite representatives covering every connected component of the group.

    O(p,q) has four components when p, q > 0 (two when definite); they are
    reached by single-axis reflections.  The complex unitary groups are
    connected; the para-unitary group has two components (its general-linear
    model), reached by negating one full J-plane, which commutes with J.  The
    Z2 extensions add the structure reversal composed with each of the above.
    """
    _check_group_args(space, group)
    n = space.n
    if group == "O":
        reps = [Matrix.identity(n)]
        plus = next((i for i, e in enumerate(space.eps) if e > 0), None)
        minus = next((i for i, e in enumerate(space.eps) if e < 0), None)
        if plus is not None:
            reps.append(_diag_reflection(n, (plus,)))
        if minus is not None:
            reps.append(_diag_reflection(n, (minus,)))
        if plus is not None and minus is not None:
            reps.append(_diag_reflection(n, (plus, minus)))
        return reps
    base = [Matrix.identity(n)]
    if space.kind == "para":
        # negate the first J-plane: commutes with J, detects the second
        # component of the underlying general-linear group
        base.append(_diag_reflection(n, (0, 1)))
    if group == "U":
        return base
    g0 = structure_reversal(space)
    return base + [g0.mul(m) for m in base]


def group_spec(space: ModelSpace, group: str) -> GroupSpec:
    """Assemble and validate the full group datum (algebra basis + reps).

    Every algebra element must be an infinitesimal isometry (commuting with J
    for the unitary-type groups) and every representative an isometry
    (commuting or anticommuting with J for the extended group).
    """
    spec = GroupSpec(
        group=group,
        lie_algebra_basis=tuple(lie_algebra_basis(space, group)),
        component_reps=tuple(component_reps(space, group)),
    )
    h = space.gram()
    n = space.n
    for x in spec.lie_algebra_basis:
        if x.transpose().mul(h).add(h.mul(x)) != Matrix.zero(n, n):
            raise AssertionError("algebra element is not an infinitesimal isometry")
        if group in ("U", "Ustar") and x.mul(space.j) != space.j.mul(x):
            raise AssertionError("algebra element does not commute with the structure")
    for g in spec.component_reps:
        if g.transpose().mul(h).mul(g) != h:
            raise AssertionError("component representative is not an isometry")
        if group == "U" and g.mul(space.j) != space.j.mul(g):
            raise AssertionError("unitary representative must commute with the structure")
        if group == "Ustar":
            gj, jg = g.mul(space.j), space.j.mul(g)
            if gj != jg and gj != jg.scale(-1):
                raise AssertionError("extended representative must commute or anticommute")
    return spec


def random_lie_elements(space: ModelSpace, group: str, count: int, seed: int = 0) -> list[Matrix]:
    """Deterministic random rational combinations of the Lie algebra basis."""
    basis = lie_algebra_basis(space, group)
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        acc = Matrix.zero(space.n, space.n)
        for b in basis:
            num = rng.randint(-9, 9)
            if num:
                acc = acc.add(b.scale(Fraction(num, rng.randint(1, 9))))
        out.append(acc)
    return out
