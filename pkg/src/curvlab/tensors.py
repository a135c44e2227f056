"""Rank-2/rank-4 tensor calculus over a model space.

Covers the symmetry-defect operators that carve out the affine, Weyl and
Riemannian curvature spaces, the Ricci contraction, the rank-2-to-rank-4
maps sigma and psi, pull-backs and infinitesimal group actions, full
invariant contractions against metric/fundamental-form pair tensors, and
exterior forms with wedge products.

Two parallel views of every linear operator exist on purpose:

* dense operations on :class:`Tensor2` / :class:`Tensor4` values, written as
  direct textbook loops, used by the public API and for re-verifying
  witnesses; and
* sparse constraint rows / sparse applications on flattened coordinate
  dictionaries, used by the subspace builders, where each row has a handful
  of nonzero integer entries.

The two are cross-checked against each other in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Mapping, Sequence

from .linalg import Matrix, Subspace, kernel_of_rows
from .spaces import ModelSpace, j_signed_permutation, structure_sign

# ---------------------------------------------------------------------------
# Tensor containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Tensor2:
    """Dense bilinear form: component (i, j) at flat index i*n + j."""

    n: int
    components: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.components) != self.n ** 2:
            raise ValueError("component count does not match n^2")

    @classmethod
    def zero(cls, n: int) -> "Tensor2":
        return cls(n, (Fraction(0),) * (n * n))

    @classmethod
    def from_entries(cls, n: int, entries: Mapping[tuple[int, int], Fraction | int]) -> "Tensor2":
        comp = [Fraction(0)] * (n * n)
        for (i, j), v in entries.items():
            comp[i * n + j] = Fraction(v)
        return cls(n, tuple(comp))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.components[i * self.n + j]

    def to_dict(self) -> dict[int, Fraction]:
        return {c: v for c, v in enumerate(self.components) if v}

    @classmethod
    def from_dict(cls, n: int, vec: Mapping[int, Fraction]) -> "Tensor2":
        comp = [Fraction(0)] * (n * n)
        for c, v in vec.items():
            comp[c] = Fraction(v)
        return cls(n, tuple(comp))

    def is_zero(self) -> bool:
        return not any(self.components)

    def is_antisymmetric(self) -> bool:
        return all(self[i, j] == -self[j, i] for i in range(self.n) for j in range(i + 1))

    def is_symmetric(self) -> bool:
        return all(self[i, j] == self[j, i] for i in range(self.n) for j in range(i))

    def scale(self, a: Fraction | int) -> "Tensor2":
        a = Fraction(a)
        return Tensor2(self.n, tuple(a * v for v in self.components))

    def add(self, other: "Tensor2") -> "Tensor2":
        return Tensor2(self.n, tuple(a + b for a, b in zip(self.components, other.components)))


@dataclass(frozen=True)
class Tensor4:
    """Dense 4-linear form: component (i, j, k, l) at ((i*n+j)*n+k)*n+l."""

    n: int
    components: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.components) != self.n ** 4:
            raise ValueError("component count does not match n^4")

    @classmethod
    def zero(cls, n: int) -> "Tensor4":
        return cls(n, (Fraction(0),) * (n ** 4))

    @classmethod
    def from_entries(cls, n: int, entries: Mapping[tuple[int, int, int, int], Fraction | int]) -> "Tensor4":
        comp = [Fraction(0)] * n ** 4
        for (i, j, k, l), v in entries.items():
            comp[((i * n + j) * n + k) * n + l] = Fraction(v)
        return cls(n, tuple(comp))

    def __getitem__(self, ijkl: tuple[int, int, int, int]) -> Fraction:
        i, j, k, l = ijkl
        n = self.n
        return self.components[((i * n + j) * n + k) * n + l]

    def to_dict(self) -> dict[int, Fraction]:
        return {c: v for c, v in enumerate(self.components) if v}

    @classmethod
    def from_dict(cls, n: int, vec: Mapping[int, Fraction]) -> "Tensor4":
        comp = [Fraction(0)] * n ** 4
        for c, v in vec.items():
            comp[c] = Fraction(v)
        return cls(n, tuple(comp))

    def is_zero(self) -> bool:
        return not any(self.components)

    def scale(self, a: Fraction | int) -> "Tensor4":
        a = Fraction(a)
        return Tensor4(self.n, tuple(a * v for v in self.components))

    def add(self, other: "Tensor4") -> "Tensor4":
        return Tensor4(self.n, tuple(a + b for a, b in zip(self.components, other.components)))


def unflatten4(n: int, c: int) -> tuple[int, int, int, int]:
    c, l = divmod(c, n)
    c, k = divmod(c, n)
    i, j = divmod(c, n)
    return i, j, k, l


def flatten4(n: int, i: int, j: int, k: int, l: int) -> int:
    return ((i * n + j) * n + k) * n + l


# ---------------------------------------------------------------------------
# Canonical rank-2 tensors of a model space
# ---------------------------------------------------------------------------


def metric_tensor2(space: ModelSpace) -> Tensor2:
    return Tensor2.from_entries(space.n, {(i, i): space.eps[i] for i in range(space.n)})


def kaehler_form(space: ModelSpace) -> Tensor2:
    """The fundamental 2-form: Omega(x, y) = h(x, Jy); antisymmetric by construction."""
    if space.kind == "none":
        raise ValueError("fundamental form requires a structured space")
    perm = j_signed_permutation(space)
    entries: dict[tuple[int, int], Fraction] = {}
    for j in range(space.n):
        p, s = perm[j]
        # h(e_i, J e_j) = eps_p * s when i = p
        entries[(p, j)] = Fraction(space.eps[p] * s)
    return Tensor2.from_entries(space.n, entries)


def two_form_basis(n: int) -> list[Tensor2]:
    """Antisymmetric basis e^i (x) e^j - e^j (x) e^i for i < j."""
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            out.append(Tensor2.from_entries(n, {(i, j): 1, (j, i): -1}))
    return out


def gram_weight2(space: ModelSpace, c: int) -> int:
    i, j = divmod(c, space.n)
    return space.eps[i] * space.eps[j]


def gram_weight4(space: ModelSpace, c: int) -> int:
    i, j, k, l = unflatten4(space.n, c)
    return space.eps[i] * space.eps[j] * space.eps[k] * space.eps[l]


def inner2(space: ModelSpace, a: Mapping[int, Fraction], b: Mapping[int, Fraction]) -> Fraction:
    """Induced inner product on rank-2 tensors (product metric on tensor factors)."""
    if len(b) < len(a):
        a, b = b, a
    total = Fraction(0)
    for c, v in a.items():
        w = b.get(c)
        if w is not None:
            total += v * w * gram_weight2(space, c)
    return total


def inner4(space: ModelSpace, a: Mapping[int, Fraction], b: Mapping[int, Fraction]) -> Fraction:
    if len(b) < len(a):
        a, b = b, a
    total = Fraction(0)
    for c, v in a.items():
        w = b.get(c)
        if w is not None:
            total += v * w * gram_weight4(space, c)
    return total


# ---------------------------------------------------------------------------
# Symmetry-defect operators (dense view)
# ---------------------------------------------------------------------------


def defect_antisym(a: Tensor4) -> Tensor4:
    """A(x,y,z,w) + A(y,x,z,w); vanishes iff A is alternating in the first pair."""
    n = a.n
    comp = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    comp.append(a[i, j, k, l] + a[j, i, k, l])
    return Tensor4(n, tuple(comp))


def defect_bianchi(a: Tensor4) -> Tensor4:
    """Cyclic sum over the first three slots; vanishes iff the first Bianchi identity holds."""
    n = a.n
    comp = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    comp.append(a[i, j, k, l] + a[j, k, i, l] + a[k, i, j, l])
    return Tensor4(n, tuple(comp))


def defect_riemann(a: Tensor4) -> Tensor4:
    """A(x,y,z,w) + A(x,y,w,z); vanishes iff A is alternating in the last pair."""
    n = a.n
    comp = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    comp.append(a[i, j, k, l] + a[i, j, l, k])
    return Tensor4(n, tuple(comp))


def ricci(a: Tensor4, space: ModelSpace) -> Tensor2:
    """Ric(x, y) = sum_{c,d} h^{cd} A(e_c, x, y, e_d)."""
    n = a.n
    comp = []
    for x in range(n):
        for y in range(n):
            comp.append(sum((Fraction(space.eps[c]) * a[c, x, y, c] for c in range(n)), Fraction(0)))
    return Tensor2(n, tuple(comp))


def alt_ricci(a: Tensor4, space: ModelSpace) -> Tensor2:
    ric = ricci(a, space)
    n = a.n
    comp = []
    for x in range(n):
        for y in range(n):
            comp.append((ric[x, y] - ric[y, x]) / 2)
    return Tensor2(n, tuple(comp))


def defect_weyl(a: Tensor4, space: ModelSpace) -> Tensor4:
    """Pair symmetrization minus the trace correction (2/n)(Ric(y,x)-Ric(x,y)) h(z,w)."""
    n = a.n
    ric = ricci(a, space)
    two_over_n = Fraction(2, n)
    comp = []
    for i in range(n):
        for j in range(n):
            corr = two_over_n * (ric[j, i] - ric[i, j])
            for k in range(n):
                for l in range(n):
                    val = a[i, j, k, l] + a[i, j, l, k]
                    if k == l:
                        val -= corr * space.eps[k]
                    comp.append(val)
    return Tensor4(n, tuple(comp))


def defect_kaehler(a: Tensor4, space: ModelSpace) -> Tensor4:
    """Deviation from the structure-compatibility identity on the last pair.

    Returns A(x,y,z,w) + u*A(x,y,Jz,Jw) with u the structure sign, so the
    para-complex identity reads A = -A(.,.,J.,J.) and the complex identity
    A = +A(.,.,J.,J.); the defect vanishes exactly on compatible tensors.
    """
    if space.kind == "none":
        raise ValueError("structure-compatibility defect requires a structured space")
    n = a.n
    u = structure_sign(space.kind)
    perm = j_signed_permutation(space)
    comp = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                pk, sk = perm[k]
                for l in range(n):
                    pl, sl = perm[l]
                    comp.append(a[i, j, k, l] + u * sk * sl * a[i, j, pk, pl])
    return Tensor4(n, tuple(comp))


# ---------------------------------------------------------------------------
# The rank-2 -> rank-4 maps
# ---------------------------------------------------------------------------


def sigma(psi: Tensor2, space: ModelSpace) -> Tensor4:
    """Five-term map embedding a 2-form into the Weyl curvature space.

    sigma(psi)(x,y,z,w) = 2 psi(x,y) h(z,w) + psi(x,z) h(y,w) - psi(y,z) h(x,w)
                          - psi(x,w) h(y,z) + psi(y,w) h(x,z)
    """
    if not psi.is_antisymmetric():
        raise ValueError("sigma expects an antisymmetric input")
    n = psi.n
    eps = space.eps
    comp = [Fraction(0)] * n ** 4
    for x in range(n):
        for y in range(n):
            pxy2 = 2 * psi[x, y]
            for z in range(n):
                base = ((x * n + y) * n + z) * n
                # h diagonal: each term fires only when its h-pair coincides
                comp[base + z] += pxy2 * eps[z]
                comp[base + y] += psi[x, z] * eps[y]
                comp[base + x] -= psi[y, z] * eps[x]
                # psi(x,w) h(y,z) and psi(y,w) h(x,z) terms
                if y == z:
                    for w in range(n):
                        comp[base + w] -= psi[x, w] * eps[y]
                if x == z:
                    for w in range(n):
                        comp[base + w] += psi[y, w] * eps[x]
    return Tensor4(n, tuple(comp))


def is_structure_eigenform(psi: Tensor2, space: ModelSpace) -> bool:
    """True iff psi is antisymmetric with J-pull-back equal to the structure sign times psi."""
    if space.kind == "none":
        raise ValueError("requires a structured space")
    if not psi.is_antisymmetric():
        return False
    u = structure_sign(space.kind)
    perm = j_signed_permutation(space)
    for x in range(space.n):
        px, sx = perm[x]
        for y in range(space.n):
            py, sy = perm[y]
            if sx * sy * psi[px, py] != u * psi[x, y]:
                return False
    return True


def psi_map(psi: Tensor2, space: ModelSpace) -> Tensor4:
    """Six-term map embedding a structure-aligned 2-form into the Riemannian space.

    psi_map(psi)(x,y,z,w) = 2 h(x,Jy) psi(z,Jw) + 2 h(z,Jw) psi(x,Jy)
                            + h(x,Jz) psi(y,Jw) + h(y,Jw) psi(x,Jz)
                            - h(x,Jw) psi(y,Jz) - h(y,Jz) psi(x,Jw)

    The input must lie in the eigenspace J*psi = u psi (u the structure sign).
    """
    if not is_structure_eigenform(psi, space):
        raise ValueError("psi_map input must be a structure-aligned 2-form")
    n = psi.n
    omega = kaehler_form(space)
    perm = j_signed_permutation(space)
    omega_nz = [(i, j, omega[i, j]) for i in range(n) for j in range(n) if omega[i, j]]
    psi_j_nz = []
    for i in range(n):
        for j in range(n):
            pj, sj = perm[j]
            v = sj * psi[i, pj]
            if v:
                psi_j_nz.append((i, j, v))
    # each term is coeff * Omega(pair one) * psi(., J .)(pair two), placed by slots
    terms = (
        (Fraction(2), (0, 1), (2, 3)),
        (Fraction(2), (2, 3), (0, 1)),
        (Fraction(1), (0, 2), (1, 3)),
        (Fraction(1), (1, 3), (0, 2)),
        (Fraction(-1), (0, 3), (1, 2)),
        (Fraction(-1), (1, 2), (0, 3)),
    )
    comp = [Fraction(0)] * n ** 4
    idx = [0, 0, 0, 0]
    for coeff, om_slots, psi_slots in terms:
        for a, b, ov in omega_nz:
            idx[om_slots[0]] = a
            idx[om_slots[1]] = b
            for c, d, pv in psi_j_nz:
                idx[psi_slots[0]] = c
                idx[psi_slots[1]] = d
                comp[((idx[0] * n + idx[1]) * n + idx[2]) * n + idx[3]] += coeff * ov * pv
    return Tensor4(n, tuple(comp))


# ---------------------------------------------------------------------------
# Group actions on tensors
# ---------------------------------------------------------------------------


def _contract_slot(n: int, rank: int, comp: list[Fraction], t: Matrix, slot: int) -> list[Fraction]:
    """Replace slot s: out_{..i..} = sum_a t[a][i] cur_{..a..}."""
    stride = n ** (rank - 1 - slot)
    out = [Fraction(0)] * (n ** rank)
    for c, v in enumerate(comp):
        if not v:
            continue
        a = (c // stride) % n
        base = c - a * stride
        for i in range(n):
            coeff = t[a, i]
            if coeff:
                out[base + i * stride] += coeff * v
    return out


def pullback(t: Matrix, theta: Tensor2 | Tensor4) -> Tensor2 | Tensor4:
    """(t* theta)(v_1, ..., v_k) = theta(t v_1, ..., t v_k)."""
    rank = 2 if isinstance(theta, Tensor2) else 4
    comp = list(theta.components)
    for slot in range(rank):
        comp = _contract_slot(theta.n, rank, comp, t, slot)
    return type(theta)(theta.n, tuple(comp))


def lie_action(x: Matrix, theta: Tensor2 | Tensor4) -> Tensor2 | Tensor4:
    """Infinitesimal pull-back action: sum over slots of theta(..., X v_i, ...)."""
    rank = 2 if isinstance(theta, Tensor2) else 4
    n = theta.n
    total = [Fraction(0)] * (n ** rank)
    for slot in range(rank):
        part = _contract_slot(n, rank, list(theta.components), x, slot)
        for c, v in enumerate(part):
            if v:
                total[c] += v
    return type(theta)(n, tuple(total))


# ---------------------------------------------------------------------------
# Invariant contractions
# ---------------------------------------------------------------------------

PAIR_WORDS = ((0, 0), (0, 1), (1, 0), (1, 1))
EVEN_PAIR_WORDS = ((0, 0), (1, 1))


def _kappa_raised_entries(space: ModelSpace, a: int) -> list[tuple[int, int, Fraction]]:
    """Nonzero raised components of the contraction tensor: metric (a=0) or form (a=1)."""
    if a == 0:
        return [(i, i, Fraction(space.eps[i])) for i in range(space.n)]
    if space.kind == "none":
        raise ValueError("form contractions require a structured space")
    omega = kaehler_form(space)
    out = []
    for i in range(space.n):
        for j in range(space.n):
            v = omega[i, j]
            if v:
                out.append((i, j, Fraction(space.eps[i] * space.eps[j]) * v))
    return out


def invariant_contraction(theta: Tensor4, perm: Sequence[int], word: Sequence[int], space: ModelSpace) -> Fraction:
    """Full contraction of a rank-4 tensor against two raised pair tensors.

    ``perm`` is a permutation of (0,1,2,3) selecting which tensor slots are
    paired: slots perm[0], perm[1] contract against the first pair tensor and
    perm[2], perm[3] against the second.  ``word`` selects metric (0) or
    fundamental form (1) per pair.  Words with an even number of form factors
    are the scalar invariants of the extended structure group; the operation
    itself computes any word.
    """
    if sorted(perm) != [0, 1, 2, 3]:
        raise ValueError("perm must be a permutation of (0,1,2,3)")
    if len(word) != 2 or any(a not in (0, 1) for a in word):
        raise ValueError("word must be two flags in {0,1}")
    k1 = _kappa_raised_entries(space, word[0])
    k2 = _kappa_raised_entries(space, word[1])
    total = Fraction(0)
    idx = [0, 0, 0, 0]
    for x1, x2, v1 in k1:
        idx[perm[0]] = x1
        idx[perm[1]] = x2
        for x3, x4, v2 in k2:
            idx[perm[2]] = x3
            idx[perm[3]] = x4
            t = theta[idx[0], idx[1], idx[2], idx[3]]
            if t:
                total += v1 * v2 * t
    return total


def invariant_contraction_product(theta: Tensor2, phi: Tensor2, perm: Sequence[int], word: Sequence[int],
                                  space: ModelSpace) -> Fraction:
    """Invariant contraction of the product tensor theta (x) phi without materializing it."""
    if sorted(perm) != [0, 1, 2, 3]:
        raise ValueError("perm must be a permutation of (0,1,2,3)")
    k1 = _kappa_raised_entries(space, word[0])
    k2 = _kappa_raised_entries(space, word[1])
    total = Fraction(0)
    idx = [0, 0, 0, 0]
    for x1, x2, v1 in k1:
        idx[perm[0]] = x1
        idx[perm[1]] = x2
        for x3, x4, v2 in k2:
            idx[perm[2]] = x3
            idx[perm[3]] = x4
            t = theta[idx[0], idx[1]]
            if t:
                p = phi[idx[2], idx[3]]
                if p:
                    total += v1 * v2 * t * p
    return total


def all_slot_permutations() -> list[tuple[int, int, int, int]]:
    return [p for p in permutations(range(4))]


# ---------------------------------------------------------------------------
# Exterior forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FormK:
    """Alternating k-form stored on strictly increasing index tuples."""

    n: int
    degree: int
    entries: tuple[tuple[tuple[int, ...], Fraction], ...]

    @classmethod
    def from_entries(cls, n: int, degree: int, entries: Mapping[tuple[int, ...], Fraction | int]) -> "FormK":
        clean: dict[tuple[int, ...], Fraction] = {}
        for idx, v in entries.items():
            if len(idx) != degree or list(idx) != sorted(set(idx)):
                raise ValueError("form indices must be strictly increasing tuples of the right degree")
            fv = Fraction(v)
            if fv:
                clean[tuple(idx)] = fv
        return cls(n, degree, tuple(sorted(clean.items())))

    @classmethod
    def zero(cls, n: int, degree: int) -> "FormK":
        return cls(n, degree, ())

    @classmethod
    def unit(cls, n: int) -> "FormK":
        return cls(n, 0, (((), Fraction(1)),))

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.entries)

    def is_zero(self) -> bool:
        return not self.entries


def form_from_tensor2(t: Tensor2) -> FormK:
    if not t.is_antisymmetric():
        raise ValueError("only antisymmetric rank-2 tensors define 2-forms")
    entries = {}
    for i in range(t.n):
        for j in range(i + 1, t.n):
            if t[i, j]:
                entries[(i, j)] = t[i, j]
    return FormK.from_entries(t.n, 2, entries)


def _merge_sign(ia: tuple[int, ...], ib: tuple[int, ...]) -> int:
    """Sign of the shuffle sorting the concatenation of two ascending tuples."""
    inv = 0
    for x in ia:
        for y in ib:
            if x > y:
                inv += 1
    return -1 if inv % 2 else 1


def wedge(a: FormK, b: FormK) -> FormK:
    """Shuffle-sum wedge with unit coefficients (no factorial normalizations)."""
    if a.n != b.n:
        raise ValueError("forms live on different spaces")
    degree = a.degree + b.degree
    if degree > a.n:
        raise ValueError("wedge degree exceeds the space dimension")
    out: dict[tuple[int, ...], Fraction] = {}
    for ia, va in a.entries:
        sa = set(ia)
        for ib, vb in b.entries:
            if sa & set(ib):
                continue
            merged = tuple(sorted(ia + ib))
            term = _merge_sign(ia, ib) * va * vb
            cur = out.get(merged, Fraction(0)) + term
            if cur:
                out[merged] = cur
            else:
                out.pop(merged, None)
    return FormK.from_entries(a.n, degree, out)


def omega_power(space: ModelSpace, m: int) -> FormK:
    """The fundamental 2-form wedged with itself m times (m = 0 gives the unit)."""
    if m < 0:
        raise ValueError("negative power")
    if 2 * m > space.n:
        raise ValueError("wedge degree exceeds the space dimension")
    omega = form_from_tensor2(kaehler_form(space))
    acc = FormK.unit(space.n)
    for _ in range(m):
        acc = wedge(acc, omega)
    return acc


def two_form_coordinates(n: int) -> list[tuple[int, int]]:
    """Index pairs (i < j) coordinatizing 2-forms, in lexicographic order."""
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def lefschetz_wedge_kernel(space: ModelSpace) -> tuple[int, Subspace]:
    """Rank and kernel of wedging 2-forms with the fundamental form.

    Both are expressed in the (i < j) coordinate system of 2-forms; the rank
    is full for n >= 6 and drops to one on four-dimensional spaces.
    """
    n = space.n
    omega = form_from_tensor2(kaehler_form(space))
    pairs = two_form_coordinates(n)
    four_coords = {idx: c for c, idx in enumerate(combinations(range(n), 4))}
    columns: dict[int, dict[int, Fraction]] = {}
    for bi, (i, j) in enumerate(pairs):
        img = wedge(FormK.from_entries(n, 2, {(i, j): 1}), omega)
        for idx, v in img.entries:
            columns.setdefault(four_coords[idx], {})[bi] = v
    kernel = kernel_of_rows(columns.values(), len(pairs))
    sub = Subspace(len(pairs), tuple(tuple(sorted(r.items())) for r in kernel))
    return len(pairs) - sub.dim, sub


def omega_orthogonal_two_forms(space: ModelSpace) -> Subspace:
    """2-forms orthogonal to the fundamental form, in (i < j) coordinates."""
    n = space.n
    omega = kaehler_form(space)
    pairs = two_form_coordinates(n)
    row = {}
    for c, (i, j) in enumerate(pairs):
        w = 2 * space.eps[i] * space.eps[j] * omega[i, j]
        if w:
            row[c] = Fraction(w)
    kernel = kernel_of_rows([row], len(pairs))
    return Subspace(len(pairs), tuple(tuple(sorted(r.items())) for r in kernel))


# ---------------------------------------------------------------------------
# Sparse constraint rows (flattened rank-4 coordinates)
# ---------------------------------------------------------------------------


def antisym_rows(n: int) -> list[dict[int, int]]:
    rows = []
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                for l in range(n):
                    row: dict[int, int] = {}
                    for key in (flatten4(n, i, j, k, l), flatten4(n, j, i, k, l)):
                        row[key] = row.get(key, 0) + 1
                    rows.append(row)
    return rows


def bianchi_rows(n: int) -> list[dict[int, int]]:
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if (i, j, k) > (j, k, i) or (i, j, k) > (k, i, j):
                    continue  # one row per cyclic class
                for l in range(n):
                    row: dict[int, int] = {}
                    for key in (
                        flatten4(n, i, j, k, l),
                        flatten4(n, j, k, i, l),
                        flatten4(n, k, i, j, l),
                    ):
                        row[key] = row.get(key, 0) + 1
                    rows.append(row)
    return rows


def riemann_rows(n: int) -> list[dict[int, int]]:
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(k, n):
                    row: dict[int, int] = {}
                    for key in (flatten4(n, i, j, k, l), flatten4(n, i, j, l, k)):
                        row[key] = row.get(key, 0) + 1
                    rows.append(row)
    return rows


def weyl_rows(space: ModelSpace) -> list[dict[int, int]]:
    """Rows of the Weyl symmetry operator, scaled by n to stay integral."""
    n = space.n
    eps = space.eps
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(k, n):
                    row: dict[int, int] = {}
                    for key in (flatten4(n, i, j, k, l), flatten4(n, i, j, l, k)):
                        row[key] = row.get(key, 0) + n
                    if k == l:
                        for c in range(n):
                            w = 2 * eps[k] * eps[c]
                            key = flatten4(n, c, j, i, c)
                            row[key] = row.get(key, 0) - w
                            key = flatten4(n, c, i, j, c)
                            row[key] = row.get(key, 0) + w
                    rows.append({c: v for c, v in row.items() if v})
    return rows


def kaehler_rows(space: ModelSpace) -> list[dict[int, int]]:
    if space.kind == "none":
        raise ValueError("structure rows require a structured space")
    n = space.n
    u = structure_sign(space.kind)
    perm = j_signed_permutation(space)
    rows = []
    for k in range(n):
        pk, sk = perm[k]
        for l in range(n):
            pl, sl = perm[l]
            if (k, l) > (pk, pl):
                continue  # partner row is a scalar multiple
            for i in range(n):
                for j in range(n):
                    row: dict[int, int] = {flatten4(n, i, j, k, l): 1}
                    key = flatten4(n, i, j, pk, pl)
                    row[key] = row.get(key, 0) + u * sk * sl
                    rows.append(row)
    return rows


def ricci_rows(space: ModelSpace) -> list[dict[int, int]]:
    """Rows expressing Ric(x, y) = 0 for every (x, y)."""
    n = space.n
    rows = []
    for x in range(n):
        for y in range(n):
            row = {flatten4(n, c, x, y, c): space.eps[c] for c in range(n)}
            rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# Sparse operator application on flattened coordinate vectors
# ---------------------------------------------------------------------------

Vec = Mapping[int, Fraction]


def _acc(out: dict[int, Fraction], key: int, val: Fraction) -> None:
    cur = out.get(key, Fraction(0)) + val
    if cur:
        out[key] = cur
    else:
        out.pop(key, None)


def apply_antisym(n: int, vec: Vec) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for c, v in vec.items():
        i, j, k, l = unflatten4(n, c)
        _acc(out, c, v)
        _acc(out, flatten4(n, j, i, k, l), v)
    return out


def apply_bianchi(n: int, vec: Vec) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for c, v in vec.items():
        i, j, k, l = unflatten4(n, c)
        _acc(out, c, v)
        _acc(out, flatten4(n, k, i, j, l), v)
        _acc(out, flatten4(n, j, k, i, l), v)
    return out


def apply_riemann(n: int, vec: Vec) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for c, v in vec.items():
        i, j, k, l = unflatten4(n, c)
        _acc(out, c, v)
        _acc(out, flatten4(n, i, j, l, k), v)
    return out


def apply_ricci(space: ModelSpace, vec: Vec) -> dict[int, Fraction]:
    """Sparse Ricci contraction to a flattened rank-2 vector."""
    n = space.n
    out: dict[int, Fraction] = {}
    for c, v in vec.items():
        i, j, k, l = unflatten4(n, c)
        if i == l:
            _acc(out, j * n + k, space.eps[i] * v)
    return out


def apply_weyl(space: ModelSpace, vec: Vec) -> dict[int, Fraction]:
    n = space.n
    out = apply_riemann(n, vec)
    ric = apply_ricci(space, vec)
    two_over_n = Fraction(2, n)
    for c, v in ric.items():
        x, y = divmod(c, n)
        # Ric(y,x) - Ric(x,y) enters the (x,y,z,z) components
        for z in range(n):
            corr = two_over_n * v * space.eps[z]
            _acc(out, flatten4(n, y, x, z, z), -corr)
            _acc(out, flatten4(n, x, y, z, z), corr)
    return out


def apply_kaehler(space: ModelSpace, vec: Vec) -> dict[int, Fraction]:
    n = space.n
    u = structure_sign(space.kind)
    perm = j_signed_permutation(space)
    out: dict[int, Fraction] = {}
    for c, v in vec.items():
        i, j, k, l = unflatten4(n, c)
        pk, sk = perm[k]
        pl, sl = perm[l]
        _acc(out, c, v)
        _acc(out, flatten4(n, i, j, pk, pl), u * sk * sl * v)
    return out


def lie_apply_vec(x: Matrix, vec: Vec, rank: int, n: int) -> dict[int, Fraction]:
    """Sparse infinitesimal action on a flattened rank-2 or rank-4 vector."""
    x_rows = [[(b, x[a, b]) for b in range(n) if x[a, b]] for a in range(n)]
    out: dict[int, Fraction] = {}
    for c, v in vec.items():
        if rank == 4:
            idx = list(unflatten4(n, c))
        else:
            idx = list(divmod(c, n))
        for slot in range(rank):
            a = idx[slot]
            stride = n ** (rank - 1 - slot)
            base = c - a * stride
            for b, coeff in x_rows[a]:
                _acc(out, base + b * stride, coeff * v)
    return out


def pullback_apply_vec(g: Matrix, vec: Vec, rank: int, n: int) -> dict[int, Fraction]:
    """Sparse pull-back: contract each slot with g in sequence."""
    g_rows = [[(b, g[a, b]) for b in range(n) if g[a, b]] for a in range(n)]
    cur = dict(vec)
    for slot in range(rank):
        stride = n ** (rank - 1 - slot)
        nxt: dict[int, Fraction] = {}
        for c, v in cur.items():
            a = (c // stride) % n
            base = c - a * stride
            for b, coeff in g_rows[a]:
                _acc(nxt, base + b * stride, coeff * v)
        cur = nxt
    return cur
