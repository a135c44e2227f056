"""Curvature subspace builders: dimensions against closed forms and against
the independent dense oracle, containment chains, and signature independence.

Expected dimensions marked as derived were first computed with the oracle in
``oracles.py`` (dense textbook elimination on operator matrices assembled
from the public dense defect operations) and then frozen here; the oracle
comparison itself reruns below at small n.
"""

from fractions import Fraction

import pytest

import oracles
from curvlab.linalg import Subspace, intersect, subspace_sum
from curvlab.spaces import make_standard
from curvlab.curvature import (
    build_affine,
    build_conformal,
    build_map_image,
    build_riemann,
    build_sigma_image,
    build_weyl,
    decompose_two_tensors,
    kaehler_subspace,
    probe_aligned_form,
    probe_opposed_form,
)
from curvlab.tensors import (
    Tensor2,
    alt_ricci,
    gram_weight2,
    inner2,
    is_structure_eigenform,
    kaehler_form,
    metric_tensor2,
    psi_map,
    ricci,
    sigma,
)

F = Fraction


def affine_dim(n):
    return n * n * (n * n - 1) // 3


def riemann_dim(n):
    return n * n * (n * n - 1) // 12


# --- dimensions against closed forms ------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_affine_and_riemann_closed_forms(n):
    s = make_standard(n, "none")
    assert build_affine(s).dim == affine_dim(n)
    assert build_riemann(s).dim == riemann_dim(n)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_weyl_dimension_formula(n):
    s = make_standard(n, "none")
    assert build_weyl(s).dim == riemann_dim(n) + n * (n - 1) // 2


@pytest.mark.parametrize("n,expected", [(4, 10), (6, 84)])
def test_conformal_dims(n, expected):
    s = make_standard(n, "none")
    assert build_conformal(s).dim == expected


def test_conformal_needs_n4():
    with pytest.raises(ValueError):
        build_conformal(make_standard(3, "none"))


@pytest.mark.parametrize("n", [3, 4, 6])
def test_sigma_image_dimension(n):
    s = make_standard(n, "none")
    assert build_sigma_image(s).dim == n * (n - 1) // 2  # the five-term map is injective


# --- containment chain ----------------------------------------------------------


@pytest.mark.parametrize(
    "n,kind,sig",
    [
        (3, "none", (3, 0)),
        (3, "none", (2, 1)),
        (4, "complex", (4, 0)),
        (4, "para", None),
        (5, "none", (3, 2)),
        (6, "complex", (4, 2)),
        (6, "para", None),
    ],
)
def test_containment_chain(n, kind, sig):
    s = make_standard(n, kind, sig)
    affine, weyl, riemann = build_affine(s), build_weyl(s), build_riemann(s)
    assert riemann.is_subspace_of(weyl)
    assert weyl.is_subspace_of(affine)


# --- signature independence -------------------------------------------------------


def test_dims_signature_independent():
    dims = []
    for sig in ((6, 0), (4, 2), (2, 4), (0, 6)):
        s = make_standard(6, "complex", sig)
        dims.append(
            (
                build_weyl(s).dim,
                build_riemann(s).dim,
                kaehler_subspace(build_weyl(s), s).dim,
                [d for _, d in ((nm, sub.dim) for nm, sub in decompose_two_tensors(s).pieces())],
            )
        )
    assert all(d == dims[0] for d in dims)


def test_para_layout_independent():
    dims = []
    for eps in (None, (-1, 1, -1, 1, -1, 1), (1, -1, -1, 1, 1, -1)):
        s = make_standard(6, "para", eps=eps)
        dims.append((build_weyl(s).dim, kaehler_subspace(build_weyl(s), s).dim,
                     kaehler_subspace(build_riemann(s), s).dim))
    assert dims == [(120, 36, 36)] * 3


# --- structure-compatible subspaces -------------------------------------------------


@pytest.mark.parametrize("kind", ["complex", "para"])
def test_kaehler_dims_n4(kind):
    # derived via the dense oracle (rerun below); the strict gap at n = 4
    s = make_standard(4, kind)
    kw = kaehler_subspace(build_weyl(s), s)
    kr = kaehler_subspace(build_riemann(s), s)
    assert (kw.dim, kr.dim) == (14, 9)
    assert kr == intersect(kw, build_riemann(s))


@pytest.mark.parametrize("kind", ["complex", "para"])
def test_kaehler_dims_n6(kind):
    s = make_standard(6, kind)
    kw = kaehler_subspace(build_weyl(s), s)
    kr = kaehler_subspace(build_riemann(s), s)
    assert (kw.dim, kr.dim) == (36, 36)
    assert kw == kr


def test_kaehler_subspace_of_zero(complex4):
    assert kaehler_subspace(Subspace.zero(4 ** 4), complex4) == Subspace.zero(4 ** 4)


def test_kaehler_subspace_requires_structure():
    s = make_standard(4, "none")
    with pytest.raises(ValueError):
        kaehler_subspace(Subspace.zero(256), s)


# --- two-tensor splitting ------------------------------------------------------------


@pytest.mark.parametrize("kind", ["complex", "para"])
def test_two_tensor_split_dims_n6(kind):
    s = make_standard(6, kind)
    split = decompose_two_tensors(s)
    assert [d for _, d in ((nm, sub.dim) for nm, sub in split.pieces())] == [1, 8, 12, 1, 8, 6]


def test_two_tensor_split_sums_to_n_squared(para4):
    split = decompose_two_tensors(para4)
    assert sum(sub.dim for _, sub in split.pieces()) == 16


@pytest.mark.parametrize("kind,sig", [("complex", (6, 0)), ("complex", (4, 2)), ("para", None)])
def test_two_tensor_pieces_pairwise_orthogonal(kind, sig):
    s = make_standard(6, kind, sig)
    pieces = decompose_two_tensors(s).pieces()
    for i, (_, a) in enumerate(pieces):
        for _, b in pieces[i + 1 :]:
            for va in a.basis_dicts():
                for vb in b.basis_dicts():
                    assert inner2(s, va, vb) == 0


def test_generators_live_in_their_lines(complex6):
    split = decompose_two_tensors(complex6)
    assert split.h_line.contains(metric_tensor2(complex6).to_dict())
    assert split.omega_line.contains(kaehler_form(complex6).to_dict())


# --- images of the maps ---------------------------------------------------------------


@pytest.mark.parametrize("kind", ["complex", "para"])
def test_sigma_piece_images_recompose(kind):
    s = make_standard(6, kind)
    split = decompose_two_tensors(s)
    w11 = build_map_image(s, split.omega_line, lambda t: sigma(t, s))
    w12 = build_map_image(s, split.alt_aligned_traceless, lambda t: sigma(t, s))
    w13 = build_map_image(s, split.alt_opposed, lambda t: sigma(t, s))
    assert (w11.dim, w12.dim, w13.dim) == (1, 8, 6)
    assert subspace_sum(subspace_sum(w11, w12), w13) == build_sigma_image(s)


@pytest.mark.parametrize("kind", ["complex", "para"])
def test_psi_image_inside_riemann(kind):
    s = make_standard(6, kind)
    split = decompose_two_tensors(s)
    w9 = build_map_image(s, split.alt_opposed, lambda t: psi_map(t, s))
    assert w9.dim == 6
    assert w9.is_subspace_of(build_riemann(s))


def test_probe_forms_are_eigenforms(complex6, para6):
    for s in (complex6, para6):
        assert is_structure_eigenform(probe_opposed_form(s), s)
        psi0 = probe_aligned_form(s)
        assert inner2(s, psi0.to_dict(), kaehler_form(s).to_dict()) == 0
        split = decompose_two_tensors(s)
        assert split.alt_aligned_traceless.contains(psi0.to_dict())
        assert split.alt_opposed.contains(probe_opposed_form(s).to_dict())


# --- ricci mechanism --------------------------------------------------------------------


@pytest.mark.parametrize("n,kind", [(4, "complex"), (6, "para")])
def test_riemannian_means_symmetric_ricci_inside_weyl(n, kind):
    """Within the weyl space, membership in the riemann space is exactly a
    symmetric-Ricci condition: the alternating Ricci part vanishes on the
    riemann space and is injective on the five-term complement."""
    from curvlab.linalg import rank_of_rows
    from curvlab.tensors import Tensor4

    s = make_standard(n, kind)
    riemann = build_riemann(s)
    for vec in riemann.basis_dicts():
        t = Tensor4.from_dict(n, vec)
        assert alt_ricci(t, s).is_zero()
        assert ricci(t, s).is_symmetric()
    weyl = build_weyl(s)
    images = []
    for vec in weyl.basis_dicts():
        images.append(alt_ricci(Tensor4.from_dict(n, vec), s).to_dict())
    assert rank_of_rows(images, n * n) == weyl.dim - riemann.dim


# --- independent dense oracle ------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3])
def test_oracle_matches_builders_small(n):
    s = make_standard(n, "none")
    for names, builder in (
        (["antisym", "bianchi"], build_affine),
        (["antisym", "bianchi", "weyl"], build_weyl),
        (["antisym", "bianchi", "riemann"], build_riemann),
    ):
        rows = oracles.operator_matrix(s, names)
        kernel = oracles.dense_kernel(rows, n ** 4)
        built = builder(s)
        assert len(kernel) == built.dim
        assert oracles.same_span(kernel, built.basis_dense())


@pytest.mark.parametrize("kind", ["complex", "para"])
def test_oracle_matches_kaehler_weyl_n4(kind):
    s = make_standard(4, kind)
    rows = oracles.operator_matrix(s, ["antisym", "bianchi", "weyl", "kaehler"])
    kernel = oracles.dense_kernel(rows, 256)
    built = kaehler_subspace(build_weyl(s), s)
    assert len(kernel) == built.dim == 14
    assert oracles.same_span(kernel, built.basis_dense())


def test_oracle_matches_conformal_n4():
    s = make_standard(4, "none")
    rows = oracles.operator_matrix(s, ["antisym", "bianchi", "riemann"]) + oracles.ricci_matrix(s)
    kernel = oracles.dense_kernel(rows, 256)
    built = build_conformal(s)
    assert len(kernel) == built.dim == 10
    assert oracles.same_span(kernel, built.basis_dense())


def test_weyl_equals_affine_meet_weyl_kernel_n3():
    """Cross-check the builder against generic intersection."""
    s = make_standard(3, "none")
    affine = build_affine(s)
    weyl_kernel = oracles.dense_kernel(oracles.operator_matrix(s, ["weyl"]), 81)
    generic = intersect(affine, Subspace.from_vectors(weyl_kernel, 81))
    assert generic == build_weyl(s)
