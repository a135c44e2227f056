"""Documented JSON forms for matrices, subspaces, tensors and model spaces.

Rationals serialize as strings ``"p/q"`` (or ``"p"`` when the denominator is
one); arrays are row-major.  Round-trips are bit-exact.
"""

from __future__ import annotations

from .linalg import Matrix, Subspace, scalar_from_str, scalar_to_str
from .spaces import ModelSpace, make_standard
from .tensors import FormK, Tensor2, Tensor4


def matrix_to_obj(m: Matrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": [scalar_to_str(v) for v in m.entries]}


def matrix_from_obj(obj: dict) -> Matrix:
    entries = tuple(scalar_from_str(s) for s in obj["entries"])
    return Matrix(obj["rows"], obj["cols"], entries)


def subspace_to_obj(s: Subspace) -> dict:
    return {
        "ambient_dim": s.ambient_dim,
        "basis": [[scalar_to_str(v) for v in row] for row in s.basis_dense()],
    }


def subspace_from_obj(obj: dict) -> Subspace:
    vectors = [[scalar_from_str(x) for x in row] for row in obj["basis"]]
    return Subspace.from_vectors(vectors, obj["ambient_dim"])


def tensor2_to_obj(t: Tensor2) -> dict:
    return {"rank": 2, "n": t.n, "components": [scalar_to_str(v) for v in t.components]}


def tensor2_from_obj(obj: dict) -> Tensor2:
    return Tensor2(obj["n"], tuple(scalar_from_str(s) for s in obj["components"]))


def tensor4_to_obj(t: Tensor4) -> dict:
    return {"rank": 4, "n": t.n, "components": [scalar_to_str(v) for v in t.components]}


def tensor4_from_obj(obj: dict) -> Tensor4:
    return Tensor4(obj["n"], tuple(scalar_from_str(s) for s in obj["components"]))


def form_to_obj(f: FormK) -> dict:
    return {
        "n": f.n,
        "degree": f.degree,
        "entries": [{"indices": list(idx), "value": scalar_to_str(v)} for idx, v in f.entries],
    }


def form_from_obj(obj: dict) -> FormK:
    entries = {tuple(e["indices"]): scalar_from_str(e["value"]) for e in obj["entries"]}
    return FormK.from_entries(obj["n"], obj["degree"], entries)


def model_space_to_obj(s: ModelSpace) -> dict:
    obj = {"n": s.n, "kind": s.kind, "eps": list(s.eps)}
    obj["J"] = matrix_to_obj(s.j) if s.j is not None else None
    return obj


def model_space_from_obj(obj: dict) -> ModelSpace:
    # rebuild through the validated constructor; J is the standard one
    return make_standard(obj["n"], obj["kind"], eps=tuple(obj["eps"]))
