"""Opt-in floating-point engine: dimension agreement with the exact engine.

Float mode exists for large-dimension runs; it never replaces exact mode by
default, and these tests pin its dimension outputs to the exact ones.
"""

import pytest

from curvlab.spaces import make_standard
from curvlab.curvature import (
    build_riemann,
    build_weyl,
    engine_for_mode,
    kaehler_subspace,
    run_claim,
)


def test_engine_selection():
    assert engine_for_mode("exact").label == "exact"
    eng = engine_for_mode("float:1e-6")
    assert eng.label == "float"
    assert eng.tolerance == 1e-6
    assert engine_for_mode("float").tolerance == 1e-8
    with pytest.raises(ValueError):
        engine_for_mode("interval")


@pytest.mark.parametrize("kind", ["complex", "para"])
def test_float_dims_match_exact_n4(kind):
    s = make_standard(4, kind)
    eng = engine_for_mode("float:1e-8")
    assert build_weyl(s, eng).dim == build_weyl(s).dim == 26
    assert build_riemann(s, eng).dim == 20
    kw = kaehler_subspace(build_weyl(s, eng), s, eng)
    assert kw.dim == 14


def test_float_headline_n6():
    s = make_standard(6, "para")
    eng = engine_for_mode("float:1e-8")
    rep = run_claim("thm1.5", s, eng)
    assert rep.verdict
    assert rep.quantities["dim_kaehler_weyl"] == 36
    assert rep.quantities["dim_kaehler_riemann"] == 36
    assert rep.space["mode"] == "float:1e-08"


def test_float_subspace_relations():
    s = make_standard(4, "complex")
    eng = engine_for_mode("float:1e-8")
    weyl = build_weyl(s, eng)
    riemann = build_riemann(s, eng)
    assert eng.is_subspace(riemann, weyl)
    assert not eng.is_subspace(weyl, riemann)
    assert eng.dim(eng.sum(weyl, riemann)) == weyl.dim
    assert eng.dim(eng.intersect(weyl, riemann)) == riemann.dim


@pytest.mark.slow
def test_float_headline_n8():
    """Large-dimension run the float engine exists for (about two minutes)."""
    s = make_standard(8, "complex")
    eng = engine_for_mode("float:1e-8")
    weyl = build_weyl(s, eng)
    riemann = build_riemann(s, eng)
    assert weyl.dim == 8 * 8 * 63 // 12 + 8 * 7 // 2
    assert riemann.dim == 8 * 8 * 63 // 12
    kw = kaehler_subspace(weyl, s, eng)
    kr = kaehler_subspace(riemann, s, eng)
    assert kw.dim == kr.dim == 100
    assert eng.is_subspace(kw, riemann)
