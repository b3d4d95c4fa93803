"""Colimit complexes, telescopes, direct limits, and the comparison theorems."""

import pytest

from morsecolim.colimit import (DirectSystem, UnknownSimplex, build_colimit,
                                build_telescope, compare_homologies,
                                cone_relation_residual, cone_structure_map,
                                direct_limit, filtration_complex,
                                homology_system, telescope_from_stages,
                                verify_telescope_lemma)
from morsecolim.complexes import ChainMap, GradedComplex, homology, is_chain_map
from morsecolim.diagrams import CoherentDiagram, complete, make_strict
from morsecolim.f2 import F2Matrix
from morsecolim.generate import (make_rng, random_chain_map, random_complex,
                                 random_completable_truncation,
                                 random_strict_diagram)
from morsecolim.nerve import PosetSimplex


def S(*vs):
    return PosetSimplex(vs)


def point():
    return GradedComplex({0: 1})


def two_point_diagram(block):
    p = point()
    return make_strict({0: p, 1: p}, {(0, 1): ChainMap(p, p, 0, {0: block})})


def identity_chain(n_stages, c=None):
    c = c or point()
    stages = {a: c for a in range(n_stages)}
    edges = {(a, a + 1): ChainMap.identity(c) for a in range(n_stages - 1)}
    return make_strict(stages, edges)


# ---- build_colimit -------------------------------------------------------------


def test_colimit_single_stage_is_the_stage():
    c = GradedComplex({0: 2, 1: 1}, {1: F2Matrix.from_dense([[1], [1]])})
    col = build_colimit(CoherentDiagram({0: c}))
    assert col.complex.dims == c.dims
    assert col.complex.diff_at_all() == c.diff_at_all()


def test_colimit_two_stage_identity_formula():
    d = two_point_diagram(F2Matrix.identity(1))
    col = build_colimit(d)
    assert col.complex.dims == {0: 2, 1: 1}
    # d(01; x) = (0; x) + (1; x)
    column = col.complex.diff_at(1).column(0)
    i0 = col.position(S(0), 0, 0)
    i1 = col.position(S(1), 0, 0)
    assert column == (1 << i0) | (1 << i1)
    assert homology(col.complex).betti == {0: 1}


def test_colimit_identity_chains_collapse():
    rng = make_rng(3)
    c = random_complex(rng, max_dim=3)
    for n in (2, 3, 4, 5):
        col = build_colimit(identity_chain(n, c))
        assert homology(col.complex).betti == homology(c).betti


def test_colimit_d_squared_and_grading():
    rng = make_rng(5)
    for _ in range(10):
        done = complete(random_completable_truncation(
            rng, rng.choice([2, 3, 4]), degrees=(0, 1), max_dim=2))
        col = build_colimit(done)
        assert not col.complex.d_squared_report()
        # every matrix block is stored at the degree it leaves, shape-checked
        for n, m in col.complex.diff.items():
            assert m.shape == (col.complex.dim(n - 1), col.complex.dim(n))


def test_colimit_max_stage_truncation():
    d = identity_chain(4)
    col = build_colimit(d, max_stage=1)
    assert col.complex.dims == {0: 2, 1: 1}


# ---- telescope -------------------------------------------------------------------


def test_telescope_single_stage():
    c = GradedComplex({0: 1, 1: 1})
    tel = build_telescope(CoherentDiagram({0: c}))
    assert tel.complex.dims == c.dims


def test_telescope_identity_edge():
    tel = build_telescope(two_point_diagram(F2Matrix.identity(1)))
    assert homology(tel.complex).betti == {0: 1}


def test_telescope_zero_edge():
    # total space C0 + C1 + one bar copy; d(bar x) = x + psi(x) = x, so one
    # degree-0 class survives (carried by the last stage)
    tel = build_telescope(two_point_diagram(F2Matrix.zeros(1, 1)))
    assert tel.complex.dims == {0: 2, 1: 1}
    assert homology(tel.complex).betti == {0: 1}


def test_telescope_from_stages_signature():
    c = point()
    tel = telescope_from_stages([c, c], [ChainMap.identity(c)])
    assert homology(tel.complex).betti == {0: 1}
    with pytest.raises(ValueError):
        telescope_from_stages([c, c], [])


def test_telescope_bar_copy_grading():
    # an edge generator over degree n sits in total degree n + 1
    c = GradedComplex({0: 1, 1: 1})
    tel = build_telescope(identity_chain(2, c))
    assert tel.complex.dims == {0: 2, 1: 3, 2: 1}


# ---- direct limits -----------------------------------------------------------------


def test_direct_limit_all_identity():
    ident = {0: F2Matrix.identity(2)}
    sys = DirectSystem([{0: 2}] * 3, [ident, ident])
    assert direct_limit(sys) == {0: 2}


def test_direct_limit_all_zero_with_tail():
    zero = {0: F2Matrix.zeros(2, 2)}
    sys = DirectSystem([{0: 2}] * 3, [zero, zero], tail=zero)
    assert direct_limit(sys) == {}


def test_direct_limit_rank_one_idempotent():
    p = {0: F2Matrix.from_dense([[1, 1], [0, 0]])}
    assert p[0] @ p[0] == p[0]
    sys = DirectSystem([{0: 2}] * 3, [p, p], tail=p)
    assert direct_limit(sys) == {0: 1}


def test_direct_limit_finite_chain_is_last_stage():
    rng = make_rng(7)
    for _ in range(10):
        d = random_strict_diagram(rng, 3, degrees=(0, 1), max_dim=3)
        lim = direct_limit(homology_system(d))
        last = homology(d.stages[2]).betti
        assert lim == last


def test_direct_limit_stabilize_truncates():
    ident = {0: F2Matrix.identity(1)}
    zero = {0: F2Matrix.zeros(1, 1)}
    sys = DirectSystem([{0: 1}] * 3, [ident, zero], stabilize=1)
    assert direct_limit(sys) == {0: 1}


def test_direct_system_shape_checked():
    with pytest.raises(ValueError):
        DirectSystem([{0: 1}, {0: 2}], [{0: F2Matrix.identity(1)}])


# ---- telescope lemma -----------------------------------------------------------------


def test_lemma_zero_edges():
    tel = build_telescope(two_point_diagram(F2Matrix.zeros(1, 1)))
    assert verify_telescope_lemma(tel).ok


def test_lemma_identity_chain_length_three():
    tel = build_telescope(identity_chain(3))
    report = verify_telescope_lemma(tel)
    assert report.ok
    assert all(a == b for a, b in report.kernel_check.values())


def test_lemma_random_two_stage():
    rng = make_rng(11)
    for _ in range(10):
        c0 = random_complex(rng, max_dim=4)
        c1 = random_complex(rng, max_dim=4)
        d = make_strict({0: c0, 1: c1},
                        {(0, 1): random_chain_map(rng, c0, c1)})
        assert verify_telescope_lemma(build_telescope(d)).ok


# ---- compare_homologies -----------------------------------------------------------------


def test_compare_strict_identity_chain():
    c = GradedComplex({0: 2, 1: 1}, {1: F2Matrix.from_dense([[1], [1]])})
    report = compare_homologies(identity_chain(3, c))
    assert report.agree
    assert report.colimit_betti == homology(c).betti


def test_compare_projection_system():
    plane = GradedComplex({0: 2})
    proj = ChainMap(plane, plane, 0, {0: F2Matrix.from_dense([[1, 0], [0, 0]])})
    d = make_strict({0: plane, 1: plane}, {(0, 1): proj})
    report = compare_homologies(d)
    assert report.agree
    assert report.direct_limit == {0: 2}  # finite window ends at stage 1


def test_compare_with_nonzero_two_simplex():
    rng = make_rng(13)
    for _ in range(5):
        done = complete(random_completable_truncation(rng, 3, degrees=(0, 1),
                                                      max_dim=2))
        assert compare_homologies(done).agree


def test_compare_report_json_shape():
    report = compare_homologies(identity_chain(2))
    doc = report.to_json()
    assert set(doc) == {"colimit_betti", "telescope_betti", "direct_limit",
                        "agree"}
    assert doc["agree"] is True


# ---- filtration ------------------------------------------------------------------------


def test_filtration_whole_complex():
    d = identity_chain(3)
    col = build_colimit(d)
    full = filtration_complex(col, 10)
    assert full.dims == col.complex.dims
    assert full.diff_at_all() == col.complex.diff_at_all()


def test_filtration_level_zero_is_stage_sum():
    d = two_point_diagram(F2Matrix.identity(1))
    col = build_colimit(d)
    f0 = filtration_complex(col, 0)
    assert f0.dims == {0: 2}
    assert f0.diff_at(0).is_zero()


def test_filtration_level_one_identity_chain():
    # oracle for the all-identity three-stage chain: dropping the triangle
    # cell leaves one spurious degree-1 class, killed only at the top level
    col = build_colimit(identity_chain(3))
    f1 = filtration_complex(col, 1)
    assert not f1.d_squared_report()
    assert homology(f1).betti == {0: 1, 1: 1}
    assert homology(col.complex).betti == {0: 1}


def test_filtration_is_subcomplex():
    rng = make_rng(19)
    done = complete(random_completable_truncation(rng, 4, degrees=(0, 1),
                                                  max_dim=2))
    col = build_colimit(done)
    for n_max in range(4):
        sub = filtration_complex(col, n_max)
        assert not sub.d_squared_report()


# ---- cone structure maps ------------------------------------------------------------------


def test_cone_vertex_is_inclusion_chain_map():
    d = two_point_diagram(F2Matrix.identity(1))
    col = build_colimit(d)
    inc = cone_structure_map(col, S(0))
    ok, _ = is_chain_map(inc)
    assert ok and inc.degree == 0


def test_cone_edge_hom_differential():
    d = two_point_diagram(F2Matrix.identity(1))
    col = build_colimit(d)
    edge_cone = cone_structure_map(col, S(0, 1))
    want = (cone_structure_map(col, S(0))
            + cone_structure_map(col, S(1)) @ d.map_at(S(0, 1)))
    assert edge_cone.hom_differential() == want


def test_cone_relation_all_simplices():
    rng = make_rng(23)
    done = complete(random_completable_truncation(rng, 3, degrees=(0, 1),
                                                  max_dim=2))
    col = build_colimit(done)
    for s in col.simplices:
        assert cone_relation_residual(col, s).is_zero()


def test_cone_unknown_simplex():
    d = two_point_diagram(F2Matrix.identity(1))
    col = build_colimit(d)
    with pytest.raises(UnknownSimplex):
        cone_structure_map(col, S(0, 1, 2))
