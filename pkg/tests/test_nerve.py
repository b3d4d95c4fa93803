"""Simplex combinatorics of the stage poset and the doubled poset."""

import pytest

from morsecolim.nerve import (PosetSimplex, ProductSimplex,
                              enumerate_product_simplices,
                              enumerate_simplices, is_degenerate_chain)


def S(*vs):
    return PosetSimplex(vs)


def test_vertices_must_increase():
    with pytest.raises(ValueError):
        S(0, 0)
    with pytest.raises(ValueError):
        S(2, 1)
    with pytest.raises(ValueError):
        PosetSimplex(())


def test_source_target_length():
    s = S(1, 3, 7)
    assert (s.source, s.target, s.length) == (1, 7, 2)


def test_face_interior():
    assert S(0, 1, 2).face(1) == S(0, 2)


def test_face_endpoints():
    assert S(0, 1).face(0) == S(1)
    assert S(0, 1).face(1) == S(0)


def test_face_longer():
    assert S(0, 2, 5, 9).face(2) == S(0, 2, 9)


def test_face_out_of_range():
    with pytest.raises(IndexError):
        S(0, 1).face(2)
    with pytest.raises(IndexError):
        S(0).face(0)


def test_split_middle():
    assert S(0, 1, 2).split(1) == (S(0, 1), S(1, 2))


def test_split_endpoint_conventions():
    assert S(0, 3).split(0) == (S(0), S(0, 3))
    assert S(0, 3).split(1) == (S(0, 3), S(3))


def test_split_longer():
    # the shared vertex is always vertex i of the chain
    assert S(1, 2, 4, 7).split(2) == (S(1, 2, 4), S(4, 7))
    assert S(1, 2, 4, 7).split(3) == (S(1, 2, 4, 7), S(7))


def test_simplicial_identity_exhaustive():
    # face(face(s, j), i) = face(face(s, i), j-1) for i < j
    for s in enumerate_simplices(6, 4):
        k = s.length
        if k < 2:
            continue
        for j in range(1, k + 1):
            for i in range(j):
                assert s.face(j).face(i) == s.face(i).face(j - 1)


def test_split_concat_round_trip_exhaustive():
    for s in enumerate_simplices(6, 4):
        for i in range(s.length + 1):
            prefix, suffix = s.split(i)
            assert prefix.concat(suffix) == s
            assert prefix.target == suffix.source


def test_faces_stay_nondegenerate():
    for s in enumerate_simplices(5, 3):
        for i in range(s.length + 1):
            if s.length >= 1:
                f = s.face(i)
                assert all(a < b for a, b in zip(f.vertices, f.vertices[1:]))


def test_enumerate_small():
    got = enumerate_simplices(1, 1)
    assert got == [S(0), S(1), S(0, 1)]


def test_enumerate_counts():
    assert len(enumerate_simplices(2, 2)) == 7  # 3 + 3 + 1
    assert len(enumerate_simplices(2, 1)) == 6  # 3 + 3


def test_enumerate_with_stage_subset():
    got = enumerate_simplices(5, 1, stages=[0, 3, 5])
    assert S(0, 3) in got and S(3, 5) in got and S(0, 5) in got
    assert all(set(s.vertices) <= {0, 3, 5} for s in got)


def test_telescope_subcomplex_membership():
    assert S(0, 1).in_telescope_subcomplex()
    assert not S(0, 2).in_telescope_subcomplex()
    assert not S(0, 1, 2).in_telescope_subcomplex()
    assert S(4).in_telescope_subcomplex()


def test_simplex_json():
    assert S(0, 2, 3).to_json() == [0, 2, 3]


# ---- doubled poset chains ----------------------------------------------------


def test_product_chain_validity():
    ProductSimplex([(0, 0), (0, 1), (1, 1)])
    with pytest.raises(ValueError):
        ProductSimplex([(1, 0), (0, 0)])  # stages decrease
    with pytest.raises(ValueError):
        ProductSimplex([(0, 0), (0, 0)])  # repeated vertex
    with pytest.raises(ValueError):
        ProductSimplex([(0, 2)])  # bad marker


def test_nonidentity_marker_moves():
    c = ProductSimplex([(0, 0), (0, 1), (1, 1), (2, 1)])
    assert c.nonidentity_marker_moves() == 1
    assert c.length == 3


def test_product_faces_may_degenerate():
    c = ProductSimplex([(0, 0), (0, 1), (0, 0)])
    assert not is_degenerate_chain(c.vertices)
    assert is_degenerate_chain(c.face_vertices(1))


def test_product_split():
    c = ProductSimplex([(0, 0), (1, 0), (1, 1)])
    prefix, suffix = c.split(1)
    assert prefix.vertices == ((0, 0), (1, 0))
    assert suffix.vertices == ((1, 0), (1, 1))


def test_enumerate_product_simplices():
    chains = enumerate_product_simplices(1, 2)
    assert all(c.length <= 2 for c in chains)
    # vertices: 4; every chain is nondegenerate with nondecreasing stages
    assert sum(1 for c in chains if c.length == 0) == 4
    for c in chains:
        assert not is_degenerate_chain(c.vertices)
        stages = [a for a, _ in c.vertices]
        assert stages == sorted(stages)
    # marker flips at a fixed stage go in both directions
    assert ProductSimplex([(0, 1), (0, 0)]) in chains
