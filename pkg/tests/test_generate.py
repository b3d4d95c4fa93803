"""Invariants of the seeded random generators."""

import os

from morsecolim.complexes import is_chain_map
from morsecolim.f2 import F2Matrix
from morsecolim.generate import (CoherentFamily, DEFAULT_SEED, invert,
                                 make_rng, random_chain_map, random_complex,
                                 random_invertible, seed_from_env)


def test_seed_env_override(monkeypatch):
    monkeypatch.setenv("MT_SEED", "42")
    assert seed_from_env() == 42
    monkeypatch.delenv("MT_SEED")
    assert seed_from_env() == DEFAULT_SEED


def test_make_rng_deterministic():
    assert make_rng(5).random() == make_rng(5).random()


def test_random_invertible_inverts():
    rng = make_rng(61)
    for n in (1, 2, 4, 6):
        g = random_invertible(rng, n)
        assert g @ invert(g) == F2Matrix.identity(n)


def test_random_complexes_are_valid():
    rng = make_rng(67)
    for _ in range(50):
        c = random_complex(rng)
        assert c.is_valid()
        assert all(d <= 4 for d in c.dims.values())


def test_random_chain_maps_commute():
    rng = make_rng(71)
    for _ in range(20):
        a = random_complex(rng, max_dim=3)
        b = random_complex(rng, max_dim=3)
        ok, _ = is_chain_map(random_chain_map(rng, a, b))
        assert ok


def test_family_structure_maps_have_right_degree():
    rng = make_rng(73)
    fam = CoherentFamily(rng, 4, degrees=(0, 1), max_dim=2)
    d = fam.full_diagram()
    for s, f in d.maps.items():
        assert f.degree == s.length - 1
    assert d.validate().ok


def test_truncation_pins_only_requested_lengths():
    rng = make_rng(79)
    fam = CoherentFamily(rng, 4, degrees=(0, 1), max_dim=2)
    partial = fam.truncation((1,))
    assert all(s.length == 1 for s in partial.maps)
