"""Placings, their partial order, tail factors, and the simplex builders."""

from fractions import Fraction
from itertools import product

import pytest

from kgraphs import (
    basis_point,
    build_simplex,
    build_sphere,
    build_wedge,
    embed,
    enumerate_placings,
    height,
    leq,
    placing_id,
    sphere_pole,
    tail_factor,
    validate_kgraph,
)
from kgraphs.errors import HeightExceeded, OutOfBox, OutOfRange
from kgraphs.simplex import is_placing

from helpers import ordered_bell


def test_placing_counts_match_fubini_recurrence():
    # A000670 values 1, 3, 13, 75, 541 — but recompute them rather than
    # hard-coding, via the binomial recurrence.  Placings of {0..k} are
    # ordered set partitions of k+1 elements.
    for k in range(5):
        assert len(enumerate_placings(k)) == ordered_bell(k + 1)


def test_enumerate_rejects_non_placings():
    # (0,2): level 1 skipped, so 2 != #{i : f(i) < 2} = 1
    assert not is_placing((0, 2))
    assert is_placing((0, 1)) and is_placing((1, 0)) and is_placing((0, 0))
    for k in range(4):
        for f in enumerate_placings(k):
            assert is_placing(f)


def test_k1_placings_explicitly():
    assert enumerate_placings(1) == [(0, 0), (0, 1), (1, 0)]


def test_placing_id_blocks():
    assert placing_id((0, 0)) == "0"
    assert placing_id((0, 1)) == "{0,1}"
    assert placing_id((1, 0)) == "{1,0}"
    # ties at a level are written largest element first
    assert placing_id((0, 2, 0)) == "{20,1}"
    assert placing_id((0, 1, 2)) == "{0,1,2}"
    assert placing_id((0, 1, 1)) == "{0,21}"


def test_placing_ids_unique():
    for k in range(5):
        ids = [placing_id(f) for f in enumerate_placings(k)]
        assert len(ids) == len(set(ids))


def test_height():
    assert height((0, 0)) == (0,)
    assert height((0, 1)) == (1,)
    # (0,2,0) occupies levels 0 and 2 only, so its height vector is (0,1)
    assert height((0, 2, 0)) == (0, 1)
    assert height((0, 1, 1)) == (1, 0)


def test_tail_factor_worked_example():
    assert tail_factor((0, 1, 2), (1, 0)) == (0, 1, 1)


def test_tail_factor_errors():
    with pytest.raises(HeightExceeded):
        tail_factor((0, 1, 0), (1, 1))  # h = (1,0), z = (1,1) not below it
    with pytest.raises(ValueError):
        tail_factor((0, 1), (2,))


def test_tail_factor_is_the_unique_lower_placing_with_that_height():
    # brute force over all g <= f; the heart of the unique-factorisation
    # argument is that exactly one such g exists per height vector
    for k in range(4):
        placings = enumerate_placings(k)
        for f in placings:
            hf = height(f)
            for z in product(*(range(b + 1) for b in hf)):
                below = [g for g in placings if leq(g, f) and height(g) == z]
                assert len(below) == 1
                assert tail_factor(f, z) == below[0]


def test_leq_is_a_partial_order():
    placings = enumerate_placings(2)
    for f in placings:
        assert leq(f, f)
    for f in placings:
        for g in placings:
            if leq(f, g) and leq(g, f):
                assert f == g


def test_basis_points_lie_on_the_simplex():
    for k in range(5):
        for f in enumerate_placings(k):
            for n in sorted(set(f) - {0}):
                p = basis_point(f, n)
                assert sum(p) == 1
                assert all(x >= 0 for x in p)
    with pytest.raises(OutOfRange):
        basis_point((0, 1), 0)
    with pytest.raises(OutOfRange):
        basis_point((0, 1), 2)


def test_embed_worked_value():
    # the vertex {20,1} of the rank-2 simplex sits at (1/2, 0, 1/2)
    f = (0, 2, 0)
    assert placing_id(f) == "{20,1}"
    assert embed(f, height(f)) == (Fraction(1, 2), 0, Fraction(1, 2))


def test_embed_centre_and_box():
    assert embed((0, 1), (0,)) == (Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(OutOfBox):
        embed((0, 1), (2,))  # coordinate above 1
    with pytest.raises(OutOfBox):
        embed((0, 0), (1,))  # positive coordinate where the height is 0
    with pytest.raises(OutOfBox):
        embed((0, 1), (1, 1))  # wrong arity


def test_embed_injective_on_quarter_grid():
    grid = [Fraction(n, 4) for n in range(5)]
    for k in range(3):
        for f in enumerate_placings(k):
            h = height(f)
            pts = {}
            for t in product(*(grid if b else [Fraction(0)] for b in h)):
                p = embed(f, t)
                assert p not in pts or pts[p] == t
                pts[p] = t


def test_simplex_cell_counts():
    # vertices = placings; the morphism count is the number of comparable
    # pairs, which we recount here by brute force
    for k in range(4):
        g = build_simplex(k)
        placings = enumerate_placings(k)
        assert len(g.vertices) == len(placings)
        pairs = sum(leq(f, h) for f in placings for h in placings)
        assert len(g.morphism_ids()) == pairs


def test_simplex_validates():
    for k in range(4):
        assert validate_kgraph(build_simplex(k)) == []


def test_simplex_embedding_present():
    g = build_simplex(2)
    assert g.embedding is not None
    assert set(g.embedding) == set(g.vertices)
    assert g.embedding["{20,1}"] == (Fraction(1, 2), 0, Fraction(1, 2))


def test_sphere_cell_counts_k2():
    g = build_sphere(2)
    from kgraphs import cubes

    assert len(cubes(g, 0)) == 14
    assert len(cubes(g, 1)) == 24
    assert len(cubes(g, 2)) == 12


def test_sphere_poles_distinct():
    g = build_sphere(2)
    p0, p1 = sphere_pole(2, 0), sphere_pole(2, 1)
    assert p0 != p1
    assert p0 in g.vertices and p1 in g.vertices


def test_sphere_embedding_lifts_poles_apart():
    g = build_sphere(2)
    e = g.embedding
    assert e[sphere_pole(2, 0)][-1] != e[sphere_pole(2, 1)][-1]
    # boundary vertices sit at height zero in the extra coordinate
    others = [v for v in g.vertices if v not in (sphere_pole(2, 0), sphere_pole(2, 1))]
    assert all(e[v][-1] == 0 for v in others)


def test_wedge_validates_and_counts():
    g = build_wedge(2, 3)
    assert validate_kgraph(g) == []
    # three spheres sharing one pole: 3*(14-1) + 1 vertices
    assert len(g.vertices) == 3 * 13 + 1
    with pytest.raises(ValueError):
        build_wedge(2, 0)
