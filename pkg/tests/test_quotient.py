"""Congruences: the four closure conditions, quotients, and gluing."""

import pytest

from kgraphs import (
    FiniteKGraph,
    build_simplex,
    build_sphere,
    cartesian_product,
    check_congruence,
    chain_complex,
    cubes,
    glue_on_common,
    homology,
    induced_subgraph,
    pullback_hypotheses,
    quotient,
    relation_from_classes,
    relation_from_pairs,
    sphere_pole,
    validate_kgraph,
)
from kgraphs.errors import ForeignId, NotACongruence, NotHereditary, NotInjective
from kgraphs.simplex import _sphere_pairs, enumerate_placings, placing_id

from helpers import path_category


def two_points():
    return FiniteKGraph(rank=0, vertices=("0", "1"), morphisms={}, compose={})


def chain_with_parallel_edges():
    m = {
        "e0": ((1,), "v1", "v0"),
        "e1": ((1,), "v1", "v0"),
        "f": ((1,), "v2", "v1"),
        "e0.f": ((2,), "v2", "v0"),
        "e1.f": ((2,), "v2", "v0"),
    }
    table = {("f", "e0"): "e0.f", ("f", "e1"): "e1.f"}
    g = FiniteKGraph(rank=1, vertices=["v0", "v1", "v2"], morphisms=m, compose=table)
    assert validate_kgraph(g) == []
    return g


def test_relation_basics():
    g = chain_with_parallel_edges()
    rel = relation_from_pairs(g, [("e0", "e1")], mode="explicit")
    assert rel.same("e0", "e1")
    assert not rel.same("e0", "f")
    assert rel.rep("e1") == "e0"
    with pytest.raises(ForeignId):
        relation_from_pairs(g, [("e0", "zzz")])


def test_relation_from_classes_rejects_overlap():
    g = chain_with_parallel_edges()
    with pytest.raises(ValueError):
        relation_from_classes(g, [["e0", "e1"], ["e1", "f"]])


def test_condition_d_catches_degree_mismatch():
    g = chain_with_parallel_edges()
    rel = relation_from_pairs(g, [("e0", "e0.f")], mode="explicit")
    v = check_congruence(rel)
    assert not v.ok and v.violated == "d"
    assert set(v.witness) == {"e0", "e0.f"}


def test_condition_comp_catches_unrelated_composites():
    g = chain_with_parallel_edges()
    # e0 ~ e1 but the composites with f stay separate
    rel = relation_from_pairs(g, [("e0", "e1")], mode="explicit")
    v = check_congruence(rel)
    assert not v.ok and v.violated == "comp"


def test_condition_factor_catches_unrelated_tails():
    g = chain_with_parallel_edges()
    # merge the long paths but not their tails
    rel = relation_from_pairs(g, [("e0.f", "e1.f")], mode="explicit")
    v = check_congruence(rel)
    assert not v.ok and v.violated == "factor"
    assert set(v.witness) == {"e0.f", "e1.f"}


def test_condition_lift_catches_uncomposable_classes():
    g = path_category(3, [(0, 2), (1, 2)])  # cospan v0 -> v2 <- v1
    rel = relation_from_pairs(g, [("v0", "v2")], mode="explicit")
    v = check_congruence(rel)
    assert not v.ok and v.violated == "lift"


def test_generated_mode_saturates():
    g = chain_with_parallel_edges()
    # merging the long paths forces their tails together too
    rel = relation_from_pairs(g, [("e0.f", "e1.f")], mode="generated")
    assert rel.same("e0", "e1")
    assert check_congruence(rel).ok
    q = quotient(g, rel)
    assert validate_kgraph(q) == []
    assert len(q.morphism_ids()) == len(g.morphism_ids()) - 2


def test_saturation_can_merge_vertices():
    prod = cartesian_product(two_points(), build_simplex(1))
    # one boundary pair; closure under heads/tails drags the poles together
    rel = relation_from_pairs(prod, [("(0,(0,{0,1}))", "(1,(0,{0,1}))")])
    assert rel.same("(0,0)", "(1,0)")


def test_sphere_relation_is_a_congruence_and_keeps_poles_apart():
    for k in range(3):
        prod = cartesian_product(two_points(), build_simplex(k))
        rel = relation_from_pairs(prod, _sphere_pairs(k))
        assert check_congruence(rel).ok
        assert not rel.same("(0,0)", "(1,0)")


def test_quotient_needs_matching_graph():
    g = chain_with_parallel_edges()
    h = chain_with_parallel_edges()
    rel = relation_from_pairs(g, [("e0", "e1")], mode="generated")
    with pytest.raises(ValueError):
        quotient(h, rel)


def test_quotient_raises_with_verdict():
    g = chain_with_parallel_edges()
    rel = relation_from_pairs(g, [("e0", "e1")], mode="explicit")
    with pytest.raises(NotACongruence) as exc:
        quotient(g, rel)
    assert exc.value.verdict.violated == "comp"


def test_trivial_relation_quotient_is_identity_on_cells():
    g = chain_with_parallel_edges()
    rel = relation_from_pairs(g, [])
    q = quotient(g, rel)
    assert sorted(q.morphism_ids()) == sorted(g.morphism_ids())
    assert q.compose_table() == g.compose_table()


# -- gluing -------------------------------------------------------------------


def boundary_glue(k):
    simplex = build_simplex(k)
    rim = [placing_id(f) for f in enumerate_placings(k) if any(f)]
    common = induced_subgraph(simplex, rim)
    phi = {m: m for m in common.morphism_ids()}
    return glue_on_common(common, simplex, build_simplex(k), phi, dict(phi))


def test_gluing_two_simplexes_along_the_rim_gives_the_sphere():
    for k in range(3):
        glued = boundary_glue(k)
        assert validate_kgraph(glued) == []
        sphere = build_sphere(k)
        for n in range(k + 1):
            assert len(cubes(glued, n)) == len(cubes(sphere, n))
        got = [(h.betti, h.torsion) for h in homology(chain_complex(glued))]
        want = [(h.betti, h.torsion) for h in homology(chain_complex(sphere))]
        assert got == want


def test_glue_rejects_non_injective_map():
    pt2 = path_category(2, [])
    common = path_category(2, [])
    phi_bad = {"v0": "v0", "v1": "v0"}
    with pytest.raises(NotInjective):
        glue_on_common(common, pt2, pt2, phi_bad, {"v0": "v0", "v1": "v1"})


def test_glue_rejects_non_hereditary_image():
    chain = path_category(3, [(0, 1), (1, 2)])
    common = path_category(1, [])
    phi = {"v0": "v1"}
    with pytest.raises(NotHereditary) as exc:
        glue_on_common(common, chain, chain, phi, dict(phi))
    assert exc.value.side in ("left", "right")


def test_glue_rejects_broken_endpoints():
    chain = path_category(3, [(0, 1), (1, 2)])
    common = path_category(2, [(0, 1)])
    phi_l = {"v0": "v0", "v1": "v1", "e0": "e0"}
    phi_r = {"v0": "v0", "v1": "v2", "e0": "e0"}  # e0 does not end at v2
    with pytest.raises(ValueError):
        glue_on_common(common, chain, chain, phi_l, phi_r)


def test_pullback_hypotheses_reports():
    k = 2
    simplex = build_simplex(k)
    rim = [placing_id(f) for f in enumerate_placings(k) if any(f)]
    common = induced_subgraph(simplex, rim)
    phi = {m: m for m in common.morphism_ids()}
    reports = {r.predicate: r.holds
               for r in pullback_hypotheses(common, simplex, build_simplex(k),
                                            phi, dict(phi))}
    assert reports == {
        "finitely-aligned:left": True,
        "finitely-aligned:right": True,
        # the top placing receives no edges, so the simplex has sources
        "no-sources:left": False,
        "no-sources:right": False,
        # escape to the zero placing breaks co-hereditarity of the rim
        "image-cohereditary:left": False,
        "image-cohereditary:right": False,
        "complement-saturated:left": True,
        "complement-saturated:right": True,
    }
