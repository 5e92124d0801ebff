"""Shared scaffolding for the tests: small random categories built by hand
(no reuse of the library's own product/builder code, so they can serve as
independent fixtures) and a couple of counting oracles.
"""

import random
from itertools import product

from kgraphs.core import FiniteKGraph


def random_dag(rng: random.Random, n: int, p: float):
    """Edges (tail, head) with tail < head, so paths are automatically finite."""
    return [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]


def path_category(n: int, edges) -> FiniteKGraph:
    """The free rank-1 graph on a DAG: morphisms are directed edge paths.

    Vertices v0..v{n-1}; a path is written by joining edge names with '.'
    in traversal order, so composition is literal string concatenation
    and unique factorisation holds by construction.
    """
    out = {}
    for idx, (a, b) in enumerate(edges):
        assert 0 <= a < n and 0 <= b < n and a != b
        out.setdefault(a, []).append((f"e{idx}", b))

    found = []  # (edge-name tuple, start, end)

    def walk(start, here, acc):
        for name, nxt in out.get(here, ()):
            found.append((acc + (name,), start, nxt))
            walk(start, nxt, acc + (name,))

    for v in range(n):
        walk(v, v, ())

    pid = lambda seq: ".".join(seq)
    morphisms = {
        pid(seq): ((len(seq),), f"v{b}", f"v{a}") for seq, a, b in found
    }
    compose = {}
    for q_seq, qa, qb in found:
        for p_seq, pa, pb in found:
            if pa == qb:  # s(p) = r(q): run q, then p
                compose[(pid(p_seq), pid(q_seq))] = pid(q_seq + p_seq)
    return FiniteKGraph(
        rank=1,
        vertices=[f"v{i}" for i in range(n)],
        morphisms=morphisms,
        compose=compose,
    )


def grid_category(g1: FiniteKGraph, g2: FiniteKGraph) -> FiniteKGraph:
    """Product of two rank-1 graphs, assembled from scratch (degree = the
    pair of path lengths).  Deliberately independent of the library's own
    product so tests can compare against it.
    """
    assert g1.rank == 1 and g2.rank == 1
    pid = lambda a, b: f"<{a}|{b}>"
    vertices = [pid(u, v) for u in g1.vertices for v in g2.vertices]
    morphisms = {}
    for a in g1.morphism_ids():
        for b in g2.morphism_ids():
            da, db = g1.d(a), g2.d(b)
            if da == (0,) and db == (0,):
                continue
            morphisms[pid(a, b)] = (
                (da[0], db[0]),
                pid(g1.r(a), g2.r(b)),
                pid(g1.s(a), g2.s(b)),
            )
    compose = {}
    ids1, ids2 = g1.morphism_ids(), g2.morphism_ids()
    for a1, b1 in product(ids1, ids2):
        if g1.d(a1) == (0,) and g2.d(b1) == (0,):
            continue
        for a2, b2 in product(ids1, ids2):
            if g1.d(a2) == (0,) and g2.d(b2) == (0,):
                continue
            if g1.s(a1) != g1.r(a2) or g2.s(b1) != g2.r(b2):
                continue
            c1 = a2 if g1.d(a1) == (0,) else (a1 if g1.d(a2) == (0,) else g1.compose(a1, a2))
            c2 = b2 if g2.d(b1) == (0,) else (b1 if g2.d(b2) == (0,) else g2.compose(b1, b2))
            compose[(pid(a1, b1), pid(a2, b2))] = pid(c1, c2)
    return FiniteKGraph(rank=2, vertices=vertices, morphisms=morphisms, compose=compose)


def random_path_category(rng: random.Random, max_vertices=6, max_morphisms=50):
    """Keep sampling DAGs until the path count fits the budget."""
    while True:
        n = rng.randint(2, max_vertices)
        g = path_category(n, random_dag(rng, n, rng.uniform(0.2, 0.7)))
        if 0 < len(g.morphism_ids()) - len(g.vertices) <= max_morphisms:
            return g


def random_grid_category(rng: random.Random, max_morphisms=50):
    while True:
        g1 = random_path_category(rng, max_vertices=4, max_morphisms=8)
        g2 = random_path_category(rng, max_vertices=4, max_morphisms=8)
        g = grid_category(g1, g2)
        if len(g.morphism_ids()) - len(g.vertices) <= max_morphisms:
            return g


def component_count(model) -> int:
    """Number of connected components of the 1-skeleton — union-find over
    the degree-one cells.  Oracle for H_0.
    """
    from kgraphs.core import Skeleton2Graph, cubes

    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    if isinstance(model, Skeleton2Graph):
        for v in model.vertices:
            parent[v] = v
        for table in (model.blue, model.red):
            for e in table.values():
                union(e.r, e.s)
    else:
        for v in model.vertices:
            parent[v] = v
        for c in cubes(model, 1):
            union(model.r(c.key), model.s(c.key))
    return len({find(v) for v in parent})


def ordered_bell(k: int) -> int:
    """Fubini numbers by the binomial recurrence a(n) = sum C(n,j) a(n-j)."""
    from math import comb

    a = [1]
    for n in range(1, k + 1):
        a.append(sum(comb(n, j) * a[n - j] for j in range(1, n + 1)))
    return a[k]
