"""Quotients of finite k-graphs by congruences on morphisms.

A morphism relation is an equivalence on the morphism ids.  It is a
congruence when four conditions hold:

  "d"      related morphisms have equal degree;
  "comp"   composing related pairs (when both composable) lands in
           related composites;
  "factor" related morphisms have related heads and tails at every split;
  "lift"   whenever source(a) is related to range(b), some related pair
           is actually composable.

Under these the quotient category inherits degree, endpoints and
composition and is again a k-graph.  check_congruence reports the first
failing condition with a witness that can be replayed against the graph;
quotient refuses (NotACongruence) unless all four hold.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    FiniteKGraph,
    VertexSetReport,
    _splits,
    disjoint_union,
    unit_degree,
    validate_kgraph,
    vertex_predicate,
)
from .errors import (
    ForeignId,
    InvalidModel,
    NotACongruence,
    NotHereditary,
    NotInjective,
)


@dataclass(frozen=True)
class CongruenceVerdict:
    ok: bool
    violated: str | None = None  # one of "d", "comp", "factor", "lift"
    witness: tuple[str, ...] = ()
    detail: str = ""

    def __str__(self) -> str:
        if self.ok:
            return "relation is a congruence"
        ids = ", ".join(repr(w) for w in self.witness)
        return f"condition {self.violated!r} fails: {self.detail} (witness: {ids})"


class MorphismRelation:
    """An equivalence on the morphisms of a fixed graph.

    Build one with relation_from_pairs (mode "generated": the pairs are
    closed up under the congruence conditions as far as equalities are
    forced) or relation_from_classes (mode "explicit": the partition is
    taken literally).
    """

    def __init__(self, graph: FiniteKGraph, rep: dict[str, str], mode: str, pairs):
        self.graph = graph
        self.mode = mode
        self.pairs: tuple[tuple[str, str], ...] = tuple((a, b) for a, b in pairs)
        self._rep = rep
        members: dict[str, list[str]] = {}
        for m, r in rep.items():
            members.setdefault(r, []).append(m)
        self._members = {r: tuple(sorted(ms)) for r, ms in members.items()}

    def rep(self, m: str) -> str:
        try:
            return self._rep[m]
        except KeyError:
            raise ForeignId(f"{m!r} is not a morphism of the relation's graph") from None

    def same(self, a: str, b: str) -> bool:
        return self.rep(a) == self.rep(b)

    def class_of(self, m: str) -> tuple[str, ...]:
        return self._members[self.rep(m)]

    def classes(self) -> tuple[tuple[str, ...], ...]:
        return tuple(self._members[r] for r in sorted(self._members))

    def nontrivial_classes(self) -> tuple[tuple[str, ...], ...]:
        return tuple(c for c in self.classes() if len(c) > 1)

    def __repr__(self) -> str:
        big = sum(1 for c in self._members.values() if len(c) > 1)
        return f"MorphismRelation(mode={self.mode!r}, classes={len(self._members)}, merged={big})"


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # keep the lexicographically least id as the representative
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def _freeze(graph, uf, mode, pairs) -> MorphismRelation:
    groups: dict[str, list[str]] = {}
    for m in graph.morphism_ids():
        groups.setdefault(uf.find(m), []).append(m)
    rep = {}
    for ms in groups.values():
        least = min(ms)
        for m in ms:
            rep[m] = least
    return MorphismRelation(graph, rep, mode, pairs)


def relation_from_pairs(graph: FiniteKGraph, pairs, mode: str = "generated") -> MorphismRelation:
    """The relation generated by identifying the given id pairs.

    In "generated" mode the equivalence closure is saturated under the
    composition and factorisation conditions, so that every equality they
    force is present; "explicit" mode keeps just the equivalence closure.
    """
    pairs = [(str(a), str(b)) for a, b in pairs]
    for a, b in pairs:
        for m in (a, b):
            if not graph.has(m):
                raise ForeignId(f"{m!r} is not a morphism of the graph")
    uf = _UnionFind(graph.morphism_ids())
    for a, b in pairs:
        uf.union(a, b)
    if mode == "generated":
        _saturate(graph, uf)
    elif mode != "explicit":
        raise ValueError(f"unknown relation mode {mode!r}")
    return _freeze(graph, uf, mode, pairs)


def relation_from_classes(graph: FiniteKGraph, classes) -> MorphismRelation:
    """An explicit relation given by its non-trivial classes (taken literally)."""
    uf = _UnionFind(graph.morphism_ids())
    seen: set[str] = set()
    for cls in classes:
        cls = [str(m) for m in cls]
        for m in cls:
            if not graph.has(m):
                raise ForeignId(f"{m!r} is not a morphism of the graph")
            if m in seen:
                raise ValueError(f"classes overlap at {m!r}")
            seen.add(m)
        for m in cls[1:]:
            uf.union(cls[0], m)
    return _freeze(graph, uf, "explicit", ())


def _saturate(graph: FiniteKGraph, uf: _UnionFind) -> None:
    """Close under the equalities forced by the comp and factor conditions."""
    changed = True
    while changed:
        changed = False
        products: dict[tuple[str, str], str] = {}
        for a, b in graph.composable_pairs(include_identities=True):
            key = (uf.find(a), uf.find(b))
            ab = graph.compose(a, b)
            old = products.get(key)
            if old is None:
                products[key] = ab
            elif uf.union(old, ab):
                changed = True

        groups: dict[str, list[str]] = {}
        for m in graph.morphism_ids():
            groups.setdefault(uf.find(m), []).append(m)
        for ms in groups.values():
            if len(ms) < 2:
                continue
            by_degree: dict[tuple, list[str]] = {}
            for m in ms:
                by_degree.setdefault(graph.d(m), []).append(m)
            for d, same_deg in by_degree.items():
                if len(same_deg) < 2:
                    continue
                m0 = same_deg[0]
                for p in _splits(d):
                    try:
                        h0, t0 = graph.factorise(m0, p)
                    except InvalidModel:
                        continue
                    for m in same_deg[1:]:
                        try:
                            h, t = graph.factorise(m, p)
                        except InvalidModel:
                            continue
                        if uf.union(h0, h):
                            changed = True
                        if uf.union(t0, t):
                            changed = True


# ---------------------------------------------------------------------------
# the congruence conditions


def check_congruence(rel: MorphismRelation) -> CongruenceVerdict:
    """Test the four congruence conditions, in order, stopping at the first
    failure.  The verdict's witness names morphisms that replay it."""
    g = rel.graph

    for cls in rel.classes():
        d0 = g.d(cls[0])
        for m in cls[1:]:
            if g.d(m) != d0:
                return CongruenceVerdict(
                    False,
                    "d",
                    (cls[0], m),
                    f"related morphisms have degrees {d0} and {g.d(m)}",
                )

    first: dict[tuple[str, str], tuple[str, str, str]] = {}
    for a, b in g.composable_pairs(include_identities=True):
        ab = g.compose(a, b)
        key = (rel.rep(a), rel.rep(b))
        old = first.get(key)
        if old is None:
            first[key] = (a, b, ab)
        elif not rel.same(old[2], ab):
            return CongruenceVerdict(
                False,
                "comp",
                (old[0], a, old[1], b),
                f"composites {old[2]!r} and {ab!r} are unrelated",
            )

    for cls in rel.classes():
        if len(cls) < 2:
            continue
        m0 = cls[0]
        for p in _splits(g.d(m0)):
            h0, t0 = g.factorise(m0, p)
            for m in cls[1:]:
                h, t = g.factorise(m, p)
                if not rel.same(h0, h):
                    return CongruenceVerdict(
                        False,
                        "factor",
                        (m0, m),
                        f"heads {h0!r} and {h!r} at split {p} are unrelated",
                    )
                if not rel.same(t0, t):
                    return CongruenceVerdict(
                        False,
                        "factor",
                        (m0, m),
                        f"tails {t0!r} and {t!r} at split {p} are unrelated",
                    )

    # lift: group morphism classes by the vertex classes of their sources
    # and ranges; each (A, B) meeting through a vertex class must contain
    # an actually composable pair.
    sources: dict[str, set[str]] = {}
    ranges: dict[str, set[str]] = {}
    left: dict[str, dict[str, str]] = {}   # vertex class -> {morphism class: exemplar}
    right: dict[str, dict[str, str]] = {}
    for m in g.morphism_ids():
        cm = rel.rep(m)
        sources.setdefault(cm, set()).add(g.s(m))
        ranges.setdefault(cm, set()).add(g.r(m))
        left.setdefault(rel.rep(g.s(m)), {}).setdefault(cm, m)
        right.setdefault(rel.rep(g.r(m)), {}).setdefault(cm, m)
    for w, lbucket in left.items():
        rbucket = right.get(w)
        if not rbucket:
            continue
        for ca, alpha in lbucket.items():
            src = sources[ca]
            for cb, beta in rbucket.items():
                if src.isdisjoint(ranges[cb]):
                    return CongruenceVerdict(
                        False,
                        "lift",
                        (alpha, beta),
                        "source class meets range class but no related pair composes",
                    )

    return CongruenceVerdict(True)


# ---------------------------------------------------------------------------
# quotient construction


def quotient(graph: FiniteKGraph, rel: MorphismRelation) -> FiniteKGraph:
    """The quotient k-graph; classes are named by their least member id.

    Raises NotACongruence (carrying the verdict) unless check_congruence
    passes.  When it does, the quotient inherits degree, endpoints and
    composition well-definedly and passes validate_kgraph.
    """
    if rel.graph is not graph:
        raise ValueError("relation was built over a different graph")
    verdict = check_congruence(rel)
    if not verdict.ok:
        raise NotACongruence(verdict)

    vertices = sorted({rel.rep(v) for v in graph.vertices})
    morphisms = {}
    for cls in rel.classes():
        m0 = cls[0]
        if graph.is_identity(m0):
            continue
        morphisms[m0] = (graph.d(m0), rel.rep(graph.r(m0)), rel.rep(graph.s(m0)))

    table = {}
    vset = set(vertices)
    for a, b in graph.composable_pairs(include_identities=True):
        qa, qb = rel.rep(a), rel.rep(b)
        if qa in vset or qb in vset:
            continue
        table[(qa, qb)] = rel.rep(graph.compose(a, b))

    return FiniteKGraph(graph.rank, vertices, morphisms, table)


# ---------------------------------------------------------------------------
# gluing two graphs along a common subobject


def _check_embedding(side: str, phi: dict[str, str], common: FiniteKGraph, target: FiniteKGraph):
    for m in common.morphism_ids():
        if m not in phi:
            raise ValueError(f"gluing map on side {side!r} misses morphism {m!r}")
    for m, im in phi.items():
        if not common.has(m):
            raise ForeignId(f"gluing map on side {side!r} has foreign domain id {m!r}")
        if not target.has(im):
            raise ForeignId(f"gluing map on side {side!r} hits unknown id {im!r}")
    if len(set(phi.values())) != len(phi):
        raise NotInjective(side)
    for m in common.morphism_ids():
        if common.d(m) != target.d(phi[m]):
            raise ValueError(f"map on side {side!r} changes the degree of {m!r}")
        if phi[common.r(m)] != target.r(phi[m]) or phi[common.s(m)] != target.s(phi[m]):
            raise ValueError(f"map on side {side!r} does not respect endpoints at {m!r}")
    for a, b in common.composable_pairs(include_identities=True):
        if target.compose(phi[a], phi[b]) != phi[common.compose(a, b)]:
            raise ValueError(f"map on side {side!r} is not functorial at ({a!r}, {b!r})")


def glue_on_common(
    common: FiniteKGraph,
    left: FiniteKGraph,
    right: FiniteKGraph,
    phi_left: dict[str, str],
    phi_right: dict[str, str],
) -> FiniteKGraph:
    """Glue left and right along injective embeddings of a common graph.

    The images must both be hereditary vertex sets, or both co-hereditary
    ones; then identifying the two copies of the common graph inside the
    disjoint union is a congruence and the glued graph is again a
    k-graph (validated before returning).
    """
    _check_embedding("left", phi_left, common, left)
    _check_embedding("right", phi_right, common, right)

    images = {}
    for side, phi, target in (("left", phi_left, left), ("right", phi_right, right)):
        V = {phi[v] for v in common.vertices}
        hered = vertex_predicate(target, V, "hereditary")
        cohered = vertex_predicate(target, V, "cohereditary")
        images[side] = (hered, cohered)
    if not (
        (images["left"][0].holds and images["right"][0].holds)
        or (images["left"][1].holds and images["right"][1].holds)
    ):
        for side in ("left", "right"):
            hered, cohered = images[side]
            if not hered.holds and not cohered.holds:
                raise NotHereditary(side, hered.witness[0])
        # one side is hereditary-only, the other co-hereditary-only
        raise NotHereditary(
            "right",
            (images["right"][0].witness or images["right"][1].witness or ("?",))[0],
            "images must be hereditary on both sides or co-hereditary on both sides",
        )

    union = disjoint_union(left, right)
    pairs = [
        (f"0:{phi_left[m]}", f"1:{phi_right[m]}") for m in common.morphism_ids()
    ]
    rel = relation_from_pairs(union, pairs)
    glued = quotient(union, rel)
    problems = validate_kgraph(glued)
    if problems:
        raise InvalidModel(f"glued graph fails validation: {problems[0]}")
    return glued


def pullback_hypotheses(
    common: FiniteKGraph,
    left: FiniteKGraph,
    right: FiniteKGraph,
    phi_left: dict[str, str],
    phi_right: dict[str, str],
) -> list[VertexSetReport]:
    """Report the side conditions a gluing would need for pullback-style
    decompositions downstream: finite alignment, no sources, co-hereditary
    images and saturated complements.  Purely informative -- nothing raises."""
    reports: list[VertexSetReport] = []
    for side, phi, target in (("left", phi_left, left), ("right", phi_right, right)):
        # every finite k-graph is finitely aligned: all MCE sets are finite
        reports.append(VertexSetReport(f"finitely-aligned:{side}", True))

        missing = None
        for v in target.vertices:
            for i in range(1, target.rank + 1):
                e = unit_degree(target.rank, i)
                if not any(
                    target.d(m) == e for m in target.morphisms_with_range(v)
                ):
                    missing = (v,)
                    break
            if missing:
                break
        reports.append(
            VertexSetReport(f"no-sources:{side}", missing is None, missing or ())
        )

        V = {phi[v] for v in common.vertices}
        co = vertex_predicate(target, V, "cohereditary")
        reports.append(VertexSetReport(f"image-cohereditary:{side}", co.holds, co.witness))

        complement = [v for v in target.vertices if v not in V]
        sat = vertex_predicate(target, complement, "saturated")
        reports.append(
            VertexSetReport(f"complement-saturated:{side}", sat.holds, sat.witness)
        )
    return reports
