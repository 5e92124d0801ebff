"""Byte-stable JSON documents for graphs, skeletons and relations.

Three kinds of document, told apart by "kind":

  category   rank, vertices, morphisms (id/d/r/s; identities omitted),
             compose triples ([a, b, ab]; identity triples omitted), and
             optionally an exact rational "embedding" of the vertices;
  skeleton2  vertices, blue and red edge lists (id/r/s), squares, and
             optionally the marking fields u / v / square;
  relation   over (an informational pointer to the graph document),
             mode ("generated" or "explicit"), pairs, classes.

Writers emit keys and list entries in canonical sorted order with a
two-space indent and a trailing newline, so the same model always
serialises to the same bytes.  Loaders are strict: unknown kinds, shape
errors, degree-zero morphism entries and identity composition triples
are all ParseError.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .core import FiniteKGraph, Skeleton2Graph
from .errors import ParseError
from .quotient import MorphismRelation, relation_from_classes, relation_from_pairs
from .surfaces import MarkedSkeleton


@dataclass(frozen=True)
class RelationDoc:
    """A parsed relation document, not yet bound to its graph."""

    over: str
    mode: str
    pairs: tuple[tuple[str, str], ...]
    classes: tuple[tuple[str, ...], ...] | None


def _expect(cond: bool, message: str):
    if not cond:
        raise ParseError(message)


def _str_list(doc, key) -> list[str]:
    val = doc.get(key)
    _expect(isinstance(val, list), f"{key!r} must be a list")
    for x in val:
        _expect(isinstance(x, str), f"{key!r} entries must be strings")
    return val


def loads(text: str):
    """Parse a document; returns a FiniteKGraph, Skeleton2Graph,
    MarkedSkeleton or RelationDoc according to its kind."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"not valid JSON: {e}") from None
    _expect(isinstance(doc, dict), "document must be a JSON object")
    kind = doc.get("kind")
    if kind == "category":
        return _load_category(doc)
    if kind == "skeleton2":
        return _load_skeleton(doc)
    if kind == "relation":
        return _load_relation(doc)
    raise ParseError(f"unknown document kind {kind!r}")


def _load_category(doc) -> FiniteKGraph:
    rank = doc.get("rank")
    _expect(isinstance(rank, int) and rank >= 0, '"rank" must be a non-negative integer')
    vertices = _str_list(doc, "vertices")
    vset = set(vertices)
    _expect(len(vset) == len(vertices), "duplicate vertex ids")

    morphisms = {}
    raw = doc.get("morphisms")
    _expect(isinstance(raw, list), '"morphisms" must be a list')
    for rec in raw:
        _expect(isinstance(rec, dict), "morphism records must be objects")
        _expect(
            set(rec) == {"id", "d", "r", "s"},
            f"morphism record needs exactly id/d/r/s, got {sorted(rec)}",
        )
        mid, d, r, s = rec["id"], rec["d"], rec["r"], rec["s"]
        _expect(isinstance(mid, str), "morphism id must be a string")
        _expect(
            isinstance(d, list) and all(isinstance(x, int) and x >= 0 for x in d),
            f"degree of {mid!r} must be a list of non-negative integers",
        )
        _expect(isinstance(r, str) and isinstance(s, str), f"endpoints of {mid!r} must be strings")
        _expect(mid not in vset, f"morphism id {mid!r} collides with a vertex")
        _expect(mid not in morphisms, f"duplicate morphism id {mid!r}")
        _expect(any(d) or len(d) != rank, f"{mid!r} has degree zero; identities are implicit")
        morphisms[mid] = (tuple(d), r, s)

    table = {}
    raw = doc.get("compose")
    _expect(isinstance(raw, list), '"compose" must be a list')
    for triple in raw:
        _expect(
            isinstance(triple, list) and len(triple) == 3 and all(isinstance(x, str) for x in triple),
            "compose entries must be [a, b, ab] string triples",
        )
        a, b, c = triple
        _expect(a not in vset and b not in vset, f"identity composition [{a}, {b}] must be omitted")
        _expect((a, b) not in table, f"duplicate compose entry for ({a}, {b})")
        table[(a, b)] = c

    graph = FiniteKGraph(rank, vertices, morphisms, table)
    if "embedding" in doc:
        raw = doc["embedding"]
        _expect(isinstance(raw, dict), '"embedding" must be an object')
        emb = {}
        for v, coords in raw.items():
            _expect(v in vset, f"embedding names unknown vertex {v!r}")
            _expect(isinstance(coords, list), "embedding coordinates must be lists")
            try:
                emb[v] = tuple(Fraction(str(x)) for x in coords)
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad rational coordinate for vertex {v!r}") from None
        graph.embedding = emb
    return graph


def _load_edges(doc, key) -> dict:
    raw = doc.get(key)
    _expect(isinstance(raw, list), f"{key!r} must be a list")
    edges = {}
    for rec in raw:
        _expect(isinstance(rec, dict), "edge records must be objects")
        _expect(
            set(rec) == {"id", "r", "s"},
            f"edge record needs exactly id/r/s, got {sorted(rec)}",
        )
        eid, r, s = rec["id"], rec["r"], rec["s"]
        _expect(all(isinstance(x, str) for x in (eid, r, s)), "edge fields must be strings")
        _expect(eid not in edges, f"duplicate edge id {eid!r}")
        edges[eid] = (r, s)
    return edges


def _load_skeleton(doc):
    vertices = _str_list(doc, "vertices")
    vset = set(vertices)
    _expect(len(vset) == len(vertices), "duplicate vertex ids")
    blue = _load_edges(doc, "blue")
    red = _load_edges(doc, "red")
    raw = doc.get("squares")
    _expect(isinstance(raw, list), '"squares" must be a list')
    squares = []
    for sq in raw:
        _expect(
            isinstance(sq, list) and len(sq) == 4 and all(isinstance(x, str) for x in sq),
            "squares must be [f, g, g2, f2] string quadruples",
        )
        squares.append(tuple(sq))
    try:
        sk = Skeleton2Graph(vertices, blue, red, squares)
    except ValueError as e:
        raise ParseError(str(e)) from None

    marking = [k for k in ("u", "v", "square") if k in doc]
    if not marking:
        return sk
    _expect(len(marking) == 3, 'marking needs all three of "u", "v", "square"')
    u, v, sq = doc["u"], doc["v"], doc["square"]
    _expect(isinstance(u, str) and isinstance(v, str), "marking u/v must be strings")
    _expect(
        isinstance(sq, list) and len(sq) == 4 and all(isinstance(x, str) for x in sq),
        '"square" must be an [f, g, g2, f2] quadruple',
    )
    return MarkedSkeleton(sk, u, v, tuple(sq))


def _load_relation(doc) -> RelationDoc:
    over = doc.get("over", "")
    _expect(isinstance(over, str), '"over" must be a string')
    mode = doc.get("mode")
    _expect(mode in ("generated", "explicit"), 'mode must be "generated" or "explicit"')
    raw = doc.get("pairs", [])
    _expect(isinstance(raw, list), '"pairs" must be a list')
    pairs = []
    for p in raw:
        _expect(
            isinstance(p, list) and len(p) == 2 and all(isinstance(x, str) for x in p),
            "pairs must be [a, b] string pairs",
        )
        pairs.append((p[0], p[1]))
    classes = None
    if "classes" in doc:
        raw = doc["classes"]
        _expect(isinstance(raw, list), '"classes" must be a list')
        classes = []
        for cls in raw:
            _expect(
                isinstance(cls, list) and all(isinstance(x, str) for x in cls),
                "classes must be lists of morphism ids",
            )
            classes.append(tuple(cls))
    if mode == "explicit":
        _expect(classes is not None, 'explicit mode needs "classes"')
    else:
        # an empty pair list is fine: it generates the trivial relation
        _expect("pairs" in doc or classes is not None, 'generated mode needs "pairs"')
    return RelationDoc(over, mode, tuple(pairs), tuple(classes) if classes else None)


def bind_relation(rdoc: RelationDoc, graph: FiniteKGraph) -> MorphismRelation:
    """Attach a parsed relation document to its graph."""
    if rdoc.mode == "generated":
        pairs = list(rdoc.pairs)
        for cls in rdoc.classes or ():
            pairs.extend((cls[0], m) for m in cls[1:])
        return relation_from_pairs(graph, pairs, "generated")
    if rdoc.pairs:
        # explicit mode takes the partition literally; extra pairs just merge
        class_pairs = [
            (cls[0], m) for cls in rdoc.classes or () for m in cls[1:]
        ]
        return relation_from_pairs(graph, class_pairs + list(rdoc.pairs), "explicit")
    return relation_from_classes(graph, rdoc.classes or ())


# ---------------------------------------------------------------------------
# writers


def kgraph_doc(g: FiniteKGraph) -> dict:
    morphisms = [
        {"id": m, "d": list(g.d(m)), "r": g.r(m), "s": g.s(m)}
        for m in g.nonidentity_ids()
    ]
    compose = [[a, b, c] for (a, b), c in sorted(g.compose_table().items())]
    doc = {
        "kind": "category",
        "rank": g.rank,
        "vertices": list(g.vertices),
        "morphisms": morphisms,
        "compose": compose,
    }
    if g.embedding is not None:
        doc["embedding"] = {
            v: [str(Fraction(x)) for x in coords]
            for v, coords in sorted(g.embedding.items())
        }
    return doc


def skeleton_doc(sk) -> dict:
    marking = None
    if isinstance(sk, MarkedSkeleton):
        marking = (sk.u, sk.v, sk.square)
        sk = sk.skeleton
    doc = {
        "kind": "skeleton2",
        "vertices": list(sk.vertices),
        "blue": [
            {"id": e, "r": sk.blue[e].r, "s": sk.blue[e].s} for e in sorted(sk.blue)
        ],
        "red": [
            {"id": e, "r": sk.red[e].r, "s": sk.red[e].s} for e in sorted(sk.red)
        ],
        "squares": [list(sq) for sq in sk.squares],
    }
    if marking:
        doc["u"], doc["v"], doc["square"] = marking[0], marking[1], list(marking[2])
    return doc


def relation_doc(rel: MorphismRelation, over: str = "") -> dict:
    return {
        "kind": "relation",
        "over": over,
        "mode": rel.mode,
        "pairs": [list(p) for p in rel.pairs],
        "classes": [list(c) for c in rel.nontrivial_classes()],
    }


def model_doc(model) -> dict:
    if isinstance(model, FiniteKGraph):
        return kgraph_doc(model)
    if isinstance(model, (Skeleton2Graph, MarkedSkeleton)):
        return skeleton_doc(model)
    if isinstance(model, MorphismRelation):
        return relation_doc(model)
    raise TypeError(f"cannot serialise {type(model).__name__}")


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"
