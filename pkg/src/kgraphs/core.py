"""Finite higher-rank graphs and their two-dimensional skeleton presentations.

A rank-k graph is modelled as a finite category with a degree functor to
N^k satisfying unique factorisation: every morphism of degree m+n splits
uniquely into a head of degree m followed by a tail of degree n.  We keep
the data completely explicit -- a finite set of morphism ids, a degree /
range / source record per id, and a composition table over the
non-identity composable pairs.  Identities are synthesised, one per
vertex, and share the vertex's id.

Composition is written functionally: ``compose(a, b)`` is "a after b" and
is defined exactly when ``source(a) == range(b)``.

Nothing in the constructors enforces the category axioms beyond basic
shape; `validate_kgraph` / `validate_skeleton` report violations instead
of raising, so that broken models (e.g. quotients by relations that are
not congruences) can be inspected.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import (
    BadDirection,
    BadSplit,
    DimensionTooLarge,
    InvalidModel,
    NotComposable,
    RankMismatch,
    UnknownId,
)

Degree = tuple[int, ...]

# A composable triple budget above which associativity is spot-checked on a
# deterministic sample instead of exhaustively.
_ASSOC_EXHAUSTIVE_LIMIT = 200_000
_ASSOC_SAMPLE = 60_000

_AMBIGUOUS = object()  # sentinel in the factorisation index


# ---------------------------------------------------------------------------
# degrees


def zero_degree(rank: int) -> Degree:
    return (0,) * rank

def unit_degree(rank: int, i: int) -> Degree:
    """The i-th coordinate vector, directions numbered 1..rank."""
    if not 1 <= i <= rank:
        raise BadDirection(f"direction {i} not in 1..{rank}")
    return tuple(1 if j == i - 1 else 0 for j in range(rank))

def deg_add(m: Degree, n: Degree) -> Degree:
    return tuple(a + b for a, b in zip(m, n, strict=True))

def deg_sub(m: Degree, n: Degree) -> Degree:
    return tuple(a - b for a, b in zip(m, n, strict=True))

def deg_join(m: Degree, n: Degree) -> Degree:
    return tuple(max(a, b) for a, b in zip(m, n, strict=True))

def deg_leq(m: Degree, n: Degree) -> bool:
    return all(a <= b for a, b in zip(m, n, strict=True))

def deg_total(m: Degree) -> int:
    return sum(m)


def _splits(d: Degree):
    """All p with 0 <= p <= d, lexicographically."""
    return itertools.product(*(range(x + 1) for x in d))


# ---------------------------------------------------------------------------
# report records


@dataclass(frozen=True)
class Violation:
    """One broken axiom: a machine-readable rule id plus witnesses."""

    rule: str
    witness: tuple[str, ...]
    detail: str

    def __str__(self) -> str:  # used verbatim by the CLI
        ids = ", ".join(self.witness)
        return f"[{self.rule}] {self.detail} (witness: {ids})"


@dataclass(frozen=True)
class VertexSetReport:
    """Outcome of a vertex-set predicate; witness is populated iff it fails."""

    predicate: str
    holds: bool
    witness: tuple[str, ...] = ()


# ---------------------------------------------------------------------------
# the category model


@dataclass(frozen=True)
class Morphism:
    d: Degree
    r: str
    s: str


class FiniteKGraph:
    """A finite k-graph candidate: explicit morphisms plus a composition table.

    Parameters
    ----------
    rank:
        k, the length of every degree vector.
    vertices:
        iterable of vertex ids (strings).  Each vertex contributes an
        identity morphism under the same id.
    morphisms:
        mapping id -> (degree, range, source) for the non-identity
        morphisms.  Degree-zero entries are rejected here: degree zero is
        reserved for identities.
    compose:
        mapping (a, b) -> c giving the composite of each composable pair
        of non-identity morphisms.  Pairs involving identities are
        implicit and must not appear.
    """

    def __init__(self, rank, vertices, morphisms, compose):
        self.rank = int(rank)
        if self.rank < 0:
            raise ValueError("rank must be >= 0")
        vs = [str(v) for v in vertices]
        if len(vs) != len(set(vs)):
            raise ValueError("duplicate vertex id")
        self._vertices = tuple(sorted(vs))
        vset = set(self._vertices)

        self._mor: dict[str, Morphism] = {
            v: Morphism(zero_degree(self.rank), v, v) for v in self._vertices
        }
        for mid, rec in dict(morphisms).items():
            mid = str(mid)
            if mid in self._mor:
                raise ValueError(f"duplicate morphism id {mid!r}")
            if isinstance(rec, Morphism):
                d, r, s = rec.d, rec.r, rec.s
            else:
                d, r, s = rec
            d = tuple(int(x) for x in d)
            if len(d) == self.rank and not any(d):
                raise ValueError(
                    f"{mid!r} has degree zero; degree-zero morphisms are identities"
                )
            self._mor[mid] = Morphism(d, str(r), str(s))

        self._compose: dict[tuple[str, str], str] = {}
        for (a, b), c in dict(compose).items():
            a, b, c = str(a), str(b), str(c)
            if a in vset or b in vset:
                raise ValueError(
                    f"composition with an identity must stay implicit: ({a}, {b})"
                )
            self._compose[(a, b)] = c

        self._ids = tuple(sorted(self._mor))
        self._nonid = tuple(m for m in self._ids if m not in vset)
        self._vset = vset

        self._with_range: dict[str, list[str]] = {v: [] for v in self._vertices}
        self._with_source: dict[str, list[str]] = {v: [] for v in self._vertices}
        for mid in self._ids:
            rec = self._mor[mid]
            if rec.r in vset:
                self._with_range[rec.r].append(mid)
            if rec.s in vset:
                self._with_source[rec.s].append(mid)

        self._factor_index: dict | None = None
        self._deg_range_index: dict | None = None

        # optional geometric realisation of the vertices, set by builders
        self.embedding: dict[str, tuple] | None = None

    # -- basic accessors ----------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    def morphism_ids(self) -> tuple[str, ...]:
        """All morphism ids, identities included, sorted."""
        return self._ids

    def nonidentity_ids(self) -> tuple[str, ...]:
        return self._nonid

    def has(self, mid: str) -> bool:
        return mid in self._mor

    def _rec(self, mid: str) -> Morphism:
        try:
            return self._mor[mid]
        except KeyError:
            raise UnknownId(f"no morphism with id {mid!r}") from None

    def d(self, mid: str) -> Degree:
        return self._rec(mid).d

    def r(self, mid: str) -> str:
        return self._rec(mid).r

    def s(self, mid: str) -> str:
        return self._rec(mid).s

    def is_identity(self, mid: str) -> bool:
        self._rec(mid)
        return mid in self._vset

    def is_vertex(self, mid: str) -> bool:
        return mid in self._vset

    def morphisms_with_range(self, v: str) -> tuple[str, ...]:
        if v not in self._vset:
            raise UnknownId(f"no vertex with id {v!r}")
        return tuple(self._with_range[v])

    def morphisms_with_source(self, v: str) -> tuple[str, ...]:
        if v not in self._vset:
            raise UnknownId(f"no vertex with id {v!r}")
        return tuple(self._with_source[v])

    def compose_table(self) -> dict[tuple[str, str], str]:
        """A copy of the stored (non-identity) composition table."""
        return dict(self._compose)

    # -- composition and factorisation --------------------------------------

    def compose(self, a: str, b: str) -> str:
        """The composite "a after b"; defined when source(a) == range(b)."""
        ra = self._rec(a)
        rb = self._rec(b)
        if ra.s != rb.r:
            raise NotComposable(
                f"source({a!r}) = {ra.s!r} differs from range({b!r}) = {rb.r!r}"
            )
        if a in self._vset:
            return b
        if b in self._vset:
            return a
        try:
            return self._compose[(a, b)]
        except KeyError:
            raise InvalidModel(
                f"no composite recorded for the composable pair ({a!r}, {b!r})"
            ) from None

    def composable_pairs(self, include_identities: bool = False):
        """Iterate over composable pairs (a, b).

        By default only pairs of non-identity morphisms (the composition
        table's domain).  With identities included, the implicit pairs
        (id, b), (a, id) and (id, id) are generated as well.
        """
        yield from self._compose
        if include_identities:
            for v in self._vertices:
                yield (v, v)
            for m in self._nonid:
                rec = self._mor[m]
                if rec.r in self._vset:
                    yield (rec.r, m)
                if rec.s in self._vset:
                    yield (m, rec.s)

    def _factors(self) -> dict:
        if self._factor_index is None:
            index: dict[tuple[str, Degree], object] = {}
            for (a, b), c in self._compose.items():
                if a not in self._mor:
                    continue
                key = (c, self._mor[a].d)
                old = index.get(key)
                if old is None:
                    index[key] = (a, b)
                elif old != (a, b):
                    index[key] = _AMBIGUOUS
            self._factor_index = index
        return self._factor_index

    def factorise(self, mid: str, p) -> tuple[str, str]:
        """Split mid as head * tail with d(head) == p.  Unique on valid models."""
        rec = self._rec(mid)
        p = tuple(int(x) for x in p)
        if len(p) != self.rank or any(x < 0 for x in p) or not deg_leq(p, rec.d):
            raise BadSplit(f"split {p} is not between 0 and d({mid!r}) = {rec.d}")
        if all(x == 0 for x in p):
            return (rec.r, mid)
        if p == rec.d:
            return (mid, rec.s)
        hit = self._factors().get((mid, p))
        if hit is None:
            raise InvalidModel(f"no factorisation of {mid!r} at split {p} is recorded")
        if hit is _AMBIGUOUS:
            raise InvalidModel(f"factorisation of {mid!r} at split {p} is ambiguous")
        return hit

    # -- simple indexes ------------------------------------------------------

    def by_degree(self, n) -> tuple[str, ...]:
        n = tuple(int(x) for x in n)
        return tuple(m for m in self._ids if self._mor[m].d == n)

    def _by_degree_and_range(self) -> dict:
        if self._deg_range_index is None:
            index: dict[tuple[Degree, str], list[str]] = {}
            for m in self._ids:
                rec = self._mor[m]
                index.setdefault((rec.d, rec.r), []).append(m)
            self._deg_range_index = index
        return self._deg_range_index

    def __len__(self) -> int:
        return len(self._mor)

    def __repr__(self) -> str:
        return (
            f"FiniteKGraph(rank={self.rank}, |vertices|={len(self._vertices)}, "
            f"|morphisms|={len(self._mor)})"
        )


# ---------------------------------------------------------------------------
# validation of the category axioms


def validate_kgraph(g: FiniteKGraph) -> list[Violation]:
    """Check the k-graph axioms; returns all violations found (never raises).

    Identity neutrality and "degree zero means identity" hold by
    construction and are not re-checked.  Associativity is exhaustive up
    to a budget of composable triples, then spot-checked on a fixed
    pseudo-random sample.
    """
    out: list[Violation] = []
    vset = set(g.vertices)
    shape_ok: set[str] = set(g.vertices)
    endpoints_ok: set[str] = set(g.vertices)

    for m in g.nonidentity_ids():
        d = g.d(m)
        if len(d) != g.rank or any(x < 0 for x in d):
            out.append(Violation("degree-shape", (m,), f"degree {d} is not in N^{g.rank}"))
        else:
            shape_ok.add(m)
        bad = [v for v in (g.r(m), g.s(m)) if v not in vset]
        if bad:
            out.append(
                Violation("endpoints", (m,), f"range/source {bad} are not vertices")
            )
        else:
            endpoints_ok.add(m)

    table = g.compose_table()
    usable: dict[tuple[str, str], str] = {}
    for (a, b), c in sorted(table.items()):
        missing = [x for x in (a, b, c) if not g.has(x)]
        if missing:
            out.append(
                Violation("compose-domain", (a, b, c), f"unknown ids {missing} in table")
            )
            continue
        if not (a in endpoints_ok and b in endpoints_ok):
            continue
        if g.s(a) != g.r(b):
            out.append(
                Violation(
                    "compose-domain",
                    (a, b),
                    f"table entry for a non-composable pair: source({a!r}) != range({b!r})",
                )
            )
            continue
        usable[(a, b)] = c

    for a in g.nonidentity_ids():
        if a not in endpoints_ok:
            continue
        for b in g.morphisms_with_range(g.s(a)):
            if g.is_identity(b):
                continue
            if (a, b) not in table:
                out.append(
                    Violation(
                        "compose-total",
                        (a, b),
                        "composable pair has no composite in the table",
                    )
                )

    for (a, b), c in sorted(usable.items()):
        if c in endpoints_ok and (g.r(c) != g.r(a) or g.s(c) != g.s(b)):
            out.append(
                Violation(
                    "compose-endpoints",
                    (a, b, c),
                    "composite endpoints disagree with range(a) / source(b)",
                )
            )
        if a in shape_ok and b in shape_ok and c in shape_ok:
            if g.d(c) != deg_add(g.d(a), g.d(b)):
                out.append(
                    Violation(
                        "compose-degree",
                        (a, b, c),
                        f"d({c!r}) = {g.d(c)} differs from d(a)+d(b) = "
                        f"{deg_add(g.d(a), g.d(b))}",
                    )
                )

    out.extend(_check_associativity(g, usable))
    out.extend(_check_factorisations(g, usable, shape_ok, endpoints_ok))
    return out


def _check_associativity(g: FiniteKGraph, usable) -> list[Violation]:
    out: list[Violation] = []
    pairs = sorted(usable)
    by_range: dict[str, list[str]] = {}
    for m in g.nonidentity_ids():
        if g.has(m):
            by_range.setdefault(g.r(m), []).append(m)

    def continuations(b: str) -> list[str]:
        try:
            return by_range.get(g.s(b), [])
        except UnknownId:
            return []

    total = sum(len(continuations(b)) for (_, b) in pairs)

    def check(a: str, b: str, c: str) -> Violation | None:
        ab = usable.get((a, b))
        bc = usable.get((b, c))
        if ab is None or bc is None:
            return None
        left = usable.get((ab, c)) if g.has(ab) else None
        right = usable.get((a, bc)) if g.has(bc) else None
        if left is None or right is None:
            return None  # incompleteness is reported by compose-total
        if left != right:
            return Violation(
                "assoc",
                (a, b, c),
                f"(a b) c = {left!r} but a (b c) = {right!r}",
            )
        return None

    if total <= _ASSOC_EXHAUSTIVE_LIMIT:
        for a, b in pairs:
            for c in continuations(b):
                v = check(a, b, c)
                if v:
                    out.append(v)
    else:
        rng = random.Random(0xA550C1A7)
        for _ in range(_ASSOC_SAMPLE):
            a, b = pairs[rng.randrange(len(pairs))]
            cont = continuations(b)
            if not cont:
                continue
            v = check(a, b, cont[rng.randrange(len(cont))])
            if v:
                out.append(v)
    return out


def _check_factorisations(g, usable, shape_ok, endpoints_ok) -> list[Violation]:
    out: list[Violation] = []
    index: dict[tuple[str, Degree], tuple[str, str]] = {}
    for (a, b), c in sorted(usable.items()):
        if a not in shape_ok or b not in shape_ok:
            continue
        key = (c, g.d(a))
        old = index.get(key)
        if old is None:
            index[key] = (a, b)
        elif old != (a, b):
            out.append(
                Violation(
                    "factor-unique",
                    (c, old[0], old[1], a, b),
                    f"two factorisations of {c!r} at split {g.d(a)}",
                )
            )
    for m in g.nonidentity_ids():
        if m not in shape_ok or m not in endpoints_ok:
            continue
        d = g.d(m)
        for p in _splits(d):
            if not any(p) or p == d:
                continue
            if (m, p) not in index:
                out.append(
                    Violation(
                        "factor-exists",
                        (m,),
                        f"no factorisation of {m!r} at split {p}",
                    )
                )
    return out


# ---------------------------------------------------------------------------
# skeletons of rank-2 graphs


@dataclass(frozen=True)
class Edge:
    r: str
    s: str


Square = tuple[str, str, str, str]
# (f, g, g2, f2) encodes the commuting relation  f g  =  g2 f2 :
# f, f2 are colour-1 ("blue") edges, g, g2 colour-2 ("red") edges, and the
# two edge paths share endpoints.


class Skeleton2Graph:
    """Presentation of a rank-2 graph: a two-coloured digraph plus squares.

    The squares must pair every composable blue-red path with a unique
    red-blue path (and vice versa); `validate_skeleton` checks this.
    """

    def __init__(self, vertices, blue, red, squares):
        vs = [str(v) for v in vertices]
        self.vertices: tuple[str, ...] = tuple(sorted(vs))
        self.blue: dict[str, Edge] = {
            str(e): Edge(str(r), str(s)) for e, (r, s) in dict(blue).items()
        }
        self.red: dict[str, Edge] = {
            str(e): Edge(str(r), str(s)) for e, (r, s) in dict(red).items()
        }
        ids = vs + list(self.blue) + list(self.red)
        if len(ids) != len(set(ids)):
            raise ValueError("vertex and edge ids must be pairwise distinct")
        self.squares: tuple[Square, ...] = tuple(
            sorted(tuple(str(x) for x in sq) for sq in squares)
        )
        for sq in self.squares:
            if len(sq) != 4:
                raise ValueError(f"square {sq} is not a quadruple")

    def edge(self, e: str) -> Edge:
        rec = self.blue.get(e) or self.red.get(e)
        if rec is None:
            raise UnknownId(f"no edge with id {e!r}")
        return rec

    def colour(self, e: str) -> int:
        if e in self.blue:
            return 1
        if e in self.red:
            return 2
        raise UnknownId(f"no edge with id {e!r}")

    def __repr__(self) -> str:
        return (
            f"Skeleton2Graph(|vertices|={len(self.vertices)}, "
            f"|blue|={len(self.blue)}, |red|={len(self.red)}, "
            f"|squares|={len(self.squares)})"
        )


def validate_skeleton(sk: Skeleton2Graph) -> list[Violation]:
    """Check the skeleton axioms; returns all violations found (never raises)."""
    out: list[Violation] = []
    vset = set(sk.vertices)
    for e, rec in sorted({**sk.blue, **sk.red}.items()):
        bad = [v for v in (rec.r, rec.s) if v not in vset]
        if bad:
            out.append(Violation("edge-endpoints", (e,), f"endpoints {bad} are not vertices"))

    seen: set[Square] = set()
    br_seen: dict[tuple[str, str], int] = {}
    rb_seen: dict[tuple[str, str], int] = {}
    for sq in sk.squares:
        f, gg, g2, f2 = sq
        if sq in seen:
            out.append(Violation("square-dup", sq, "square listed twice"))
            continue
        seen.add(sq)
        if f not in sk.blue or f2 not in sk.blue or gg not in sk.red or g2 not in sk.red:
            out.append(
                Violation(
                    "square-edges",
                    sq,
                    "square must be (blue, red, red, blue) edge ids",
                )
            )
            continue
        ef, eg, eg2, ef2 = sk.blue[f], sk.red[gg], sk.red[g2], sk.blue[f2]
        if not (ef.s == eg.r and eg2.s == ef2.r and ef.r == eg2.r and eg.s == ef2.s):
            out.append(
                Violation(
                    "square-commute",
                    sq,
                    "the two paths of the square do not share endpoints",
                )
            )
            continue
        br_seen[(f, gg)] = br_seen.get((f, gg), 0) + 1
        rb_seen[(g2, f2)] = rb_seen.get((g2, f2), 0) + 1

    for f, ef in sorted(sk.blue.items()):
        for gg, eg in sorted(sk.red.items()):
            if ef.s == eg.r:
                n = br_seen.get((f, gg), 0)
                if n != 1:
                    out.append(
                        Violation(
                            "square-bijection",
                            (f, gg),
                            f"blue-red path occurs in {n} squares (needs exactly 1)",
                        )
                    )
    for g2, eg2 in sorted(sk.red.items()):
        for f2, ef2 in sorted(sk.blue.items()):
            if eg2.s == ef2.r:
                n = rb_seen.get((g2, f2), 0)
                if n != 1:
                    out.append(
                        Violation(
                            "square-bijection",
                            (g2, f2),
                            f"red-blue path occurs in {n} squares (needs exactly 1)",
                        )
                    )
    return out


# ---------------------------------------------------------------------------
# cubes and faces


@dataclass(frozen=True)
class Cube:
    """A unit cube of a model: a morphism of degree <= (1,...,1).

    For category models the key is the morphism id; for skeletons it is a
    vertex id, an edge id or a square quadruple.
    """

    key: object
    degree: Degree

    @property
    def dim(self) -> int:
        return sum(self.degree)


def cubes(model, n: int | None = None) -> list[Cube]:
    """The unit cubes of the model, optionally restricted to dimension n.

    Cubes come back in a fixed canonical order (the chain-complex basis
    order).  Raises DimensionTooLarge when n exceeds the rank.
    """
    if isinstance(model, Skeleton2Graph):
        rank = 2
        if n is not None and n > rank:
            raise DimensionTooLarge(f"a rank-2 skeleton has no {n}-cubes")
        out: list[Cube] = []
        if n in (None, 0):
            out.extend(Cube(v, ()) for v in model.vertices)
        if n in (None, 1):
            out.extend(Cube(e, (1, 0)) for e in sorted(model.blue))
            out.extend(Cube(e, (0, 1)) for e in sorted(model.red))
        if n in (None, 2):
            out.extend(Cube(sq, (1, 1)) for sq in model.squares)
        return out

    g: FiniteKGraph = model
    if n is not None and n > g.rank:
        raise DimensionTooLarge(f"a rank-{g.rank} graph has no {n}-cubes")
    one = (1,) * g.rank
    out = []
    for m in g.morphism_ids():
        d = g.d(m)
        if len(d) != g.rank or not deg_leq(d, one):
            continue
        if n is None or deg_total(d) == n:
            out.append(Cube(m, d))
    out.sort(key=lambda c: (deg_total(c.degree), c.degree, c.key))
    return out


def face(model, cube: Cube, i: int, side: int) -> Cube:
    """The side-0 / side-1 face of a cube in direction i (1-based).

    Side 0 is the face at the range end (the head complement), side 1 the
    face at the source end.
    """
    if side not in (0, 1):
        raise ValueError("side must be 0 or 1")
    rank = 2 if isinstance(model, Skeleton2Graph) else model.rank
    if not 1 <= i <= rank or i > len(cube.degree) or cube.degree[i - 1] != 1:
        raise BadDirection(f"cube {cube.key!r} has no extent in direction {i}")

    if isinstance(model, Skeleton2Graph):
        if cube.dim == 1:
            e = model.edge(cube.key)
            return Cube(e.r if side == 0 else e.s, ())
        f, gg, g2, f2 = cube.key
        if i == 1:
            return Cube(g2 if side == 0 else gg, (0, 1))
        return Cube(f if side == 0 else f2, (1, 0))

    g: FiniteKGraph = model
    d = cube.degree
    if side == 0:
        head, _ = g.factorise(cube.key, deg_sub(d, unit_degree(g.rank, i)))
        return Cube(head, g.d(head))
    _, tail = g.factorise(cube.key, unit_degree(g.rank, i))
    return Cube(tail, g.d(tail))


# ---------------------------------------------------------------------------
# minimal common extensions


def mce(g: FiniteKGraph, a: str, b: str) -> list[str]:
    """Minimal common extensions of a and b: morphisms of degree
    d(a) v d(b) that factor through both.  Sorted by id."""
    da, db = g.d(a), g.d(b)
    if g.r(a) != g.r(b):
        return []
    if len(da) != g.rank or len(db) != g.rank:
        raise InvalidModel("mce needs well-shaped degrees")
    n = deg_join(da, db)
    out = []
    for lam in g._by_degree_and_range().get((n, g.r(a)), []):
        if g.factorise(lam, da)[0] == a and g.factorise(lam, db)[0] == b:
            out.append(lam)
    return sorted(out)


def mce_set(g: FiniteKGraph, morphisms) -> list[str]:
    """Minimal common extensions of a finite set, by the pairwise recursion
    MCE(F) = union over mu in MCE(F - {lam}) of MCE(lam, mu)."""
    F = [str(m) for m in morphisms]
    if not F:
        raise ValueError("mce_set needs a non-empty set of morphisms")
    for m in F:
        if not g.has(m):
            raise UnknownId(f"no morphism with id {m!r}")
    F = sorted(set(F))
    acc = {F[0]}
    for lam in F[1:]:
        acc = {ext for mu in acc for ext in mce(g, lam, mu)}
        if not acc:
            break
    return sorted(acc)


def is_exhaustive(g: FiniteKGraph, v: str, morphisms) -> bool:
    """Is E exhaustive at v: does every morphism with range v have a common
    extension with some member of E?"""
    E = [str(m) for m in morphisms]
    for m in E:
        if not g.has(m):
            raise UnknownId(f"no morphism with id {m!r}")
    for mu in g.morphisms_with_range(v):
        if not any(mce(g, mu, lam) for lam in E):
            return False
    return True


# ---------------------------------------------------------------------------
# vertex-set predicates


def vertex_predicate(g: FiniteKGraph, vertex_set, kind: str) -> VertexSetReport:
    """Test a named predicate of a vertex set.

    kind is one of "hereditary" (closed under taking sources),
    "cohereditary" (closed under taking ranges) or "saturated" (no vertex
    outside the set admits a finite exhaustive set of morphisms whose
    sources all land in it).
    """
    V = {str(v) for v in vertex_set}
    for v in V:
        if not g.is_vertex(v):
            raise UnknownId(f"no vertex with id {v!r}")

    if kind == "hereditary":
        for m in g.morphism_ids():
            if g.r(m) in V and g.s(m) not in V:
                return VertexSetReport(kind, False, (m,))
        return VertexSetReport(kind, True)

    if kind == "cohereditary":
        for m in g.morphism_ids():
            if g.s(m) in V and g.r(m) not in V:
                return VertexSetReport(kind, False, (m,))
        return VertexSetReport(kind, True)

    if kind == "saturated":
        # A vertex v outside V admits some finite exhaustive E with
        # sources in V iff the largest candidate -- every morphism out of
        # v whose source lies in V -- is non-empty and exhaustive
        # (exhaustiveness only improves when E grows).
        for v in g.vertices:
            if v in V:
                continue
            E = [m for m in g.morphisms_with_range(v) if g.s(m) in V]
            if E and is_exhaustive(g, v, E):
                return VertexSetReport(kind, False, (v, *E))
        return VertexSetReport(kind, True)

    raise ValueError(f"unknown predicate kind {kind!r}")


# ---------------------------------------------------------------------------
# products, sums, subgraphs


def _pair_id(a: str, b: str) -> str:
    return f"({a},{b})"


def cartesian_product(a: FiniteKGraph, b: FiniteKGraph) -> FiniteKGraph:
    """The product category with componentwise degree; rank adds."""
    rank = a.rank + b.rank
    vertices = [_pair_id(u, v) for u in a.vertices for v in b.vertices]
    morphisms = {}
    for m in a.morphism_ids():
        for n in b.morphism_ids():
            if a.is_identity(m) and b.is_identity(n):
                continue
            morphisms[_pair_id(m, n)] = (
                a.d(m) + b.d(n),
                _pair_id(a.r(m), b.r(n)),
                _pair_id(a.s(m), b.s(n)),
            )
    table = {}
    a_pairs = list(a.composable_pairs(include_identities=True))
    b_pairs = list(b.composable_pairs(include_identities=True))
    for x, x2 in a_pairs:
        for y, y2 in b_pairs:
            if (a.is_identity(x) and b.is_identity(y)) or (
                a.is_identity(x2) and b.is_identity(y2)
            ):
                continue
            table[(_pair_id(x, y), _pair_id(x2, y2))] = _pair_id(
                a.compose(x, x2), b.compose(y, y2)
            )
    return FiniteKGraph(rank, vertices, morphisms, table)


def _tagged_union(graphs, tags) -> FiniteKGraph:
    rank = graphs[0].rank
    vertices = []
    morphisms = {}
    table = {}
    for g, t in zip(graphs, tags, strict=True):
        if g.rank != rank:
            raise RankMismatch(f"cannot union a rank-{g.rank} graph with rank {rank}")
        vertices.extend(f"{t}:{v}" for v in g.vertices)
        for m in g.nonidentity_ids():
            morphisms[f"{t}:{m}"] = (g.d(m), f"{t}:{g.r(m)}", f"{t}:{g.s(m)}")
        for (x, y), z in g.compose_table().items():
            table[(f"{t}:{x}", f"{t}:{y}")] = f"{t}:{z}"
    return FiniteKGraph(rank, vertices, morphisms, table)


def disjoint_union(a: FiniteKGraph, b: FiniteKGraph) -> FiniteKGraph:
    """Tagged coproduct of two graphs of the same rank ("0:" and "1:" ids)."""
    return _tagged_union([a, b], ["0", "1"])


def induced_subgraph(g: FiniteKGraph, vertex_set) -> FiniteKGraph:
    """Full subcategory on a vertex set.

    The result is a k-graph when the set is hereditary or co-hereditary
    (factorisations then stay inside); for arbitrary sets it is just a
    candidate and may fail validation.
    """
    V = {str(v) for v in vertex_set}
    for v in V:
        if not g.is_vertex(v):
            raise UnknownId(f"no vertex with id {v!r}")
    keep = {m for m in g.morphism_ids() if g.r(m) in V and g.s(m) in V}
    morphisms = {
        m: (g.d(m), g.r(m), g.s(m)) for m in keep if not g.is_identity(m)
    }
    table = {
        (x, y): z
        for (x, y), z in g.compose_table().items()
        if x in keep and y in keep and z in keep
    }
    return FiniteKGraph(g.rank, sorted(V), morphisms, table)
