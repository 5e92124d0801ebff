"""Placing combinatorics and the simplex family of k-graphs.

A placing of {0, ..., k} is a function f whose value at j equals the
number of elements placed strictly before j -- equivalently an ordered
set partition (think of a race result with ties: f(j) says how many
competitors finished strictly ahead of j).  Placings ordered pointwise
form the vertex poset of the simplex k-graph: morphisms are the
comparable pairs f <= g, composing by path concatenation, with degree
measured by the heights picked up between the two ends.

The k-sphere is two copies of the simplex with their boundaries (all
vertices away from the zero placing) identified, built as an honest
congruence quotient of {0,1} x simplex.  Wedges of spheres identify the
interior vertices of several tagged spheres.

Ids are human-readable: a placing prints as its blocks in order of
first appearance, elements within a block in decreasing order, so e.g.
"{20,1}" places 0 and 2 joint first and 1 third; the zero placing
prints as "0".  A morphism f <= g prints as "(f,g)".
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .core import FiniteKGraph, _tagged_union, cartesian_product
from .errors import HeightExceeded, OutOfBox, OutOfRange
from .quotient import quotient, relation_from_pairs

Placing = tuple[int, ...]


def _as_table(f) -> Placing:
    try:
        t = tuple(int(x) for x in f)
    except (TypeError, ValueError):
        raise OutOfRange(f"not a function table: {f!r}") from None
    if not t:
        raise OutOfRange("a placing has domain {0, ..., k} with k >= 0")
    k = len(t) - 1
    for x in t:
        if x < 0 or x > k:
            raise OutOfRange(f"value {x} lies outside 0..{k}")
    return t


def is_placing(f) -> bool:
    """Whether every value of f equals the count of strictly smaller values."""
    try:
        t = _as_table(f)
    except OutOfRange:
        return False
    return all(v == sum(1 for w in t if w < v) for v in t)


def enumerate_placings(k: int) -> list[Placing]:
    """All placings of {0, ..., k}, lexicographically.  (Their number is the
    k+1-st ordered Bell number: 1, 3, 13, 75, 541, ...)"""
    if k < 0:
        raise OutOfRange("k must be >= 0")
    return [f for f in itertools.product(range(k + 1), repeat=k + 1) if is_placing(f)]


def placing_id(f) -> str:
    """Canonical human-readable id, e.g. (0,2,0) -> "{20,1}"."""
    t = _as_table(f)
    if not is_placing(t):
        raise OutOfRange(f"{t} is not a placing")
    if not any(t):
        return "0"
    blocks: dict[int, list[int]] = {}
    for j, v in enumerate(t):
        blocks.setdefault(v, []).append(j)
    parts = [
        "".join(str(j) for j in sorted(blocks[v], reverse=True))
        for v in sorted(blocks)
    ]
    return "{" + ",".join(parts) + "}"


def height(f) -> tuple[int, ...]:
    """The 0-1 vector recording which of 1..k occur as values of f."""
    t = _as_table(f)
    k = len(t) - 1
    vals = set(t)
    return tuple(1 if i in vals else 0 for i in range(1, k + 1))


def tail_factor(f, z) -> Placing:
    """The unique placing g <= f with height exactly z (needs z <= height(f)).

    Each value of f drops to the largest level at or below it that z keeps
    (level 0 is always kept)."""
    t = _as_table(f)
    k = len(t) - 1
    z = tuple(int(x) for x in z)
    if len(z) != k or any(x not in (0, 1) for x in z):
        raise ValueError(f"z must be a 0-1 vector of length {k}")
    h = height(t)
    if any(zi > hi for zi, hi in zip(z, h)):
        raise HeightExceeded(f"{z} is not dominated by height {h}")
    kept = [0] + [i for i in range(1, k + 1) if z[i - 1] == 1]
    g = tuple(max(j for j in kept if j <= v) for v in t)
    return g


def leq(f, g) -> bool:
    """Pointwise order on placings."""
    return all(a <= b for a, b in zip(_as_table(f), _as_table(g), strict=True))


# ---------------------------------------------------------------------------
# embeddings


def basis_point(f, n: int) -> tuple[Fraction, ...]:
    """The barycentre of the face spanned by everything f places before
    level n (a convex combination of n basis vectors, so its l1 norm is 1)."""
    t = _as_table(f)
    if not is_placing(t):
        raise OutOfRange(f"{t} is not a placing")
    if n < 1 or n not in t:
        raise OutOfRange(f"{n} is not a positive value of the placing")
    members = [j for j, v in enumerate(t) if v < n]
    share = Fraction(1, len(members))
    return tuple(share if j in members else Fraction(0) for j in range(len(t)))


def embed(f, t) -> tuple[Fraction, ...]:
    """Evaluate the realisation map of the cube at f on a point of its box.

    The box coordinate t has one slot per direction 1..k; slots outside
    the height of f must be 0, all slots must lie in [0, 1] (else
    OutOfBox).  At 0 the map gives the barycentre of the whole simplex;
    the vertex itself sits at embed(f, height(f)).  Exact rational
    arithmetic throughout.
    """
    table = _as_table(f)
    if not is_placing(table):
        raise OutOfRange(f"{table} is not a placing")
    k = len(table) - 1
    try:
        point = tuple(Fraction(x) for x in t)
    except (TypeError, ValueError):
        raise OutOfBox(f"not a box point: {t!r}") from None
    if len(point) != k:
        raise OutOfBox(f"box point needs {k} coordinates, got {len(point)}")
    h = height(table)
    for i, (x, hi) in enumerate(zip(point, h), start=1):
        if x < 0 or x > 1:
            raise OutOfBox(f"coordinate {i} = {x} is outside [0, 1]")
        if x > 0 and hi == 0:
            raise OutOfBox(f"the cube at {placing_id(table)} has no extent in direction {i}")

    sup = max(point) if point else Fraction(0)
    centre = Fraction(1, k + 1)
    out = [(1 - sup) * centre] * (k + 1)
    if sup > 0:
        scale = sup / sum(point)
        for n in range(1, k + 1):
            x = point[n - 1]
            if x > 0:
                w = x * scale
                for j, c in enumerate(basis_point(table, n)):
                    out[j] += w * c
    return tuple(out)


# ---------------------------------------------------------------------------
# builders


def _morphism_id(pid_f: str, pid_g: str) -> str:
    return f"({pid_f},{pid_g})"


def build_simplex(k: int) -> FiniteKGraph:
    """The simplex k-graph: placings as vertices, comparable pairs as
    morphisms, degree the height gained.  Carries an exact embedding of
    its vertices into the standard k-simplex."""
    placings = enumerate_placings(k)
    pid = {f: placing_id(f) for f in placings}
    heights = {f: height(f) for f in placings}

    strict_up: dict[Placing, list[Placing]] = {f: [] for f in placings}
    morphisms = {}
    for f in placings:
        for g in placings:
            if f != g and leq(f, g):
                strict_up[f].append(g)
                d = tuple(b - a for a, b in zip(heights[f], heights[g]))
                morphisms[_morphism_id(pid[f], pid[g])] = (d, pid[f], pid[g])

    table = {}
    for f in placings:
        for g in strict_up[f]:
            ab = _morphism_id(pid[f], pid[g])
            for h in strict_up[g]:
                table[(ab, _morphism_id(pid[g], pid[h]))] = _morphism_id(pid[f], pid[h])

    graph = FiniteKGraph(k, list(pid.values()), morphisms, table)
    graph.embedding = {pid[f]: embed(f, heights[f]) for f in placings}
    return graph


def _sphere_pairs(k: int):
    """Id pairs identifying the two copies of everything off the zero placing."""
    placings = enumerate_placings(k)
    pid = {f: placing_id(f) for f in placings}
    zero = (0,) * (k + 1)
    pairs = []
    for f in placings:
        for g in placings:
            if f != zero and (f == g or leq(f, g)):
                mid = pid[f] if f == g else _morphism_id(pid[f], pid[g])
                pairs.append((f"(0,{mid})", f"(1,{mid})"))
    return pairs


def build_sphere(k: int) -> FiniteKGraph:
    """The k-sphere: {0,1} x simplex with the two copies identified away
    from the zero placing.  Also a k-graph, certified by the congruence
    check inside the quotient.  Carries an embedding with one extra
    coordinate (the two copies of the barycentre become the poles)."""
    two = FiniteKGraph(0, ["0", "1"], {}, {})
    simplex = build_simplex(k)
    product = cartesian_product(two, simplex)
    rel = relation_from_pairs(product, _sphere_pairs(k))
    sphere = quotient(product, rel)

    embedding = {}
    zero_pid = placing_id((0,) * (k + 1))
    for f in enumerate_placings(k):
        base = embed(f, height(f))
        pid_f = placing_id(f)
        if pid_f == zero_pid:
            delta = min(base)
            embedding[f"(0,{pid_f})"] = base + (delta,)
            embedding[f"(1,{pid_f})"] = base + (-delta,)
        else:
            # boundary vertices carry a zero extra coordinate and are shared
            embedding[f"(0,{pid_f})"] = base + (Fraction(0),)
    sphere.embedding = embedding
    return sphere


def sphere_pole(k: int, copy: int = 0) -> str:
    """The vertex id of the given copy's barycentre in build_sphere(k)."""
    if copy not in (0, 1):
        raise ValueError("copy must be 0 or 1")
    return f"({copy},{placing_id((0,) * (k + 1))})"


def build_wedge(k: int, n: int) -> FiniteKGraph:
    """n tagged copies of the k-sphere with their 0-side poles identified.

    Only identities leave a pole, so the identification is a congruence.
    """
    if n < 1:
        raise ValueError("a wedge needs n >= 1 spheres")
    sphere = build_sphere(k)
    tags = [str(i) for i in range(1, n + 1)]
    copies = _tagged_union([sphere] * n, tags)
    pole = sphere_pole(k, 0)
    pairs = [(f"{tags[0]}:{pole}", f"{t}:{pole}") for t in tags[1:]]
    rel = relation_from_pairs(copies, pairs)
    return quotient(copies, rel)
