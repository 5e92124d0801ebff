"""Compact surfaces as rank-2 skeletons, and their connected sums.

The catalog covers the sphere S, torus T, Klein bottle K and projective
plane P.  Each catalog skeleton is a small two-coloured digraph with a
complete set of commuting squares, marked with a top vertex u (only
receives edges), a bottom vertex v (only emits edges), and one marked
square joining them; connected sums cut the marked squares open and
cross-glue the flaps.

The catalog square sets are frozen constants, certified by their
homology; `regenerate_squares` re-derives them by searching the
endpoint-preserving pairings of two-colour paths that contain the
marked square and have the right homology, taking the least such set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import Skeleton2Graph, Square, validate_skeleton
from .errors import BadMarking, InvalidModel
from .homology import chain_complex, homology


# Catalog digraphs, edges written (range, source) == (head, tail).
_DIGRAPHS: dict[str, dict] = {
    "S": {
        "vertices": ["u", "v", "w", "x", "y", "z"],
        "blue": {"a": ("w", "v"), "b": ("w", "y"), "c": ("u", "x"), "d": ("z", "x")},
        "red": {"e": ("x", "v"), "f": ("x", "y"), "g": ("u", "w"), "h": ("z", "w")},
    },
    "T": {
        "vertices": ["u", "v", "w", "x"],
        "blue": {"a": ("w", "v"), "b": ("w", "v"), "c": ("u", "x"), "d": ("u", "x")},
        "red": {"e": ("x", "v"), "f": ("x", "v"), "g": ("u", "w"), "h": ("u", "w")},
    },
    "K": {
        "vertices": ["u", "v", "w", "x"],
        "blue": {"a": ("w", "v"), "b": ("w", "v"), "c": ("u", "x"), "d": ("u", "x")},
        "red": {"e": ("x", "v"), "f": ("x", "v"), "g": ("u", "w"), "h": ("u", "w")},
    },
    "P": {
        "vertices": ["u", "v", "w", "x", "y"],
        "blue": {"a": ("w", "v"), "b": ("w", "x"), "c": ("u", "y"), "d": ("u", "y")},
        "red": {"e": ("y", "v"), "f": ("y", "x"), "g": ("u", "w"), "h": ("u", "w")},
    },
}

_MARKED_SQUARE: Square = ("c", "e", "g", "a")

# (betti, torsion) per dimension 0, 1, 2
_EXPECTED_HOMOLOGY = {
    "S": ((1, ()), (0, ()), (1, ())),
    "T": ((1, ()), (2, ()), (1, ())),
    "K": ((1, ()), (1, (2,)), (0, ())),
    "P": ((1, ()), (0, (2,)), (0, ())),
}

# Frozen catalog square sets, as found by regenerate_squares (a test keeps
# them honest).  For T there are two torus-homology candidates containing
# the marked square and this is the least; for S and P the set is unique.
_FROZEN_SQUARES: dict[str, tuple[Square, ...]] = {
    "S": (("c", "e", "g", "a"), ("c", "f", "g", "b"), ("d", "e", "h", "a"), ("d", "f", "h", "b")),
    "T": (("c", "e", "g", "a"), ("c", "f", "g", "b"), ("d", "e", "h", "a"), ("d", "f", "h", "b")),
    "K": (("c", "e", "g", "a"), ("c", "f", "g", "b"), ("d", "e", "h", "b"), ("d", "f", "h", "a")),
    "P": (("c", "e", "g", "a"), ("c", "f", "h", "b"), ("d", "e", "h", "a"), ("d", "f", "g", "b")),
}


@dataclass(frozen=True)
class SurfaceSummand:
    """One catalog summand tag: S, T, K or P."""

    tag: str

    def __post_init__(self):
        if self.tag not in _DIGRAPHS:
            raise ValueError(f"unknown surface tag {self.tag!r} (use S, T, K or P)")


@dataclass(frozen=True)
class MarkedSkeleton:
    """A surface skeleton with the marking used by connected sums."""

    skeleton: Skeleton2Graph
    u: str
    v: str
    square: Square


def validate_marking(ms: MarkedSkeleton) -> list[str]:
    """All broken marking invariants, as human-readable strings."""
    sk = ms.skeleton
    problems = []
    if ms.u not in sk.vertices:
        problems.append(f"marked vertex u = {ms.u!r} is not a vertex")
    if ms.v not in sk.vertices:
        problems.append(f"marked vertex v = {ms.v!r} is not a vertex")
    if ms.square not in sk.squares:
        problems.append(f"marked square {ms.square} is not a square of the skeleton")
        return problems
    for e, rec in itertools.chain(sk.blue.items(), sk.red.items()):
        if rec.s == ms.u:
            problems.append(f"edge {e!r} leaves the top vertex u")
        if rec.r == ms.v:
            problems.append(f"edge {e!r} enters the bottom vertex v")
    f, g, g2, f2 = ms.square
    if f in sk.blue and sk.blue[f].r != ms.u:
        problems.append("the marked square's first blue edge must end at u")
    if g in sk.red and sk.red[g].s != ms.v:
        problems.append("the marked square's first red edge must start at v")
    if f in sk.blue and g2 in sk.red:
        corners = (ms.u, sk.blue[f].s, sk.red[g2].s, ms.v)
        if len(set(corners)) != 4:
            problems.append(f"the marked square's corners {corners} are not distinct")
    return problems


def _marked(skeleton: Skeleton2Graph, u: str, v: str, square: Square) -> MarkedSkeleton:
    ms = MarkedSkeleton(skeleton, u, v, square)
    problems = validate_marking(ms)
    if problems:
        raise BadMarking("; ".join(problems))
    return ms


def _skeleton_homology(sk: Skeleton2Graph):
    return tuple((h.betti, h.torsion) for h in homology(chain_complex(sk)))


def regenerate_squares(tag: str) -> tuple[Square, ...]:
    """Search the catalog digraph for its certified square set.

    Candidates are the endpoint-preserving bijections between composable
    blue-red and red-blue paths that contain the marked square; the
    certificate is the surface's homology.  Returns the least passing
    set.
    """
    data = _DIGRAPHS[SurfaceSummand(tag).tag]
    blue, red = data["blue"], data["red"]
    br = [
        (F, G)
        for F in sorted(blue)
        for G in sorted(red)
        if blue[F][1] == red[G][0]  # source of F == range of G
    ]
    rb = [
        (G2, F2)
        for G2 in sorted(red)
        for F2 in sorted(blue)
        if red[G2][1] == blue[F2][0]
    ]

    def path_ends(kind, pair):
        if kind == "br":
            F, G = pair
            return (blue[F][0], red[G][1])
        G2, F2 = pair
        return (red[G2][0], blue[F2][1])

    groups: dict[tuple[str, str], tuple[list, list]] = {}
    for p in br:
        groups.setdefault(path_ends("br", p), ([], []))[0].append(p)
    for p in rb:
        groups.setdefault(path_ends("rb", p), ([], []))[1].append(p)
    for ends, (lhs, rhs) in groups.items():
        if len(lhs) != len(rhs):
            raise InvalidModel(
                f"catalog digraph {tag}: {len(lhs)} blue-red but {len(rhs)} "
                f"red-blue paths between {ends}"
            )

    keys = sorted(groups)
    winners = []
    for perms in itertools.product(
        *(itertools.permutations(groups[k][1]) for k in keys)
    ):
        squares = []
        for k, perm in zip(keys, perms):
            for (F, G), (G2, F2) in zip(groups[k][0], perm):
                squares.append((F, G, G2, F2))
        squares = tuple(sorted(squares))
        if _MARKED_SQUARE not in squares:
            continue
        sk = Skeleton2Graph(data["vertices"], blue, red, squares)
        if validate_skeleton(sk):
            continue
        if _skeleton_homology(sk) == _EXPECTED_HOMOLOGY[tag]:
            winners.append(squares)
    if not winners:
        raise InvalidModel(f"no square set with the right homology for {tag!r}")
    return min(winners)


def basic_surface(tag) -> MarkedSkeleton:
    """The catalog skeleton for S, T, K or P, marked and homology-certified."""
    tag = tag.tag if isinstance(tag, SurfaceSummand) else SurfaceSummand(str(tag)).tag
    squares = _FROZEN_SQUARES.get(tag)
    if squares is None:
        squares = regenerate_squares(tag)
        _FROZEN_SQUARES[tag] = squares
    data = _DIGRAPHS[tag]
    sk = Skeleton2Graph(data["vertices"], data["blue"], data["red"], squares)
    if validate_skeleton(sk):
        raise InvalidModel(f"catalog skeleton {tag} fails validation")
    if _skeleton_homology(sk) != _EXPECTED_HOMOLOGY[tag]:
        raise InvalidModel(f"catalog skeleton {tag} fails its homology certificate")
    return _marked(sk, "u", "v", _MARKED_SQUARE)


# ---------------------------------------------------------------------------
# connected sums


def _prime_ids(ms: MarkedSkeleton, taken: set[str]) -> MarkedSkeleton:
    """Rename every id of ms with appended primes until disjoint from taken."""
    sk = ms.skeleton
    ids = set(sk.vertices) | set(sk.blue) | set(sk.red)
    suffix = ""
    while any((x + suffix) in taken for x in ids):
        suffix += "'"
    if not suffix:
        return ms
    ren = lambda x: x + suffix
    sk2 = Skeleton2Graph(
        [ren(v) for v in sk.vertices],
        {ren(e): (ren(rec.r), ren(rec.s)) for e, rec in sk.blue.items()},
        {ren(e): (ren(rec.r), ren(rec.s)) for e, rec in sk.red.items()},
        [tuple(ren(x) for x in sq) for sq in sk.squares],
    )
    return MarkedSkeleton(sk2, ren(ms.u), ren(ms.v), tuple(ren(x) for x in ms.square))


def connected_sum(a: MarkedSkeleton, b: MarkedSkeleton) -> MarkedSkeleton:
    """Connected sum along the marked squares.

    The two skeletons are laid side by side (the right one's ids primed
    if they clash), the marked top and bottom vertices are merged, the
    two marked squares are removed, and the four loose flaps are
    cross-paired into two new squares.  Marked with a's top and bottom
    and the square (f_a, g_a, g2_b, f2_b).
    """
    for side, ms in (("left", a), ("right", b)):
        problems = validate_marking(ms)
        if problems:
            raise BadMarking(f"{side} summand: " + "; ".join(problems))

    taken = set(a.skeleton.vertices) | set(a.skeleton.blue) | set(a.skeleton.red)
    b = _prime_ids(b, taken)

    merge = {b.u: a.u, b.v: a.v}
    fix = lambda x: merge.get(x, x)

    vertices = list(a.skeleton.vertices) + [
        v for v in b.skeleton.vertices if v not in (b.u, b.v)
    ]
    blue = {e: (rec.r, rec.s) for e, rec in a.skeleton.blue.items()}
    red = {e: (rec.r, rec.s) for e, rec in a.skeleton.red.items()}
    for e, rec in b.skeleton.blue.items():
        blue[e] = (fix(rec.r), fix(rec.s))
    for e, rec in b.skeleton.red.items():
        red[e] = (fix(rec.r), fix(rec.s))

    fa, ga, g2a, f2a = a.square
    fb, gb, g2b, f2b = b.square
    squares = [sq for sq in a.skeleton.squares if sq != a.square]
    squares += [sq for sq in b.skeleton.squares if sq != b.square]
    squares += [(fa, ga, g2b, f2b), (fb, gb, g2a, f2a)]

    sk = Skeleton2Graph(vertices, blue, red, squares)
    problems = validate_skeleton(sk)
    if problems:
        raise InvalidModel(f"connected sum fails validation: {problems[0]}")
    return _marked(sk, a.u, a.v, (fa, ga, g2b, f2b))


def compact_surface(spec) -> MarkedSkeleton:
    """Left fold of connected sums over a list of tags (or a "T,T,P" string)."""
    if isinstance(spec, str):
        tags = [t.strip() for t in spec.split(",") if t.strip()]
    else:
        tags = [t.tag if isinstance(t, SurfaceSummand) else str(t) for t in spec]
    if not tags:
        raise ValueError("a surface spec needs at least one summand")
    out = basic_surface(tags[0])
    for tag in tags[1:]:
        out = connected_sum(out, basic_surface(tag))
    return out
