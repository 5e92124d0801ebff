"""Exports: GraphViz skeletons and OFF quad meshes.

The dot export draws the 1-skeleton with one style per colour (direction
1 solid, direction 2 dashed, anything higher dotted), arrows running
source -> range.  The mesh export needs a model that carries an exact
vertex embedding (the simplex and sphere builders provide one) and emits
one quad per 2-cube; coordinates are printed to 12 significant digits.
Points in fewer than 3 dimensions are zero-padded to 3 for plain OFF;
higher-dimensional embeddings use the nOFF variant.
"""

from __future__ import annotations

from .core import Cube, FiniteKGraph, Skeleton2Graph, cubes
from .errors import NoEmbedding
from . import io as kio


def export_json(model) -> str:
    return kio.dumps(kio.model_doc(model))


def _style(direction: int) -> str:
    return {1: "solid", 2: "dashed"}.get(direction, "dotted")


def export_dot(model) -> str:
    """The 1-skeleton as a GraphViz digraph, deterministically ordered."""
    lines = ["digraph {"]
    if isinstance(model, Skeleton2Graph):
        for v in model.vertices:
            lines.append(f'  "{v}";')
        for colour, edges in ((1, model.blue), (2, model.red)):
            for e in sorted(edges):
                rec = edges[e]
                lines.append(
                    f'  "{rec.s}" -> "{rec.r}" [label="{e}", style={_style(colour)}];'
                )
    else:
        g: FiniteKGraph = model
        for v in g.vertices:
            lines.append(f'  "{v}";')
        for c in cubes(g, 1) if g.rank else []:
            direction = c.degree.index(1) + 1
            lines.append(
                f'  "{g.s(c.key)}" -> "{g.r(c.key)}" '
                f'[label="{c.key}", style={_style(direction)}];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _fmt(x) -> str:
    return f"{float(x):.12g}"


def _corner(g: FiniteKGraph, cube: Cube, a: int, b: int, i: int, j: int) -> str:
    split = tuple(
        a if pos == i - 1 else (b if pos == j - 1 else 0)
        for pos in range(g.rank)
    )
    head, _ = g.factorise(cube.key, split)
    return g.s(head)


def export_mesh(model) -> str:
    """OFF mesh of an embedded model: its vertices plus one quad per 2-cube."""
    if not isinstance(model, FiniteKGraph) or model.embedding is None:
        raise NoEmbedding(
            "mesh export needs a model with an exact vertex embedding "
            "(surface skeletons and quotient builds carry none)"
        )
    vertex_ids = [c.key for c in cubes(model, 0)]
    missing = [v for v in vertex_ids if v not in model.embedding]
    if missing:
        raise NoEmbedding(f"embedding misses vertices {missing[:3]}")
    coords = [tuple(model.embedding[v]) for v in vertex_ids]
    dims = {len(c) for c in coords}
    if len(dims) != 1:
        raise NoEmbedding("embedding coordinates have mixed dimensions")
    dim = dims.pop()
    if dim < 3:
        coords = [c + (0,) * (3 - dim) for c in coords]
        dim = 3

    index = {v: i for i, v in enumerate(vertex_ids)}
    faces = []
    if model.rank >= 2:
        for cb in cubes(model, 2):
            i, j = (pos + 1 for pos, x in enumerate(cb.degree) if x == 1)
            quad = [
                _corner(model, cb, 0, 0, i, j),
                _corner(model, cb, 1, 0, i, j),
                _corner(model, cb, 1, 1, i, j),
                _corner(model, cb, 0, 1, i, j),
            ]
            faces.append([index[v] for v in quad])

    lines = []
    if dim == 3:
        lines.append("OFF")
    else:
        lines.append("nOFF")
        lines.append(str(dim))
    lines.append(f"{len(coords)} {len(faces)} 0")
    for c in coords:
        lines.append(" ".join(_fmt(x) for x in c))
    for f in faces:
        lines.append("4 " + " ".join(str(i) for i in f))
    return "\n".join(lines) + "\n"
