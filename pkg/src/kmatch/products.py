"""The four standard graph products and their structure maps.

All four products share the vertex set V_G x V_H (ordered pairs, left
coordinate first). For distinct pairs (g, h) and (g', h') the adjacency
rules are:

* cartesian: g ~ g' and h = h', or g = g' and h ~ h'
* strong:    cartesian, or g ~ g' and h ~ h'
* direct:    g ~ g' and h ~ h'
* lex:       g ~ g', or g = g' and h ~ h'

So E(cartesian) is contained in E(strong), which is contained in E(lex),
and E(direct) is contained in E(strong). Edges that change exactly one
coordinate are called Cartesian edges; edges changing both are
non-Cartesian. Layers (the copies of one factor obtained by freezing the
other coordinate) exist for the cartesian, strong, and lex kinds; the
direct product has no layers because it has no Cartesian edges.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ItemNotInProduct, UnknownAnchor, UnsupportedKind
from .graphs import Edge, Graph, Vertex

KINDS = ("cartesian", "strong", "direct", "lex")
LAYERED_KINDS = ("cartesian", "strong", "lex")


@dataclass(frozen=True)
class ProductGraph:
    """A product together with its factors; `graph` holds the result."""

    kind: str
    left: Graph
    right: Graph
    graph: Graph


def _adjacent(kind: str, g: Graph, h: Graph, a: Vertex, b: Vertex, c: Vertex, d: Vertex) -> bool:
    """Adjacency of (a, c) and (b, d) in the product, for distinct pairs."""
    eg = g.edge_between(a, b) is not None
    eh = h.edge_between(c, d) is not None
    if kind == "cartesian":
        return (eg and c == d) or (a == b and eh)
    if kind == "strong":
        return (eg and c == d) or (a == b and eh) or (eg and eh)
    if kind == "direct":
        return eg and eh
    if kind == "lex":
        return eg or (a == b and eh)
    raise UnsupportedKind(f"unknown product kind {kind!r}")


def product(g: Graph, h: Graph, kind: str) -> ProductGraph:
    """Build g * h for the requested kind.

    Vertices are the pairs (x, y) in left-major order, which fixes the
    canonical edge order of the result.
    """
    if kind not in KINDS:
        raise UnsupportedKind(f"unknown product kind {kind!r}; choose from {KINDS}")
    vertices = tuple((x, y) for x in g.vertices for y in h.vertices)
    edges = []
    nh = h.n
    for i, (a, c) in enumerate(vertices):
        for j in range(i + 1, len(vertices)):
            b, d = vertices[j]
            # (i, j) ascending matches the canonical order of the result,
            # so the edge list comes out sorted without a second pass.
            if _adjacent(kind, g, h, a, b, c, d):
                edges.append(((a, c), (b, d)))
    assert nh * g.n == len(vertices)
    return ProductGraph(kind=kind, left=g, right=h, graph=Graph(vertices, tuple(edges)))


def project(p: ProductGraph, side: str, item) -> tuple[str, object]:
    """Project a product vertex or edge onto one factor.

    Returns a tagged pair: ("vertex", v) for a vertex, and for an edge
    either ("edge", e) when the endpoints separate on that side or
    ("collapsed", v) when the edge shrinks to the single vertex v.
    """
    assert side in ("left", "right")
    coord = 0 if side == "left" else 1
    factor = p.left if side == "left" else p.right
    if isinstance(item, tuple) and len(item) == 2 and p.graph.has_vertex(item):
        return ("vertex", item[coord])
    try:
        x, y = item
    except (TypeError, ValueError):
        raise ItemNotInProduct(f"{item!r} is neither a product vertex nor an edge")
    e = p.graph.edge_between(x, y)
    if e is None:
        raise ItemNotInProduct(f"{item!r} is neither a product vertex nor an edge")
    a, b = e[0][coord], e[1][coord]
    if a == b:
        return ("collapsed", a)
    fe = factor.edge_between(a, b)
    assert fe is not None, "product edge projects outside the factor"
    return ("edge", fe)


def layer(p: ProductGraph, side: str, anchor: Vertex) -> Graph:
    """The copy of one factor through a fixed vertex of the other.

    side="left" gives the left-factor layer at a right vertex (all pairs
    (x, anchor)); side="right" the right-factor layer at a left vertex.
    Undefined for the direct product.
    """
    assert side in ("left", "right")
    if p.kind == "direct":
        raise UnsupportedKind("the direct product has no layers")
    if side == "left":
        if not p.right.has_vertex(anchor):
            raise UnknownAnchor(f"{anchor!r} is not a vertex of the right factor")
        keep = [(x, anchor) for x in p.left.vertices]
    else:
        if not p.left.has_vertex(anchor):
            raise UnknownAnchor(f"{anchor!r} is not a vertex of the left factor")
        keep = [(anchor, y) for y in p.right.vertices]
    return p.graph.induced(keep)


def classify_edge(p: ProductGraph, e: tuple[Vertex, Vertex]) -> str:
    """"cartesian" if exactly one coordinate changes, else "non_cartesian"."""
    try:
        x, y = e
    except (TypeError, ValueError):
        raise ItemNotInProduct(f"{e!r} is not a product edge")
    ce = p.graph.edge_between(x, y)
    if ce is None:
        raise ItemNotInProduct(f"{e!r} is not a product edge")
    (a, c), (b, d) = ce
    # both coordinates equal would be a loop, which simple graphs exclude.
    assert a != b or c != d
    return "cartesian" if (a == b or c == d) else "non_cartesian"


def product_edge(p: ProductGraph, u: Vertex, v: Vertex) -> Edge:
    """Canonical product edge {u, v}; raises if absent."""
    e = p.graph.edge_between(u, v)
    if e is None:
        raise ItemNotInProduct(f"({u!r}, {v!r}) is not an edge of the product")
    return e
