"""The three matching constructions on graph products.

Given factor edge sets M_G and M_H, the package builds product edge sets
out of four primitive parts:

* layer copies: M_G replayed in every left-factor layer (one copy per
  right vertex), or M_H replayed per left vertex. Cartesian edges.
* unmatched fill: the other factor's matching laid into the fiber of each
  unmatched vertex. Cartesian edges as well.
* diagonals: for every matched pair {a,b} x {c,d}, the two non-Cartesian
  edges {(a,c),(b,d)} and {(a,d),(b,c)}.

The constructions are then:

* boxast (orientation gh): layer copies of M_G plus fill over the
  M_G-unmatched left vertices. Orientation hg swaps the roles. Defined on
  the cartesian, strong, and lex products (it only uses Cartesian edges).
* ast: the diagonals alone. Defined on strong, direct, and lex products.
* circledast: diagonals plus both fills. Defined on strong and lex.

Each result carries a classification: a prediction, computed from the
factor sides only, of whether the produced set is a k-matching and for
which k. The prediction is exact (the test suite compares it against
direct validation over exhaustively enumerated inputs); the condition tags
name which factor regime applied.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    EdgeNotInFactor,
    IncompatibleProduct,
    InconsistentInputs,
    InvalidParameter,
    InvariantViolation,
)
from .graphs import Edge, Graph
from .matchings import canonical_matching, matching_degrees, unmatched_vertices
from .products import ProductGraph

BOXAST_KINDS = ("cartesian", "strong", "lex")
AST_KINDS = ("strong", "direct", "lex")
CIRCLEDAST_KINDS = ("strong", "lex")


@dataclass(frozen=True)
class Classification:
    """Factor-side prediction for a constructed set.

    `k` is the claimed regularity when the set is a k-matching (1 for an
    empty result, by convention). `factor_ks` records the (k_G, k_H) split
    for the diagonal constructions. `condition` names the regime:
    perfect-primary / both-matchings for boxast, factored for ast,
    M1.a/M1.b/M2.a/M2.b/M3/M4 for circledast, none otherwise.
    """

    is_k_matching: bool
    k: int | None
    factor_ks: tuple[int, int] | None
    condition: str


@dataclass(frozen=True)
class ConstructionResult:
    kind: str
    orientation: str
    product: ProductGraph
    m_g: tuple[Edge, ...]
    m_h: tuple[Edge, ...]
    edges: tuple[Edge, ...]
    parts: dict[str, tuple[Edge, ...]]
    classification: Classification


def _raise_incompatible(kind: str, p: ProductGraph, allowed: tuple[str, ...]) -> None:
    raise IncompatibleProduct(
        f"{kind} is undefined on the {p.kind} product; supported kinds: {', '.join(allowed)}"
    )


def _factor_matchings(p: ProductGraph, m_g, m_h) -> tuple[tuple[Edge, ...], tuple[Edge, ...]]:
    return (
        canonical_matching(p.left, m_g, error=EdgeNotInFactor),
        canonical_matching(p.right, m_h, error=EdgeNotInFactor),
    )


def _canonical_in_product(p: ProductGraph, pairs) -> tuple[Edge, ...]:
    # the parts are Cartesian or doubly-moving edges that exist in every
    # supported kind, so a miss here is a bug, not bad input.
    return canonical_matching(p.graph, pairs, error=InvariantViolation)


# the four primitive parts ---------------------------------------------------


def copies_in_left_layers(m_g, h: Graph):
    return [((a, y), (b, y)) for (a, b) in m_g for y in h.vertices]


def copies_in_right_layers(m_h, g: Graph):
    return [((x, c), (x, d)) for (c, d) in m_h for x in g.vertices]


def fill_over_left_unmatched(g: Graph, m_g, m_h):
    return [((u, c), (u, d)) for u in unmatched_vertices(g, m_g) for (c, d) in m_h]


def fill_over_right_unmatched(h: Graph, m_h, m_g):
    return [((a, w), (b, w)) for w in unmatched_vertices(h, m_h) for (a, b) in m_g]


def diagonals(m_g, m_h):
    out = []
    for a, b in m_g:
        for c, d in m_h:
            out.append(((a, c), (b, d)))
            out.append(((a, d), (b, c)))
    return out


# factor-side stats feeding the classifications ------------------------------


@dataclass(frozen=True)
class _SideStats:
    degree: int | None  # uniform matched degree; 0 empty, None invalid
    unmatched: int

    @property
    def valid(self) -> bool:
        return self.degree is not None

    @property
    def empty(self) -> bool:
        return self.degree == 0

    @property
    def perfect(self) -> bool:
        return self.degree is not None and self.degree >= 1 and self.unmatched == 0


def _side_stats(g: Graph, m) -> _SideStats:
    deg = matching_degrees(g, m)
    positive = {d for d in deg.values() if d > 0}
    if len(positive) > 1:
        uniform = None
    elif not positive:
        uniform = 0
    else:
        (uniform,) = positive
    return _SideStats(degree=uniform, unmatched=sum(1 for d in deg.values() if d == 0))


def _classify_boxast(gs: _SideStats, hs: _SideStats, orientation: str) -> Classification:
    primary, secondary = (gs, hs) if orientation == "gh" else (hs, gs)
    if primary.perfect:
        return Classification(True, primary.degree, None, "perfect-primary")
    if gs.valid and hs.valid:
        if gs.empty and hs.empty:
            k = 1
        elif gs.empty:
            k = hs.degree
        elif hs.empty:
            k = gs.degree
        elif gs.degree == hs.degree:
            k = gs.degree
        else:
            return Classification(False, None, None, "none")
        return Classification(True, k, None, "both-matchings")
    return Classification(False, None, None, "none")


def _classify_ast(gs: _SideStats, hs: _SideStats) -> Classification:
    if gs.valid and hs.valid:
        if gs.empty or hs.empty:
            return Classification(True, 1, (1, 1), "factored")
        return Classification(True, gs.degree * hs.degree, (gs.degree, hs.degree), "factored")
    if gs.empty or hs.empty:
        # the produced set is empty, hence trivially a k-matching, but no
        # factor regime explains it (the other side is not a matching).
        return Classification(True, 1, (1, 1), "none")
    return Classification(False, None, None, "none")


def _classify_circledast(gs: _SideStats, hs: _SideStats) -> Classification:
    if gs.perfect and hs.valid and hs.degree == 1:
        return Classification(True, gs.degree, (gs.degree, 1), "M1.a")
    if gs.valid and gs.degree >= 1 and hs.empty:
        return Classification(True, gs.degree, (gs.degree, 1), "M1.b")
    if gs.valid and gs.degree == 1 and hs.perfect:
        return Classification(True, hs.degree, (1, hs.degree), "M2.a")
    if gs.empty and hs.valid and hs.degree >= 1:
        return Classification(True, hs.degree, (1, hs.degree), "M2.b")
    if gs.valid and hs.valid and gs.degree <= 1 and hs.degree <= 1:
        return Classification(True, 1, (1, 1), "M3")
    if gs.perfect and hs.perfect:
        return Classification(True, gs.degree * hs.degree, (gs.degree, hs.degree), "M4")
    return Classification(False, None, None, "none")


def classify_construction(
    kind: str, p: ProductGraph, m_g, m_h, orientation: str = "gh"
) -> Classification:
    """Predict, from the factors alone, whether the construction is a
    k-matching of the product, and under which condition."""
    if orientation not in ("gh", "hg"):
        raise InvalidParameter(f"orientation must be gh or hg, got {orientation!r}")
    mg, mh = _factor_matchings(p, m_g, m_h)
    gs = _side_stats(p.left, mg)
    hs = _side_stats(p.right, mh)
    if kind == "boxast":
        if p.kind not in BOXAST_KINDS:
            _raise_incompatible(kind, p, BOXAST_KINDS)
        return _classify_boxast(gs, hs, orientation)
    if kind == "ast":
        if p.kind not in AST_KINDS:
            _raise_incompatible(kind, p, AST_KINDS)
        return _classify_ast(gs, hs)
    if kind == "circledast":
        if p.kind not in CIRCLEDAST_KINDS:
            _raise_incompatible(kind, p, CIRCLEDAST_KINDS)
        return _classify_circledast(gs, hs)
    raise InvalidParameter(f"unknown construction kind {kind!r}")


# the constructions ----------------------------------------------------------


def boxast(
    p: ProductGraph, m_g, m_h, orientation: str = "gh", normalize: bool = True
) -> ConstructionResult:
    """Layer copies of the primary matching plus fill over its unmatched
    vertices.

    With normalize on (the default), a perfect primary matching forces the
    recorded secondary to the empty set. That never changes the edge set
    (a perfect primary leaves nothing to fill) but keeps the reported
    parts in the canonical form the characterizations assume.
    """
    if p.kind not in BOXAST_KINDS:
        _raise_incompatible("boxast", p, BOXAST_KINDS)
    if orientation not in ("gh", "hg"):
        raise InvalidParameter(f"orientation must be gh or hg, got {orientation!r}")
    mg, mh = _factor_matchings(p, m_g, m_h)
    if normalize:
        if orientation == "gh" and _side_stats(p.left, mg).perfect:
            mh = ()
        elif orientation == "hg" and _side_stats(p.right, mh).perfect:
            mg = ()
    if orientation == "gh":
        copies = _canonical_in_product(p, copies_in_left_layers(mg, p.right))
        fill = _canonical_in_product(p, fill_over_left_unmatched(p.left, mg, mh))
    else:
        copies = _canonical_in_product(p, copies_in_right_layers(mh, p.left))
        fill = _canonical_in_product(p, fill_over_right_unmatched(p.right, mh, mg))
    edges = _canonical_in_product(p, list(copies) + list(fill))
    # the copies saturate every matched column, the fill lives over the
    # unmatched ones: the parts can never share a vertex.
    assert len(edges) == len(copies) + len(fill)
    return ConstructionResult(
        kind="boxast",
        orientation=orientation,
        product=p,
        m_g=mg,
        m_h=mh,
        edges=edges,
        parts={"layer_copies": copies, "unmatched_fill": fill},
        classification=classify_construction("boxast", p, mg, mh, orientation),
    )


def ast(p: ProductGraph, m_g, m_h) -> ConstructionResult:
    """The two diagonals of every matched pair of factor edges."""
    if p.kind not in AST_KINDS:
        _raise_incompatible("ast", p, AST_KINDS)
    mg, mh = _factor_matchings(p, m_g, m_h)
    edges = _canonical_in_product(p, diagonals(mg, mh))
    assert len(edges) == 2 * len(mg) * len(mh)
    return ConstructionResult(
        kind="ast",
        orientation="gh",
        product=p,
        m_g=mg,
        m_h=mh,
        edges=edges,
        parts={"diagonals": edges},
        classification=classify_construction("ast", p, mg, mh),
    )


def circledast(p: ProductGraph, m_g, m_h) -> ConstructionResult:
    """Diagonals plus both unmatched fills."""
    if p.kind not in CIRCLEDAST_KINDS:
        _raise_incompatible("circledast", p, CIRCLEDAST_KINDS)
    mg, mh = _factor_matchings(p, m_g, m_h)
    core = _canonical_in_product(p, diagonals(mg, mh))
    left_fill = _canonical_in_product(p, fill_over_left_unmatched(p.left, mg, mh))
    right_fill = _canonical_in_product(p, fill_over_right_unmatched(p.right, mh, mg))
    edges = _canonical_in_product(p, list(core) + list(left_fill) + list(right_fill))
    # diagonals touch doubly-matched pairs, each fill touches pairs with
    # exactly one unmatched coordinate on its own side: pairwise disjoint.
    assert len(edges) == len(core) + len(left_fill) + len(right_fill)
    return ConstructionResult(
        kind="circledast",
        orientation="gh",
        product=p,
        m_g=mg,
        m_h=mh,
        edges=edges,
        parts={"diagonals": core, "left_fill": left_fill, "right_fill": right_fill},
        classification=classify_construction("circledast", p, mg, mh),
    )


CONSTRUCTORS = {"boxast": boxast, "ast": ast, "circledast": circledast}


# size prediction ------------------------------------------------------------


def _check_factor(k: int, n: int, u: int, size: int, side: str) -> None:
    if k * (n - u) != 2 * size:
        raise InconsistentInputs(
            f"{side} factor: k(n-u)/2 = {k}*({n}-{u})/2 does not equal |m| = {size}"
        )


def predicted_size(
    kind: str,
    n_g: int,
    n_h: int,
    size_g: int,
    size_h: int,
    u_g: int,
    u_h: int,
    k: int | None = None,
    factor_ks: tuple[int, int] | None = None,
) -> int:
    """Closed-form size of a valid construction from factor summaries.

    boxast and circledast cover n_g*n_h - u_g*u_h vertex pairs k/2 times
    each; ast pairs every matched edge with every matched edge twice. The
    factor summaries must satisfy the counting identity k(n-u)/2 = |m| on
    both sides or the request is refused as inconsistent.
    """
    if kind == "boxast":
        if k is None:
            raise InvalidParameter("boxast prediction needs k")
        _check_factor(k, n_g, u_g, size_g, "left")
        _check_factor(k, n_h, u_h, size_h, "right")
        total = k * (n_g * n_h - u_g * u_h)
        assert total % 2 == 0
        return total // 2
    if kind == "ast":
        if factor_ks is None:
            raise InvalidParameter("ast prediction needs (k_G, k_H)")
        k_g, k_h = factor_ks
        _check_factor(k_g, n_g, u_g, size_g, "left")
        _check_factor(k_h, n_h, u_h, size_h, "right")
        return 2 * size_g * size_h
    if kind == "circledast":
        if factor_ks is None:
            raise InvalidParameter("circledast prediction needs (k_G, k_H)")
        k_g, k_h = factor_ks
        _check_factor(k_g, n_g, u_g, size_g, "left")
        _check_factor(k_h, n_h, u_h, size_h, "right")
        total = k_g * k_h * (n_g * n_h - u_g * u_h)
        assert total % 2 == 0
        return total // 2
    raise InvalidParameter(f"unknown construction kind {kind!r}")


def predicted_size_for(result: ConstructionResult) -> int | None:
    """predicted_size with the scalars taken from a construction result.

    Returns None when the construction is not a valid k-matching (the
    formulas only speak about valid ones).
    """
    cls = result.classification
    if not cls.is_k_matching:
        return None
    if result.kind == "ast" and (not result.m_g or not result.m_h):
        # an empty side empties the diagonals no matter what the other
        # side looks like; the factor identity need not hold there.
        return 0
    p = result.product
    u_g = len(unmatched_vertices(p.left, result.m_g))
    u_h = len(unmatched_vertices(p.right, result.m_h))
    return predicted_size(
        result.kind,
        p.left.n,
        p.right.n,
        len(result.m_g),
        len(result.m_h),
        u_g,
        u_h,
        k=cls.k,
        factor_ks=cls.factor_ks,
    )
