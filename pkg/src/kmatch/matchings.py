"""k-matchings and the exact search oracle.

A k-matching of G is an edge set M such that in the subgraph (V, M) every
vertex has degree 0 or k. Vertices of degree k are matched, the rest are
unmatched; M is perfect when nothing is unmatched and near-perfect when
exactly one vertex is. For a valid k-matching |M| = k(n - u)/2, so all
maximum k-matchings of a graph strand the same number of vertices.

The oracle is staged. A capped include-first branch-and-bound over the
canonical edge order settles most instances outright, reporting the
first maximum it visits, which is the lexicographically smallest one.
Instances that outgrow the cap go to an integer program (one binary per
edge, one per vertex, degree = k * matched) that proves the exact size;
the canonical witness is then recovered by lexicographic fixing. The
budget caps total effort, counting search nodes plus a flat charge per
optimizer call; an exhausted budget degrades the report to
exhaustive=False instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import EdgeNotInHost, InvalidK, InvariantViolation, KmatchError, SizeLimitExceeded
from .graphs import Edge, Graph, Vertex

DEFAULT_NODE_BUDGET = 10_000_000
ENUM_MAX_EDGES = 20


def check_k(k: int) -> None:
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise InvalidK(f"k must be a positive integer, got {k!r}")


def canonical_matching(
    g: Graph, m: Iterable[tuple[Vertex, Vertex]], error: type[KmatchError] = EdgeNotInHost
) -> tuple[Edge, ...]:
    """Canonicalize an edge set against its host graph.

    Endpoint order and list order are normalized; duplicates collapse
    (inputs are sets). Unknown edges raise the given error type.
    """
    keyed = {}
    idx = g.index
    for pair in m:
        try:
            u, v = pair
        except (TypeError, ValueError):
            raise error(f"{pair!r} is not an edge")
        e = g.edge_between(u, v)
        if e is None:
            raise error(f"({u!r}, {v!r}) is not an edge of the host graph")
        keyed[(idx[e[0]], idx[e[1]])] = e
    return tuple(e for _, e in sorted(keyed.items()))


def matching_degrees(g: Graph, m: Iterable[tuple[Vertex, Vertex]]) -> dict[Vertex, int]:
    """Degree of every vertex in (V, M)."""
    deg = {v: 0 for v in g.vertices}
    for u, v in canonical_matching(g, m):
        deg[u] += 1
        deg[v] += 1
    return deg


def validate_k_matching(
    g: Graph, m: Iterable[tuple[Vertex, Vertex]], k: int
) -> tuple[bool, dict[Vertex, int]]:
    """Check the degree-0-or-k condition; returns (ok, per-vertex degrees)."""
    check_k(k)
    deg = matching_degrees(g, m)
    ok = all(d == 0 or d == k for d in deg.values())
    return ok, deg


def unmatched_vertices(g: Graph, m: Iterable[tuple[Vertex, Vertex]]) -> tuple[Vertex, ...]:
    deg = matching_degrees(g, m)
    return tuple(v for v in g.vertices if deg[v] == 0)


def uniform_degree(g: Graph, m: Iterable[tuple[Vertex, Vertex]]) -> int | None:
    """The unique k for which m is a k-matching.

    Returns 0 for the empty set (a k-matching for every k), None when the
    set is not a k-matching for any k.
    """
    positive = {d for d in matching_degrees(g, m).values() if d > 0}
    if not positive:
        return 0
    if len(positive) > 1:
        return None
    return positive.pop()


@dataclass(frozen=True)
class MatchingClass:
    """Outcome of classify_matching; flags are None when `valid` is False
    (or, for `maximal`, when the maximality probe ran out of budget)."""

    valid: bool
    k: int
    size: int
    unmatched: tuple[Vertex, ...]
    perfect: bool | None
    near_perfect: bool | None
    maximal: bool | None


def classify_matching(
    g: Graph, m: Iterable[tuple[Vertex, Vertex]], k: int, budget: int = DEFAULT_NODE_BUDGET
) -> MatchingClass:
    """Validity, perfection, near-perfection, and maximality of an edge set.

    Maximality reduces to a small oracle call: M is maximal exactly when
    the subgraph induced by its unmatched vertices has no non-empty
    k-matching (matched vertices are saturated, so any strict superset
    grows inside that subgraph).
    """
    check_k(k)
    edges = canonical_matching(g, m)
    ok, deg = validate_k_matching(g, edges, k)
    un = tuple(v for v in g.vertices if deg[v] == 0)
    if not ok:
        return MatchingClass(False, k, len(edges), un, None, None, None)
    maximal: bool | None
    rest = max_k_matching(g.induced(un), k, budget=budget)
    if rest.size > 0:
        maximal = False
    elif rest.exhaustive:
        maximal = True
    else:
        maximal = None
    return MatchingClass(
        valid=True,
        k=k,
        size=len(edges),
        unmatched=un,
        perfect=not un,
        near_perfect=len(un) == 1,
        maximal=maximal,
    )


# ---------------------------------------------------------------------------
# the exact oracle


@dataclass(frozen=True)
class OracleReport:
    """Result of an exact maximum k-matching search.

    `size` and `unmatched` describe the best k-matching found; they equal
    m_k and u_k exactly when `exhaustive` is True, and then `witness` is
    the lexicographically smallest maximum under the canonical edge order
    (unless witness recovery was turned off, in which case it is some
    maximum matching). `nodes` is the effort spent against the budget:
    search nodes plus a flat charge per optimizer call.
    """

    k: int
    size: int
    unmatched: int
    witness: tuple[Edge, ...]
    exhaustive: bool
    nodes: int


@dataclass
class _SearchOutcome:
    best_size: int
    best: list[int] | None
    nodes: int
    settled: bool


def _search_maximum(g: Graph, k: int, node_cap: int) -> _SearchOutcome:
    """Include-first branch-and-bound over the canonical edge order.

    Bookkeeping per vertex: deg (chosen incident edges), rem (undecided
    incident edges), cap = min(k - deg, rem) summed into `slack`, and a
    count of candidates (vertices that can still end up matched). A leaf
    is only reachable with every vertex at degree 0 or k, because a
    vertex stuck strictly between is pruned as soon as deg + rem < k.
    Two admissible bounds prune: chosen + slack // 2 (every further edge
    eats two units of slack) and a parity-corrected k * t // 2 over the t
    candidates (k odd forces t even in any finished matching).

    Equal-size solutions are visited in lexicographic order and only
    strict improvements replace the incumbent, so `best` is the
    lexicographically smallest maximum whenever `settled` is True. The
    hot loop is deliberately flat: everything lives in closure locals.
    """
    idx = g.index
    ends = [(idx[u], idx[v]) for u, v in g.edges]
    m = len(ends)
    rem = [0] * g.n
    for a, b in ends:
        rem[a] += 1
        rem[b] += 1
    deg = [0] * g.n
    cap = [r if r < k else k for r in rem]
    state = _SearchOutcome(best_size=-1, best=None, nodes=0, settled=True)
    slack = sum(cap)
    cand = sum(1 for r in rem if r > 0)
    chosen: list[int] = []
    odd_k = k % 2 == 1

    def refresh(x: int) -> None:
        nonlocal slack
        new = k - deg[x]
        r = rem[x]
        if r < new:
            new = r
        if new < 0:
            new = 0
        slack += new - cap[x]
        cap[x] = new

    def bound_beats_best() -> bool:
        ub = len(chosen) + slack // 2
        t = cand - 1 if odd_k and cand % 2 == 1 else cand
        vb = k * t // 2
        return (ub if ub < vb else vb) > state.best_size

    def walk(t: int) -> bool:
        nonlocal slack, cand
        state.nodes += 1
        if state.nodes > node_cap:
            return False
        if t == m:
            if len(chosen) > state.best_size:
                state.best_size = len(chosen)
                state.best = chosen.copy()
            return True
        a, b = ends[t]
        for x in (a, b):
            rem[x] -= 1
            if rem[x] == 0 and deg[x] == 0:
                cand -= 1
            refresh(x)
        ok = True
        if deg[a] < k and deg[b] < k:
            for x in (a, b):
                if deg[x] == 0 and rem[x] == 0:
                    cand += 1  # left the pool on its last consume, revived
                deg[x] += 1
                refresh(x)
            chosen.append(t)
            da, db = deg[a], deg[b]
            if (
                (da == k or da + rem[a] >= k)
                and (db == k or db + rem[b] >= k)
                and bound_beats_best()
            ):
                ok = walk(t + 1)
            chosen.pop()
            for x in (b, a):
                deg[x] -= 1
                if deg[x] == 0 and rem[x] == 0:
                    cand -= 1
                refresh(x)
        if ok:
            da, db = deg[a], deg[b]
            if (
                (da == 0 or da == k or da + rem[a] >= k)
                and (db == 0 or db == k or db + rem[b] >= k)
                and bound_beats_best()
            ):
                ok = walk(t + 1)
        for x in (b, a):
            if rem[x] == 0 and deg[x] == 0:
                cand += 1
            rem[x] += 1
            refresh(x)
        return ok

    state.settled = walk(0)
    return state


class _SizeProgram:
    """The 0-or-k degree condition as an integer program (HiGHS).

    One binary per undecided edge, one per vertex; the constraint per
    vertex says the chosen degree equals k times the matched flag, which
    is the condition verbatim. Decided edges are substituted out of the
    program (column dropped, forced degree moved to the right-hand side).
    Presolve stays off: the bundled solver's presolve mishandles these
    equality systems and can claim an infeasible instance is optimal.
    Every returned point is re-validated against the degree condition.
    Solves are deterministic for a fixed input.
    """

    def __init__(self, g: Graph, k: int):
        idx = g.index
        self.k = k
        self.m, self.n = g.m, g.n
        self.ends = [(idx[u], idx[v]) for u, v in g.edges]

    def solve(self, fixed: dict[int, int]) -> tuple[int, frozenset[int]] | None:
        """Maximum size and one witness honoring `fixed`; None if infeasible."""
        from scipy import sparse
        from scipy.optimize import Bounds, LinearConstraint, milp

        free = [j for j in range(self.m) if j not in fixed]
        forced = [0] * self.n
        ones = []
        for j, value in fixed.items():
            if value:
                ones.append(j)
                a, b = self.ends[j]
                forced[a] += 1
                forced[b] += 1
        width = len(free) + self.n
        rows: list[int] = []
        cols: list[int] = []
        vals: list[float] = []
        for col, j in enumerate(free):
            a, b = self.ends[j]
            rows.extend((a, b))
            cols.extend((col, col))
            vals.extend((1.0, 1.0))
        for i in range(self.n):
            rows.append(i)
            cols.append(len(free) + i)
            vals.append(-float(self.k))
        mat = sparse.csc_matrix((vals, (rows, cols)), shape=(self.n, width))
        rhs = [-float(f) for f in forced]
        res = milp(
            c=[-1.0] * len(free) + [0.0] * self.n,
            constraints=LinearConstraint(mat, rhs, rhs),
            integrality=[1] * width,
            bounds=Bounds(0.0, 1.0),
            options={"presolve": False},
        )
        if res.status == 2:
            return None
        if res.status != 0:
            raise InvariantViolation(f"size solve failed: {res.message}")
        taken = [j for col, j in enumerate(free) if res.x[col] > 0.5]
        assert len(taken) == round(-res.fun)
        chosen = frozenset(ones) | frozenset(taken)
        degrees = [0] * self.n
        for j in chosen:
            a, b = self.ends[j]
            degrees[a] += 1
            degrees[b] += 1
        assert all(d == 0 or d == self.k for d in degrees)
        return len(chosen), chosen

    def relaxation_bound(self) -> int:
        """Floor of the continuous relaxation: an upper bound on the size."""
        from scipy import sparse
        from scipy.optimize import linprog

        rows: list[int] = []
        cols: list[int] = []
        vals: list[float] = []
        for col in range(self.m):
            a, b = self.ends[col]
            rows.extend((a, b))
            cols.extend((col, col))
            vals.extend((1.0, 1.0))
        for i in range(self.n):
            rows.append(i)
            cols.append(self.m + i)
            vals.append(-float(self.k))
        mat = sparse.csc_matrix((vals, (rows, cols)), shape=(self.n, self.m + self.n))
        res = linprog(
            c=[-1.0] * self.m + [0.0] * self.n,
            A_eq=mat,
            b_eq=[0.0] * self.n,
            bounds=(0.0, 1.0),
            method="highs",
            options={"presolve": False},
        )
        if res.status != 0:
            raise InvariantViolation(f"relaxation solve failed: {res.message}")
        import math

        # a floor nudged up by epsilon can only overshoot, and an overshot
        # bound can never be matched by a feasible matching, so this stays
        # a safe optimality certificate.
        return math.floor(-res.fun + 1e-6)


# effort accounting: one optimizer call is charged like this many search
# nodes, which is roughly what the two cost in wall time.
_SOLVE_EFFORT = 10_000
# the plain search gives up and hands over to the optimizer at this depth.
_SEARCH_CAP = 4_000


def max_k_matching(
    g: Graph, k: int, budget: int = DEFAULT_NODE_BUDGET, witness: bool = True
) -> OracleReport:
    """Exact maximum k-matching.

    A capped branch-and-bound settles most instances outright, and then
    the witness is the lexicographically smallest maximum. When the
    search gives up, the integer program proves the maximum size; with
    `witness` on, the canonical witness is recovered by fixing edges in
    canonical order, keeping an edge exactly when some maximum matching
    still contains it. With `witness` off that recovery is skipped and
    the reported witness is just some maximum matching, which is much
    cheaper on hard instances; size and unmatched counts are exact either
    way. `budget` caps the total effort (search nodes plus a flat charge
    per optimizer call); when it runs out the report degrades to
    exhaustive=False carrying the best matching found so far.
    """
    check_k(k)
    max_deg = max((g.degree(v) for v in g.vertices), default=0)
    if k > max_deg:
        # no vertex can reach degree k, so the empty matching is the maximum.
        return OracleReport(k=k, size=0, unmatched=g.n, witness=(), exhaustive=True, nodes=0)

    def report(size: int, edges: tuple[Edge, ...], exhaustive: bool, spent: int) -> OracleReport:
        assert (2 * size) % k == 0
        return OracleReport(
            k=k,
            size=size,
            unmatched=g.n - (2 * size) // k,
            witness=edges,
            exhaustive=exhaustive,
            nodes=spent,
        )

    label_edges = g.edges
    search = _search_maximum(g, k, min(_SEARCH_CAP, budget))
    if search.settled:
        found = tuple(label_edges[i] for i in search.best or [])
        return report(max(search.best_size, 0), found, True, search.nodes)
    spent = search.nodes
    fallback_size = max(search.best_size, 0)
    fallback = tuple(label_edges[i] for i in search.best or [])

    program = _SizeProgram(g, k)
    if not witness and search.best is not None:
        # cheap certificate: the best matching the search did reach may
        # already meet the relaxation bound, which proves it maximum.
        if spent + _SOLVE_EFFORT > budget:
            return report(fallback_size, fallback, False, spent)
        spent += _SOLVE_EFFORT
        if search.best_size >= program.relaxation_bound():
            return report(fallback_size, fallback, True, spent)

    if spent + _SOLVE_EFFORT > budget:
        return report(fallback_size, fallback, False, spent)
    spent += _SOLVE_EFFORT
    optimum, sol = program.solve({})
    if optimum == 0:
        return report(0, (), True, spent)
    if not witness:
        return report(optimum, tuple(label_edges[i] for i in sorted(sol)), True, spent)

    # lexicographic recovery: walk the canonical order and keep an edge iff
    # some maximum matching agrees with every decision so far and contains
    # it. `sol` always witnesses the decisions made up to this point, so
    # its members are kept for free.
    fixed: dict[int, int] = {}
    ones = 0
    for j in range(g.m):
        if ones == optimum:
            break
        if j in sol:
            fixed[j] = 1
            ones += 1
            continue
        if spent + _SOLVE_EFFORT > budget:
            # sol is a genuine maximum, just not the canonical one.
            partial = tuple(label_edges[i] for i in sorted(sol))
            return report(optimum, partial, False, spent)
        spent += _SOLVE_EFFORT
        attempt = program.solve({**fixed, j: 1})
        if attempt is not None and attempt[0] == optimum:
            fixed[j] = 1
            ones += 1
            sol = attempt[1]
        else:
            fixed[j] = 0
    assert ones == optimum
    final = tuple(label_edges[j] for j, v in sorted(fixed.items()) if v == 1)
    return report(optimum, final, True, spent)


def enumerate_k_matchings(
    g: Graph, k: int, max_edges: int = ENUM_MAX_EDGES
) -> Iterator[tuple[Edge, ...]]:
    """All valid k-matchings of g, the empty one included.

    Emitted in include-first order over the canonical edge list (supersets
    of earlier edges come first, the empty set last); the order is
    deterministic. Guarded by an edge-count bound since the output can be
    exponential.
    """
    check_k(k)
    if g.m > max_edges:
        raise SizeLimitExceeded(
            f"enumeration supports at most {max_edges} edges, graph has {g.m}"
        )
    idx = g.index
    edges = [(idx[u], idx[v]) for u, v in g.edges]
    label_edges = g.edges
    rem = [0] * g.n
    for a, b in edges:
        rem[a] += 1
        rem[b] += 1
    deg = [0] * g.n
    chosen: list[int] = []

    def feasible(x: int) -> bool:
        d = deg[x]
        return d == 0 or d == k or d + rem[x] >= k

    def walk(t: int) -> Iterator[tuple[Edge, ...]]:
        if t == len(edges):
            yield tuple(label_edges[i] for i in chosen)
            return
        a, b = edges[t]
        rem[a] -= 1
        rem[b] -= 1
        if deg[a] < k and deg[b] < k:
            deg[a] += 1
            deg[b] += 1
            chosen.append(t)
            if feasible(a) and feasible(b):
                yield from walk(t + 1)
            chosen.pop()
            deg[a] -= 1
            deg[b] -= 1
        if feasible(a) and feasible(b):
            yield from walk(t + 1)
        rem[a] += 1
        rem[b] += 1

    yield from walk(0)


def maximum_k_matchings(g: Graph, k: int, max_edges: int = ENUM_MAX_EDGES) -> tuple[tuple[Edge, ...], ...]:
    """Every maximum k-matching, by exhaustive enumeration (small graphs)."""
    all_of_them = list(enumerate_k_matchings(g, k, max_edges=max_edges))
    best = max(len(m) for m in all_of_them)
    return tuple(m for m in all_of_them if len(m) == best)
