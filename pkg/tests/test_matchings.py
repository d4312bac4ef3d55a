"""Oracle, enumerator, and classifier checks against independent references."""

import pytest
from hypothesis import given, settings, strategies as st

import bruteforce
from kmatch.errors import EdgeNotInHost, InvalidK, SizeLimitExceeded
from kmatch.graphs import build_named, make_graph
from kmatch.matchings import (
    canonical_matching,
    classify_matching,
    enumerate_k_matchings,
    max_k_matching,
    maximum_k_matchings,
    uniform_degree,
    unmatched_vertices,
    validate_k_matching,
)
from kmatch.products import product


# frozen reference values, all recomputable by hand
FROZEN = [
    ("path", 3, 1, 1, 1),  # m_1(P_3) = 1, one vertex left over
    ("path", 4, 1, 2, 0),
    ("cycle", 5, 1, 2, 1),
    ("cycle", 6, 1, 3, 0),
    ("complete", 4, 1, 2, 0),
    ("complete", 4, 2, 4, 0),  # a 4-cycle inside K_4
    ("complete", 4, 3, 6, 0),  # K_4 itself
    ("cycle", 5, 2, 5, 0),
    ("path", 3, 2, 0, 3),  # no cycle, so no non-empty 2-matching
    ("star", 3, 1, 1, 2),
    ("complete", 3, 1, 1, 1),
    ("complete", 3, 2, 3, 0),
]


@pytest.mark.parametrize("family,n,k,size,unmatched", FROZEN)
def test_frozen_maximum_values(family, n, k, size, unmatched):
    g = build_named(family, n)
    rep = max_k_matching(g, k)
    assert rep.exhaustive
    assert (rep.size, rep.unmatched) == (size, unmatched)


def test_oracle_matches_bruteforce_on_small_corpus(small_corpus):
    for name, g in small_corpus:
        for k in (1, 2, 3):
            rep = max_k_matching(g, k)
            assert rep.exhaustive, (name, k)
            assert rep.size == bruteforce.maximum_size(g.vertices, g.edges, k), (name, k)
            index = {e: i for i, e in enumerate(g.edges)}
            got = tuple(sorted(index[e] for e in rep.witness))
            assert got == bruteforce.lex_min_maximum(g.vertices, g.edges, k), (name, k)
            ok, _ = validate_k_matching(g, rep.witness, k)
            assert ok
            slim = max_k_matching(g, k, witness=False)
            assert (slim.size, slim.unmatched) == (rep.size, rep.unmatched)


def test_oracle_matches_blossom_for_ordinary_matchings(sweep_corpus):
    nx = pytest.importorskip("networkx")
    for name, g in sweep_corpus:
        gx = nx.Graph()
        gx.add_nodes_from(g.vertices)
        gx.add_edges_from(g.edges)
        blossom = nx.algorithms.matching.max_weight_matching(gx, maxcardinality=True)
        assert max_k_matching(g, 1).size == len(blossom), name


def test_oracle_escalation_path_on_a_hard_product():
    # big enough that the plain search gives up and the optimizer finishes
    g = build_named("star", 3)
    p = product(g, g, "lex").graph
    rep = max_k_matching(p, 3)
    assert rep.exhaustive
    assert rep.size == 18 and rep.unmatched == 4
    ok, _ = validate_k_matching(p, rep.witness, 3)
    assert ok
    slim = max_k_matching(p, 3, witness=False)
    assert (slim.size, slim.unmatched) == (18, 4)
    ok, _ = validate_k_matching(p, slim.witness, 3)
    assert ok and len(slim.witness) == 18


def test_budget_exhaustion_degrades_not_raises():
    g = build_named("star", 3)
    p = product(g, g, "lex").graph
    rep = max_k_matching(p, 3, budget=500)
    assert not rep.exhaustive
    assert rep.nodes > 0
    ok, _ = validate_k_matching(p, rep.witness, 3)
    assert ok  # the fallback is still a genuine 3-matching
    assert len(rep.witness) == rep.size <= 18


def test_quickpath_when_k_exceeds_max_degree():
    g = build_named("path", 3)
    rep = max_k_matching(g, 5)
    assert rep.exhaustive and rep.size == 0 and rep.unmatched == g.n
    assert rep.witness == () and rep.nodes == 0


def test_k_validation():
    g = build_named("path", 3)
    for bad in (0, -1):
        with pytest.raises(InvalidK):
            max_k_matching(g, bad)
        with pytest.raises(InvalidK):
            list(enumerate_k_matchings(g, bad))


def test_enumeration_counts():
    assert len(list(enumerate_k_matchings(build_named("path", 3), 1))) == 3
    assert len(list(enumerate_k_matchings(build_named("complete", 3), 1))) == 4
    assert len(list(enumerate_k_matchings(build_named("cycle", 4), 1))) == 7


def test_enumeration_matches_bruteforce(small_corpus):
    for name, g in small_corpus:
        for k in (1, 2, 3):
            ours = {frozenset(m) for m in enumerate_k_matchings(g, k)}
            ref = {frozenset(m) for m in bruteforce.all_k_matchings(g.vertices, g.edges, k)}
            assert ours == ref, (name, k)


def test_enumeration_size_guard():
    g = build_named("complete", 7)  # 21 edges
    with pytest.raises(SizeLimitExceeded):
        list(enumerate_k_matchings(g, 1))


def test_maximum_k_matchings_are_exactly_the_largest():
    g = build_named("cycle", 4)
    tops = list(maximum_k_matchings(g, 1))
    assert {len(m) for m in tops} == {2}
    assert len(tops) == 2  # the two ways to pair opposite edges


def test_canonical_matching_checks_the_host():
    g = build_named("path", 3)
    assert canonical_matching(g, [(2, 1)]) == ((1, 2),)
    with pytest.raises(EdgeNotInHost):
        canonical_matching(g, [(0, 2)])


def test_uniform_degree_and_unmatched():
    g = build_named("complete", 3)
    assert uniform_degree(g, ()) == 0
    assert uniform_degree(g, g.edges) == 2
    assert uniform_degree(g, g.edges[:2]) is None
    assert unmatched_vertices(g, ((0, 1),)) == (2,)


def test_classify_matching_flags():
    g = build_named("path", 4)
    perfect = classify_matching(g, ((0, 1), (2, 3)), 1)
    assert perfect.valid and perfect.perfect and perfect.maximal
    assert not perfect.near_perfect

    middle = classify_matching(g, ((1, 2),), 1)
    assert middle.valid and middle.maximal and not middle.perfect
    assert middle.unmatched == (0, 3)

    extendable = classify_matching(g, ((0, 1),), 1)
    assert extendable.valid and not extendable.maximal

    bad = classify_matching(g, ((0, 1), (1, 2)), 1)
    assert not bad.valid
    assert bad.perfect is None and bad.maximal is None

    near = classify_matching(build_named("cycle", 5), ((0, 1), (2, 3)), 1)
    assert near.valid and near.near_perfect and near.maximal


def test_classified_maximality_matches_bruteforce(small_corpus):
    for name, g in small_corpus:
        for k in (1, 2):
            for m in enumerate_k_matchings(g, k):
                got = classify_matching(g, m, k).maximal
                want = bruteforce.is_maximal(g.vertices, g.edges, m, k)
                assert got == want, (name, k, m)


graph_data = st.integers(2, 5).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(
            st.sampled_from([(i, j) for i in range(n) for j in range(i + 1, n)]),
            unique=True,
            max_size=10,
        ),
    )
)


@given(graph_data, st.integers(1, 3))
@settings(max_examples=80, deadline=None)
def test_size_degree_identity_for_every_enumerated_matching(data, k):
    n, edges = data
    g = make_graph(range(n), edges)
    for m in enumerate_k_matchings(g, k):
        u = len(unmatched_vertices(g, m))
        assert 2 * len(m) == k * (g.n - u)
        assert (len(m) == k * g.n / 2) == (u == 0)


@given(graph_data, st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_oracle_agrees_with_bruteforce_everywhere(data, k):
    n, edges = data
    g = make_graph(range(n), edges)
    rep = max_k_matching(g, k)
    assert rep.exhaustive
    assert rep.size == bruteforce.maximum_size(g.vertices, g.edges, k)
    assert rep.unmatched == bruteforce.unmatched_at_maximum(g.vertices, g.edges, k)
