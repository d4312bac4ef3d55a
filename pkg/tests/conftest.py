import pytest

from kmatch.corpus import connected_graphs_upto, corpus_names
from kmatch.graphs import build_named


@pytest.fixture(scope="session")
def small_corpus():
    """Connected graphs on at most 4 vertices, with stable names."""
    graphs = list(connected_graphs_upto(4))
    return list(zip(corpus_names(graphs), graphs))


@pytest.fixture(scope="session")
def sweep_corpus():
    """Connected graphs on at most 5 vertices, with stable names."""
    graphs = list(connected_graphs_upto(5))
    return list(zip(corpus_names(graphs), graphs))


@pytest.fixture(scope="session")
def named():
    """The handful of named graphs most tests poke at."""
    return {
        "k1": build_named("complete", 1),
        "k2": build_named("complete", 2),
        "k3": build_named("complete", 3),
        "k4": build_named("complete", 4),
        "p3": build_named("path", 3),
        "p4": build_named("path", 4),
        "c4": build_named("cycle", 4),
        "c5": build_named("cycle", 5),
        "c6": build_named("cycle", 6),
        "s3": build_named("star", 3),
    }
