import pytest

from hypercore import (
    GuardError,
    InputError,
    clique_expansion,
    clique_graph_core,
    naive_core_oracle,
    peel,
    random_hypergraph,
)
from hypercore.gen import oracle_k_core_sets
from conftest import by_label, hg


def test_forced_single_edge():
    H = random_hypergraph(3, 1, 3, 3, 0)
    assert H.edges == [(0, 1, 2)]


def test_determinism():
    a = random_hypergraph(20, 30, 2, 4, 7)
    b = random_hypergraph(20, 30, 2, 4, 7)
    assert a.edges == b.edges and a.labels == b.labels


def test_infeasible_request_rejected():
    with pytest.raises(InputError):
        random_hypergraph(4, 100, 2, 2, 0)


def test_bad_cardinality_range():
    with pytest.raises(InputError):
        random_hypergraph(3, 1, 2, 5, 0)


def test_edges_distinct_and_in_range():
    H = random_hypergraph(15, 40, 2, 5, 3)
    assert len(set(H.edges)) == len(H.edges) == 40
    assert all(2 <= len(e) <= 5 for e in H.edges)


def test_oracle_pair_edge():
    assert naive_core_oracle(hg("a b\n")).core == [1, 1]


def test_oracle_triple(single_triple):
    assert naive_core_oracle(single_triple).core == [2, 2, 2]


def test_oracle_fixture(fig_five):
    assert naive_core_oracle(fig_five).core == [2] * 5


def test_oracle_guard():
    with pytest.raises(GuardError):
        naive_core_oracle(random_hypergraph(300, 400, 2, 3, 0))


def test_oracle_sets_nested(fig_five):
    sets = oracle_k_core_sets(fig_five)
    for small, big in zip(sets[1:], sets):
        assert small <= big


def test_clique_expansion_structure(fig_five):
    G = clique_expansion(fig_five)
    a, e = fig_five.label_to_id["a"], fig_five.label_to_id["e"]
    assert G.degree[a] == 4 and G.degree[e] == 4
    assert G.degree[fig_five.label_to_id["b"]] == 2


def test_clique_core_triangle(single_triple):
    assert clique_graph_core(single_triple).core == [2, 2, 2]


def test_clique_core_fixture(fig_five):
    # b (degree 2) peels first; the other four form a 3-core of the
    # pairwise expansion, whereas every neighborhood core number is 2
    assert by_label(fig_five, clique_graph_core(fig_five).core) == {
        "a": 3, "b": 2, "c": 3, "d": 3, "e": 3,
    }


def test_clique_core_differs_from_neighborhood_core():
    # the pair adjacency from {x,a,b} survives weak induction after x peels
    H = hg("x a b\na c\na d\nb c\nb d\nc d\n")
    assert by_label(H, clique_graph_core(H).core) == {
        "x": 2, "a": 3, "b": 3, "c": 3, "d": 3,
    }
    assert by_label(H, peel(H).core) == dict.fromkeys("xabcd", 2)
