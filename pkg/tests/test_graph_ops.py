import networkx as nx
import numpy as np
import pytest

from models import Graph, edge_key
from utils.errors import GraphInputError
from utils.graph_ops import (
    bipartition,
    components_within,
    connected_components,
    contract,
    induced_subgraph,
    is_bipartite,
    is_bipartite_after,
)


def test_graph_rejects_bad_edges():
    with pytest.raises(GraphInputError):
        Graph.from_edges([1, 2], [(1, 1)])
    with pytest.raises(GraphInputError):
        Graph.from_edges([1, 2], [(1, 3)])
    with pytest.raises(GraphInputError):
        Graph.from_edges([1, 2], [(1, 2)], apex_set=[5])


def test_edges_are_normalised(c4):
    assert c4.edges == ((1, 2), (1, 4), (2, 3), (3, 4))
    assert c4.has_edge(4, 1)
    assert c4.degree(1) == 2


def test_induced_subgraph_keeps_ids_and_apices():
    g = Graph.from_edges(range(1, 5), [(1, 2), (2, 3), (3, 4), (1, 4)], apex_set=[4])
    sub = induced_subgraph(g, {2, 3, 4})
    assert sub.vertex_ids == (2, 3, 4)
    assert sub.edges == ((2, 3), (3, 4))
    assert sub.apex_set == frozenset({4})
    assert induced_subgraph(g, {1, 2}).apex_set == frozenset()


def test_induced_subgraph_unknown_vertex(c4):
    with pytest.raises(GraphInputError):
        induced_subgraph(c4, {1, 9})


def test_connected_components_sorted_by_min_id():
    g = Graph.from_edges(range(1, 6), [(3, 4), (1, 2)])
    assert connected_components(g) == [frozenset({1, 2}), frozenset({3, 4}), frozenset({5})]
    assert components_within(g, {1, 3, 4}) == [frozenset({1}), frozenset({3, 4})]


def test_contract_merges_components():
    g = Graph.from_edges(range(1, 7), [(v, v % 6 + 1) for v in range(1, 7)])
    q = contract(g, {1, 2})
    assert q.graph.n == 5
    assert q.graph.m == 5
    assert q.preimage[1] == frozenset({1, 2})
    assert q.image[2] == 1
    assert q.is_contracted(1)
    assert not q.is_contracted(3)
    assert q.expand([1, 3]) == frozenset({1, 2, 3})


def test_contract_two_components_of_x():
    g = Graph.from_edges(range(1, 7), [(v, v % 6 + 1) for v in range(1, 7)])
    q = contract(g, {1, 4})
    assert q.graph.n == 6
    assert q.preimage[1] == frozenset({1})
    assert q.contracted_set == frozenset({1, 4})


def test_contract_unknown_vertex(c4):
    with pytest.raises(GraphInputError):
        contract(c4, {7})


def test_bipartition_even_cycle(c4):
    color, odd = bipartition(c4)
    assert odd == []
    assert color == {1: 0, 2: 1, 3: 0, 4: 1}


def test_bipartition_returns_odd_cycle(c5):
    color, odd = bipartition(c5)
    assert color is None
    assert len(odd) % 2 == 1
    assert len(set(odd)) == len(odd)
    for a, b in zip(odd, odd[1:] + odd[:1]):
        assert c5.has_edge(a, b)


def test_bipartite_after_deletions(c5):
    assert not is_bipartite(c5)
    assert is_bipartite_after(c5, deleted_vertices=[1])
    assert is_bipartite_after(c5, deleted_edges=[(1, 2)])
    assert not is_bipartite(c5.without([]))


def random_graph(n, density, seed):
    h = nx.gnp_random_graph(n, density, seed=seed)
    return Graph.from_edges(range(1, n + 1), [(u + 1, v + 1) for u, v in h.edges])


def random_bipartite_graph(left, right, density, seed):
    h = nx.bipartite.random_graph(left, right, density, seed=seed)
    return Graph.from_edges(range(1, left + right + 1), [(u + 1, v + 1) for u, v in h.edges])


def relabel(g, seed):
    perm = np.random.default_rng(seed).permutation(g.n) + 1
    mapping = {v: int(perm[idx]) for idx, v in enumerate(g.vertex_ids)}
    moved = Graph.from_edges(mapping.values(), [(mapping[u], mapping[v]) for u, v in g.edges])
    return moved, mapping


@pytest.mark.parametrize('g', [
    random_graph(30, 0.1, 1),
    random_graph(40, 0.05, 2),
    random_bipartite_graph(12, 15, 0.2, 3),
    random_bipartite_graph(20, 20, 0.1, 4),
])
@pytest.mark.parametrize('seed', [5, 6])
def test_bipartition_survives_relabeling(g, seed):
    moved, mapping = relabel(g, seed)
    color, odd = bipartition(g)
    moved_color, moved_odd = bipartition(moved)
    assert (color is None) == (moved_color is None)
    if color is None:
        assert len(moved_odd) % 2 == 1
        for a, b in zip(moved_odd, moved_odd[1:] + moved_odd[:1]):
            assert moved.has_edge(a, b)
        return
    for u, v in moved.edges:
        assert moved_color[u] != moved_color[v]
    # the colouring is unique per component up to a swap
    for comp in connected_components(g):
        root = min(comp)
        for v in comp:
            assert color[v] ^ color[root] == moved_color[mapping[v]] ^ moved_color[mapping[root]]


@pytest.mark.parametrize('n, density, seed', [(12, 0.3, 1), (30, 0.1, 2), (50, 0.06, 3), (50, 0.12, 4)])
def test_contract_preimages_and_edges(n, density, seed):
    g = random_graph(n, density, seed)
    rng = np.random.default_rng(seed)
    x = frozenset(int(v) for v in rng.choice(np.arange(1, n + 1), size=n // 2, replace=False))
    q = contract(g, x)
    sizes = [len(members) for members in q.preimage.values()]
    assert sum(sizes) == n
    assert frozenset().union(*q.preimage.values()) == g.vertex_set
    contracted = {members for members in q.preimage.values() if members <= x}
    assert contracted == set(components_within(g, x))
    for rep, members in q.preimage.items():
        assert rep == min(members)
        if not members <= x:
            assert members == frozenset({rep})
    expected = {edge_key(q.image[u], q.image[v]) for u, v in g.edges if q.image[u] != q.image[v]}
    assert set(q.graph.edges) == expected


def test_contract_empty_set_is_identity():
    g = random_graph(20, 0.2, 7)
    q = contract(g, ())
    assert q.graph.edges == g.edges
    assert all(q.preimage[v] == {v} for v in g.vertex_ids)
