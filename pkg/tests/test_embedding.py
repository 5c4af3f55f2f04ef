import networkx as nx
import pytest

from models import Graph
from utils.embedding import (
    build_embedding,
    build_vfi,
    check_euler,
    document_embeddings,
    embed_components,
    embed_planar,
    restrict_embedding,
    vfi_diameter,
    vfi_distance,
)
from utils.errors import GraphInputError, NonPlanarError, StructuralError
from utils.generators import grid, random_planar
from utils.graph_io import parse_graph_text


def test_cycle_has_two_faces(c4):
    e = embed_planar(c4)
    assert len(e.faces) == 2
    assert all(f.length == 4 for f in e.faces)
    assert e.outer_face == 0


def test_k4_rotation_faces(k4_doc):
    (e,) = document_embeddings(k4_doc)
    assert [sorted(f.boundary_vertices) for f in e.faces] == [[1, 2, 3], [1, 3, 4], [1, 2, 4], [2, 3, 4]]
    assert e.outer_face == 0
    assert e.face_table()['outer'] == 0


def test_k4_planarity_test(k4):
    e = embed_planar(k4)
    assert len(e.faces) == 4
    assert all(f.length == 3 for f in e.faces)


def test_k5_is_rejected_with_witness(k5_text):
    g = parse_graph_text(k5_text).graph
    with pytest.raises(NonPlanarError) as info:
        embed_planar(g)
    assert info.value.witness
    assert all(g.has_edge(u, v) for u, v in info.value.witness)


def test_single_edge_has_one_face():
    e = embed_planar(Graph.from_edges([1, 2], [(1, 2)]))
    assert len(e.faces) == 1
    assert e.faces[0].boundary_walk == ((1, 2), (2, 1))


def test_single_vertex_has_one_face():
    e = embed_planar(Graph.from_edges([1], []))
    assert len(e.faces) == 1
    assert e.faces[0].boundary_vertices == frozenset({1})


def test_grid_faces_and_euler():
    doc = grid(3, 3)
    (e,) = document_embeddings(doc)
    assert len(e.faces) == 5
    assert e.outer.length == 8
    assert check_euler(doc.graph, e.faces)


def test_bad_rotation_is_structural_error(c4):
    with pytest.raises(StructuralError):
        build_embedding(c4, {1: (2, 4), 2: (1, 3), 3: (2,), 4: (1, 3)})


def test_non_planar_rotation_fails_euler(k4):
    rotation = {1: (2, 3, 4), 2: (1, 3, 4), 3: (1, 2, 4), 4: (1, 2, 3)}
    with pytest.raises(StructuralError):
        build_embedding(k4, rotation)


def test_marked_face_must_exist(c4):
    with pytest.raises(GraphInputError):
        embed_planar(c4, marked=(5,))
    e = embed_planar(c4, marked=(1,))
    assert [f.id for f in e.marked_faces] == [1]


def test_build_embedding_requires_connected_graph():
    g = Graph.from_edges(range(1, 5), [(1, 2), (3, 4)])
    with pytest.raises(GraphInputError):
        build_embedding(g, {1: (2,), 2: (1,), 3: (4,), 4: (3,)})
    parts = embed_components(g)
    assert [e.graph.vertex_ids for e in parts] == [(1, 2), (3, 4)]


def test_vfi_counts():
    (e,) = document_embeddings(grid(3, 3))
    vfi = build_vfi(e)
    assert len(vfi.nodes) == 14
    assert vfi.nx_graph.number_of_edges() == sum(len(f.boundary_vertices) for f in e.faces)


def test_vfi_distance_with_weights(c4):
    e = embed_planar(c4)
    vfi = build_vfi(e)
    assert vfi_distance(vfi, ('v', 1), ('v', 3)) == 2
    assert vfi_distance(vfi, ('v', 1), ('v', 3), {0: 5, 1: 2}) == 4
    assert vfi_distance(vfi, ('f', 1), ('f', 1), {0: 0, 1: 3}) == 3
    with pytest.raises(GraphInputError):
        vfi_distance(vfi, ('v', 1), ('v', 3), {0: 1})
    with pytest.raises(GraphInputError):
        vfi_distance(vfi, ('x', 1), ('v', 3))


@pytest.mark.parametrize('seed', [1, 2, 3])
def test_vfi_diameter_matches_all_pairs(seed):
    doc = random_planar(15, seed)
    (e,) = document_embeddings(doc)
    vfi = build_vfi(e)
    lengths = dict(nx.all_pairs_shortest_path_length(vfi.nx_graph))
    expected = max(max(row.values()) for row in lengths.values())
    assert vfi_diameter(vfi) == expected
    assert vfi_diameter(vfi, {f.id: 0 for f in e.faces}) == expected


def test_restrict_embedding_merges_faces():
    (e,) = document_embeddings(grid(3, 3))
    ring = e.graph.vertex_set - {5}
    sub = restrict_embedding(e, ring)
    assert sub.graph.n == 8
    assert len(sub.faces) == 2
    assert sub.outer.boundary_vertices == ring
    inner = next(f for f in sub.faces if f.id != sub.outer_face)
    assert len(inner.parent_faces) == 4
    assert check_euler(sub.graph, sub.faces)


def test_restrict_embedding_disconnected_result():
    (e,) = document_embeddings(grid(3, 3))
    sub = restrict_embedding(e, {1, 9})
    assert sub.graph.m == 0
    assert len(sub.faces) == 1
    assert check_euler(sub.graph, sub.faces)


def test_apices_are_removed_before_embedding(k5_text):
    doc = parse_graph_text(k5_text + 'apex: 5\n')
    (e,) = document_embeddings(doc)
    assert e.graph.vertex_ids == (1, 2, 3, 4)


@pytest.mark.parametrize('seed', [1, 2, 3])
def test_weighted_vfi_distance_triangle_inequality(seed):
    (e,) = document_embeddings(random_planar(12, seed))
    vfi = build_vfi(e)
    weights = {f.id: (7 * f.id + seed) % 3 for f in e.faces}
    nodes = vfi.nodes
    dist = {(a, b): vfi_distance(vfi, a, b, weights) for a in nodes for b in nodes}
    for a in nodes:
        for b in nodes:
            assert dist[a, b] == dist[b, a]
            for c in nodes:
                assert dist[a, c] <= dist[a, b] + dist[b, c]


@pytest.mark.parametrize('seed', [4, 5])
def test_zero_weights_match_unweighted_distance(seed):
    (e,) = document_embeddings(random_planar(20, seed))
    vfi = build_vfi(e)
    zero = {f.id: 0 for f in e.faces}
    lengths = dict(nx.all_pairs_shortest_path_length(vfi.nx_graph))
    for a in vfi.nodes:
        for b in vfi.nodes:
            assert vfi_distance(vfi, a, b, zero) == vfi_distance(vfi, a, b) == lengths[a][b]


def test_vfi_node_names(c4):
    vfi = build_vfi(embed_planar(c4))
    assert vfi.vertex_node(3) in vfi.nx_graph
    assert vfi.face_node(1) in vfi.nx_graph
    assert vfi_distance(vfi, vfi.vertex_node(1), vfi.face_node(0)) == 1
