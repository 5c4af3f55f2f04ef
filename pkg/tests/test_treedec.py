import pytest

from models import Graph, TreeDecomposition
from utils.errors import GraphInputError
from utils.generators import grid, grid_with_chords, random_planar
from utils.treedec import (
    add_apices,
    decomposition_from_order,
    exact_treewidth_small,
    heuristic_decompose,
    min_fill_order,
    to_nice,
    validate,
    validate_nice,
)


def path(n):
    return Graph.from_edges(range(1, n + 1), [(v, v + 1) for v in range(1, n)])


def test_cycle_width(c5):
    td = heuristic_decompose(c5)
    assert td.width == 2
    assert validate(td, c5) == (True, [])
    assert exact_treewidth_small(c5, 5) == 2


def test_k4_width(k4):
    assert heuristic_decompose(k4).width == 3
    assert exact_treewidth_small(k4, 3) == 3
    assert exact_treewidth_small(k4, 2) is None


def test_tree_width_one():
    g = path(6)
    assert heuristic_decompose(g).width == 1
    assert exact_treewidth_small(g, 4) == 1


def test_grid_widths():
    g3 = grid(3, 3).graph
    assert exact_treewidth_small(g3, 5) == 3
    assert heuristic_decompose(g3).width == 3
    width = heuristic_decompose(grid(4, 4).graph).width
    assert 4 <= width <= 8


def test_exact_width_limits():
    assert exact_treewidth_small(Graph.empty(), 3) == -1
    with pytest.raises(GraphInputError):
        exact_treewidth_small(grid(5, 5).graph, 10)


def test_min_fill_order_is_a_permutation():
    g = random_planar(40, 2).graph
    order = min_fill_order(g)
    assert sorted(order) == list(g.vertex_ids)
    assert min_fill_order(g) == order


def test_disconnected_graph_decomposes():
    g = Graph.from_edges(range(1, 7), [(1, 2), (2, 3), (4, 5)])
    td = heuristic_decompose(g)
    assert validate(td, g) == (True, [])
    assert td.width == 1


def test_empty_graph_decomposition():
    td = decomposition_from_order(Graph.empty(), [])
    assert td.width == -1
    assert validate(td, Graph.empty()) == (True, [])


def test_order_must_cover_vertices(c4):
    with pytest.raises(GraphInputError):
        decomposition_from_order(c4, [1, 2, 3])


def test_validate_reports_uncovered_edge():
    g = path(3)
    td = TreeDecomposition({0: frozenset({1, 2}), 1: frozenset({3})}, {0: None, 1: 0}, 0)
    ok, violations = validate(td, g)
    assert not ok
    assert 'edge (2, 3) is not covered' in violations


def test_validate_reports_split_occurrences():
    g = Graph.from_edges([1, 2], [])
    td = TreeDecomposition(
        {0: frozenset({1}), 1: frozenset({2}), 2: frozenset({1})}, {0: None, 1: 0, 2: 1}, 0,
    )
    ok, violations = validate(td, g)
    assert not ok
    assert any('vertex 1' in v for v in violations)


def test_validate_reports_bad_tree():
    g = path(2)
    td = TreeDecomposition({0: frozenset({1, 2}), 1: frozenset({2})}, {0: None, 1: 5}, 0)
    ok, violations = validate(td, g)
    assert not ok
    assert violations == ['node 1 has no valid parent']


def test_vertex_outside_graph_is_reported():
    td = TreeDecomposition({0: frozenset({1, 2, 9})}, {0: None}, 0)
    ok, violations = validate(td, path(2))
    assert not ok
    assert 'vertex 9 is not in the graph' in violations


@pytest.mark.parametrize('doc', [grid(4, 4), random_planar(30, 9)])
def test_nice_form_keeps_width_and_validity(doc):
    g = doc.graph
    td = heuristic_decompose(g)
    ntd = to_nice(td, g=g)
    assert validate_nice(ntd) == []
    assert ntd.width == td.width
    assert ntd.nodes[ntd.root].bag == frozenset()
    assert validate(ntd.as_tree_decomposition(), g) == (True, [])
    forgotten = [node.vertex for node in ntd.nodes.values() if node.kind == 'forget']
    assert sorted(forgotten) == list(g.vertex_ids)


def test_nice_form_with_root_bag(c5):
    td = heuristic_decompose(c5)
    ntd = to_nice(td, root_bag={3})
    assert validate_nice(ntd) == []
    with pytest.raises(GraphInputError):
        to_nice(td, root_bag={1, 2, 3, 4})


def test_nice_form_rejects_invalid_decomposition():
    td = TreeDecomposition({0: frozenset({1, 2}), 1: frozenset({3})}, {0: None, 1: 0}, 0)
    with pytest.raises(GraphInputError):
        to_nice(td, g=path(3))


def test_postorder_visits_children_first(c5):
    ntd = to_nice(heuristic_decompose(c5))
    position = {node.id: idx for idx, node in enumerate(ntd.postorder())}
    for node in ntd.nodes.values():
        assert all(position[child] < position[node.id] for child in node.children)
    assert ntd.postorder()[-1].id == ntd.root


def test_add_apices():
    g = path(3)
    td = heuristic_decompose(g)
    augmented = add_apices(td, {10})
    assert augmented.width == td.width + 1
    assert all(10 in bag for bag in augmented.bags.values())
    assert add_apices(td, ()) is td


@pytest.mark.parametrize('doc', [
    random_planar(9, 1),
    random_planar(10, 2, 0.9),
    random_planar(11, 3, 0.9),
    grid_with_chords(3, 3, 2, 4),
    grid(2, 5),
])
def test_heuristic_width_is_within_twice_exact(doc):
    g = doc.graph
    heuristic = heuristic_decompose(g).width
    exact = exact_treewidth_small(g, heuristic)
    assert exact is not None
    assert exact <= heuristic <= 2 * exact
