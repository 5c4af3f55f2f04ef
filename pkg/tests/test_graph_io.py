import pytest

from utils.errors import GraphInputError
from utils.generators import grid
from utils.graph_io import format_graph_text, format_td_text, parse_graph_text, parse_td_text, read_graph_file
from utils.treedec import heuristic_decompose, validate


def test_parse_full_document():
    doc = parse_graph_text(
        '# triangle with an apex\n'
        '4 5\n'
        '1 2\n2 3\n1 3\n1 4\n2 4\n'
        'apex: 4\n'
        'rot 1: 2 3\n'
        'rot 2: 3 1\n'
        'rot 3: 1 2\n'
        'marked_faces: 1\n'
    )
    assert doc.graph.n == 4
    assert doc.graph.m == 5
    assert doc.graph.apex_set == frozenset({4})
    assert doc.rotation[2] == (3, 1)
    assert doc.marked_faces == (1,)


@pytest.mark.parametrize('text', [
    '',
    '3 2\n1 2\n',
    '3 1\n1 1\n',
    '3 2\n1 2\n2 1\n',
    '3 1\n1 4\n',
    '3 1\n1 x\n',
    '3 1\n1 2\napex: 9\n',
    '3 1\n1 2\nrot 1: 2\nrot 1: 2\n',
])
def test_parse_rejects_malformed(text):
    with pytest.raises(GraphInputError):
        parse_graph_text(text)


def test_read_missing_file(tmp_path):
    with pytest.raises(GraphInputError):
        read_graph_file(str(tmp_path / 'missing.txt'))


def test_format_then_parse_keeps_rotation():
    doc = grid(3, 4)
    again = parse_graph_text(format_graph_text(doc))
    assert again.graph.edges == doc.graph.edges
    assert dict(again.rotation) == dict(doc.rotation)


def test_td_text_layout():
    g = grid(3, 3).graph
    td = heuristic_decompose(g)
    text = format_td_text(td, g.n)
    assert text.startswith(f's td {len(td.bags)} {td.width + 1} 9\n')
    ok, violations = validate(parse_td_text(text), g)
    assert ok, violations


def test_parse_td():
    td = parse_td_text('c path\ns td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n')
    assert td.root == 1
    assert dict(td.parent) == {1: None, 2: 1}
    assert td.bags[2] == frozenset({2, 3})
    assert td.width == 1


@pytest.mark.parametrize('text, message', [
    ('b 1 1\n', 'start with'),
    ('s td 2 1 2\nb 1 1\n', 'announces'),
    ('s td 2 1 2\nb 1 1\nb 2 2\n', 'not connected'),
    ('s td 3 1 3\nb 1 1\nb 2 2\nb 3 3\n1 2\n2 3\n3 1\n', 'cycle'),
    ('s td 1 1 1\nb 1 1\n1 5\n', 'unknown bag'),
    ('s td 2 1 2\nb 1 1\nb 2 2\n1 2\n3 4\n', 'line 5: tree edge references unknown bag 3'),
])
def test_parse_td_rejects(text, message):
    with pytest.raises(GraphInputError, match=message):
        parse_td_text(text)


def test_parse_td_accepts_edges_before_bags():
    td = parse_td_text('s td 2 2 3\n2 1\nb 1 1 2\nb 2 2 3\n')
    assert dict(td.parent) == {1: None, 2: 1}
