import pytest

from app import create_app
from models import Graph
from utils.generators import cycle, grid
from utils.graph_io import format_graph_text, parse_graph_text

K4_WITH_ROTATION = """\
4 6
1 2
1 3
1 4
2 3
2 4
3 4
rot 1: 2 4 3
rot 2: 3 4 1
rot 3: 1 4 2
rot 4: 3 1 2
"""

K5_TEXT = """\
5 10
1 2
1 3
1 4
1 5
2 3
2 4
2 5
3 4
3 5
4 5
"""


@pytest.fixture
def app():
    return create_app('config.TestingConfig')


@pytest.fixture
def runner(app):
    return app.test_cli_runner()


@pytest.fixture
def c4():
    return Graph.from_edges(range(1, 5), [(1, 2), (2, 3), (3, 4), (4, 1)])


@pytest.fixture
def c5():
    return cycle(5).graph


@pytest.fixture
def k4():
    return parse_graph_text(K4_WITH_ROTATION).graph


@pytest.fixture
def k4_doc():
    return parse_graph_text(K4_WITH_ROTATION)


@pytest.fixture
def grid5():
    return grid(5, 5)


@pytest.fixture
def write_graph(tmp_path):
    """Write a GraphDocument (or raw text) to a file and return its path."""
    def _write(doc, name='graph.txt'):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else format_graph_text(doc), encoding='utf-8')
        return str(path)
    return _write


@pytest.fixture
def k5_text():
    return K5_TEXT
