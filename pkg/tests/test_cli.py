import json

import pytest

from utils.generators import cycle, grid, grid_with_chords
from utils.helpers import strip_volatile


def invoke(runner, *args):
    return runner.invoke(args=[str(arg) for arg in args])


def test_generate_grid(runner):
    result = invoke(runner, 'generate', 'grid', 3)
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0] == '9 12'
    assert sum(1 for line in lines if line.startswith('rot ')) == 9


def test_generate_is_seeded(runner):
    first = invoke(runner, 'generate', 'random-planar', 50, '--seed', 7)
    second = invoke(runner, 'generate', 'random-planar', 50, '--seed', 7)
    assert first.exit_code == 0
    assert first.stdout == second.stdout


def test_generate_rejects_bad_params(runner):
    result = invoke(runner, 'generate', 'cycle', 2)
    assert result.exit_code == 2
    assert json.loads(result.stderr.strip().splitlines()[-1])['error'] == 'GraphInputError'


def test_faces_of_generated_cycle(runner, tmp_path):
    path = tmp_path / 'c5.txt'
    assert invoke(runner, 'generate', 'cycle', 5, '--output', path).exit_code == 0
    result = invoke(runner, 'faces', path)
    assert result.exit_code == 0
    table = json.loads(result.stdout)
    assert len(table['faces']) == 2
    assert all(face['boundary'] == [1, 2, 3, 4, 5] for face in table['faces'])


def test_layers(runner, write_graph):
    path = write_graph(grid(5, 5))
    result = invoke(runner, 'layers', path, '--p', 2)
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report['m'] == 3
    assert report['p_prime'] == 2
    assert report['residues'] == [1, 2]
    assert report['bad_layers'] == []
    assert [len(z) for z in report['Z']] == [17, 8]
    assert report['layers'][2] == [13]


def test_decompose(runner, write_graph):
    path = write_graph(grid(5, 5))
    result = invoke(runner, 'decompose', path, '--p', 2, '--zprime-size', 0)
    assert result.exit_code == 0
    rows = json.loads(result.stdout)
    assert [row['i'] for row in rows] == [1, 2]
    assert rows[0]['quotient_n'] == 10
    assert 'valid' not in rows[0]


def test_treewidth_report_with_diagnostics(runner, write_graph, tmp_path):
    path = write_graph(grid(6, 6))
    out = tmp_path / 'report.json'
    result = invoke(runner, 'treewidth-report', path, '--p', 2, '--max-zprime', 1, '--diagnostics', '--output', out)
    assert result.exit_code == 0
    report = json.loads(out.read_text())
    assert report['p'] == 2
    assert report['summary']['rows'] == len(report['rows']) == 6
    assert report['summary']['over_cap'] == []
    assert report['annuli']
    assert all(row['weighted_diameter'] >= 1 for row in report['annuli'])


def test_treedec_build_and_check(runner, write_graph, tmp_path):
    path = write_graph(grid(3, 3))
    td_path = tmp_path / 'grid.td'
    result = invoke(runner, 'treedec', path, '--exact-limit', 5, '--td-output', td_path)
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report['valid']
    assert report['width'] == report['exact_width'] == 3
    checked = invoke(runner, 'treedec', path, '--check', td_path)
    assert checked.exit_code == 0
    assert json.loads(checked.stdout)['valid']


def test_treedec_check_fails_on_bad_file(runner, write_graph, tmp_path):
    path = write_graph(grid(3, 3))
    bad = tmp_path / 'bad.td'
    bad.write_text('s td 1 2 9\nb 1 1 2\n')
    result = invoke(runner, 'treedec', path, '--check', bad)
    assert result.exit_code == 1
    report = json.loads(result.stdout)
    assert not report['valid']
    assert 'vertex 9 is in no bag' in report['violations']


@pytest.mark.parametrize('engine', ['baker', 'dp', 'brute'])
def test_solve_engines_agree(runner, write_graph, engine):
    path = write_graph(cycle(5))
    result = invoke(runner, 'solve', path, '--problem', 'oct', '--k', 1, '--engine', engine)
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report['feasible']
    assert report['size'] == 1


def test_solve_infeasible_and_edges(runner, write_graph):
    path = write_graph(cycle(5))
    report = json.loads(invoke(runner, 'solve', path, '--k', 0).stdout)
    assert not report['feasible']
    assert report['size'] is None
    assert report['deleted'] == []
    report = json.loads(invoke(runner, 'solve', path, '--problem', 'eb', '--k', 1, '--engine', 'brute').stdout)
    assert report['deleted'] == [[1, 2]]


def test_solve_thread_count_does_not_change_output(runner, write_graph):
    path = write_graph(grid_with_chords(4, 4, 3, 5))
    serial = json.loads(invoke(runner, 'solve', path, '--k', 2, '--threads', 1).stdout)
    threaded = json.loads(invoke(runner, 'solve', path, '--k', 2, '--threads', 8).stdout)
    assert strip_volatile(serial) == strip_volatile(threaded)


def test_non_planar_input_exits_2(runner, write_graph, k5_text):
    path = write_graph(k5_text)
    result = invoke(runner, 'solve', path, '--k', 1)
    assert result.exit_code == 2
    error = json.loads(result.stderr.strip().splitlines()[-1])
    assert error['error'] == 'NonPlanarError'
    assert error['witness']


def test_malformed_file_exits_2(runner, write_graph):
    path = write_graph('3 2\n1 2\n')
    result = invoke(runner, 'layers', path)
    assert result.exit_code == 2


def test_verify_empty_corpus(runner):
    result = invoke(runner, 'verify', '--corpus', 'empty')
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report['ok']
    assert report['suites'] == {}
    assert 'generated_at' in report


def test_verify_flags_invalid_fixture(runner, write_graph, tmp_path):
    path = write_graph(grid(3, 3))
    bad = tmp_path / 'bad.td'
    bad.write_text('s td 2 2 9\nb 1 1 2\nb 2 3 4\n1 2\n')
    result = invoke(runner, 'verify', '--corpus', 'empty', '--td-fixture', path, bad)
    assert result.exit_code == 1
    report = json.loads(result.stdout)
    assert not report['ok']
    violations = report['suites']['td_fixtures']['violations']
    assert any('is not covered' in v for v in violations)


def test_verify_runs_every_suite(app, runner):
    app.config['DIAMETER_SLOPE_CAP'] = 1000.0
    result = invoke(
        runner, 'verify', '--treewidth-cap', 1000, '--deep-face-slope', 1000, '--deep-face-offset', 1000,
    )
    report = json.loads(result.stdout)
    failing = {name: suite['violations'] for name, suite in report['suites'].items() if suite['violations']}
    assert failing == {}
    assert result.exit_code == 0
    assert set(report['suites']) == {'layering', 'support_tree', 'deep_faces', 'diameter', 'treewidth', 'oracle'}
    assert report['caps']['treewidth_cap'] == 1000
    assert report['suites']['oracle']['checked'] == 4


def test_verify_thread_count_does_not_change_output(runner):
    serial = invoke(runner, 'verify', '--threads', 1)
    threaded = invoke(runner, 'verify', '--threads', 8)
    assert serial.exit_code == threaded.exit_code
    assert strip_volatile(json.loads(serial.stdout)) == strip_volatile(json.loads(threaded.stdout))
