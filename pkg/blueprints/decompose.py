"""
Decompose blueprint - quotient widths, annulus diagnostics and tree decompositions
"""
import click
from flask import Blueprint, current_app

from models import RunConfig
from utils.contraction import (
    classify_faces,
    kappa_graph,
    level_thresholds,
    treewidth_bound_report,
    weighted_diameter,
)
from utils.embedding import document_embeddings
from utils.graph_io import format_td_text, read_graph_file, read_td_file
from utils.helpers import dump_json, echo_table, planar_command
from utils.layering import layer_components
from utils.reports import render_table, summarize_widths
from utils.treedec import exact_treewidth_small, heuristic_decompose, to_nice, validate

decompose_bp = Blueprint('decompose', __name__, cli_group=None)


def _layered(run: RunConfig):
    doc = read_graph_file(run.input_path)
    embeddings = document_embeddings(doc)
    layering, plan, sets = layer_components(doc.graph, embeddings, run.p)
    return doc, embeddings, layering, plan, sets


@decompose_bp.cli.command('decompose')
@click.argument('graph_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--p', 'p', type=int, default=2, show_default=True)
@click.option('--zprime-size', type=int, default=0, show_default=True)
@click.option('--seed', type=int, default=None)
@click.option('--output', type=click.Path(dir_okay=False), default=None)
@planar_command
def decompose(graph_path, p, zprime_size, seed, output):
    """Width of G/(Z_i \\ Z') for every i with one seeded Z' of the given size."""
    run = RunConfig.from_config(current_app.config, 'decompose', input_path=graph_path, p=p,
                                seed=seed, output_path=output)
    doc, _, _, plan, sets = _layered(run)
    rows = treewidth_bound_report(doc.graph, sets, plan, [zprime_size], run.seed)
    echo_table(render_table(rows))
    dump_json([{key: value for key, value in row.items() if key != 'valid'} for row in rows], run.output_path)


def _annulus_diagnostics(embeddings, layering, plan, p):
    out = []
    for i in range(1, p + 1):
        levels = len(level_thresholds(layering, plan, i)) - 1
        for j in range(1, levels + 1):
            for e in embeddings:
                fc = classify_faces(e, layering, plan, i, j)
                if fc.annulus.graph.n == 0:
                    continue
                out.append({
                    'i': i,
                    'level': j,
                    'component': min(e.graph.vertex_ids),
                    'annulus': [fc.i_minus, fc.i_plus],
                    'deep_faces': len(fc.deep_faces),
                    'max_components': max((len(c) for c in fc.components.values()), default=0),
                    'weighted_diameter': weighted_diameter(fc.annulus, fc),
                    'kappa_width': heuristic_decompose(kappa_graph(fc)).width,
                })
    return out


@decompose_bp.cli.command('treewidth-report')
@click.argument('graph_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--p', 'p', type=int, default=2, show_default=True)
@click.option('--max-zprime', type=int, default=None, help='Largest sampled |Z\'| (MAX_ZPRIME).')
@click.option('--seed', type=int, default=None)
@click.option('--diagnostics/--no-diagnostics', default=False, help='Add per-annulus deep-face data.')
@click.option('--output', type=click.Path(dir_okay=False), default=None)
@planar_command
def treewidth_report(graph_path, p, max_zprime, seed, diagnostics, output):
    """Quotient widths for |Z'| = 0..max plus the Z' = Z_i baseline."""
    run = RunConfig.from_config(current_app.config, 'treewidth-report', input_path=graph_path, p=p,
                                seed=seed, max_zprime=max_zprime, output_path=output)
    doc, embeddings, layering, plan, sets = _layered(run)
    rows = treewidth_bound_report(doc.graph, sets, plan, range(0, run.max_zprime + 1), run.seed,
                                  include_full=True)
    echo_table(render_table(rows))
    report = {
        'p': plan.p,
        'p_prime': plan.p_prime,
        'rows': rows,
        'summary': summarize_widths(rows, plan.p, run.treewidth_cap),
    }
    if diagnostics:
        report['annuli'] = _annulus_diagnostics(embeddings, layering, plan, plan.p)
    dump_json(report, run.output_path)


@decompose_bp.cli.command('treedec')
@click.argument('graph_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--check', 'check_path', type=click.Path(exists=True, dir_okay=False), default=None,
              help='Validate this .td file instead of building one.')
@click.option('--exact-limit', type=int, default=None, help='Also compute exact width up to this bound.')
@click.option('--td-output', type=click.Path(dir_okay=False), default=None)
@click.option('--output', type=click.Path(dir_okay=False), default=None)
@planar_command
def treedec(graph_path, check_path, exact_limit, td_output, output):
    """Build (or check) a tree decomposition of a graph file."""
    g = read_graph_file(graph_path).graph
    td = read_td_file(check_path) if check_path else heuristic_decompose(g)
    ok, violations = validate(td, g)
    report = {'width': td.width, 'bags': len(td.bags), 'valid': ok, 'violations': violations}
    if ok:
        report['nice_nodes'] = len(to_nice(td, g=g).nodes)
    if exact_limit is not None:
        report['exact_width'] = exact_treewidth_small(g, exact_limit)
    if td_output:
        with open(td_output, 'w', encoding='utf-8') as handle:
            handle.write(format_td_text(td, g.n))
    dump_json(report, output)
    if not ok:
        current_app.logger.error(f'{check_path or graph_path}: {len(violations)} decomposition violations')
        raise SystemExit(1)
