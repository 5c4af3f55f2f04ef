"""
Layering blueprint - VFI layers, bad layers, residues and Z sets
"""
import click
from flask import Blueprint, current_app

from models import RunConfig
from utils.embedding import document_embeddings
from utils.graph_io import read_graph_file
from utils.helpers import dump_json, planar_command
from utils.layering import layer_components

layering_bp = Blueprint('layering', __name__, cli_group=None)


@layering_bp.cli.command('layers')
@click.argument('graph_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--p', 'p', type=int, default=2, show_default=True)
@click.option('--output', type=click.Path(dir_okay=False), default=None)
@planar_command
def layers(graph_path, p, output):
    """Print {m, layers, bad_layers, residues, Z} for a graph file."""
    run = RunConfig.from_config(current_app.config, 'layers', input_path=graph_path, p=p, output_path=output)
    doc = read_graph_file(run.input_path)
    layering, plan, sets = layer_components(doc.graph, document_embeddings(doc), run.p)
    current_app.logger.info(f'{run.input_path}: m={layering.m}, p\'={plan.p_prime}')
    dump_json({
        'm': layering.m,
        'layers': [sorted(layer) for layer in layering.layers],
        'bad_layers': sorted(layering.bad_layers),
        'p_prime': plan.p_prime,
        'residues': list(plan.good_residues),
        'Z': [sorted(z) for z in sets.z],
    }, run.output_path)
