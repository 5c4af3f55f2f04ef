"""
Main blueprint - graph generation and face tables
"""
import click
from flask import Blueprint, current_app

from models import RunConfig
from utils.constants import GENERATOR_KINDS
from utils.embedding import document_embeddings
from utils.generators import generate as generate_graph
from utils.graph_io import format_graph_text, read_graph_file
from utils.helpers import dump_json, planar_command

main_bp = Blueprint('main', __name__, cli_group=None)


@main_bp.cli.command('generate')
@click.argument('kind', type=click.Choice(GENERATOR_KINDS))
@click.argument('size', type=int)
@click.option('--cols', type=int, default=0, help='Grid columns (defaults to SIZE).')
@click.option('--chords', type=int, default=0, help='Diagonals added by grid-with-chords.')
@click.option('--density', type=float, default=0.6, help='Share of non-tree Delaunay edges kept.')
@click.option('--seed', type=int, default=None)
@click.option('--output', type=click.Path(dir_okay=False), default=None)
@planar_command
def generate(kind, size, cols, chords, density, seed, output):
    """Write a generated planar graph (with its rotation system)."""
    run = RunConfig.from_config(current_app.config, 'generate', seed=seed, output_path=output)
    doc = generate_graph(kind, size, cols=cols, chords=chords, seed=run.seed, density=density)
    text = format_graph_text(doc)
    if run.output_path:
        with open(run.output_path, 'w', encoding='utf-8') as handle:
            handle.write(text)
        current_app.logger.info(f'wrote {kind} graph with {doc.graph.n} vertices to {run.output_path}')
    else:
        click.echo(text, nl=False)


@main_bp.cli.command('faces')
@click.argument('graph_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--output', type=click.Path(dir_okay=False), default=None)
@planar_command
def faces(graph_path, output):
    """Print the face table of every component embedding."""
    doc = read_graph_file(graph_path)
    tables = [e.face_table() for e in document_embeddings(doc)]
    if len(tables) == 1:
        dump_json(tables[0], output)
    else:
        dump_json({'components': tables}, output)
