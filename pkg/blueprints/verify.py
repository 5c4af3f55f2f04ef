"""
Verify blueprint - corpus invariant suites
"""
import click
from flask import Blueprint, current_app

from models import Corpus, RunConfig
from utils.constants import CORPUS_NAMES
from utils.helpers import dump_json, echo_table, planar_command, stamp_report
from utils.reports import suite_frame
from utils.verification import run_verification

verify_bp = Blueprint('verify', __name__, cli_group=None)


@verify_bp.cli.command('verify')
@click.option('--corpus', 'corpus_name', type=click.Choice(CORPUS_NAMES), default='default', show_default=True)
@click.option('--td-fixture', 'td_fixtures', type=(click.Path(exists=True), click.Path(exists=True)),
              multiple=True, help='GRAPH TD pair whose decomposition must be valid.')
@click.option('--seed', type=int, default=None)
@click.option('--threads', type=int, default=None)
@click.option('--treewidth-cap', type=int, default=None)
@click.option('--deep-face-slope', type=int, default=None)
@click.option('--deep-face-offset', type=int, default=None)
@click.option('--output', type=click.Path(dir_okay=False), default=None)
@planar_command
def verify(corpus_name, td_fixtures, seed, threads, treewidth_cap, deep_face_slope, deep_face_offset, output):
    """Run every invariant suite; exit 1 when an asserted cap fails."""
    run = RunConfig.from_config(
        current_app.config, 'verify', seed=seed, threads=threads, treewidth_cap=treewidth_cap,
        deep_face_slope=deep_face_slope, deep_face_offset=deep_face_offset, output_path=output,
    )
    corpus = Corpus.from_config(current_app.config, corpus_name)
    report = run_verification(corpus, run, td_fixtures)
    frame = suite_frame(report)
    if not frame.empty:
        echo_table(frame.to_string(index=False))
    dump_json(stamp_report(report), run.output_path)
    if not report['ok']:
        current_app.logger.error(f'verification failed on the {corpus.name} corpus')
        raise SystemExit(1)
