"""
Solve blueprint - odd cycle transversal and edge bipartization
"""
import time

import click
from flask import Blueprint, current_app

from models import Instance, RunConfig, SolveStats
from utils.constants import ENGINES, PROBLEM_CONFIG
from utils.embedding import document_embeddings
from utils.graph_io import read_graph_file
from utils.helpers import dump_json, planar_command
from utils.solvers import baker_solve, brute_force, dp_solve
from utils.treedec import heuristic_decompose, to_nice

solve_bp = Blueprint('solve', __name__, cli_group=None)


@solve_bp.cli.command('solve')
@click.argument('graph_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--problem', type=click.Choice(sorted(PROBLEM_CONFIG)), default='oct', show_default=True)
@click.option('--k', 'k', type=int, required=True, help='Solution size budget.')
@click.option('--engine', type=click.Choice(ENGINES), default='baker', show_default=True)
@click.option('--threads', type=int, default=None)
@click.option('--output', type=click.Path(dir_okay=False), default=None)
@planar_command
def solve(graph_path, problem, k, engine, threads, output):
    """Decide whether at most K deletions make the graph bipartite."""
    run = RunConfig.from_config(current_app.config, 'solve', input_path=graph_path, problem=problem,
                                k=k, threads=threads, output_path=output)
    doc = read_graph_file(run.input_path)
    inst = Instance(doc.graph, run.problem, run.k)
    started = time.perf_counter()
    if engine == 'baker':
        solution, stats = baker_solve(inst, document_embeddings(doc), threads=run.threads)
    elif engine == 'dp':
        td = heuristic_decompose(doc.graph)
        solution = dp_solve(inst, to_nice(td))
        stats = SolveStats(max_width=td.width)
    else:
        solution = brute_force(inst)
        stats = SolveStats()
    if engine != 'baker':
        stats.wall_ms = (time.perf_counter() - started) * 1000
    problem_config = PROBLEM_CONFIG[run.problem]
    outcome = f'deletes {solution.size} {problem_config["deletes"]}' if solution else 'infeasible'
    current_app.logger.info(f'{problem_config["display"]} k={run.k} via {engine}: {outcome}')
    payload = {'feasible': solution is not None, 'stats': stats.as_dict()}
    if solution is not None:
        payload.update(solution.as_dict())
    else:
        payload.update({'size': None, 'deleted': []})
    dump_json(payload, run.output_path)
