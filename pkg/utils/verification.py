"""
Invariant suites behind `flask verify`.

Every suite returns {'checked': int, 'violations': [str], ...maxima}; a run
passes when no suite reports a violation.
"""
from __future__ import annotations

import logging

import networkx as nx
import numpy as np

from extensions import pool
from models import ContractionRequest, Corpus, GraphDocument, Instance, RunConfig
from utils.contraction import (
    build_support_tree,
    classify_faces,
    contract_decomposition,
    level_thresholds,
    sample_zprimes,
    support_tree_violations,
    treewidth_bound_report,
    weighted_diameter,
)
from utils.embedding import build_vfi, embed_components, vfi_diameter
from utils.errors import PlanarError
from utils.generators import grid, grid_with_chords, random_planar
from utils.graph_io import read_graph_file, read_td_file
from utils.layering import layer_components, outer_face_boundary
from utils.reports import regression_slope, summarize_widths
from utils.solvers import baker_solve, brute_force, is_solution
from utils.treedec import heuristic_decompose, to_nice, validate, validate_nice

log = logging.getLogger(__name__)

MAX_LISTED_VIOLATIONS = 50
SAMEFACE_MAX_N = 60
SUPPORT_MAX_N = 60
DIAMETER_MAX_NODES = 600


def _result(checked=0, violations=(), **maxima) -> dict:
    return {'checked': checked, 'violations': list(violations), **maxima}


def _merge(parts: list[dict]) -> dict:
    """Sum counts, concatenate violations, take maxima of every other numeric field."""
    merged = _result()
    for part in parts:
        merged['checked'] += part['checked']
        merged['violations'].extend(part['violations'])
        for key, value in part.items():
            if key in ('checked', 'violations'):
                continue
            if isinstance(value, list):
                merged.setdefault(key, []).extend(value)
            elif value is not None:
                merged[key] = max(merged.get(key, value), value)
    total = len(merged['violations'])
    merged['violation_count'] = total
    merged['violations'] = merged['violations'][:MAX_LISTED_VIOLATIONS]
    return merged


def _random_docs(count: int, low: int, high: int, seed: int, salt: int) -> list[tuple[str, GraphDocument]]:
    rng = np.random.default_rng([seed, salt])
    docs = []
    for idx in range(count):
        n = int(rng.integers(low, max(low, high) + 1))
        density = float(rng.uniform(0.3, 1.0))
        docs.append((f'random-{salt}-{idx}-n{n}', random_planar(n, seed * 10007 + salt * 101 + idx, density)))
    return docs


# -------------------------
# LAYERING
# -------------------------
def _check_layering(args) -> dict:
    name, doc, p, mark = args
    g = doc.graph
    marked = (0,) if mark else ()
    embeddings = embed_components(g, doc.rotation, marked)
    layering, plan, sets = layer_components(g, embeddings, p)
    violations = []
    if sum(len(layer) for layer in layering.layers) != g.n or frozenset(layering.ell) != g.vertex_set:
        violations.append(f'{name}: layers do not partition V')
    for i, layer in enumerate(layering.layers, start=1):
        if any(layering.ell[v] != i for v in layer):
            violations.append(f'{name}: ell disagrees with L_{i}')
    for u, v in g.edges:
        if abs(layering.ell[u] - layering.ell[v]) > 1:
            violations.append(f'{name}: edge ({u}, {v}) skips a layer')
    seen: set[int] = set()
    for i, q in enumerate(plan.good_residues, start=1):
        z_i = sets.get(i)
        if z_i & seen:
            violations.append(f'{name}: Z_{i} overlaps an earlier set')
        seen |= z_i
        expected = frozenset(v for v, l in layering.ell.items() if (l - q) % plan.p_prime == 0)
        if z_i != expected:
            violations.append(f'{name}: Z_{i} differs from its congruence class')
        if any(((b - q) % plan.p_prime) == 0 for b in layering.bad_layers):
            violations.append(f'{name}: residue {q} meets a bad layer')
    if not layering.bad_layers and plan.p_prime == plan.p and seen != g.vertex_set:
        violations.append(f'{name}: Z sets do not cover V')
    if g.n <= SAMEFACE_MAX_N:
        for e in embeddings:
            own = e.graph.vertex_set
            for i in range(1, layering.m + 1):
                layer = layering.layer(i) & own
                if layer and outer_face_boundary(e, layering, i) != layer:
                    violations.append(f'{name}: outer face of L>={i} is not bounded by L_{i}')
    return _result(1, violations, max_layers=layering.m, max_bad_layers=len(layering.bad_layers))


def layering_suite(corpus: Corpus, run: RunConfig) -> dict:
    docs = _random_docs(corpus.layering_graphs, 3, corpus.layering_max_n, run.seed, 1)
    p_values = corpus.p_values or (2,)
    items = [
        (name, doc, p_values[idx % len(p_values)], idx % 3 == 2)
        for idx, (name, doc) in enumerate(docs)
    ]
    return _merge(pool.map(_check_layering, items, run.threads))


# -------------------------
# SUPPORT TREE
# -------------------------
def _check_support(args) -> dict:
    name, doc, p, max_zprime, seed = args
    g = doc.graph
    embeddings = embed_components(g, doc.rotation)
    layering, plan, sets = layer_components(g, embeddings, p)
    violations, checked = [], 0
    for i in range(1, p + 1):
        tree = build_support_tree(g, layering, plan, i)
        for z_prime in sample_zprimes(sets.get(i), range(0, max_zprime + 1), seed, i):
            checked += 1
            for problem in support_tree_violations(g, tree, sets.get(i) - z_prime):
                violations.append(f'{name} p={p} i={i}: {problem}')
    return _result(checked, violations)


def support_suite(corpus: Corpus, run: RunConfig) -> dict:
    docs = _random_docs(corpus.support_graphs, 4, SUPPORT_MAX_N, run.seed, 2)
    docs += [(f'grid-{s}', grid(s, s)) for s in corpus.grid_sizes if s * s <= SUPPORT_MAX_N]
    items = [
        (name, doc, p, min(2, run.max_zprime), run.seed)
        for name, doc in docs for p in corpus.p_values if p >= 2
    ]
    return _merge(pool.map(_check_support, items, run.threads))


# -------------------------
# DEEP FACES AND WEIGHTED DIAMETER
# -------------------------
def _check_deep_faces(args) -> dict:
    name, doc, p, run = args
    g = doc.graph
    embeddings = embed_components(g, doc.rotation)
    layering, plan, sets = layer_components(g, embeddings, p)
    violations, checked, max_components, points, skipped = [], 0, 0, [], 0
    for i in range(1, p + 1):
        levels = len(level_thresholds(layering, plan, i)) - 1
        for z_prime in sample_zprimes(sets.get(i), range(0, run.max_zprime + 1), run.seed, i):
            cap = run.deep_face_slope * len(z_prime) + run.deep_face_offset
            for j in range(1, levels + 1):
                for e in embeddings:
                    fc = classify_faces(e, layering, plan, i, j, z_prime & e.graph.vertex_set)
                    checked += 1
                    for f, comps in fc.components.items():
                        max_components = max(max_components, len(comps))
                        if len(comps) > cap:
                            violations.append(
                                f'{name} p={p} i={i} j={j} |Z\'|={len(z_prime)}: deep face {f} meets {len(comps)} components'
                            )
                    nodes = fc.annulus.graph.n + len(fc.annulus.faces)
                    if nodes > DIAMETER_MAX_NODES or fc.annulus.graph.n == 0:
                        skipped += 1
                        continue
                    try:
                        diameter = weighted_diameter(fc.annulus, fc)
                    except PlanarError as exc:
                        violations.append(f'{name} p={p} i={i} j={j}: {exc}')
                        continue
                    points.append((plan.p_prime + len(z_prime) + 1, diameter))
    return _result(checked, violations, max_deep_components=max_components,
                   diameter_points=points, skipped_annuli=skipped)


def deep_face_suite(corpus: Corpus, run: RunConfig) -> dict:
    docs = [(f'grid-{s}', grid(s, s)) for s in corpus.grid_sizes]
    docs += [(f'random-n{n}', random_planar(n, run.seed + n)) for n in corpus.random_sizes]
    items = [(name, doc, p, run) for name, doc in docs for p in corpus.p_values]
    merged = _merge(pool.map(_check_deep_faces, items, run.threads))
    points = merged.pop('diameter_points', [])
    slope = regression_slope([x for x, _ in points], [y for _, y in points])
    merged['diameter_slope'] = round(slope, 6)
    merged['max_weighted_diameter'] = max((y for _, y in points), default=0)
    if slope > run.diameter_slope_cap:
        merged['violations'].append(f'weighted diameter slope {slope:.3f} exceeds {run.diameter_slope_cap}')
    return merged


def _check_diameter(args) -> dict:
    name, doc = args
    violations, checked = [], 0
    for e in embed_components(doc.graph, doc.rotation):
        vfi = build_vfi(e)
        lengths = dict(nx.all_pairs_shortest_path_length(vfi.nx_graph))
        oracle = max(max(row.values()) for row in lengths.values())
        zeros = {f.id: 0 for f in e.faces}
        values = {vfi_diameter(vfi), vfi_diameter(vfi, zeros), weighted_diameter(e)}
        checked += 1
        if values != {oracle}:
            violations.append(f'{name}: diameters {sorted(values)} differ from exhaustive {oracle}')
    return _result(checked, violations)


def diameter_suite(corpus: Corpus, run: RunConfig) -> dict:
    docs = _random_docs(corpus.small_graphs, 1, 20, run.seed, 3)
    return _merge(pool.map(_check_diameter, docs, run.threads))


# -------------------------
# QUOTIENT TREEWIDTH AND DECOMPOSITIONS
# -------------------------
def _check_treewidth(args) -> dict:
    name, doc, p, run = args
    g = doc.graph
    embeddings = embed_components(g, doc.rotation)
    _, plan, sets = layer_components(g, embeddings, p)
    rows = treewidth_bound_report(g, sets, plan, range(0, run.max_zprime + 1), run.seed)
    violations = [f'{name} p={p} i={row["i"]}: invalid decomposition' for row in rows if not row['valid']]
    summary = summarize_widths(rows, p, run.treewidth_cap)
    violations += [
        f'{name} p={p} i={row["i"]} |Z\'|={row["zprime_size"]}: width {row["width"]} over cap'
        for row in summary['over_cap']
    ]
    for i in range(1, p + 1):
        quotient = contract_decomposition(g, sets, ContractionRequest(i))
        td = heuristic_decompose(quotient.graph)
        ntd = to_nice(td, g=quotient.graph)
        problems = validate_nice(ntd)
        ok, _ = validate(ntd.as_tree_decomposition(), quotient.graph)
        if problems or not ok or ntd.width != td.width:
            violations.append(f'{name} p={p} i={i}: nice form broke width or validity')
    return _result(len(rows), violations, max_width=summary['max_width'], max_ratio=summary['max_ratio'])


def treewidth_suite(corpus: Corpus, run: RunConfig) -> dict:
    docs = [(f'grid-{s}', grid(s, s)) for s in corpus.grid_sizes]
    docs += [(f'random-n{n}', random_planar(n, run.seed + n)) for n in corpus.random_sizes]
    items = [(name, doc, p, run) for name, doc in docs for p in corpus.p_values]
    return _merge(pool.map(_check_treewidth, items, run.threads))


# -------------------------
# SOLVER ORACLE
# -------------------------
def _oracle_instances(corpus: Corpus, seed: int) -> list[tuple[str, Instance]]:
    rng = np.random.default_rng([seed, 4])
    out = []
    for idx in range(corpus.oracle_instances):
        n = int(rng.integers(3, max(3, corpus.oracle_max_n) + 1))
        k = idx % (corpus.oracle_max_k + 1)
        problem = 'oct' if idx % 2 == 0 else 'eb'
        if idx % 5 == 4 and n >= 4:
            side = max(2, int(np.sqrt(n)))
            doc = grid_with_chords(side, side, 1 + idx % 2, seed + idx)
        else:
            doc = random_planar(n, seed * 7919 + idx, float(rng.uniform(0.5, 1.0)))
        out.append((f'{problem}-{idx}-n{doc.graph.n}-k{k}', Instance(doc.graph, problem, k)))
    return out


def _check_oracle(args) -> dict:
    name, inst = args
    expected = brute_force(inst)
    found, stats = baker_solve(inst, threads=1)
    violations = []
    if (expected is None) != (found is None):
        violations.append(f'{name}: feasibility differs (oracle {expected is not None}, baker {found is not None})')
    elif found is not None:
        if found.size != expected.size:
            violations.append(f'{name}: baker size {found.size}, oracle size {expected.size}')
        if not is_solution(inst, found):
            violations.append(f'{name}: baker answer is not a valid solution')
    return _result(1, violations, max_pairs=stats.pairs_tried, max_width=stats.max_width)


def oracle_suite(corpus: Corpus, run: RunConfig) -> dict:
    instances = _oracle_instances(corpus, run.seed)
    merged = _merge(pool.map(_check_oracle, instances, run.threads))
    for name, inst in instances[:3]:
        serial = baker_solve(inst, threads=1)
        threaded = baker_solve(inst, threads=4)
        if serial[0] != threaded[0] or serial[1].pairs_tried != threaded[1].pairs_tried:
            merged['violations'].append(f'{name}: threaded search disagrees with serial search')
    return merged


SUITES = {
    'layering': layering_suite,
    'support_tree': support_suite,
    'deep_faces': deep_face_suite,
    'diameter': diameter_suite,
    'treewidth': treewidth_suite,
    'oracle': oracle_suite,
}


def check_td_fixture(graph_path: str, td_path: str) -> dict:
    """Validate an external decomposition against its graph file."""
    try:
        g = read_graph_file(graph_path).graph
        ok, violations = validate(read_td_file(td_path), g)
    except PlanarError as exc:
        ok, violations = False, [str(exc)]
    return _result(1, [f'{td_path}: {v}' for v in violations], valid=ok)


def run_verification(corpus: Corpus, run: RunConfig, td_fixtures=()) -> dict:
    suites = {}
    if not corpus.is_empty:
        for name, suite in SUITES.items():
            log.info(f'running {name} suite on the {corpus.name} corpus')
            suites[name] = suite(corpus, run)
    for graph_path, td_path in td_fixtures:
        suites.setdefault('td_fixtures', _result())
        part = check_td_fixture(graph_path, td_path)
        suites['td_fixtures']['checked'] += 1
        suites['td_fixtures']['violations'].extend(part['violations'])
    ok = all(not suite['violations'] for suite in suites.values())
    return {
        'corpus': corpus.name,
        'caps': {
            'deep_face_slope': run.deep_face_slope,
            'deep_face_offset': run.deep_face_offset,
            'treewidth_cap': run.treewidth_cap,
            'diameter_slope_cap': run.diameter_slope_cap,
        },
        'suites': suites,
        'ok': ok,
    }
