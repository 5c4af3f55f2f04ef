"""
Vertex-face BFS layers, bad layers from marked faces, residues and the
layer sets Z_1..Z_p.
"""
from __future__ import annotations

import logging

import networkx as nx

from models import Embedding, Graph, Layering, LayerSets, ResiduePlan
from utils.embedding import build_vfi, restrict_embedding
from utils.errors import GraphInputError, InternalError

log = logging.getLogger(__name__)


def compute_layering(e: Embedding) -> Layering:
    """ℓ(v) = (vertex-face distance from the outer face + 1) / 2."""
    vfi = build_vfi(e)
    dist = nx.single_source_shortest_path_length(vfi.nx_graph, vfi.face_node(e.outer_face))
    ell: dict[int, int] = {}
    for v in e.graph.vertex_ids:
        d = dist.get(vfi.vertex_node(v))
        if d is None or d % 2 == 0:
            raise InternalError(f'vertex {v} has no odd distance from the outer face')
        ell[v] = (d + 1) // 2
    m = max(ell.values(), default=0)
    layers = [set() for _ in range(m)]
    for v, i in ell.items():
        layers[i - 1].add(v)
    return Layering(ell, tuple(frozenset(layer) for layer in layers))


def merge_layerings(parts) -> Layering:
    """Componentwise layerings merged by layer index."""
    ell: dict[int, int] = {}
    bad: set[int] = set()
    for part in parts:
        ell.update(part.ell)
        bad |= part.bad_layers
    m = max(ell.values(), default=0)
    layers = [set() for _ in range(m)]
    for v, i in ell.items():
        layers[i - 1].add(v)
    return Layering(dict(sorted(ell.items())), tuple(frozenset(layer) for layer in layers), frozenset(bad))


def classify_bad_layers(l: Layering, e: Embedding) -> frozenset[int]:
    """Indices of the layers met by some marked face."""
    bad = set()
    for face in e.marked_faces:
        hit = {l.ell[v] for v in face.boundary_vertices}
        if hit and max(hit) - min(hit) > 1:
            raise InternalError(f'marked face {face.id} hits layers {sorted(hit)}')
        bad |= hit
    return frozenset(bad)


def choose_residues(bad, p: int, marked_count: int = 0) -> ResiduePlan:
    """The p smallest residues in [p'] that no bad layer index is congruent to."""
    if p < 1:
        raise GraphInputError('p must be at least 1')
    p_prime = p + 2 * marked_count
    excluded = {((i - 1) % p_prime) + 1 for i in bad}
    good = [r for r in range(1, p_prime + 1) if r not in excluded][:p]
    if len(good) < p:
        raise InternalError(
            f'only {len(good)} good residues modulo {p_prime} for p={p}, bad layers {sorted(bad)}'
        )
    return ResiduePlan(p, p_prime, tuple(good), marked_count)


def residue_layers(l: Layering, plan: ResiduePlan, i: int) -> list[int]:
    """Layer indices j in [1, m] with j ≡ q_i (mod p')."""
    q = plan.good_residues[i - 1]
    return list(range(q, l.m + 1, plan.p_prime))


def build_layer_sets(l: Layering, plan: ResiduePlan) -> LayerSets:
    z = []
    for i in range(1, plan.p + 1):
        z.append(frozenset().union(*(l.layer(j) for j in residue_layers(l, plan, i))))
    return LayerSets(tuple(z))


def layer_components(g: Graph, embeddings, p: int) -> tuple[Layering, ResiduePlan, LayerSets]:
    """Layering of every component embedding, merged, with one shared residue plan."""
    parts = []
    marked_count = 0
    for e in embeddings:
        part = compute_layering(e)
        bad = classify_bad_layers(part, e)
        parts.append(Layering(part.ell, part.layers, bad))
        marked_count += len(e.marked_faces)
    layering = merge_layerings(parts)
    covered = frozenset(layering.ell)
    planar = g.vertex_set - g.apex_set
    if covered != planar:
        raise GraphInputError(
            f'embeddings cover {len(covered)} vertices, planar part has {len(planar)}'
        )
    plan = choose_residues(layering.bad_layers, p, marked_count)
    sets = build_layer_sets(layering, plan)
    log.info(
        f"layered {len(covered)} vertices into {layering.m} layers, "
        f"p={plan.p} p'={plan.p_prime} residues={list(plan.good_residues)}"
    )
    return layering, plan, sets


def outer_face_boundary(e: Embedding, l: Layering, i: int) -> frozenset[int]:
    """Vertices on the outer face of the embedded subgraph induced by L_{>=i}."""
    s = l.span(i, l.m) & e.graph.vertex_set
    if not s:
        return frozenset()
    return restrict_embedding(e, s).outer.boundary_vertices
