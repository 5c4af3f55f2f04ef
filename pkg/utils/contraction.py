"""
Contraction of Z_i \\ Z' and the diagnostics that bound the width of the
quotient: support tree, deep and shallow faces, the kappa map and the
weighted vertex-face diameter.
"""
from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from models import (
    ContractionRequest,
    Embedding,
    FaceClassification,
    Graph,
    Layering,
    LayerSets,
    QuotientGraph,
    ResiduePlan,
    SupportNode,
    SupportTree,
    edge_key,
)
from utils.embedding import build_vfi, restrict_embedding, vfi_diameter
from utils.errors import GraphInputError
from utils.graph_ops import components_within, contract
from utils.treedec import add_apices, heuristic_decompose, validate

log = logging.getLogger(__name__)


def contract_decomposition(g: Graph, sets: LayerSets, req: ContractionRequest) -> QuotientGraph:
    if not 1 <= req.i <= sets.p:
        raise GraphInputError(f'set index {req.i} outside 1..{sets.p}')
    z_i = sets.get(req.i)
    if not req.z_prime <= z_i:
        raise GraphInputError(f"Z' holds vertices outside Z_{req.i}: {sorted(req.z_prime - z_i)}")
    return contract(g, z_i - req.z_prime)


# -------------------------
# SUPPORT TREE
# -------------------------
def level_thresholds(l: Layering, plan: ResiduePlan, i: int) -> list[int]:
    """i_1 .. i_{m'+1}; i_j = (j - 2) p' + q_i."""
    q = plan.good_residues[i - 1]
    m_prime = (l.m - q) // plan.p_prime + 2 if l.m >= q else 1
    return [(j - 2) * plan.p_prime + q for j in range(1, m_prime + 2)]


def build_support_tree(g: Graph, l: Layering, plan: ResiduePlan, i: int) -> SupportTree:
    """Containment tree of the components of G[L_{>i_j}] for successive levels j."""
    thresholds = level_thresholds(l, plan, i)
    nodes = [SupportNode(0, 0, None, frozenset(), frozenset())]
    previous: list[SupportNode] = [nodes[0]]
    for level, (low, high) in enumerate(zip(thresholds, thresholds[1:]), start=1):
        above = l.above(low) if low >= 1 else frozenset(l.ell)
        current = []
        for comp in components_within(g, above):
            if level == 1:
                parent = 0
            else:
                parent = next(node.id for node in previous if comp <= node.component)
            vertices = frozenset(v for v in comp if low < l.ell[v] <= high)
            node = SupportNode(len(nodes), level, parent, comp, vertices)
            nodes.append(node)
            current.append(node)
        if not current:
            break
        previous = current
    return SupportTree(plan.good_residues[i - 1], tuple(nodes))


def support_tree_violations(g: Graph, tree: SupportTree, z_minus: frozenset[int]) -> list[str]:
    """Partition, component containment and parent-child edge checks."""
    violations = []
    seen: dict[int, int] = {}
    for node in tree.nodes:
        for v in node.vertices:
            if v in seen:
                violations.append(f'vertex {v} lies in V_{seen[v]} and V_{node.id}')
            seen[v] = node.id
    planar = g.vertex_set - g.apex_set
    if set(seen) != planar:
        violations.append(f'support sets miss vertices {sorted(planar - set(seen))}')
        return violations
    owner = tree.owner
    for comp in components_within(g, z_minus):
        holders = {owner[v] for v in comp}
        if len(holders) > 1:
            violations.append(f'component with min id {min(comp)} spreads over {sorted(holders)}')
    parent = {node.id: node.parent for node in tree.nodes}
    for u, v in g.edges:
        if u not in owner or v not in owner:
            continue
        a, b = owner[u], owner[v]
        if a != b and parent[a] != b and parent[b] != a:
            violations.append(f'edge ({u}, {v}) joins unrelated nodes {a} and {b}')
    return violations


# -------------------------
# DEEP FACES AND KAPPA
# -------------------------
def annulus_bounds(l: Layering, plan: ResiduePlan, i: int, j: int) -> tuple[int, int]:
    """(i^-, i^+) = (i_j + 1, i_{j+1}) clipped to [1, m]."""
    thresholds = level_thresholds(l, plan, i)
    if not 1 <= j < len(thresholds):
        raise GraphInputError(f'level {j} outside 1..{len(thresholds) - 1}')
    return max(1, thresholds[j - 1] + 1), min(l.m, thresholds[j])


def classify_faces(
    e: Embedding, l: Layering, plan: ResiduePlan, i: int, j: int, z_prime=frozenset(),
) -> FaceClassification:
    """Deep/shallow classification and kappa for one annulus of one component embedding."""
    z_prime = frozenset(z_prime)
    i_minus, i_plus = annulus_bounds(l, plan, i, j)
    own = e.graph.vertex_set
    annulus_vertices = l.span(i_minus, i_plus) & own
    annulus = restrict_embedding(e, annulus_vertices)

    q = plan.good_residues[i - 1]
    z_i = frozenset(v for v in own if l.ell[v] % plan.p_prime == q % plan.p_prime)
    if not z_prime <= z_i:
        raise GraphInputError(f"Z' holds vertices outside Z_{i}")
    z_components = components_within(e.graph, z_i - z_prime)

    top = l.layer(i_plus) & own if i_plus >= i_minus else frozenset()
    deep = set()
    if top:
        # a face is deep when it sits inside a bounded face of the top layer
        top_embedding = restrict_embedding(e, top)
        top_class = {f: face.id for face in top_embedding.faces for f in face.parent_faces}
        for face in annulus.faces:
            first = min(face.parent_faces)
            if top_class[first] != top_embedding.outer_face:
                deep.add(face.id)

    components: dict[int, tuple[frozenset[int], ...]] = {}
    representatives: dict[int, frozenset[int]] = {}
    kappa: dict[int, frozenset[int]] = {}
    for face in annulus.faces:
        if face.id not in deep:
            kappa[face.id] = frozenset()
            continue
        # one representative per component of G[Z_i \ Z'] on the boundary
        met = tuple(c for c in z_components if c & face.boundary_vertices)
        reps = frozenset(min(c & face.boundary_vertices) for c in met)
        components[face.id] = met
        representatives[face.id] = reps
        kappa[face.id] = reps | (z_prime & face.boundary_vertices)
    return FaceClassification(
        j, i_minus, i_plus, annulus, frozenset(deep), components, representatives, kappa,
    )


def kappa_graph(fc: FaceClassification) -> Graph:
    """The annulus graph with every kappa(f) turned into a clique."""
    g = fc.annulus.graph
    edges = set(g.edges)
    for vs in fc.kappa.values():
        ordered = sorted(vs)
        for a_idx, a in enumerate(ordered):
            for b in ordered[a_idx + 1:]:
                edges.add(edge_key(a, b))
    return Graph.from_edges(g.vertex_ids, edges)


def weighted_diameter(e: Embedding, fc: Optional[FaceClassification] = None) -> int:
    """Maximum w_kappa-weighted vertex-face distance; unweighted without fc."""
    weights = fc.w_kappa if fc is not None else None
    return vfi_diameter(build_vfi(e), weights)


# -------------------------
# TREEWIDTH REPORT
# -------------------------
def sample_zprimes(z_i: frozenset[int], sizes, seed: int, i: int) -> list[frozenset[int]]:
    """One seeded Z' per requested size (sizes larger than Z_i are skipped)."""
    pool = np.array(sorted(z_i), dtype=np.int64)
    out = []
    for size in sizes:
        if size > len(pool):
            continue
        rng = np.random.default_rng([seed, i, size])
        picked = rng.choice(pool, size=size, replace=False) if size else []
        out.append(frozenset(int(v) for v in picked))
    return out


def treewidth_bound_report(
    g: Graph, sets: LayerSets, plan: ResiduePlan, sizes=range(0, 7), seed: int = 7,
    include_full: bool = False,
) -> list[dict]:
    """Heuristic width of G/(Z_i \\ Z') for every i and sampled Z'."""
    planar = g.without(g.apex_set)
    rows = []
    for i in range(1, sets.p + 1):
        z_i = sets.get(i)
        zprimes = sample_zprimes(z_i, sizes, seed, i)
        if include_full and z_i not in zprimes:
            zprimes.append(z_i)
        for z_prime in zprimes:
            req = ContractionRequest(i, z_prime)
            quotient = contract_decomposition(planar, sets, req)
            td = heuristic_decompose(quotient.graph)
            ok, violations = validate(td, quotient.graph)
            # an empty quotient has width -1; report it as 0
            width = max(td.width, 0)
            row = {
                'i': i,
                'zprime': sorted(z_prime),
                'quotient_n': quotient.graph.n,
                'quotient_m': quotient.graph.m,
                'width': width,
                'ratio': round(width / (plan.p + len(z_prime) + 1), 6),
                'valid': ok,
            }
            if g.apex_set:
                whole = contract_decomposition(g, sets, req)
                augmented = add_apices(td, g.apex_set)
                apex_ok, apex_violations = validate(augmented, whole.graph)
                row['apex_width'] = augmented.width
                row['valid'] = ok and apex_ok
                violations = violations + apex_violations
            if violations:
                log.warning(f"decomposition for i={i} |Z'|={len(z_prime)} invalid: {violations[:3]}")
            rows.append(row)
    return rows
