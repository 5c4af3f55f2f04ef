"""
Combinatorial planar embeddings: rotation systems, face tracing,
induced sub-embeddings and the vertex-face incidence (VFI) graph.
"""
from __future__ import annotations

import logging
from typing import Mapping, Optional

import networkx as nx
from networkx.utils import UnionFind

from models import Edge, Embedding, Face, Graph, VfiGraph
from utils.errors import GraphInputError, NonPlanarError, StructuralError
from utils.graph_ops import connected_components, induced_subgraph

log = logging.getLogger(__name__)


def _check_rotation(g: Graph, rotation: Mapping[int, tuple[int, ...]]):
    for v in g.vertex_ids:
        order = tuple(rotation.get(v, ()))
        if sorted(order) != list(g.adjacency[v]):
            raise StructuralError(
                f'rotation at vertex {v} lists {sorted(order)}, neighbors are {list(g.adjacency[v])}'
            )
    extra = set(rotation) - g.vertex_set
    if extra:
        raise StructuralError(f'rotation mentions unknown vertices {sorted(extra)}')


def _trace_walks(g: Graph, rotation: Mapping[int, tuple[int, ...]]) -> list[tuple[Edge, ...]]:
    """Closed walks of the rotation system, lowest untraced directed edge first.

    From (u, v) the walk continues with (v, w), w following u in v's order.
    """
    position = {v: {u: idx for idx, u in enumerate(rotation[v])} for v in g.vertex_ids}
    darts = sorted((u, v) for u in g.vertex_ids for v in g.adjacency[u])
    limit = len(darts)
    visited: set[Edge] = set()
    walks = []
    for start in darts:
        if start in visited:
            continue
        walk = []
        dart = start
        while dart not in visited:
            visited.add(dart)
            walk.append(dart)
            u, v = dart
            order = rotation[v]
            dart = (v, order[(position[v][u] + 1) % len(order)])
            if len(walk) > limit:
                raise StructuralError('face walk does not close')
        if dart != start:
            raise StructuralError(f'face walk from {start} re-enters at {dart}')
        walks.append(tuple(walk))
    return walks


def faces_from_rotation(g: Graph, rotation: Mapping[int, tuple[int, ...]], marked=()) -> list[Face]:
    """Faces of a connected embedded graph; face ids follow tracing order."""
    _check_rotation(g, rotation)
    marked = set(marked)
    if g.m == 0:
        faces = [Face(0, g.vertex_set, ())] if g.n else []
    else:
        faces = [
            Face(idx, frozenset(u for u, _ in walk), walk)
            for idx, walk in enumerate(_trace_walks(g, rotation))
        ]
    unknown = marked - {f.id for f in faces}
    if unknown:
        raise GraphInputError(f'marked faces {sorted(unknown)} do not exist')
    return [Face(f.id, f.boundary_vertices, f.boundary_walk, f.id in marked) for f in faces]


def check_euler(g: Graph, faces) -> bool:
    """|V| - |E| + |F| = 1 + #components (= 2 for connected graphs)."""
    if g.n == 0:
        return not faces
    return g.n - g.m + len(faces) == 1 + len(connected_components(g))


def default_outer_face(faces) -> int:
    """Longest boundary walk wins, ties go to the smallest id."""
    best = min(faces, key=lambda f: (-f.length, f.id))
    return best.id


def build_embedding(g: Graph, rotation, marked=(), outer_face: Optional[int] = None) -> Embedding:
    """Embedding from a user supplied rotation system (connected graphs)."""
    if g.n == 0:
        raise GraphInputError('cannot embed the empty graph')
    if len(connected_components(g)) != 1:
        raise GraphInputError('embeddings require a connected graph')
    rotation = {v: tuple(rotation[v]) if v in rotation else () for v in g.vertex_ids}
    faces = faces_from_rotation(g, rotation, marked)
    if not check_euler(g, faces):
        raise StructuralError(
            f'rotation system is not planar: {g.n} - {g.m} + {len(faces)} != 2'
        )
    if outer_face is None:
        outer_face = default_outer_face(faces)
    elif not 0 <= outer_face < len(faces):
        raise GraphInputError(f'outer face {outer_face} does not exist')
    return Embedding(g, rotation, tuple(faces), outer_face)


def embed_planar(g: Graph, marked=(), outer_face: Optional[int] = None) -> Embedding:
    """Planar embedding computed with networkx's planarity test."""
    is_planar, certificate = nx.check_planarity(g.nx_graph, counterexample=True)
    if not is_planar:
        witness = sorted(tuple(sorted(e)) for e in certificate.edges)
        raise NonPlanarError(f'graph is not planar ({len(witness)}-edge Kuratowski witness)', witness)
    rotation = {v: tuple(order) for v, order in certificate.get_data().items()}
    for v in g.vertex_ids:
        rotation.setdefault(v, ())
    log.debug(f'embedded graph with {g.n} vertices and {g.m} edges')
    return build_embedding(g, rotation, marked, outer_face)


def embed_components(g: Graph, rotation=None, marked=()) -> list[Embedding]:
    """One embedding per connected component, ordered by minimum vertex id.

    Marked face ids refer to the first component when a rotation is given
    for a connected graph; for disconnected inputs marks are ignored.
    """
    comps = connected_components(g)
    out = []
    for comp in comps:
        part = induced_subgraph(g, comp)
        marks = marked if len(comps) == 1 else ()
        if len(comps) > 1 and marked:
            log.warning('marked faces are ignored on disconnected graphs')
        if rotation:
            out.append(build_embedding(part, {v: rotation.get(v, ()) for v in comp}, marks))
        else:
            out.append(embed_planar(part, marks))
    return out


def restrict_embedding(e: Embedding, s) -> Embedding:
    """The embedding induced on the vertex set s.

    Faces of the restriction are classes of faces of e merged across every
    removed edge; the outer face is the class holding e's outer face.
    """
    s = frozenset(s)
    unknown = s - e.graph.vertex_set
    if unknown:
        raise GraphInputError(f'restrict_embedding: unknown vertex ids {sorted(unknown)}')
    sub = induced_subgraph(e.graph, s)
    dart_face = e.dart_face
    classes = UnionFind(f.id for f in e.faces)
    for u, v in e.graph.edges:
        if u not in s or v not in s:
            classes.union(dart_face[(u, v)], dart_face[(v, u)])

    rotation = {v: tuple(u for u in e.rotation[v] if u in s) for v in sub.vertex_ids}
    class_of = {f.id: classes[f.id] for f in e.faces}
    groups: dict[int, list[int]] = {}
    for fid in sorted(class_of):
        groups.setdefault(class_of[fid], []).append(fid)
    # number restricted faces by their smallest parent face
    ordered = sorted(groups.values(), key=min)
    new_id = {class_of[members[0]]: idx for idx, members in enumerate(ordered)}

    walks_by_face: dict[int, list[Edge]] = {idx: [] for idx in range(len(ordered))}
    if sub.m:
        for walk in _trace_walks(sub, rotation):
            walks_by_face[new_id[class_of[dart_face[walk[0]]]]].extend(walk)

    faces = []
    for idx, members in enumerate(ordered):
        boundary = frozenset().union(*(e.face(f).boundary_vertices for f in members)) & s
        marked = any(e.face(f).marked for f in members)
        faces.append(Face(idx, boundary, tuple(walks_by_face[idx]), marked, frozenset(members)))

    # classes that touch no remaining vertex vanish unless the whole graph is gone
    keep = [f for f in faces if f.boundary_vertices or not s]
    outer_class = new_id[class_of[e.outer_face]]
    if len(keep) != len(faces):
        renumber = {f.id: idx for idx, f in enumerate(keep)}
        keep = [Face(renumber[f.id], f.boundary_vertices, f.boundary_walk, f.marked, f.parent_faces) for f in keep]
        outer_class = renumber.get(outer_class, 0)
    return Embedding(sub, rotation, tuple(keep), outer_class)


def build_vfi(e: Embedding) -> VfiGraph:
    incidences = tuple(sorted((v, f.id) for f in e.faces for v in f.boundary_vertices))
    return VfiGraph(e.graph.vertex_set, frozenset(f.id for f in e.faces), incidences)


def _node_key(node) -> tuple[str, int]:
    if isinstance(node, tuple) and len(node) == 2 and node[0] in ('v', 'f'):
        return node
    raise GraphInputError(f'VFI nodes are ("v", id) or ("f", id), got {node!r}')


def _check_weights(vfi: VfiGraph, weights) -> dict[int, int]:
    if weights is None:
        return {}
    missing = vfi.faces - set(weights)
    if missing:
        raise GraphInputError(f'face weights missing for faces {sorted(missing)}')
    if any(w < 0 for w in weights.values()):
        raise GraphInputError('face weights must be non-negative')
    return dict(weights)


def _weighted_lengths(vfi: VfiGraph, source, weights: dict[int, int]) -> dict:
    """Costs from source: edge count plus weights of every face on the path."""
    if not weights or not any(weights.values()):
        lengths = nx.single_source_shortest_path_length(vfi.nx_graph, source)
        return dict(lengths)

    def step(_, target, __):
        return 1 + (weights.get(target[1], 0) if target[0] == 'f' else 0)

    lengths = nx.single_source_dijkstra_path_length(vfi.nx_graph, source, weight=step)
    start = weights.get(source[1], 0) if source[0] == 'f' else 0
    return {node: cost + start for node, cost in lengths.items()}


def vfi_distance(vfi: VfiGraph, a, b, weights=None) -> int:
    """w-weighted vertex-face distance; a face's distance to itself is w(f)."""
    a, b = _node_key(a), _node_key(b)
    for node in (a, b):
        if node not in vfi.nx_graph:
            raise GraphInputError(f'unknown VFI node {node}')
    weights = _check_weights(vfi, weights)
    lengths = _weighted_lengths(vfi, a, weights)
    if b not in lengths:
        raise GraphInputError(f'{a} and {b} are not connected in the VFI graph')
    return lengths[b]


def vfi_diameter(vfi: VfiGraph, weights=None) -> int:
    """Exact maximum weighted vertex-face distance over all node pairs."""
    weights = _check_weights(vfi, weights)
    best = 0
    for node in vfi.nodes:
        lengths = _weighted_lengths(vfi, node, weights)
        if len(lengths) != len(vfi.nodes):
            raise StructuralError('VFI graph is disconnected')
        best = max(best, max(lengths.values()))
    return best

def document_embeddings(doc) -> list[Embedding]:
    """Component embeddings of a graph file's planar part (apices removed)."""
    g = doc.graph
    planar = g.without(g.apex_set)
    if planar.n == 0:
        return []
    rotation = None
    if doc.rotation:
        rotation = {
            v: tuple(u for u in doc.rotation.get(v, ()) if u not in g.apex_set)
            for v in planar.vertex_ids
        }
    return embed_components(planar, rotation, doc.marked_faces)
