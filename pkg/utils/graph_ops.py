"""
Graph primitives: induced subgraphs, quotients, components, bipartitions
"""
from __future__ import annotations

import logging
from collections import deque
from typing import Optional

import networkx as nx

from models import Graph, QuotientGraph, edge_key
from utils.errors import GraphInputError

log = logging.getLogger(__name__)


def _check_known(g: Graph, vertices, what: str) -> frozenset[int]:
    s = frozenset(vertices)
    unknown = s - g.vertex_set
    if unknown:
        raise GraphInputError(f'{what}: unknown vertex ids {sorted(unknown)}')
    return s


def induced_subgraph(g: Graph, s) -> Graph:
    """G[s] with vertex ids preserved; apices outside s are dropped."""
    s = _check_known(g, s, 'induced_subgraph')
    keep = tuple(v for v in g.vertex_ids if v in s)
    adjacency = {v: tuple(u for u in g.adjacency[v] if u in s) for v in keep}
    return Graph(keep, adjacency, g.apex_set & s)


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Maximal connected vertex sets, ordered by their minimum id."""
    comps = [frozenset(c) for c in nx.connected_components(g.nx_graph)]
    return sorted(comps, key=min)


def components_within(g: Graph, s) -> list[frozenset[int]]:
    """Components of G[s]."""
    return connected_components(induced_subgraph(g, s))


def contract(g: Graph, x) -> QuotientGraph:
    """G/x: every component of G[x] becomes one vertex named by its minimum id."""
    x = _check_known(g, x, 'contract')
    preimage: dict[int, frozenset[int]] = {}
    image: dict[int, int] = {}
    for comp in components_within(g, x):
        rep = min(comp)
        preimage[rep] = comp
        for v in comp:
            image[v] = rep
    for v in g.vertex_ids:
        if v not in image:
            image[v] = v
            preimage[v] = frozenset((v,))
    quotient_edges = {
        edge_key(image[u], image[v]) for u, v in g.edges if image[u] != image[v]
    }
    apices = frozenset(image[a] for a in g.apex_set if a not in x)
    quotient = Graph.from_edges(preimage.keys(), quotient_edges, apices)
    log.debug(f'contracted {len(x)} vertices into {quotient.n} quotient vertices')
    return QuotientGraph(quotient, dict(sorted(preimage.items())), x)


def _odd_cycle(g: Graph, parent: dict[int, Optional[int]], u: int, v: int) -> list[int]:
    """Close the BFS-tree paths to u and v through edge (u, v)."""
    path_u = [u]
    while parent[path_u[-1]] is not None:
        path_u.append(parent[path_u[-1]])
    path_v = [v]
    while parent[path_v[-1]] is not None:
        path_v.append(parent[path_v[-1]])
    on_u = {w: idx for idx, w in enumerate(path_u)}
    for idx, w in enumerate(path_v):
        if w in on_u:
            return path_u[:on_u[w] + 1] + list(reversed(path_v[:idx]))
    raise AssertionError('BFS paths share the root')


def bipartition(g: Graph) -> tuple[Optional[dict[int, int]], list[int]]:
    """Return (coloring, []) when bipartite, else (None, odd_cycle).

    Within every component the minimum-id vertex gets color 0, so the
    coloring is the unique one up to swap, canonicalised.
    """
    color: dict[int, int] = {}
    for comp in connected_components(g):
        root = min(comp)
        color[root] = 0
        parent: dict[int, Optional[int]] = {root: None}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if v not in color:
                    color[v] = 1 - color[u]
                    parent[v] = u
                    queue.append(v)
                elif color[v] == color[u]:
                    return None, _odd_cycle(g, parent, u, v)
    return color, []


def is_bipartite(g: Graph) -> bool:
    return nx.is_bipartite(g.nx_graph)


def is_bipartite_after(g: Graph, deleted_vertices=(), deleted_edges=()) -> bool:
    """Bipartiteness of g minus a vertex set and an edge set (oracle helper)."""
    h = g.to_networkx()
    h.remove_edges_from(deleted_edges)
    h.remove_nodes_from(deleted_vertices)
    return nx.is_bipartite(h)
