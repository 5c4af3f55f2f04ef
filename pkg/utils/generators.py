"""
Seeded planar graph generators. Every generator returns a GraphDocument
whose rotation system is read off straight-line vertex positions.
"""
from __future__ import annotations

import math

import networkx as nx
import numpy as np
from scipy.spatial import Delaunay

from models import Graph, GraphDocument, edge_key
from utils.constants import GENERATOR_KINDS
from utils.errors import GraphInputError


def rotation_from_points(g: Graph, coords: dict[int, tuple[float, float]]) -> dict[int, tuple[int, ...]]:
    """Neighbours of each vertex sorted counter-clockwise by angle."""
    rotation = {}
    for v in g.vertex_ids:
        x0, y0 = coords[v]
        rotation[v] = tuple(sorted(
            g.adjacency[v],
            key=lambda u: math.atan2(coords[u][1] - y0, coords[u][0] - x0),
        ))
    return rotation


def _grid_coords(rows: int, cols: int) -> dict[int, tuple[float, float]]:
    return {r * cols + c + 1: (float(c), float(-r)) for r in range(rows) for c in range(cols)}


def _grid_edges(rows: int, cols: int) -> set[tuple[int, int]]:
    edges = set()
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c + 1
            if c + 1 < cols:
                edges.add((v, v + 1))
            if r + 1 < rows:
                edges.add((v, v + cols))
    return edges


def grid(rows: int, cols: int) -> GraphDocument:
    """rows x cols grid, vertex r*cols + c + 1 at row r, column c."""
    if rows < 1 or cols < 1:
        raise GraphInputError('grid dimensions must be positive')
    g = Graph.from_edges(range(1, rows * cols + 1), _grid_edges(rows, cols))
    return GraphDocument(g, rotation_from_points(g, _grid_coords(rows, cols)))


def cycle(n: int) -> GraphDocument:
    if n < 3:
        raise GraphInputError('cycles need at least 3 vertices')
    g = Graph.from_edges(range(1, n + 1), [(v, v % n + 1) for v in range(1, n + 1)])
    coords = {v: (math.cos(2 * math.pi * v / n), math.sin(2 * math.pi * v / n)) for v in g.vertex_ids}
    return GraphDocument(g, rotation_from_points(g, coords))


def grid_with_chords(rows: int, cols: int, chords: int, seed: int) -> GraphDocument:
    """Grid plus `chords` diagonals in distinct unit squares (each closes a triangle)."""
    if rows < 2 or cols < 2:
        raise GraphInputError('grid-with-chords needs at least 2 rows and 2 columns')
    squares = (rows - 1) * (cols - 1)
    if not 0 <= chords <= squares:
        raise GraphInputError(f'chords must lie in 0..{squares}')
    rng = np.random.default_rng(seed)
    edges = _grid_edges(rows, cols)
    for square in sorted(rng.choice(squares, size=chords, replace=False).tolist()):
        r, c = divmod(square, cols - 1)
        v = r * cols + c + 1
        if rng.random() < 0.5:
            edges.add((v, v + cols + 1))
        else:
            edges.add((v + 1, v + cols))
    g = Graph.from_edges(range(1, rows * cols + 1), edges)
    return GraphDocument(g, rotation_from_points(g, _grid_coords(rows, cols)))


def random_planar(n: int, seed: int, density: float = 0.6) -> GraphDocument:
    """Connected subgraph of the Delaunay triangulation of n seeded random points.

    A random spanning tree is always kept; each remaining triangulation
    edge survives with probability `density`.
    """
    if n < 1:
        raise GraphInputError('random-planar needs at least one vertex')
    if not 0.0 <= density <= 1.0:
        raise GraphInputError('density must lie in [0, 1]')
    rng = np.random.default_rng(seed)
    points = rng.random((n, 2))
    coords = {idx + 1: (float(x), float(y)) for idx, (x, y) in enumerate(points)}
    if n == 1:
        g = Graph.from_edges([1], [])
        return GraphDocument(g, {1: ()})
    if n == 2:
        g = Graph.from_edges([1, 2], [(1, 2)])
        return GraphDocument(g, {1: (2,), 2: (1,)})

    triangulation = Delaunay(points)
    all_edges = sorted({
        edge_key(int(a) + 1, int(b) + 1)
        for simplex in triangulation.simplices
        for a, b in ((simplex[0], simplex[1]), (simplex[1], simplex[2]), (simplex[0], simplex[2]))
    })
    weighted = nx.Graph()
    weighted.add_nodes_from(range(1, n + 1))
    for (u, v), w in zip(all_edges, rng.random(len(all_edges))):
        weighted.add_edge(u, v, weight=float(w))
    tree = {edge_key(u, v) for u, v in nx.minimum_spanning_edges(weighted, data=False)}
    keep = rng.random(len(all_edges)) < density
    edges = [e for e, kept in zip(all_edges, keep) if e in tree or kept]
    g = Graph.from_edges(range(1, n + 1), edges)
    return GraphDocument(g, rotation_from_points(g, coords))


def generate(kind: str, size: int, cols: int = 0, chords: int = 0, seed: int = 7,
             density: float = 0.6) -> GraphDocument:
    if kind not in GENERATOR_KINDS:
        raise GraphInputError(f'unknown generator {kind!r}; expected one of {", ".join(GENERATOR_KINDS)}')
    if kind == 'grid':
        return grid(size, cols or size)
    if kind == 'cycle':
        return cycle(size)
    if kind == 'grid-with-chords':
        return grid_with_chords(size, cols or size, chords, seed)
    return random_planar(size, seed, density)
