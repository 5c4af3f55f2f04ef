"""
Graph and tree-decomposition file formats

Graph files:
    n m
    u v            (m lines, ids 1..n)
    apex: a b ...  (optional)
    rot u: v1 v2   (optional, one line per vertex with neighbors)
    marked_faces: f1 f2 ...  (optional)
Lines starting with '#' or 'c ' are comments.

Decomposition files follow the PACE .td layout:
    s td <num_bags> <width+1> <n>
    b <id> v1 v2 ...
    <id1> <id2>
"""
from __future__ import annotations

import os

from models import Graph, GraphDocument, TreeDecomposition, edge_key
from utils.errors import GraphInputError


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#') or line.startswith('c '):
            continue
        yield lineno, line


def _ints(tokens, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in tokens]
    except ValueError:
        raise GraphInputError(f'line {lineno}: expected integers, got {" ".join(tokens)!r}')


def parse_graph_text(text: str) -> GraphDocument:
    lines = list(_content_lines(text))
    if not lines:
        raise GraphInputError('empty graph file')
    lineno, header = lines[0]
    head = _ints(header.split(), lineno)
    if len(head) != 2 or head[0] < 0 or head[1] < 0:
        raise GraphInputError(f'line {lineno}: header must be "n m"')
    n, m = head
    vertices = range(1, n + 1)

    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    apex: list[int] = []
    rotation: dict[int, tuple[int, ...]] = {}
    marked: list[int] = []

    for lineno, line in lines[1:]:
        if line.startswith('apex:'):
            apex.extend(_ints(line[len('apex:'):].split(), lineno))
        elif line.startswith('marked_faces:'):
            marked.extend(_ints(line[len('marked_faces:'):].split(), lineno))
        elif line.startswith('rot '):
            head_part, _, order = line[len('rot '):].partition(':')
            (u,) = _ints([head_part], lineno)
            if u in rotation:
                raise GraphInputError(f'line {lineno}: duplicate rotation for vertex {u}')
            rotation[u] = tuple(_ints(order.split(), lineno))
        else:
            pair = _ints(line.split(), lineno)
            if len(pair) != 2:
                raise GraphInputError(f'line {lineno}: edge lines need exactly two ids')
            u, v = pair
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphInputError(f'line {lineno}: vertex id out of range 1..{n}')
            if u == v:
                raise GraphInputError(f'line {lineno}: self-loop at {u}')
            key = edge_key(u, v)
            if key in seen:
                raise GraphInputError(f'line {lineno}: parallel edge {key}')
            seen.add(key)
            edges.append(key)

    if len(edges) != m:
        raise GraphInputError(f'header announces {m} edges, file has {len(edges)}')
    bad_apex = [a for a in apex if not 1 <= a <= n]
    if bad_apex:
        raise GraphInputError(f'apex ids out of range: {bad_apex}')
    graph = Graph.from_edges(vertices, edges, apex)
    return GraphDocument(graph, rotation or None, tuple(sorted(set(marked))))


def read_graph_file(path) -> GraphDocument:
    if not os.path.exists(path):
        raise GraphInputError(f'graph file {path} not found')
    with open(path, encoding='utf-8') as handle:
        return parse_graph_text(handle.read())


def format_graph_text(doc: GraphDocument) -> str:
    """Serialise a graph whose ids are exactly 1..n."""
    g = doc.graph
    if g.vertex_ids != tuple(range(1, g.n + 1)):
        raise GraphInputError('graph files require vertex ids 1..n')
    out = [f'{g.n} {g.m}']
    out.extend(f'{u} {v}' for u, v in g.edges)
    if g.apex_set:
        out.append('apex: ' + ' '.join(str(a) for a in sorted(g.apex_set)))
    if doc.rotation:
        for v in sorted(doc.rotation):
            out.append(f'rot {v}: ' + ' '.join(str(u) for u in doc.rotation[v]))
    if doc.marked_faces:
        out.append('marked_faces: ' + ' '.join(str(f) for f in doc.marked_faces))
    return '\n'.join(out) + '\n'


def format_td_text(td: TreeDecomposition, n: int) -> str:
    """PACE layout; bag ids are renumbered 1..B in sorted order of the internal ids."""
    order = sorted(td.bags)
    number = {t: idx for idx, t in enumerate(order, start=1)}
    out = [f's td {len(order)} {td.width + 1} {n}']
    for t in order:
        out.append(f'b {number[t]} ' + ' '.join(str(v) for v in sorted(td.bags[t])))
    for par, child in td.tree_edges:
        out.append(f'{number[par]} {number[child]}')
    return '\n'.join(out) + '\n'


def parse_td_text(text: str) -> TreeDecomposition:
    """Read a .td file. The tree is rooted at bag 1; a forest is rejected."""
    lines = list(_content_lines(text))
    if not lines or not lines[0][1].startswith('s td'):
        raise GraphInputError('decomposition files start with "s td"')
    lineno, header = lines[0]
    head = _ints(header.split()[2:], lineno)
    if len(head) != 3:
        raise GraphInputError(f'line {lineno}: header must be "s td <bags> <width+1> <n>"')
    num_bags = head[0]
    bags: dict[int, frozenset[int]] = {}
    adjacency: dict[int, list[int]] = {}
    tree_edges: list[tuple[int, int, int]] = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if parts[0] == 'b':
            ids = _ints(parts[1:], lineno)
            if not ids:
                raise GraphInputError(f'line {lineno}: bag line without id')
            bags[ids[0]] = frozenset(ids[1:])
        else:
            pair = _ints(parts, lineno)
            if len(pair) != 2:
                raise GraphInputError(f'line {lineno}: tree edges need two bag ids')
            tree_edges.append((lineno, *pair))
    if len(bags) != num_bags:
        raise GraphInputError(f'header announces {num_bags} bags, file has {len(bags)}')
    # bag lines may follow edge lines, so ids are checked once every bag is known
    for lineno, a, b in tree_edges:
        unknown = [t for t in (a, b) if t not in bags]
        if unknown:
            raise GraphInputError(f'line {lineno}: tree edge references unknown bag {unknown[0]}')
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)
    if not bags:
        return TreeDecomposition({}, {}, 0)
    root = min(bags)
    parent = {root: None}
    stack = [root]
    while stack:
        t = stack.pop()
        for s in sorted(adjacency.get(t, ())):
            if s not in parent:
                parent[s] = t
                stack.append(s)
    if len(parent) != len(bags):
        raise GraphInputError('decomposition tree is not connected')
    if sum(len(nbrs) for nbrs in adjacency.values()) != 2 * (len(bags) - 1):
        raise GraphInputError('decomposition tree has a cycle')
    return TreeDecomposition(bags, parent, root)


def read_td_file(path) -> TreeDecomposition:
    if not os.path.exists(path):
        raise GraphInputError(f'decomposition file {path} not found')
    with open(path, encoding='utf-8') as handle:
        return parse_td_text(handle.read())
