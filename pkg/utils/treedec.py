"""
Tree decompositions: validation, min-fill construction, exact width for
tiny graphs, nice form and apex augmentation.
"""
from __future__ import annotations

import heapq
import logging
from functools import lru_cache
from itertools import combinations
from typing import Optional

from models import Graph, NiceNode, NiceTreeDecomposition, TreeDecomposition
from utils.errors import GraphInputError

log = logging.getLogger(__name__)

EXACT_TREEWIDTH_MAX_N = 20


# -------------------------
# VALIDATION
# -------------------------
def _tree_violations(td: TreeDecomposition) -> list[str]:
    violations = []
    if td.root not in td.bags:
        return [f'root {td.root} has no bag']
    if set(td.parent) != set(td.bags):
        missing = sorted(set(td.bags) - set(td.parent))
        extra = sorted(set(td.parent) - set(td.bags))
        return [f'parent map mismatch: missing {missing}, unknown {extra}']
    for t, par in td.parent.items():
        if t == td.root and par is not None:
            violations.append(f'root {t} has parent {par}')
        elif t != td.root and par not in td.bags:
            violations.append(f'node {t} has no valid parent')
    if violations:
        return violations
    depth = {td.root: 0}
    for t in td.bags:
        path = []
        node = t
        while node not in depth:
            path.append(node)
            node = td.parent[node]
            if node in path:
                return [f'node {t} does not reach the root']
        for offset, step in enumerate(reversed(path), start=1):
            depth[step] = depth[node] + offset
    return []


def _occurrence_violations(td: TreeDecomposition) -> list[str]:
    tops: dict[int, int] = {}
    for t, bag in td.bags.items():
        par = td.parent[t]
        for v in bag:
            if par is None or v not in td.bags[par]:
                tops[v] = tops.get(v, 0) + 1
    return [
        f'bags holding vertex {v} are not connected ({count} pieces)'
        for v, count in sorted(tops.items()) if count > 1
    ]


def validate(td: TreeDecomposition, g: Graph) -> tuple[bool, list[str]]:
    """Check the three tree-decomposition axioms; returns (ok, violations)."""
    violations = _tree_violations(td)
    if violations:
        return False, violations
    covered = frozenset().union(*td.bags.values()) if td.bags else frozenset()
    for v in sorted(covered - g.vertex_set):
        violations.append(f'vertex {v} is not in the graph')
    for v in g.vertex_ids:
        if v not in covered:
            violations.append(f'vertex {v} is in no bag')
    holders: dict[int, set[int]] = {}
    for t, bag in td.bags.items():
        for v in bag:
            holders.setdefault(v, set()).add(t)
    for u, v in g.edges:
        if not holders.get(u, set()) & holders.get(v, set()):
            violations.append(f'edge ({u}, {v}) is not covered')
    violations.extend(_occurrence_violations(td))
    return not violations, violations


def validate_nice(ntd: NiceTreeDecomposition) -> list[str]:
    """Violations of the leaf / introduce / forget / join shape rules."""
    violations = []
    for node in ntd.nodes.values():
        kids = [ntd.nodes[c] for c in node.children]
        if node.kind == 'leaf':
            if kids or node.bag:
                violations.append(f'leaf {node.id} must have an empty bag and no children')
        elif node.kind == 'introduce':
            if len(kids) != 1 or node.bag != kids[0].bag | {node.vertex} or node.vertex in kids[0].bag:
                violations.append(f'introduce node {node.id} does not add exactly {node.vertex}')
        elif node.kind == 'forget':
            if len(kids) != 1 or kids[0].bag != node.bag | {node.vertex} or node.vertex in node.bag:
                violations.append(f'forget node {node.id} does not drop exactly {node.vertex}')
        elif node.kind == 'join':
            if len(kids) != 2 or any(k.bag != node.bag for k in kids):
                violations.append(f'join node {node.id} needs two children with its bag')
        else:
            violations.append(f'node {node.id} has unknown kind {node.kind!r}')
    return violations


# -------------------------
# HEURISTIC CONSTRUCTION
# -------------------------
def _fill_in(adj: dict[int, set[int]], v: int) -> int:
    return sum(1 for a, b in combinations(adj[v], 2) if b not in adj[a])


def min_fill_order(g: Graph) -> list[int]:
    """Greedy elimination order: least fill-in, then least degree, then least id."""
    adj = {v: set(g.adjacency[v]) for v in g.vertex_ids}
    version = {v: 0 for v in adj}
    heap = [(_fill_in(adj, v), len(adj[v]), v, 0) for v in adj]
    heapq.heapify(heap)
    order = []
    while heap:
        fill, degree, v, stamp = heapq.heappop(heap)
        if v not in adj or stamp != version[v]:
            continue
        nbrs = adj.pop(v)
        for a, b in combinations(nbrs, 2):
            adj[a].add(b)
            adj[b].add(a)
        affected = set(nbrs)
        for u in nbrs:
            adj[u].discard(v)
            affected |= adj[u]
        for u in affected:
            version[u] += 1
            heapq.heappush(heap, (_fill_in(adj, u), len(adj[u]), u, version[u]))
        order.append(v)
    return order


def decomposition_from_order(g: Graph, order: list[int]) -> TreeDecomposition:
    """Bags {v} ∪ later neighbours; node ids are elimination positions."""
    if not order:
        return TreeDecomposition({0: frozenset()}, {0: None}, 0)
    if sorted(order) != list(g.vertex_ids):
        raise GraphInputError('elimination order must list every vertex once')
    pos = {v: idx for idx, v in enumerate(order)}
    adj = {v: set(g.adjacency[v]) for v in g.vertex_ids}
    bags: dict[int, frozenset[int]] = {}
    parent: dict[int, Optional[int]] = {}
    root = len(order) - 1
    for idx, v in enumerate(order):
        later = adj.pop(v)
        for a, b in combinations(later, 2):
            adj[a].add(b)
            adj[b].add(a)
        for u in later:
            adj[u].discard(v)
        bags[idx] = frozenset(later | {v})
        if later:
            parent[idx] = min(pos[u] for u in later)
        else:
            # component finished; hang it below the last bag
            parent[idx] = root if idx != root else None
    return TreeDecomposition(bags, parent, root)


def heuristic_decompose(g: Graph) -> TreeDecomposition:
    td = decomposition_from_order(g, min_fill_order(g))
    log.debug(f'min-fill decomposition: {g.n} vertices, width {td.width}')
    return td


# -------------------------
# EXACT ORACLE
# -------------------------
def exact_treewidth_small(g: Graph, limit: int) -> Optional[int]:
    """Exact treewidth by memoised search over vertex subsets; None above limit."""
    if g.n > EXACT_TREEWIDTH_MAX_N:
        raise GraphInputError(f'exact treewidth is limited to {EXACT_TREEWIDTH_MAX_N} vertices')
    if g.n == 0:
        return -1
    ids = list(g.vertex_ids)
    index = {v: idx for idx, v in enumerate(ids)}
    nbr_mask = [sum(1 << index[u] for u in g.adjacency[v]) for v in ids]

    def q_size(s: int, v: int) -> int:
        """Vertices outside s ∪ {v} reachable from v through s."""
        seen = 1 << v
        frontier = [v]
        outside = 0
        while frontier:
            x = frontier.pop()
            for y in range(len(ids)):
                bit = 1 << y
                if not nbr_mask[x] & bit or seen & bit:
                    continue
                seen |= bit
                if s & bit:
                    frontier.append(y)
                else:
                    outside |= bit
        return bin(outside).count('1')

    @lru_cache(maxsize=None)
    def tw(s: int) -> int:
        if s == 0:
            return -1
        best = len(ids)
        for v in range(len(ids)):
            bit = 1 << v
            if s & bit:
                rest = s & ~bit
                best = min(best, max(tw(rest), q_size(rest, v)))
        return best

    width = tw((1 << len(ids)) - 1)
    return width if width <= limit else None


# -------------------------
# NICE FORM AND APICES
# -------------------------
def to_nice(td: TreeDecomposition, root_bag=None, g: Optional[Graph] = None) -> NiceTreeDecomposition:
    """Nice form with the same width; the root is forgotten down to the empty bag."""
    if g is not None:
        ok, violations = validate(td, g)
    else:
        violations = _tree_violations(td) or _occurrence_violations(td)
        ok = not violations
    if not ok:
        raise GraphInputError('invalid tree decomposition: ' + '; '.join(violations[:5]))

    start = td.root
    if root_bag is not None:
        root_bag = frozenset(root_bag)
        holders = sorted(t for t, bag in td.bags.items() if root_bag <= bag)
        if not holders:
            raise GraphInputError(f'no bag contains {sorted(root_bag)}')
        start = holders[0]

    neighbours: dict[int, list[int]] = {t: [] for t in td.bags}
    for par, child in td.tree_edges:
        neighbours[par].append(child)
        neighbours[child].append(par)
    order = []
    tree_parent = {start: None}
    stack = [start]
    while stack:
        t = stack.pop()
        order.append(t)
        for s in sorted(neighbours[t], reverse=True):
            if s not in tree_parent:
                tree_parent[s] = t
                stack.append(s)

    nodes: dict[int, NiceNode] = {}

    def add(kind, bag, vertex=None, children=()) -> int:
        node_id = len(nodes)
        nodes[node_id] = NiceNode(node_id, kind, frozenset(bag), vertex, tuple(children))
        return node_id

    def move(node_id: int, target: frozenset[int]) -> int:
        bag = nodes[node_id].bag
        for v in sorted(bag - target):
            bag = bag - {v}
            node_id = add('forget', bag, v, (node_id,))
        for v in sorted(target - bag):
            bag = bag | {v}
            node_id = add('introduce', bag, v, (node_id,))
        return node_id

    top: dict[int, int] = {}
    for t in reversed(order):
        bag = td.bags[t]
        kids = [s for s in neighbours[t] if tree_parent.get(s) == t]
        branches = [move(top[s], bag) for s in sorted(kids)]
        if not branches:
            branches = [move(add('leaf', ()), bag)]
        current = branches[0]
        for other in branches[1:]:
            current = add('join', bag, None, (current, other))
        top[t] = current

    root = move(top[start], frozenset())
    return NiceTreeDecomposition(nodes, root)


def add_apices(td: TreeDecomposition, apices) -> TreeDecomposition:
    apices = frozenset(apices)
    if not apices:
        return td
    return TreeDecomposition({t: bag | apices for t, bag in td.bags.items()}, dict(td.parent), td.root)
